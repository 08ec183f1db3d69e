//! Replay a trace file (default: the bundled sample) with oracle checks on.
use dynplanar::cli::{parse_trace, run_trace};
use dynplanar::engine::Engine;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sample.trace").into());
    let text = std::fs::read_to_string(&path).expect("readable trace");
    let cmds = parse_trace(&text).unwrap_or_else(|errs| {
        for e in errs {
            eprintln!("{e}");
        }
        std::process::exit(2)
    });
    let mut engine = Engine::new(16);
    let run = run_trace(&mut engine, &cmds, true);
    for line in run.output {
        println!("{line}");
    }
    for (line, v) in run.violations {
        eprintln!("line {line}: {v}");
    }
}
