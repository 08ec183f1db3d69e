use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dynplanar::cli::{self, FuzzConfig};
use dynplanar::engine::{Engine, Mutation};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MutationArg {
    AdmitAll,
    SkipFlips,
}

/// Replay planarity traces or fuzz the engine against its oracles.
#[derive(Debug, Parser)]
#[command(name = "dynplanar", version)]
struct Args {
    /// Vertex domain size; vertices are 0..n-1 (default 16, or 8 with --fuzz).
    #[arg(long)]
    domain: Option<usize>,
    /// Trace file to replay; stdin when absent.
    #[arg(long)]
    trace: Option<String>,
    /// Run the random differential workload instead of a trace.
    #[arg(long)]
    fuzz: bool,
    #[arg(long, default_value_t = 1, requires = "fuzz")]
    seed: u64,
    #[arg(long, default_value_t = 200, requires = "fuzz")]
    steps: usize,
    /// Check every command against the oracles and stop at the first violation.
    #[arg(long)]
    strict: bool,
    /// Inject a known fault (harness self-test).
    #[arg(long, value_enum)]
    mutate: Option<MutationArg>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mutation = args.mutate.map(|m| match m {
        MutationArg::AdmitAll => Mutation::AdmitAll,
        MutationArg::SkipFlips => Mutation::SkipFlips,
    });
    if args.fuzz {
        let mut cfg = FuzzConfig::new(args.seed, args.domain.unwrap_or(8), args.steps);
        cfg.strict = args.strict;
        cfg.mutation = mutation;
        let report = cli::fuzz(cfg);
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = write!(std::io::stdout().lock(), "{report}");
        return if report.violations.is_empty() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    }

    let input = match &args.trace {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("dynplanar: cannot read trace: {e}");
            return ExitCode::from(2);
        }
    };
    let commands = match cli::parse_trace(&input) {
        Ok(c) => c,
        Err(errors) => {
            for e in errors {
                eprintln!("dynplanar: {e}");
            }
            return ExitCode::from(2);
        }
    };
    let mut engine = Engine::new(args.domain.unwrap_or(16));
    engine.set_mutation(mutation);
    let run = cli::run_trace(&mut engine, &commands, args.strict);
    let mut out = std::io::stdout().lock();
    for line in &run.output {
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    for (line, v) in &run.violations {
        eprintln!("dynplanar: line {line}: {v}");
    }
    if run.aborted {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
