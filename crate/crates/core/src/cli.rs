//! Line protocol for traces and the seeded fuzz driver.
//!
//! Fuzz workload: each step lists the legal kinds (insert or delete, keyed
//! by the current level of the endpoints, plus one query kind), picks a
//! kind uniformly with a ChaCha8 generator, then picks an edge or query
//! uniformly within it.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::{Check, Engine, Mutation, Violation};
use crate::graph::{ChangeDirection, ChangeStatus, Edge, VertexId};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Add(u32, u32),
    Del(u32, u32),
    Rot(u32, u32, u32, u32),
    Face(u32, u32, u32),
    Block(u32, u32),
    Cut(u32),
    Pair(u32, u32),
    Dump,
    OraclePlanar,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Add(u, v) => write!(f, "add {u} {v}"),
            Command::Del(u, v) => write!(f, "del {u} {v}"),
            Command::Rot(v, a, b, c) => write!(f, "rot? {v} {a} {b} {c}"),
            Command::Face(a, b, c) => write!(f, "face? {a} {b} {c}"),
            Command::Block(u, v) => write!(f, "block? {u} {v}"),
            Command::Cut(v) => write!(f, "cut? {v}"),
            Command::Pair(s, t) => write!(f, "pair? {s} {t}"),
            Command::Dump => f.write_str("dump"),
            Command::OraclePlanar => f.write_str("oracle planar"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Parse one line; blank lines and `#` comments yield `None`.
pub fn parse_line(line: &str) -> Result<Option<Command>, String> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let mut words = line.split_whitespace();
    let op = words.next().expect("non-empty line");
    let rest: Vec<&str> = words.collect();
    let nums = |k: usize| -> Result<Vec<u32>, String> {
        if rest.len() != k {
            return Err(format!(
                "`{op}` takes {k} vertex arguments, got {}",
                rest.len()
            ));
        }
        rest.iter()
            .map(|w| {
                w.parse::<u32>()
                    .map_err(|_| format!("`{w}` is not a vertex index"))
            })
            .collect()
    };
    let cmd = match op {
        "add" => nums(2).map(|v| Command::Add(v[0], v[1]))?,
        "del" => nums(2).map(|v| Command::Del(v[0], v[1]))?,
        "rot?" => nums(4).map(|v| Command::Rot(v[0], v[1], v[2], v[3]))?,
        "face?" => nums(3).map(|v| Command::Face(v[0], v[1], v[2]))?,
        "block?" => nums(2).map(|v| Command::Block(v[0], v[1]))?,
        "cut?" => nums(1).map(|v| Command::Cut(v[0]))?,
        "pair?" => nums(2).map(|v| Command::Pair(v[0], v[1]))?,
        "dump" => nums(0).map(|_| Command::Dump)?,
        "oracle" if rest == ["planar"] => Command::OraclePlanar,
        "oracle" => return Err("expected `oracle planar`".into()),
        _ => return Err(format!("unknown command `{op}`")),
    };
    Ok(Some(cmd))
}

/// Parse a whole trace, collecting every malformed line.
pub fn parse_trace(input: &str) -> Result<Vec<(usize, Command)>, Vec<ParseError>> {
    let mut cmds = Vec::new();
    let mut errors = Vec::new();
    for (i, line) in input.lines().enumerate() {
        match parse_line(line) {
            Ok(Some(c)) => cmds.push((i + 1, c)),
            Ok(None) => {}
            Err(message) => errors.push(ParseError {
                line: i + 1,
                message,
            }),
        }
    }
    if errors.is_empty() {
        Ok(cmds)
    } else {
        Err(errors)
    }
}

fn bool_line(b: bool) -> String {
    b.to_string()
}

/// Run one command and return its output lines. Engine errors become a
/// single `error: ...` line.
pub fn execute(engine: &mut Engine, cmd: Command) -> Vec<String> {
    let v = VertexId;
    let d = engine.decomposition();
    let check = |xs: &[u32]| {
        xs.iter()
            .try_for_each(|&x| engine.graph().check_vertex(v(x)))
    };
    let res: crate::error::Result<Vec<String>> = match cmd {
        Command::Add(a, b) => engine.insert_edge(v(a), v(b)).map(|o| vec![o.to_string()]),
        Command::Del(a, b) => engine.delete_edge(v(a), v(b)).map(|o| vec![o.to_string()]),
        Command::Rot(x, a, b, c) => engine
            .graph_rotation_query(v(x), v(a), v(b), v(c))
            .map(|r| vec![bool_line(r)]),
        Command::Face(a, b, c) => engine
            .face_query(v(a), v(b), v(c))
            .map(|r| vec![bool_line(matches!(r, Some((_, _, true))))]),
        Command::Block(a, b) => check(&[a, b]).map(|_| vec![bool_line(d.same_block(v(a), v(b)))]),
        Command::Cut(a) => check(&[a]).map(|_| vec![bool_line(d.is_cut_vertex(v(a)))]),
        Command::Pair(a, b) => {
            check(&[a, b]).map(|_| vec![bool_line(d.is_separating_pair(v(a), v(b)))])
        }
        Command::Dump => {
            let mut out = engine.dump().lines();
            out.push(".".into());
            Ok(out)
        }
        Command::OraclePlanar => {
            return match oracle::static_planar(engine.domain(), &engine.graph().edge_pairs()) {
                Ok(p) => vec![bool_line(p)],
                Err(e) => vec![format!("error: {e}")],
            }
        }
    };
    res.unwrap_or_else(|e| vec![format!("error: {e}")])
}

/// Run a command and check everything an oracle can vouch for.
pub fn execute_checked(engine: &mut Engine, cmd: Command) -> (Vec<String>, Vec<Violation>) {
    let mut bad = Vec::new();
    let push =
        |bad: &mut Vec<Violation>, check, message: String| bad.push(Violation { check, message });
    match cmd {
        Command::Add(a, b) => {
            let e = Edge::new(a, b)
                .ok()
                .filter(|e| e.v().index() < engine.domain());
            let expect = e.filter(|e| !engine.graph().has_edge(*e)).map(|e| {
                let mut edges = engine.graph().edge_pairs();
                edges.push((e.u().0, e.v().0));
                oracle::static_planar(engine.domain(), &edges)
            });
            let before = engine.dump();
            let out = engine.insert_edge(VertexId(a), VertexId(b));
            match (&out, expect) {
                (Err(err), Some(_)) => push(&mut bad, Check::Engine, format!("{cmd}: {err}")),
                (Ok(o), Some(Ok(planar))) => {
                    let accepted = o.status == ChangeStatus::Accepted;
                    if accepted != planar {
                        push(
                            &mut bad,
                            Check::Gate,
                            format!("{cmd}: {o} but the oracle says planar={planar}"),
                        );
                    }
                    if accepted {
                        bad.extend(engine.check_invariants());
                    } else if engine.dump() != before {
                        push(
                            &mut bad,
                            Check::Purity,
                            format!("{cmd}: rejection changed the dumps"),
                        );
                    }
                }
                (_, Some(Err(err))) => push(&mut bad, Check::Gate, format!("oracle: {err}")),
                _ => {}
            }
            (
                out.map(|o| vec![o.to_string()])
                    .unwrap_or_else(|e| vec![format!("error: {e}")]),
                bad,
            )
        }
        Command::Del(a, b) => {
            let out = engine.delete_edge(VertexId(a), VertexId(b));
            match &out {
                Ok(o) if o.status == ChangeStatus::Accepted => {
                    bad.extend(engine.check_invariants())
                }
                Ok(_) => {}
                Err(err) if engine.graph().check_vertex(VertexId(a.max(b))).is_ok() && a != b => {
                    push(&mut bad, Check::Engine, format!("{cmd}: {err}"))
                }
                Err(_) => {}
            }
            (
                out.map(|o| vec![o.to_string()])
                    .unwrap_or_else(|e| vec![format!("error: {e}")]),
                bad,
            )
        }
        Command::Block(..) | Command::Cut(_) | Command::Pair(..) => {
            let out = execute(engine, cmd);
            if let Some(expected) = oracle_query(engine, cmd) {
                if out != [bool_line(expected)] {
                    push(
                        &mut bad,
                        Check::Decomposition,
                        format!("{cmd}: answered {out:?}, oracle says {expected}"),
                    );
                }
            }
            (out, bad)
        }
        _ => (execute(engine, cmd), bad),
    }
}

/// Answer a structural query from the oracle decomposition dump.
fn oracle_query(engine: &Engine, cmd: Command) -> Option<bool> {
    let dump = oracle::static_decomposition(engine.domain(), &engine.graph().edge_pairs()).ok()?;
    let n = engine.domain() as u32;
    let verts = |line: &str| -> Vec<u32> {
        line.split(" : ")
            .nth(1)
            .map(|r| {
                r.split_whitespace()
                    .filter_map(|w| w.parse().ok())
                    .collect()
            })
            .unwrap_or_default()
    };
    match cmd {
        Command::Cut(v) if v < n => Some(dump.iter().any(|l| *l == format!("C {v}"))),
        Command::Block(a, b) if a < n && b < n => Some(
            a != b
                && dump.iter().filter(|l| l.starts_with("B ")).any(|l| {
                    let vs = verts(l);
                    vs.contains(&a) && vs.contains(&b)
                }),
        ),
        Command::Pair(a, b) if a < n && b < n && a != b => {
            let (s, t) = (a.min(b), a.max(b));
            let pair = format!("{s} {t}");
            Some(
                dump.iter()
                    .any(|l| l.starts_with("P ") && l.split(" | ").nth(1) == Some(pair.as_str())),
            )
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Default)]
pub struct TraceRun {
    pub output: Vec<String>,
    /// `(line number, violation)`; only collected in strict mode.
    pub violations: Vec<(usize, Violation)>,
    pub aborted: bool,
}

/// Replay parsed commands. In strict mode every command is checked
/// against the oracles and the run stops at the first violation.
pub fn run_trace(engine: &mut Engine, commands: &[(usize, Command)], strict: bool) -> TraceRun {
    let mut run = TraceRun::default();
    for &(line, cmd) in commands {
        if !strict {
            run.output.extend(execute(engine, cmd));
            continue;
        }
        let (out, bad) = execute_checked(engine, cmd);
        run.output.extend(out);
        if !bad.is_empty() {
            run.violations.extend(bad.into_iter().map(|v| (line, v)));
            run.aborted = true;
            break;
        }
    }
    run
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub n: usize,
    pub steps: usize,
    /// Stop at the first violating step.
    pub strict: bool,
    pub mutation: Option<Mutation>,
    /// Shrink the reproducer of the first few violations.
    pub minimize: bool,
}

impl FuzzConfig {
    pub fn new(seed: u64, n: usize, steps: usize) -> Self {
        FuzzConfig {
            seed,
            n,
            steps,
            strict: false,
            mutation: None,
            minimize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzViolation {
    pub step: usize,
    pub violation: Violation,
    pub reproducer: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub config_line: String,
    /// Accepted changes per edge type, e.g. `insert 2->3`.
    pub changes: BTreeMap<String, usize>,
    pub rejected: usize,
    pub queries: usize,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn count(&self, check: Check) -> usize {
        self.violations
            .iter()
            .filter(|v| v.violation.check == check)
            .count()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.config_line)?;
        for (k, c) in &self.changes {
            writeln!(f, "{k}: {c}")?;
        }
        writeln!(f, "rejected: {}", self.rejected)?;
        writeln!(f, "queries: {}", self.queries)?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "step {} {}", v.step, v.violation)?;
            for line in &v.reproducer {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Insert(u8),
    Delete(u8),
    Query,
}

fn random_query(rng: &mut ChaCha8Rng, n: u32) -> Command {
    let mut pick = || rng.gen_range(0..n);
    match pick() % 5 {
        0 => Command::Rot(pick(), pick(), pick(), pick()),
        1 => Command::Face(pick(), pick(), pick()),
        2 => Command::Block(pick(), pick()),
        3 => Command::Cut(pick()),
        _ => Command::Pair(pick(), pick()),
    }
}

fn change_key(dir: ChangeDirection, before: u8, after: u8) -> String {
    let d = match dir {
        ChangeDirection::Insert => "insert",
        ChangeDirection::Delete => "delete",
    };
    format!("{d} {before}->{after}")
}

pub fn fuzz(cfg: FuzzConfig) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut engine = Engine::new(cfg.n);
    engine.set_mutation(cfg.mutation);
    let mut history: Vec<Command> = Vec::new();
    let mut report = FuzzReport {
        config_line: format!("fuzz seed={} n={} steps={}", cfg.seed, cfg.n, cfg.steps),
        changes: BTreeMap::new(),
        rejected: 0,
        queries: 0,
        violations: Vec::new(),
    };
    let n = cfg.n as u32;
    for step in 0..cfg.steps {
        let mut buckets: BTreeMap<Kind, Vec<(u32, u32)>> = BTreeMap::new();
        let d = engine.decomposition();
        for a in 0..n {
            for b in a + 1..n {
                let level = d.level(VertexId(a), VertexId(b));
                let kind = if engine.graph().adjacent(VertexId(a), VertexId(b)) {
                    Kind::Delete(level)
                } else {
                    Kind::Insert(level)
                };
                buckets.entry(kind).or_default().push((a, b));
            }
        }
        buckets.insert(Kind::Query, Vec::new());
        let kinds: Vec<Kind> = buckets.keys().copied().collect();
        let kind = *kinds.choose(&mut rng).expect("query kind always legal");
        let cmd = match kind {
            Kind::Query => random_query(&mut rng, n),
            Kind::Insert(_) | Kind::Delete(_) => {
                let &(a, b) = buckets[&kind].choose(&mut rng).expect("non-empty bucket");
                if matches!(kind, Kind::Insert(_)) {
                    Command::Add(a, b)
                } else {
                    Command::Del(a, b)
                }
            }
        };
        history.push(cmd);
        let log_len = engine.log().len();
        let (out, bad) = execute_checked(&mut engine, cmd);
        match cmd {
            Command::Add(..) | Command::Del(..) => {
                if engine.log().len() > log_len {
                    let c = engine
                        .log()
                        .last()
                        .expect("logged")
                        .outcome
                        .change
                        .expect("accepted");
                    *report
                        .changes
                        .entry(change_key(c.direction, c.before, c.after))
                        .or_default() += 1;
                } else if out.first().map(String::as_str) == Some("rejected nonplanar") {
                    report.rejected += 1;
                }
            }
            _ => report.queries += 1,
        }
        for v in bad {
            let reproducer = if cfg.minimize && report.violations.len() < 3 {
                minimize(&history, cfg.n, cfg.mutation)
            } else {
                history.clone()
            };
            report.violations.push(FuzzViolation {
                step,
                violation: v,
                reproducer: reproducer.iter().map(|c| c.to_string()).collect(),
            });
        }
        if cfg.strict && !report.violations.is_empty() {
            break;
        }
    }
    report
}

fn violates(cmds: &[Command], n: usize, mutation: Option<Mutation>) -> bool {
    let mut e = Engine::new(n);
    e.set_mutation(mutation);
    cmds.iter()
        .any(|&c| !execute_checked(&mut e, c).1.is_empty())
}

/// Drop chunks of commands while the shortened trace still violates,
/// halving the chunk size whenever no chunk can go.
fn minimize(cmds: &[Command], n: usize, mutation: Option<Mutation>) -> Vec<Command> {
    let mut cur: Vec<Command> = cmds.to_vec();
    if !violates(&cur, n, mutation) {
        return cur;
    }
    let mut chunk = (cur.len() / 2).max(1);
    loop {
        let mut i = 0;
        let mut progress = false;
        while i < cur.len() {
            let mut trial = cur.clone();
            trial.drain(i..(i + chunk).min(cur.len()));
            if !trial.is_empty() && violates(&trial, n, mutation) {
                cur = trial;
                progress = true;
            } else {
                i += chunk;
            }
        }
        if !progress {
            if chunk == 1 {
                break;
            }
            chunk /= 2;
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_command() {
        let t = "add 1 2\ndel 1 2\nrot? 1 2 3 4\nface? 1 2 3\nblock? 1 2\ncut? 3\npair? 3 4\ndump\noracle planar\n";
        let cmds = parse_trace(t).unwrap();
        assert_eq!(cmds.len(), 9);
        let round: Vec<String> = cmds.iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(round.join("\n") + "\n", t);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let errs = parse_trace("add 1 2\n\nadd 1\nfrob 2\n# fine\noracle maybe").unwrap_err();
        let lines: Vec<usize> = errs.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![3, 4, 6]);
        assert!(errs[0].to_string().starts_with("line 3:"));
    }

    #[test]
    fn trace_answers() {
        let mut e = Engine::new(6);
        let cmds = parse_trace("add 1 2\nadd 1 2\ndel 3 4\ncut? 2\nadd 1 9").unwrap();
        let run = run_trace(&mut e, &cmds, false);
        assert_eq!(
            run.output[..4],
            ["accepted 0->1", "noop duplicate", "noop absent", "false"]
        );
        assert!(run.output[4].starts_with("error:"));
    }

    #[test]
    fn fuzz_is_deterministic_and_clean() {
        let a = fuzz(FuzzConfig::new(1, 8, 200));
        let b = fuzz(FuzzConfig::new(1, 8, 200));
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.violations.is_empty(), "{a}");
        assert!(a.queries > 0);
    }

    #[test]
    fn mutated_engine_is_caught() {
        let mut cfg = FuzzConfig::new(3, 7, 300);
        cfg.mutation = Some(Mutation::AdmitAll);
        cfg.strict = true;
        let r = fuzz(cfg);
        assert!(!r.violations.is_empty());
        // the shrunk trace still fails on its own
        let cmds: Vec<Command> = r.violations[0]
            .reproducer
            .iter()
            .map(|l| parse_line(l).unwrap().unwrap())
            .collect();
        assert!(violates(&cmds, 7, Some(Mutation::AdmitAll)));
        assert!(cmds.len() <= 300);
    }
}
