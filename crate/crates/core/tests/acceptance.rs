//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynplanar::cli::{fuzz, FuzzConfig, FuzzReport};
use dynplanar::engine::{Check, Engine};
use dynplanar::gate::Verdict;
use dynplanar::graph::{ChangeDirection, ChangeStatus, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn v(i: u32) -> VertexId {
    VertexId(i)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, name: &str, o: &Outcome, took: Duration) -> bool {
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} {name}: {verdict} ({}; {:.2}s)",
        o.detail,
        took.as_secs_f64()
    );
    o.pass
}

struct Sweep {
    reports: Vec<FuzzReport>,
    took: Duration,
}

impl Sweep {
    fn run() -> Self {
        let start = Instant::now();
        let reports = (0..500u64)
            .into_par_iter()
            .map(|seed| {
                let mut cfg = FuzzConfig::new(seed, 8, 150);
                cfg.minimize = false;
                fuzz(cfg)
            })
            .collect();
        Sweep {
            reports,
            took: start.elapsed(),
        }
    }

    fn violations(&self, checks: &[Check]) -> Vec<String> {
        self.reports
            .iter()
            .flat_map(|r| {
                r.violations
                    .iter()
                    .filter(|v| checks.contains(&v.violation.check))
                    .map(move |v| format!("{} step {}: {}", r.config_line, v.step, v.violation))
            })
            .collect()
    }

    fn changes(&self) -> BTreeMap<String, usize> {
        let mut all = BTreeMap::new();
        for r in &self.reports {
            for (k, c) in &r.changes {
                *all.entry(k.clone()).or_default() += c;
            }
        }
        all
    }

    fn outcome(&self, checks: &[Check], what: &str) -> Outcome {
        let bad = self.violations(checks);
        for line in bad.iter().take(5) {
            println!("  {line}");
        }
        let accepted: usize = self.changes().values().sum();
        Outcome {
            pass: bad.is_empty(),
            detail: format!(
                "{accepted} accepted changes, {what}, {} failures",
                bad.len()
            ),
        }
    }
}

fn criterion_gate(s: &Sweep) -> Outcome {
    let inserts: usize = s
        .changes()
        .iter()
        .filter(|(k, _)| k.starts_with("insert"))
        .map(|(_, c)| c)
        .sum::<usize>()
        + s.reports.iter().map(|r| r.rejected).sum::<usize>();
    let mut o = s.outcome(
        &[Check::Gate, Check::Engine],
        &format!("{inserts} insert verdicts"),
    );
    if s.took > Duration::from_secs(60) {
        o.pass = false;
        o.detail += ", over the 60s budget";
    }
    o
}

/// Random planar workload of `steps` changes on `n` vertices.
fn random_engine(rng: &mut ChaCha8Rng, n: u32, steps: usize) -> Engine {
    let mut e = Engine::new(n as usize);
    for _ in 0..steps {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        if e.graph().adjacent(v(a), v(b)) {
            if rng.gen_bool(0.3) {
                e.delete_edge(v(a), v(b)).expect("delete");
            }
        } else {
            e.insert_edge(v(a), v(b)).expect("insert");
        }
    }
    e
}

fn criterion_round_trip() -> Outcome {
    let mut failures = Vec::new();
    let mut types: BTreeMap<String, usize> = BTreeMap::new();
    let mut seed = 0u64;
    while types.values().sum::<usize>() < 200 && seed < 1000 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let steps = rng.gen_range(0..60);
        let mut e = random_engine(&mut rng, 8, steps);
        let mut candidates = Vec::new();
        for a in 0..8 {
            for b in a + 1..8 {
                if !e.graph().adjacent(v(a), v(b))
                    && e.insertable(v(a), v(b)).ok() == Some(Verdict::Admit)
                {
                    candidates.push((a, b));
                }
            }
        }
        let Some(&(a, b)) = candidates.choose(&mut rng) else {
            continue;
        };
        let before = e.dump();
        let ins = e.insert_edge(v(a), v(b));
        let del = e.delete_edge(v(a), v(b));
        match (ins, del) {
            (Ok(i), Ok(d))
                if i.status == ChangeStatus::Accepted && d.status == ChangeStatus::Accepted =>
            {
                *types
                    .entry(i.change.expect("typed").to_string())
                    .or_default() += 1;
                if e.dump() != before {
                    failures.push(format!("seed {seed}: dumps differ after +/- {a} {b}"));
                }
            }
            other => failures.push(format!("seed {seed}: {other:?}")),
        }
    }
    for f in failures.iter().take(5) {
        println!("  {f}");
    }
    let pairs: usize = types.values().sum();
    Outcome {
        pass: failures.is_empty() && pairs >= 200,
        detail: format!("{pairs} pairs over types {types:?}"),
    }
}

fn criterion_purity(s: &Sweep) -> Outcome {
    let rejected: usize = s.reports.iter().map(|r| r.rejected).sum();
    let mut o = s.outcome(&[Check::Purity], &format!("{rejected} rejections"));
    o.pass &= rejected > 0;
    o
}

fn all_orders_admit(n: usize, edges: &[(u32, u32)]) -> bool {
    match Engine::from_edges(n, edges) {
        Ok(e) => e.check_invariants().is_empty(),
        Err(_) => false,
    }
}

fn last_rejected(n: usize, edges: &[(u32, u32)]) -> bool {
    let (last, rest) = edges.split_last().expect("edges");
    let Ok(mut e) = Engine::from_edges(n, rest) else {
        return false;
    };
    matches!(e.insert_edge(v(last.0), v(last.1)), Ok(o) if o.status == ChangeStatus::RejectedNonplanar)
}

fn permutations(xs: &[(u32, u32)]) -> Vec<Vec<(u32, u32)>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn criterion_families() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let orders = permutations(&k4);
    for o in &orders {
        if !all_orders_admit(5, o) {
            bad.push(format!("K4 order {o:?}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut k5 = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            k5.push((a, b));
        }
    }
    let mut k33 = Vec::new();
    for a in 1..=3 {
        for b in 4..=6 {
            k33.push((a, b));
        }
    }
    for _ in 0..20 {
        k5.shuffle(&mut rng);
        if !last_rejected(6, &k5) {
            bad.push(format!("K5 order {k5:?}"));
        }
        k33.shuffle(&mut rng);
        if !last_rejected(7, &k33) {
            bad.push(format!("K3,3 order {k33:?}"));
        }
    }
    let mut wheels = 0;
    for k in 3..=8u32 {
        let mut w: Vec<(u32, u32)> = (1..=k).map(|i| (0, i)).collect();
        w.extend((1..=k).map(|i| (i, i % k + 1)));
        for _ in 0..5 {
            w.shuffle(&mut rng);
            wheels += 1;
            if !all_orders_admit(k as usize + 1, &w) {
                bad.push(format!("W{k} order {w:?}"));
            }
        }
    }
    let took = start.elapsed();
    for b in bad.iter().take(5) {
        println!("  {b}");
    }
    Outcome {
        pass: bad.is_empty() && took < Duration::from_secs(5),
        detail: format!(
            "{} K4 orders, 20 K5 and 20 K3,3 orders, {wheels} wheel orders, {} deviations",
            orders.len(),
            bad.len()
        ),
    }
}

/// A chain of blocks joined at cut vertices, with at least three
/// non-bridge blocks. Returns edges and the two chain ends.
fn block_chain(rng: &mut ChaCha8Rng) -> (usize, Vec<(u32, u32)>, u32, u32) {
    let count = rng.gen_range(3..=5);
    let mut kinds: Vec<u8> = (0..count).map(|_| rng.gen_range(1..5)).collect();
    if rng.gen_bool(0.5) {
        kinds.insert(rng.gen_range(0..=kinds.len()), 0);
    }
    let mut edges = Vec::new();
    let mut next = 1u32;
    let start = next;
    let mut cut = next;
    next += 1;
    for kind in kinds {
        let fresh = |next: &mut u32, k: u32| -> Vec<u32> {
            let out = (*next..*next + k).collect();
            *next += k;
            out
        };
        // each block spans `cut` and a new far vertex, which becomes the next cut
        let far = match kind {
            0 => {
                let f = fresh(&mut next, 1);
                edges.push((cut, f[0]));
                f[0]
            }
            1 => {
                let f = fresh(&mut next, 2);
                edges.extend([(cut, f[0]), (f[0], f[1]), (f[1], cut)]);
                f[1]
            }
            2 => {
                let f = fresh(&mut next, 3);
                edges.extend([
                    (cut, f[0]),
                    (cut, f[1]),
                    (cut, f[2]),
                    (f[0], f[1]),
                    (f[0], f[2]),
                    (f[1], f[2]),
                ]);
                f[2]
            }
            3 => {
                let f = fresh(&mut next, 3);
                edges.extend([
                    (cut, f[0]),
                    (f[0], f[1]),
                    (f[1], f[2]),
                    (f[2], cut),
                    (cut, f[1]),
                ]);
                f[2]
            }
            _ => {
                let f = fresh(&mut next, 4);
                let rim = [cut, f[0], f[1], f[2]];
                for i in 0..4 {
                    edges.push((f[3], rim[i]));
                    edges.push((rim[i], rim[(i + 1) % 4]));
                }
                f[1]
            }
        };
        cut = far;
    }
    (next as usize, edges, start, cut)
}

fn criterion_commutativity() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut spans = Vec::new();
    for case in 0..50 {
        let (n, edges, a, b) = block_chain(&mut rng);
        let base = Engine::from_edges(n, &edges).expect("chain is planar");
        let k = base
            .sub_updates(ChangeDirection::Insert, v(a), v(b))
            .expect("count");
        spans.push(k);
        let mut ins_dumps = Vec::new();
        let mut del_dumps = Vec::new();
        for _ in 0..5 {
            let mut order: Vec<usize> = (0..k).collect();
            order.shuffle(&mut rng);
            let mut e = base_clone(n, &edges);
            match e.insert_edge_ordered(v(a), v(b), Some(&order)) {
                Ok(o) if o.to_string() == "accepted 1->2" => {}
                other => bad.push(format!("case {case}: insert {other:?}")),
            }
            ins_dumps.push(e.dump());
            let kd = e
                .sub_updates(ChangeDirection::Delete, v(a), v(b))
                .expect("count");
            let mut dorder: Vec<usize> = (0..kd).collect();
            dorder.shuffle(&mut rng);
            match e.delete_edge_ordered(v(a), v(b), Some(&dorder)) {
                Ok(o) if o.to_string() == "accepted 2->1" => {}
                other => bad.push(format!("case {case}: delete {other:?}")),
            }
            del_dumps.push(e.dump());
            if kd < 3 {
                bad.push(format!(
                    "case {case}: deletion splits into only {kd} blocks"
                ));
            }
        }
        if ins_dumps.windows(2).any(|w| w[0] != w[1]) {
            bad.push(format!("case {case}: insertion orders disagree"));
        }
        if del_dumps.windows(2).any(|w| w[0] != w[1]) {
            bad.push(format!("case {case}: deletion orders disagree"));
        }
        if del_dumps[0] != base.dump() {
            bad.push(format!("case {case}: deletion does not restore the chain"));
        }
    }
    for b in bad.iter().take(5) {
        println!("  {b}");
    }
    let min = spans.iter().min().copied().unwrap_or(0);
    Outcome {
        pass: bad.is_empty() && min >= 3,
        detail: format!(
            "50 chains of {min} to {} blocks, 5 orders each way, {} mismatches",
            spans.iter().max().unwrap_or(&0),
            bad.len()
        ),
    }
}

fn base_clone(n: usize, edges: &[(u32, u32)]) -> Engine {
    Engine::from_edges(n, edges).expect("chain is planar")
}

fn main() -> ExitCode {
    let mut ok = true;
    let sweep = Sweep::run();
    println!(
        "sweep: 500 seeds x 150 steps on 8 vertices in {:.2}s; accepted {:?}",
        sweep.took.as_secs_f64(),
        sweep.changes()
    );
    ok &= report(1, "gate exactness", &criterion_gate(&sweep), sweep.took);
    ok &= report(
        2,
        "embedding validity",
        &sweep.outcome(&[Check::Embedding, Check::Engine], "all rotations traced"),
        sweep.took,
    );
    ok &= report(
        3,
        "decomposition equivalence",
        &sweep.outcome(&[Check::Decomposition], "dumps compared"),
        sweep.took,
    );
    ok &= report(
        4,
        "two-colouring soundness",
        &sweep.outcome(&[Check::Colouring], "stored paths checked"),
        sweep.took,
    );
    let t = Instant::now();
    let o = criterion_round_trip();
    ok &= report(5, "round-trip", &o, t.elapsed());
    ok &= report(6, "rejection purity", &criterion_purity(&sweep), sweep.took);
    let t = Instant::now();
    let o = criterion_families();
    ok &= report(7, "classic families", &o, t.elapsed());
    let t = Instant::now();
    let o = criterion_commutativity();
    ok &= report(8, "sub-update commutativity", &o, t.elapsed());
    if ok {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
