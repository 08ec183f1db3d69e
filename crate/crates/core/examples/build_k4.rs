//! Grow K4 one edge at a time and print each change type and the final faces.
use dynplanar::engine::Engine;
use dynplanar::graph::VertexId;

fn main() {
    let mut e = Engine::new(5);
    for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)] {
        let out = e.insert_edge(VertexId(a), VertexId(b)).expect("valid edge");
        println!("add {a} {b}: {out}");
    }
    let r = e
        .decomposition()
        .same_tricomp(VertexId(1), VertexId(2), VertexId(3))
        .expect("rigid");
    for face in e.embedding(r).expect("embedded").faces() {
        let trace: Vec<String> = face.trace.iter().map(|v| v.0.to_string()).collect();
        println!("face {}", trace.join(" "));
    }
    assert!(e.check_invariants().is_empty());
}
