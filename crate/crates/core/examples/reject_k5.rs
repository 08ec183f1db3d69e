//! The tenth edge of K5 is refused and leaves the state untouched.
use dynplanar::engine::Engine;
use dynplanar::graph::VertexId;

fn main() {
    let mut edges = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            edges.push((a, b));
        }
    }
    let (a, b) = edges.pop().unwrap();
    let mut e = Engine::from_edges(6, &edges).expect("K5 minus an edge is planar");
    let before = e.dump();
    let out = e.insert_edge(VertexId(a), VertexId(b)).unwrap();
    println!("add {a} {b}: {out}");
    println!("state unchanged: {}", e.dump() == before);
    println!("log length: {}", e.log().len());
}
