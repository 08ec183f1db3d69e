//! Three wheels glued along rim edges; print the stored coherent paths and
//! then insert an edge that merges them into one rigid component.
use dynplanar::engine::Engine;
use dynplanar::graph::VertexId;

fn wheel(apex: u32, rim: [u32; 4]) -> Vec<(u32, u32)> {
    let mut e: Vec<(u32, u32)> = rim.iter().map(|&r| (apex, r)).collect();
    for i in 0..4 {
        e.push((rim[i].min(rim[(i + 1) % 4]), rim[i].max(rim[(i + 1) % 4])));
    }
    e
}

fn main() {
    let mut edges = wheel(0, [1, 2, 3, 4]);
    edges.extend(wheel(6, [1, 2, 7, 8]));
    edges.extend(wheel(9, [3, 4, 10, 11]));
    edges.sort();
    edges.dedup();
    let mut e = Engine::from_edges(12, &edges).expect("planar");
    for line in e.colouring().dump() {
        println!("{line}");
    }
    println!(
        "add 7 10: {}",
        e.insert_edge(VertexId(7), VertexId(10)).unwrap()
    );
    for line in e.decomposition().dump() {
        println!("{line}");
    }
}
