//! Build a small graph with a cut vertex and a separating pair and print
//! the full canonical dump.
use dynplanar::engine::Engine;

fn main() {
    let e = Engine::from_edges(
        8,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (1, 3),
            (3, 5),
            (5, 6),
            (6, 3),
            (6, 7),
        ],
    )
    .expect("planar");
    for line in e.dump().lines() {
        println!("{line}");
    }
}
