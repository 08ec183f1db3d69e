use dynplanar::decomposition::Decomposition;
use dynplanar::graph::Graph;
use dynplanar::oracle::static_decomposition;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: u32) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=pairs.len() * 2 / 3);
    pairs.truncate(m);
    pairs
}

#[test]
fn engine_decomposition_matches_definitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..600 {
        let n = rng.gen_range(2..=9);
        let edges = random_graph(&mut rng, n);
        let g = Graph::from_edges(n as usize, &edges).unwrap();
        let ours = Decomposition::new(&g).dump();
        let reference = static_decomposition(n as usize, &edges).unwrap();
        assert_eq!(ours, reference, "edges {edges:?}");
    }
}

#[test]
fn chained_wheels_give_path_of_length_five() {
    use dynplanar::decomposition::{SpqrNode, TriKind};
    // three wheels with rims sharing the separating pairs {1,2} and {5,6}
    let mut edges = vec![];
    let mut wheel = |hub: u32, rim: &[u32]| {
        for i in 0..rim.len() {
            edges.push((hub, rim[i]));
            edges.push((rim[i], rim[(i + 1) % rim.len()]));
        }
    };
    wheel(0, &[1, 2, 3, 4]);
    wheel(7, &[1, 2, 5, 6]);
    wheel(8, &[5, 6, 9, 10]);
    let edges: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let g = Graph::from_edges(11, &edges).unwrap();
    let d = Decomposition::new(&g);
    assert_eq!(d.dump(), static_decomposition(11, &edges).unwrap());
    let block = &d.blocks()[0];
    let rs: Vec<_> = block
        .spqr
        .comps
        .iter()
        .filter(|c| c.id.kind == TriKind::R)
        .map(|c| c.id)
        .collect();
    assert_eq!(rs.len(), 3);
    let path = d
        .spqr_path(SpqrNode::Comp(rs[0]), SpqrNode::Comp(rs[2]))
        .unwrap();
    assert_eq!(path.len(), 5);
    assert!(d.spqr_between(path[0], path[2], path[4]).unwrap());
}
