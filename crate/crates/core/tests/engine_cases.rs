use dynplanar::decomposition::TriKind;
use dynplanar::engine::Engine;
use dynplanar::gate::{insertable, Verdict};
use dynplanar::graph::{ChangeDirection, ChangeStatus, VertexId};

fn v(i: u32) -> VertexId {
    VertexId(i)
}

const K4: [(u32, u32); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn verdict(e: &Engine, a: u32, b: u32) -> Verdict {
    insertable(e.decomposition(), e.components(), v(a), v(b)).unwrap()
}

#[test]
fn first_edge_is_zero_to_one() {
    let mut e = Engine::new(4);
    let out = e.insert_edge(v(1), v(2)).unwrap();
    assert_eq!(out.to_string(), "accepted 0->1");
    assert_eq!(e.graph_rotation().order(v(1)), &[v(2)]);
    assert!(e.components().is_empty());
}

#[test]
fn classify_examples() {
    let e = Engine::from_edges(5, &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
    assert_eq!(
        e.classify_change(ChangeDirection::Insert, v(1), v(2))
            .unwrap()
            .to_string(),
        "2->3"
    );
    let c4 = Engine::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
    assert_eq!(
        c4.classify_change(ChangeDirection::Insert, v(1), v(3))
            .unwrap()
            .to_string(),
        "2->2"
    );
    assert!(c4
        .classify_change(ChangeDirection::Insert, v(1), v(2))
        .is_err());
    assert!(c4
        .classify_change(ChangeDirection::Delete, v(1), v(3))
        .is_err());
    assert!(c4
        .classify_change(ChangeDirection::Insert, v(1), v(9))
        .is_err());
}

#[test]
fn reversed_type_on_delete() {
    let mut e = Engine::from_edges(5, &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
    let ins = e.insert_edge(v(1), v(2)).unwrap().change.unwrap();
    let del = e
        .classify_change(ChangeDirection::Delete, v(1), v(2))
        .unwrap();
    assert_eq!((ins.before, ins.after), (del.after, del.before));
}

#[test]
fn k4_completion_gives_tetrahedron() {
    let mut e = Engine::from_edges(5, &K4[1..]).unwrap();
    assert_eq!(verdict(&e, 1, 2), Verdict::Admit);
    e.insert_edge(v(1), v(2)).unwrap();
    let r = e.decomposition().same_tricomp(v(1), v(2), v(3)).unwrap();
    assert_eq!(r.kind, TriKind::R);
    let emb = e.embedding(r).unwrap();
    assert_eq!(emb.faces().len(), 4);
    emb.check().unwrap();
}

#[test]
fn k4_delete_unfurls_into_two_cycles() {
    let mut e = Engine::from_edges(5, &K4).unwrap();
    let out = e.delete_edge(v(1), v(2)).unwrap();
    assert_eq!(out.to_string(), "accepted 3->2");
    let d = e.decomposition().dump();
    assert!(d.contains(&"P 1 2 | 3 4".to_string()), "{d:?}");
    let s: Vec<&String> = d
        .iter()
        .filter(|l| l.starts_with("T ") && l.contains("| S "))
        .collect();
    assert_eq!(s.len(), 2);
    for emb in e.components().values() {
        emb.check().unwrap();
        assert_eq!(emb.faces().len(), 2);
    }
}

#[test]
fn k5_minus_edge_rejects_last_edge() {
    let mut edges = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            edges.push((a, b));
        }
    }
    let last = edges.pop().unwrap();
    let mut e = Engine::from_edges(6, &edges).unwrap();
    assert_eq!(verdict(&e, last.0, last.1), Verdict::Reject);
    let before = e.dump();
    let out = e.insert_edge(v(last.0), v(last.1)).unwrap();
    assert_eq!(out.status, ChangeStatus::RejectedNonplanar);
    assert_eq!(e.dump(), before);
    assert_eq!(e.log().len(), edges.len());
}

#[test]
fn joining_components_and_closing_paths_admit() {
    let e = Engine::from_edges(7, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]).unwrap();
    assert_eq!(verdict(&e, 1, 4), Verdict::Admit);
    let p = Engine::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    for (a, b) in [(1, 3), (1, 5), (2, 5)] {
        assert_eq!(verdict(&p, a, b), Verdict::Admit);
    }
}

#[test]
fn bridge_deletion_adds_a_component() {
    let mut e =
        Engine::from_edges(7, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
    let out = e.delete_edge(v(3), v(4)).unwrap();
    assert_eq!(out.to_string(), "accepted 1->0");
    assert!(!e.decomposition().connectivity().connected(v(1), v(5)));
    assert!(e.check_invariants().is_empty());
}

#[test]
fn bowtie_cut_vertex_rotation() {
    let e = Engine::from_edges(6, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_eq!(e.graph_rotation().order(v(3)), &[v(1), v(2), v(4), v(5)]);
    assert!(e.graph_rotation_query(v(3), v(1), v(2), v(4)).unwrap());
    assert!(e.graph_rotation_query(v(1), v(2), v(3), v(4)).is_err());
    // non-cut vertex inherits its block rotation
    let b = e.decomposition().block_name(v(1), v(2)).unwrap();
    let block = e.block_rotation(b).unwrap();
    assert_eq!(block.order(v(1)), e.graph_rotation().order(v(1)));
}

#[test]
fn noops_leave_everything_alone() {
    let mut e = Engine::from_edges(4, &[(1, 2)]).unwrap();
    let dump = e.dump();
    assert_eq!(
        e.insert_edge(v(2), v(1)).unwrap().status,
        ChangeStatus::NoopDuplicate
    );
    assert_eq!(
        e.delete_edge(v(1), v(3)).unwrap().status,
        ChangeStatus::NoopAbsent
    );
    assert_eq!(e.dump(), dump);
    assert_eq!(e.log().len(), 1);
    assert!(e.insert_edge(v(1), v(4)).is_err());
    assert!(e.insert_edge(v(2), v(2)).is_err());
}

#[test]
fn sub_update_orders_agree() {
    // chain of three triangles joined at cut vertices, closed by one edge
    let edges = [
        (1, 2),
        (2, 3),
        (3, 1),
        (3, 4),
        (4, 5),
        (5, 3),
        (5, 6),
        (6, 7),
        (7, 5),
    ];
    let base = Engine::from_edges(8, &edges).unwrap();
    let k = base
        .sub_updates(ChangeDirection::Insert, v(1), v(7))
        .unwrap();
    assert_eq!(k, 3);
    let mut dumps = Vec::new();
    for order in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
        let mut e = Engine::from_edges(8, &edges).unwrap();
        let out = e.insert_edge_ordered(v(1), v(7), Some(&order)).unwrap();
        assert_eq!(out.to_string(), "accepted 1->2");
        dumps.push(e.dump());
    }
    assert!(dumps.windows(2).all(|w| w[0] == w[1]));
    let mut e = Engine::from_edges(8, &edges).unwrap();
    assert!(e.insert_edge_ordered(v(1), v(7), Some(&[0, 0, 1])).is_err());
}
