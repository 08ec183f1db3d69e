use dynplanar::cli::{parse_line, Command};
use dynplanar::engine::Engine;
use dynplanar::graph::{ChangeDirection, ChangeStatus, VertexId};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn command() -> impl Strategy<Value = Command> {
    let x = 0u32..100;
    prop_oneof![
        (x.clone(), x.clone()).prop_map(|(a, b)| Command::Add(a, b)),
        (x.clone(), x.clone()).prop_map(|(a, b)| Command::Del(a, b)),
        (x.clone(), x.clone(), x.clone(), x.clone())
            .prop_map(|(v, a, b, c)| Command::Rot(v, a, b, c)),
        (x.clone(), x.clone(), x.clone()).prop_map(|(a, b, c)| Command::Face(a, b, c)),
        (x.clone(), x.clone()).prop_map(|(a, b)| Command::Block(a, b)),
        x.clone().prop_map(Command::Cut),
        (x.clone(), x).prop_map(|(a, b)| Command::Pair(a, b)),
        Just(Command::Dump),
        Just(Command::OraclePlanar),
    ]
}

proptest! {
    #[test]
    fn commands_round_trip(cmd in command()) {
        prop_assert_eq!(parse_line(&cmd.to_string()).unwrap(), Some(cmd));
    }

    #[test]
    fn edge_set_is_the_fold_of_accepted_changes(ops in prop::collection::vec((0u32..7, 0u32..7, any::<bool>()), 0..60)) {
        let mut e = Engine::new(7);
        let mut edges = BTreeSet::new();
        for (a, b, ins) in ops {
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let (va, vb) = (VertexId(a), VertexId(b));
            if ins {
                let typed = e.classify_change(ChangeDirection::Insert, va, vb).ok();
                let out = e.insert_edge(va, vb).unwrap();
                if out.status == ChangeStatus::Accepted {
                    prop_assert_eq!(out.change, typed);
                    edges.insert(key);
                }
            } else if e.delete_edge(va, vb).unwrap().status == ChangeStatus::Accepted {
                edges.remove(&key);
            }
        }
        let got: BTreeSet<(u32, u32)> = e.graph().edges().map(|x| (x.u().0, x.v().0)).collect();
        prop_assert_eq!(got, edges);
        prop_assert!(e.check_invariants().is_empty());
    }
}
