//! Combining component rotations into block rotations and back.
//!
//! A *host* is a rotation system over (part of) a block, containing real
//! edges and one virtual edge per separating pair. Gluing merges a child
//! rotation into a host along a shared pair; projection recovers a
//! component's rotation from a host by contracting everything outside the
//! component onto the virtual edge it hangs from.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::{Block, Decomposition, TriComp};
use crate::error::{internal, Result};
use crate::graph::{Graph, VertexId};
use crate::rotation::{merge_rotation_schemes, rotate_to, Embedding, Rotation};

/// Glue `child` into `host` along the pair `{s, t}` present in both.
///
/// At `s` the child's neighbours (from after `t` round to before `t`) go
/// immediately before `t`; at `t` the child's neighbours go immediately
/// after `s`. This merges the host face traversing `t -> s` with the child
/// face traversing `s -> t`. With `keep == false` the shared edge is
/// removed afterwards.
pub fn glue(
    host: &mut Rotation,
    child: &Rotation,
    s: VertexId,
    t: VertexId,
    keep: bool,
) -> Result<()> {
    if !host.has_edge(s, t) || !child.has_edge(s, t) {
        return internal(format!(
            "glue along {{{s},{t}}} which is not an edge of both sides"
        ));
    }
    for v in child.vertices() {
        if v != s && v != t && host.contains(v) {
            return internal(format!("glued rotations overlap at {v}"));
        }
    }
    let open_at = |x: VertexId, y: VertexId| -> Vec<VertexId> {
        let o = rotate_to(child.order(x), y).expect("shared edge");
        o[1..].to_vec()
    };
    let at_s = open_at(s, t);
    let at_t = open_at(t, s);
    for w in &at_s {
        host.insert_before(s, t, *w)?;
    }
    for w in at_t.iter().rev() {
        host.insert_after(t, s, *w)?;
    }
    for v in child.vertices() {
        if v != s && v != t {
            host.set_order(v, child.order(v).to_vec());
        }
    }
    if !keep {
        host.remove_edge(s, t);
    }
    Ok(())
}

/// Canonical rotation of a whole block: components glued outward from the
/// least-named one, each along its separating pair with the smaller vertex
/// as `s`.
pub fn assemble_block(
    block: &Block,
    comps: &BTreeMap<[VertexId; 3], Embedding>,
) -> Result<Rotation> {
    if block.is_bridge() {
        let (u, v) = (block.vertices[0], block.vertices[1]);
        return Ok(Rotation::from_orders([(u, vec![v]), (v, vec![u])]));
    }
    let spqr = &block.spqr;
    let emb = |i: usize| -> Result<&Embedding> {
        match comps.get(&spqr.comps[i].id.name) {
            Some(e) => Ok(e),
            None => internal(format!("no embedding for {}", spqr.comps[i].id)),
        }
    };
    let mut host = emb(0)?.rotation().clone();
    let mut placed = vec![false; spqr.comps.len()];
    placed[0] = true;
    glue_remaining(&mut host, block, comps, &mut placed)?;
    Ok(host)
}

/// Glue every unplaced component of `block` onto `host`, walking outward
/// from the placed ones. Each pair is glued with its smaller vertex as `s`.
pub fn glue_remaining(
    host: &mut Rotation,
    block: &Block,
    comps: &BTreeMap<[VertexId; 3], Embedding>,
    placed: &mut [bool],
) -> Result<()> {
    let spqr = &block.spqr;
    loop {
        let next = spqr.links.iter().find_map(|&(pi, ci)| {
            if placed[ci] {
                return None;
            }
            let p = spqr.pairs[pi];
            spqr.comps_at(p)
                .into_iter()
                .any(|c| placed[c])
                .then_some((p, ci))
        });
        let Some((p, ci)) = next else { break };
        let Some(emb) = comps.get(&spqr.comps[ci].id.name) else {
            return internal(format!("no embedding for {}", spqr.comps[ci].id));
        };
        glue(host, emb.rotation(), p.0, p.1, true)?;
        placed[ci] = true;
    }
    if placed.iter().any(|p| !p) {
        return internal(format!("SPQR-tree of block {} is disconnected", block.id));
    }
    Ok(())
}

/// Restrict a rotation to the given vertices, dropping edges that leave it.
pub fn restrict(host: &Rotation, keep: &BTreeSet<VertexId>) -> Rotation {
    Rotation::from_orders(keep.iter().filter(|v| host.contains(**v)).map(|&v| {
        (
            v,
            host.order(v)
                .iter()
                .copied()
                .filter(|w| keep.contains(w))
                .collect::<Vec<_>>(),
        )
    }))
}

/// Rotation of component `comp` induced by a host embedding of its block.
pub fn project(host: &Rotation, comp: &TriComp) -> Result<Rotation> {
    // label the pieces of host - V(comp)
    let mut label: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut attach: Vec<BTreeSet<VertexId>> = Vec::new();
    for start in host.vertices() {
        if comp.contains(start) || label.contains_key(&start) {
            continue;
        }
        let id = attach.len();
        let mut att = BTreeSet::new();
        let mut stack = vec![start];
        label.insert(start, id);
        while let Some(x) = stack.pop() {
            for &y in host.order(x) {
                if comp.contains(y) {
                    att.insert(y);
                } else if let std::collections::btree_map::Entry::Vacant(e) = label.entry(y) {
                    e.insert(id);
                    stack.push(y);
                }
            }
        }
        attach.push(att);
    }
    let mut orders = Vec::new();
    for &v in &comp.vertices {
        let mut reps: Vec<VertexId> = Vec::new();
        for &w in host.order(v) {
            let rep = if comp.contains(w) {
                w
            } else {
                let att = &attach[label[&w]];
                if att.len() != 2 || !att.contains(&v) {
                    return internal(format!("piece at {v} attaches to {att:?} in {}", comp.id));
                }
                *att.iter().find(|&&x| x != v).expect("two attachments")
            };
            if !comp.has_edge(v, rep) {
                return internal(format!("host edge {v}-{rep} is not an edge of {}", comp.id));
            }
            if reps.last() != Some(&rep) {
                reps.push(rep);
            }
        }
        while reps.len() > 1 && reps.first() == reps.last() {
            reps.pop();
        }
        let distinct: BTreeSet<VertexId> = reps.iter().copied().collect();
        if distinct.len() != reps.len() {
            return internal(format!(
                "projection onto {} is not contiguous at {v}",
                comp.id
            ));
        }
        let expected = comp.edges.iter().filter(|e| e.u == v || e.v == v).count();
        if reps.len() != expected {
            return internal(format!("projection onto {} misses edges at {v}", comp.id));
        }
        orders.push((v, reps));
    }
    Ok(Rotation::from_orders(orders))
}

/// Whole-graph rotation: per vertex, each incident block's real neighbours
/// (starting from the least) concatenated in block order.
pub fn graph_rotation(
    graph: &Graph,
    decomp: &Decomposition,
    blocks: &BTreeMap<crate::decomposition::BlockId, Rotation>,
) -> Result<Rotation> {
    let mut orders = Vec::new();
    for v in graph.vertices() {
        if graph.degree(v) == 0 {
            continue;
        }
        let mut parts = Vec::new();
        for b in decomp.blocks_of(v) {
            let Some(rot) = blocks.get(&b.id) else {
                return internal(format!("missing rotation of block {}", b.id));
            };
            let real: Vec<VertexId> = rot
                .order(v)
                .iter()
                .copied()
                .filter(|&w| graph.adjacent(v, w))
                .collect();
            let Some(&first) = real.iter().min() else {
                continue;
            };
            let open = rotate_to(&real, first).expect("present");
            let last = *open.last().expect("non-empty");
            parts.push((open, (first, last)));
        }
        orders.push((v, merge_rotation_schemes(&parts)?));
    }
    Ok(Rotation::from_orders(orders))
}
