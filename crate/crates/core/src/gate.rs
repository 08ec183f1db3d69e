//! Admissibility of an edge insertion against the current embeddings.

use crate::coherence::CompEmbeddings;
use crate::decomposition::{BcNode, Block, Decomposition, SpqrNode, TriKind};
use crate::error::{internal, precondition, EngineError, Result};
use crate::graph::{Edge, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Admit,
    Reject,
}

/// The pairs that a cross-block insertion turns into per-block virtual
/// insertions, one per block on the BC-path from `a` to `b`.
pub fn virtual_insertions(
    decomp: &Decomposition,
    a: VertexId,
    b: VertexId,
) -> Result<Vec<(&Block, VertexId, VertexId)>> {
    let (Some(ba), Some(bb)) = (decomp.closest_block(a, b), decomp.closest_block(b, a)) else {
        return precondition(format!("{a} or {b} is isolated"));
    };
    let path = decomp.bc_path(BcNode::Block(ba), BcNode::Block(bb))?;
    let mut out = Vec::new();
    let mut from = a;
    for (i, node) in path.iter().enumerate() {
        let BcNode::Block(id) = node else { continue };
        let to = match path.get(i + 1) {
            Some(BcNode::Cut(c)) => *c,
            Some(BcNode::Block(_)) => return internal("BC path does not alternate"),
            None => b,
        };
        let block = decomp.block(*id).expect("block on path");
        out.push((block, from, to));
        from = to;
    }
    Ok(out)
}

/// Comps containing `p` and `q` that are closest to each other in the SPQR-tree.
pub(crate) fn closest_comps(block: &Block, p: VertexId, q: VertexId) -> Option<(usize, usize)> {
    let spqr = &block.spqr;
    let node = |i: usize| SpqrNode::Comp(spqr.comps[i].id);
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, x) in spqr.comps.iter().enumerate() {
        if !x.contains(p) {
            continue;
        }
        for (j, y) in spqr.comps.iter().enumerate() {
            if !y.contains(q) {
                continue;
            }
            let d = spqr.path(node(i), node(j)).map_or(usize::MAX, |p| p.len());
            if best.is_none_or(|b| d < b.0) {
                best = Some((d, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Whether the block stays planar when `{p, q}` is added inside it.
pub fn block_admits(
    block: &Block,
    comps: &CompEmbeddings,
    p: VertexId,
    q: VertexId,
) -> Result<bool> {
    if block.is_bridge() || block.spqr.is_pair(p, q) {
        return Ok(true);
    }
    let spqr = &block.spqr;
    let Some((xp, xq)) = closest_comps(block, p, q) else {
        return internal(format!(
            "{p} or {q} is in no component of block {}",
            block.id
        ));
    };
    let emb = |i: usize| {
        comps
            .get(&spqr.comps[i].id.name)
            .ok_or_else(|| EngineError::Internal(format!("no embedding for {}", spqr.comps[i].id)))
    };
    if xp == xq {
        let comp = &spqr.comps[xp];
        return Ok(comp.id.kind == TriKind::S
            || comp.has_edge(p, q)
            || emb(xp)?.common_face(&[p, q]).is_some());
    }
    let path = spqr
        .path(
            SpqrNode::Comp(spqr.comps[xp].id),
            SpqrNode::Comp(spqr.comps[xq].id),
        )
        .expect("same tree");
    for (i, n) in path.iter().enumerate() {
        let SpqrNode::Comp(c) = n else { continue };
        if c.kind == TriKind::S {
            continue;
        }
        let mut vs = Vec::new();
        if i == 0 {
            vs.push(p);
        }
        if i + 1 == path.len() {
            vs.push(q);
        }
        for j in [i.wrapping_sub(1), i + 1] {
            if let Some(SpqrNode::Pair(s)) = path.get(j) {
                vs.extend([s.0, s.1]);
            }
        }
        let ci = spqr
            .comps
            .iter()
            .position(|x| x.id == *c)
            .expect("comp on path");
        if emb(ci)?.common_face(&vs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn insertable(
    decomp: &Decomposition,
    comps: &CompEmbeddings,
    a: VertexId,
    b: VertexId,
) -> Result<Verdict> {
    let e = Edge::new(a, b)?;
    let g = decomp.graph();
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if g.has_edge(e) {
        return Err(EngineError::DuplicateEdge(e));
    }
    let ok = match decomp.level(a, b) {
        0 => true,
        _ => match decomp.common_block(a, b) {
            Some(block) => block_admits(block, comps, a, b)?,
            None => {
                let mut all = true;
                for (block, p, q) in virtual_insertions(decomp, a, b)? {
                    all &= block_admits(block, comps, p, q)?;
                }
                all
            }
        },
    };
    Ok(if ok { Verdict::Admit } else { Verdict::Reject })
}
