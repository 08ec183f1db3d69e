//! Coherent paths through SPQR-trees and the two-colouring of their
//! separating pairs.
//!
//! A window `(P, X, P')` is coherent when `X` is a cycle or all vertices of
//! `P` and `P'` share a face of `X`. Stored paths run from P-node to P-node
//! and cannot be extended by another coherent window at either end.
//! Colours propagate window by window: on the common face the two pair
//! edges cut the boundary into two arcs, and vertices joined by an arc
//! share a colour.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::decomposition::{
    Block, BlockId, Decomposition, SeparatingPairId, SpqrNode, TriComp, TriKind,
};
use crate::error::{internal, precondition, Result};
use crate::graph::VertexId;
use crate::rotation::{rotate_to, Embedding};

pub type CompEmbeddings = BTreeMap<[VertexId; 3], Embedding>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoherentPath {
    pub block: BlockId,
    /// Alternating nodes, starting and ending with a P-node.
    pub nodes: Vec<SpqrNode>,
    pub colours: BTreeMap<VertexId, u8>,
}

impl CoherentPath {
    pub fn pairs(&self) -> Vec<SeparatingPairId> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                SpqrNode::Pair(p) => Some(*p),
                SpqrNode::Comp(_) => None,
            })
            .collect()
    }

    /// Whether `seq` occurs contiguously among this path's P-nodes, in either direction.
    pub fn contains_pairs(&self, seq: &[SeparatingPairId]) -> bool {
        let own = self.pairs();
        let mut rev = seq.to_vec();
        rev.reverse();
        own.windows(seq.len())
            .any(|w| w == seq || w == rev.as_slice())
    }

    pub fn colour_of(&self, v: VertexId) -> Result<u8> {
        match self.colours.get(&v) {
            Some(c) => Ok(*c),
            None => precondition(format!("{v} is not a separating-pair vertex on this path")),
        }
    }
}

impl fmt::Display for CoherentPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        let cols: Vec<String> = self
            .colours
            .iter()
            .map(|(v, c)| format!("{v}={c}"))
            .collect();
        write!(
            f,
            "path {} [{}] : {}",
            self.block,
            nodes.join(" "),
            cols.join(" ")
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Colouring {
    pub paths: Vec<CoherentPath>,
}

impl Colouring {
    pub fn dump(&self) -> Vec<String> {
        self.paths.iter().map(|p| p.to_string()).collect()
    }

    pub fn in_block(&self, b: BlockId) -> impl Iterator<Item = &CoherentPath> {
        self.paths.iter().filter(move |p| p.block == b)
    }
}

fn pair_vertices(p: SeparatingPairId) -> [VertexId; 2] {
    [p.0, p.1]
}

/// Whether the window `(p, comp, q)` is coherent.
pub fn window_coherent(
    comp: &TriComp,
    emb: &Embedding,
    p: SeparatingPairId,
    q: SeparatingPairId,
) -> bool {
    if comp.id.kind == TriKind::S {
        return true;
    }
    let vs: BTreeSet<VertexId> = [p.0, p.1, q.0, q.1].into_iter().collect();
    emb.common_face(&vs.into_iter().collect::<Vec<_>>())
        .is_some()
}

/// For a coherent window, the vertex of `exit` sharing a colour with each
/// vertex of `entry`: returns `[(entry.0, m0), (entry.1, m1)]`.
pub fn window_matching(
    emb: &Embedding,
    entry: SeparatingPairId,
    exit: SeparatingPairId,
) -> Result<[(VertexId, VertexId); 2]> {
    let vs = [entry.0, entry.1, exit.0, exit.1];
    let Some(fid) = emb.common_face(&vs) else {
        return internal(format!("window {entry} {exit} has no common face"));
    };
    let trace = &emb.face(fid).expect("face").trace;
    let n = trace.len();
    // orient so that the entry pair is consecutive as (x, y)
    let start = (0..n).find(|&i| {
        let (a, b) = (trace[i], trace[(i + 1) % n]);
        (a == entry.0 && b == entry.1) || (a == entry.1 && b == entry.0)
    });
    let Some(i) = start else {
        return internal(format!(
            "entry pair {entry} is not a boundary edge of face {fid}"
        ));
    };
    let seq = rotate_to(trace, trace[i]).expect("vertex on face");
    let (x, y) = (seq[0], seq[1]);
    let Some(&z) = seq[1..].iter().find(|w| **w == exit.0 || **w == exit.1) else {
        return internal("exit pair not on face");
    };
    let other = exit.other(z);
    let m = |u: VertexId| if u == y { z } else { other };
    debug_assert!(x != y);
    Ok([(entry.0, m(entry.0)), (entry.1, m(entry.1))])
}

fn comp_index(block: &Block, n: SpqrNode) -> Option<usize> {
    match n {
        SpqrNode::Comp(c) => block.spqr.comps.iter().position(|x| x.id.name == c.name),
        SpqrNode::Pair(_) => None,
    }
}

/// Definition check on an arbitrary alternating tree path.
pub fn is_coherent(
    decomp: &Decomposition,
    comps: &CompEmbeddings,
    path: &[SpqrNode],
) -> Result<bool> {
    let Some(first) = path.first() else {
        return precondition("empty path");
    };
    let Some(block) = decomp.block_of_node(*first) else {
        return precondition(format!("unknown node {first}"));
    };
    if path.len() > 1 {
        let tree_path = block.spqr.path(*first, *path.last().expect("non-empty"));
        if tree_path.as_deref() != Some(path) {
            return precondition("not a tree path");
        }
    }
    for (i, n) in path.iter().enumerate() {
        let Some(ci) = comp_index(block, *n) else {
            continue;
        };
        let comp = &block.spqr.comps[ci];
        if comp.id.kind == TriKind::S {
            continue;
        }
        let mut vs: Vec<VertexId> = Vec::new();
        for j in [i.wrapping_sub(1), i + 1] {
            if let Some(SpqrNode::Pair(p)) = path.get(j) {
                vs.extend(pair_vertices(*p));
            }
        }
        vs.sort();
        vs.dedup();
        let Some(emb) = comps.get(&comp.id.name) else {
            return internal(format!("no embedding for {}", comp.id));
        };
        if vs.len() >= 3 && emb.common_face(&vs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All maximal coherent P-to-P paths of every block, coloured and anchored.
pub fn derive(decomp: &Decomposition, comps: &CompEmbeddings) -> Result<Colouring> {
    let mut paths = Vec::new();
    for block in decomp.blocks() {
        paths.extend(block_paths(block, comps)?);
    }
    paths.sort();
    Ok(Colouring { paths })
}

type Window = (usize, usize, usize); // (pair, comp, pair)

fn block_paths(block: &Block, comps: &CompEmbeddings) -> Result<Vec<CoherentPath>> {
    let spqr = &block.spqr;
    if spqr.pairs.is_empty() {
        return Ok(Vec::new());
    }
    let mut windows: Vec<Window> = Vec::new();
    for (ci, comp) in spqr.comps.iter().enumerate() {
        let Some(emb) = comps.get(&comp.id.name) else {
            return internal(format!("no embedding for {}", comp.id));
        };
        let ps: Vec<usize> = spqr
            .links
            .iter()
            .filter(|l| l.1 == ci)
            .map(|l| l.0)
            .collect();
        for &p in &ps {
            for &q in &ps {
                if p != q && window_coherent(comp, emb, spqr.pairs[p], spqr.pairs[q]) {
                    windows.push((p, ci, q));
                }
            }
        }
    }
    let from = |p: usize| windows.iter().filter(move |w| w.0 == p);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    // depth-first enumeration of window chains as [p0, c0, p1, c1, ...]
    let mut stack: Vec<Vec<usize>> = (0..spqr.pairs.len()).map(|p| vec![p]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("non-empty");
        let used_comps: Vec<usize> = chain.iter().skip(1).step_by(2).copied().collect();
        let used_pairs: Vec<usize> = chain.iter().step_by(2).copied().collect();
        let mut extended = false;
        for w in from(last) {
            if used_comps.contains(&w.1) || used_pairs.contains(&w.2) {
                continue;
            }
            let mut next = chain.clone();
            next.push(w.1);
            next.push(w.2);
            stack.push(next);
            extended = true;
        }
        if extended {
            continue;
        }
        let first = chain[0];
        let second_comp = chain.get(1).copied();
        let start_extensible =
            from(first).any(|w| Some(w.1) != second_comp && !used_pairs.contains(&w.2));
        if start_extensible {
            continue;
        }
        let mut rev = chain.clone();
        rev.reverse();
        found.insert(chain.min(rev));
    }
    let mut out = Vec::new();
    for chain in found {
        let mut nodes = Vec::new();
        for (i, &x) in chain.iter().enumerate() {
            nodes.push(if i % 2 == 0 {
                SpqrNode::Pair(spqr.pairs[x])
            } else {
                SpqrNode::Comp(spqr.comps[x].id)
            });
        }
        let colours = colour_chain(block, comps, &chain)?;
        out.push(CoherentPath {
            block: block.id,
            nodes,
            colours,
        });
    }
    Ok(out)
}

fn colour_chain(
    block: &Block,
    comps: &CompEmbeddings,
    chain: &[usize],
) -> Result<BTreeMap<VertexId, u8>> {
    let spqr = &block.spqr;
    let p0 = spqr.pairs[chain[0]];
    let mut colours: BTreeMap<VertexId, u8> = BTreeMap::from([(p0.0, 0), (p0.1, 1)]);
    let mut i = 1;
    while i + 1 < chain.len() {
        let (entry, comp, exit) = (
            spqr.pairs[chain[i - 1]],
            &spqr.comps[chain[i]],
            spqr.pairs[chain[i + 1]],
        );
        let emb = &comps[&comp.id.name];
        for (u, w) in window_matching(emb, entry, exit)? {
            let c = colours[&u];
            if *colours.entry(w).or_insert(c) != c {
                return internal(format!("colour conflict at {w} across {}", comp.id));
            }
        }
        i += 2;
    }
    for p in chain.iter().step_by(2).map(|&x| spqr.pairs[x]) {
        if colours[&p.0] == colours[&p.1] {
            return internal(format!("pair {p} received equal colours"));
        }
    }
    // anchor: the least pair's least vertex gets colour 0
    let least = chain
        .iter()
        .step_by(2)
        .map(|&x| spqr.pairs[x])
        .min()
        .expect("non-empty");
    if colours[&least.0] == 1 {
        for c in colours.values_mut() {
            *c ^= 1;
        }
    }
    Ok(colours)
}

/// Stored paths are coherent and every pair on them is bichromatic.
pub fn check(decomp: &Decomposition, comps: &CompEmbeddings, colouring: &Colouring) -> Result<()> {
    for path in &colouring.paths {
        if !is_coherent(decomp, comps, &path.nodes)? {
            return internal(format!("stored path is not coherent: {path}"));
        }
        for p in path.pairs() {
            if path.colour_of(p.0)? == path.colour_of(p.1)? {
                return internal(format!("pair {p} monochromatic on {path}"));
            }
        }
    }
    Ok(())
}
