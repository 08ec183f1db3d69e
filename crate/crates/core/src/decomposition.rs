//! BC-trees and SPQR-trees derived from the connectivity relations.
//!
//! Everything is recomputed from a [`ConnectivityIndex`] snapshot. Blocks
//! come from the pairwise `same_block` relation; triconnected components are
//! obtained by repeatedly cutting each block along its 3-connected
//! separating pairs until no pair cuts a piece any further.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::connectivity::ConnectivityIndex;
use crate::error::{precondition, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub VertexId, pub VertexId);

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriKind {
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriCompId {
    pub name: [VertexId; 3],
    pub kind: TriKind,
}

impl fmt::Display for TriCompId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.name;
        write!(f, "{:?}({a},{b},{c})", self.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeparatingPairId(pub VertexId, pub VertexId);

impl SeparatingPairId {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        SeparatingPairId(a.min(b), a.max(b))
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: VertexId) -> VertexId {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for SeparatingPairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{{{},{}}}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpqrNode {
    Comp(TriCompId),
    Pair(SeparatingPairId),
}

impl fmt::Display for SpqrNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpqrNode::Comp(c) => c.fmt(f),
            SpqrNode::Pair(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BcNode {
    Block(BlockId),
    Cut(VertexId),
}

/// Edge of a triconnected component's skeleton. An edge whose pair is an
/// adjacent P-node is virtual even if the real edge exists; the real edge
/// then belongs to the P-node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CompEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub virtual_edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriComp {
    pub id: TriCompId,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<CompEdge>,
}

impl TriComp {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().any(|e| e.u == a && e.v == b)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Spqr {
    pub comps: Vec<TriComp>,
    pub pairs: Vec<SeparatingPairId>,
    /// `(pair index, comp index)` adjacencies.
    pub links: Vec<(usize, usize)>,
    tree: Tree,
}

impl Spqr {
    fn node_index(&self, n: SpqrNode) -> Option<usize> {
        match n {
            SpqrNode::Comp(c) => self.comps.iter().position(|x| x.id.name == c.name),
            SpqrNode::Pair(p) => self
                .pairs
                .iter()
                .position(|x| *x == p)
                .map(|i| self.comps.len() + i),
        }
    }

    fn node(&self, i: usize) -> SpqrNode {
        if i < self.comps.len() {
            SpqrNode::Comp(self.comps[i].id)
        } else {
            SpqrNode::Pair(self.pairs[i - self.comps.len()])
        }
    }

    pub fn comp(&self, id: TriCompId) -> Option<&TriComp> {
        self.comps.iter().find(|c| c.id.name == id.name)
    }

    pub fn neighbours(&self, n: SpqrNode) -> Vec<SpqrNode> {
        match self.node_index(n) {
            Some(i) => self
                .tree
                .neighbours(i)
                .iter()
                .map(|&j| self.node(j))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Tree path between two nodes of this SPQR-tree, endpoints included.
    pub fn path(&self, a: SpqrNode, b: SpqrNode) -> Option<Vec<SpqrNode>> {
        let (i, j) = (self.node_index(a)?, self.node_index(b)?);
        Some(
            self.tree
                .path(i, j)?
                .into_iter()
                .map(|k| self.node(k))
                .collect(),
        )
    }

    pub fn pairs_of(&self, comp: usize) -> Vec<SeparatingPairId> {
        self.links
            .iter()
            .filter(|l| l.1 == comp)
            .map(|l| self.pairs[l.0])
            .collect()
    }

    pub fn comps_at(&self, pair: SeparatingPairId) -> Vec<usize> {
        match self.pairs.iter().position(|p| *p == pair) {
            Some(pi) => self
                .links
                .iter()
                .filter(|l| l.0 == pi)
                .map(|l| l.1)
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn is_pair(&self, a: VertexId, b: VertexId) -> bool {
        self.pairs.contains(&SeparatingPairId::new(a, b))
    }
}

#[derive(Debug, Clone)]
pub struct Block {
    pub id: BlockId,
    pub vertices: Vec<VertexId>,
    pub spqr: Spqr,
}

impl Block {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_bridge(&self) -> bool {
        self.vertices.len() == 2
    }
}

/// BC- and SPQR-tree relations of one graph version.
#[derive(Debug, Clone)]
pub struct Decomposition {
    graph: Graph,
    conn: ConnectivityIndex,
    blocks: Vec<Block>,
    cut: Vec<bool>,
    bc_tree: Tree,
}

impl Decomposition {
    pub fn new(graph: &Graph) -> Self {
        let conn = ConnectivityIndex::new(graph);
        let n = graph.domain();
        let mut block_sets: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        for e in graph.edges() {
            let set: Vec<VertexId> = graph
                .vertices()
                .filter(|&w| {
                    w == e.u()
                        || w == e.v()
                        || (same_block_raw(graph, &conn, e.u(), w)
                            && same_block_raw(graph, &conn, e.v(), w))
                })
                .collect();
            block_sets.insert(set);
        }
        let mut blocks: Vec<Block> = block_sets
            .into_iter()
            .map(|vertices| {
                let id = BlockId(vertices[0], vertices[1]);
                let spqr = if vertices.len() >= 3 {
                    build_spqr(graph, &conn, &vertices)
                } else {
                    Spqr::default()
                };
                Block { id, vertices, spqr }
            })
            .collect();
        blocks.sort_by_key(|b| b.id);

        let mut count = vec![0usize; n];
        for b in &blocks {
            for v in &b.vertices {
                count[v.index()] += 1;
            }
        }
        let cut: Vec<bool> = count.iter().map(|&c| c >= 2).collect();
        let cuts: Vec<usize> = (0..n).filter(|&v| cut[v]).collect();
        let mut bc_tree = Tree::new(blocks.len() + cuts.len());
        for (ci, &c) in cuts.iter().enumerate() {
            for (bi, b) in blocks.iter().enumerate() {
                if b.contains(VertexId(c as u32)) {
                    bc_tree.link(bi, blocks.len() + ci);
                }
            }
        }
        Decomposition {
            graph: graph.clone(),
            conn,
            blocks,
            cut,
            bc_tree,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn connectivity(&self) -> &ConnectivityIndex {
        &self.conn
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> Option<&Block> {
        self.blocks
            .binary_search_by_key(&id, |b| b.id)
            .ok()
            .map(|i| &self.blocks[i])
    }

    pub fn blocks_of(&self, v: VertexId) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(move |b| b.contains(v))
    }

    pub fn is_cut_vertex(&self, w: VertexId) -> bool {
        self.cut.get(w.index()).copied().unwrap_or(false)
    }

    pub fn cut_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.cut.len())
            .filter(|&i| self.cut[i])
            .map(|i| VertexId(i as u32))
    }

    pub fn same_block(&self, u: VertexId, v: VertexId) -> bool {
        u != v && same_block_raw(&self.graph, &self.conn, u, v)
    }

    /// Block containing both vertices, if any.
    pub fn common_block(&self, u: VertexId, v: VertexId) -> Option<&Block> {
        self.blocks.iter().find(|b| b.contains(u) && b.contains(v))
    }

    pub fn block_name(&self, u: VertexId, v: VertexId) -> Result<BlockId> {
        match self.common_block(u, v) {
            Some(b) if u != v => Ok(b.id),
            _ => precondition(format!("{u} and {v} are not in a common block")),
        }
    }

    fn bc_index(&self, x: BcNode) -> Option<usize> {
        match x {
            BcNode::Block(id) => self.blocks.binary_search_by_key(&id, |b| b.id).ok(),
            BcNode::Cut(v) => {
                if !self.is_cut_vertex(v) {
                    return None;
                }
                Some(self.blocks.len() + self.cut[..v.index()].iter().filter(|c| **c).count())
            }
        }
    }

    fn bc_node(&self, i: usize) -> BcNode {
        if i < self.blocks.len() {
            BcNode::Block(self.blocks[i].id)
        } else {
            BcNode::Cut(
                self.cut_vertices()
                    .nth(i - self.blocks.len())
                    .expect("cut index"),
            )
        }
    }

    pub fn bc_path(&self, a: BcNode, b: BcNode) -> Result<Vec<BcNode>> {
        let (Some(i), Some(j)) = (self.bc_index(a), self.bc_index(b)) else {
            return precondition("unknown BC node");
        };
        match self.bc_tree.path(i, j) {
            Some(p) => Ok(p.into_iter().map(|k| self.bc_node(k)).collect()),
            None => precondition("BC nodes lie in different components"),
        }
    }

    /// Whether `x2` lies on the BC-tree path from `x1` to `x3`, endpoints included.
    pub fn bc_between(&self, x1: BcNode, x2: BcNode, x3: BcNode) -> Result<bool> {
        let path = self.bc_path(x1, x3)?;
        if self.bc_index(x2).is_none() {
            return precondition("unknown BC node");
        }
        Ok(path.contains(&x2))
    }

    /// For a vertex in several blocks, pick the block containing `v` that is
    /// closest in the BC-tree to some block containing `toward`.
    pub fn closest_block(&self, v: VertexId, toward: VertexId) -> Option<BlockId> {
        let dist_to_target = |bi: usize| {
            let d = self.bc_tree.distances(bi);
            self.blocks
                .iter()
                .enumerate()
                .filter(|(_, b)| b.contains(toward))
                .map(|(j, _)| d[j])
                .min()
                .unwrap_or(usize::MAX)
        };
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(v))
            .min_by_key(|(i, _)| dist_to_target(*i))
            .map(|(_, b)| b.id)
    }

    pub fn is_separating_pair(&self, s: VertexId, t: VertexId) -> bool {
        match self.common_block(s, t) {
            Some(b) if s != t => b.spqr.is_pair(s, t),
            _ => false,
        }
    }

    pub fn same_tricomp(&self, a: VertexId, b: VertexId, c: VertexId) -> Option<TriCompId> {
        if a == b || b == c || a == c {
            return None;
        }
        self.blocks
            .iter()
            .flat_map(|bl| bl.spqr.comps.iter())
            .find_map(|comp| {
                (comp.contains(a) && comp.contains(b) && comp.contains(c)).then_some(comp.id)
            })
    }

    pub fn block_of_node(&self, n: SpqrNode) -> Option<&Block> {
        self.blocks.iter().find(|b| b.spqr.node_index(n).is_some())
    }

    pub fn spqr_path(&self, w1: SpqrNode, w2: SpqrNode) -> Result<Vec<SpqrNode>> {
        let Some(b) = self.block_of_node(w1) else {
            return precondition(format!("unknown SPQR node {w1}"));
        };
        match b.spqr.path(w1, w2) {
            Some(p) => Ok(p),
            None => precondition("SPQR nodes lie in different trees"),
        }
    }

    pub fn spqr_between(&self, w1: SpqrNode, w2: SpqrNode, w3: SpqrNode) -> Result<bool> {
        let path = self.spqr_path(w1, w3)?;
        if self.block_of_node(w2).map(|b| b.id) != self.block_of_node(w1).map(|b| b.id) {
            return precondition("SPQR nodes lie in different trees");
        }
        Ok(path.contains(&w2))
    }

    /// Actual connectivity level shared by two distinct vertices.
    pub fn level(&self, a: VertexId, b: VertexId) -> u8 {
        if !self.conn.connected(a, b) {
            return 0;
        }
        match self.common_block(a, b) {
            None => 1,
            Some(bl) if bl.is_bridge() => 1,
            Some(bl) => {
                let rigid = bl
                    .spqr
                    .comps
                    .iter()
                    .any(|c| c.id.kind == TriKind::R && c.contains(a) && c.contains(b));
                if rigid {
                    3
                } else {
                    2
                }
            }
        }
    }

    /// Canonical dump: node lines sorted, then edge lines sorted.
    pub fn dump(&self) -> Vec<String> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for b in &self.blocks {
            let bn = format!("{} {}", b.id.0, b.id.1);
            nodes.push(format!("B {bn} : {}", join(&b.vertices)));
            for c in &b.spqr.comps {
                let [x, y, z] = c.id.name;
                nodes.push(format!(
                    "T {bn} | {:?} {x} {y} {z} : {}",
                    c.id.kind,
                    join(&c.vertices)
                ));
            }
            for p in &b.spqr.pairs {
                nodes.push(format!("P {bn} | {} {}", p.0, p.1));
            }
            for &(pi, ci) in &b.spqr.links {
                let p = b.spqr.pairs[pi];
                let [x, y, z] = b.spqr.comps[ci].id.name;
                edges.push(format!("TP {bn} | {} {} | {x} {y} {z}", p.0, p.1));
            }
            for v in &b.vertices {
                if self.is_cut_vertex(*v) {
                    edges.push(format!("BC {v} | {bn}"));
                }
            }
        }
        for c in self.cut_vertices() {
            nodes.push(format!("C {c}"));
        }
        nodes.sort();
        edges.sort();
        nodes.extend(edges);
        nodes
    }
}

fn join(vs: &[VertexId]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn same_block_raw(g: &Graph, conn: &ConnectivityIndex, u: VertexId, v: VertexId) -> bool {
    if u == v || !conn.connected(u, v) {
        return false;
    }
    if g.adjacent(u, v) {
        return true;
    }
    if g.degree(u) == 0 || g.degree(v) == 0 {
        return false;
    }
    g.vertices()
        .filter(|&w| w != u && w != v)
        .all(|w| conn.conn_minus1(u, v, w))
}

fn is_sep_pair(conn: &ConnectivityIndex, block: &[VertexId], s: VertexId, t: VertexId) -> bool {
    if !conn.three_conn(s, t) {
        return false;
    }
    let rest: Vec<VertexId> = block
        .iter()
        .copied()
        .filter(|&w| w != s && w != t)
        .collect();
    rest.iter()
        .enumerate()
        .any(|(i, &u)| rest[i + 1..].iter().any(|&v| !conn.conn_minus2(u, v, s, t)))
}

/// Classes of `piece - {s,t}` under connectivity in `G - {s,t}`.
fn split_classes(
    conn: &ConnectivityIndex,
    piece: &[VertexId],
    s: VertexId,
    t: VertexId,
) -> Vec<Vec<VertexId>> {
    let mut classes: BTreeMap<u16, Vec<VertexId>> = BTreeMap::new();
    for &w in piece {
        if w != s && w != t {
            let l = conn
                .label_minus2(w, s, t)
                .expect("vertex outside the removed pair");
            classes.entry(l).or_default().push(w);
        }
    }
    classes.into_values().collect()
}

fn build_spqr(g: &Graph, conn: &ConnectivityIndex, block: &[VertexId]) -> Spqr {
    let mut pairs = Vec::new();
    for (i, &s) in block.iter().enumerate() {
        for &t in &block[i + 1..] {
            if is_sep_pair(conn, block, s, t) {
                pairs.push(SeparatingPairId(s, t));
            }
        }
    }

    let mut pending = vec![block.to_vec()];
    let mut pieces: Vec<Vec<VertexId>> = Vec::new();
    while let Some(piece) = pending.pop() {
        let cut = pairs.iter().find_map(|p| {
            if !(piece.contains(&p.0) && piece.contains(&p.1)) {
                return None;
            }
            let classes = split_classes(conn, &piece, p.0, p.1);
            (classes.len() >= 2).then_some((p, classes))
        });
        match cut {
            Some((p, classes)) => {
                for mut cls in classes {
                    cls.push(p.0);
                    cls.push(p.1);
                    cls.sort();
                    pending.push(cls);
                }
            }
            None => pieces.push(piece),
        }
    }
    pieces.sort();

    let mut comps: Vec<TriComp> = pieces
        .into_iter()
        .map(|vertices| {
            let mut edges = Vec::new();
            for (i, &x) in vertices.iter().enumerate() {
                for &y in &vertices[i + 1..] {
                    let p = SeparatingPairId(x, y);
                    if pairs.contains(&p) {
                        edges.push(CompEdge {
                            u: x,
                            v: y,
                            virtual_edge: true,
                        });
                    } else if g.adjacent(x, y) {
                        edges.push(CompEdge {
                            u: x,
                            v: y,
                            virtual_edge: false,
                        });
                    }
                }
            }
            let kind = if rigid(conn, &vertices) {
                TriKind::R
            } else {
                TriKind::S
            };
            let id = TriCompId {
                name: [vertices[0], vertices[1], vertices[2]],
                kind,
            };
            TriComp {
                id,
                vertices,
                edges,
            }
        })
        .collect();
    comps.sort_by_key(|c| c.id.name);

    let mut links = Vec::new();
    for (pi, p) in pairs.iter().enumerate() {
        for (ci, c) in comps.iter().enumerate() {
            if c.contains(p.0) && c.contains(p.1) {
                links.push((pi, ci));
            }
        }
    }
    let mut tree = Tree::new(comps.len() + pairs.len());
    for &(pi, ci) in &links {
        tree.link(comps.len() + pi, ci);
    }
    Spqr {
        comps,
        pairs,
        links,
        tree,
    }
}

fn rigid(conn: &ConnectivityIndex, vs: &[VertexId]) -> bool {
    if vs.len() < 4 {
        return false;
    }
    vs.iter().enumerate().all(|(i, &p)| {
        vs[i + 1..].iter().all(|&q| {
            let mut labels = vs
                .iter()
                .filter(|&&w| w != p && w != q)
                .map(|&w| conn.label_minus2(w, p, q));
            let first = labels.next().flatten();
            labels.all(|l| l == first)
        })
    })
}

/// Real edges of the graph that belong to a component skeleton (not to a P-node).
pub fn real_edges(comp: &TriComp) -> impl Iterator<Item = Edge> + '_ {
    comp.edges
        .iter()
        .filter(|e| !e.virtual_edge)
        .map(|e| Edge::new(e.u, e.v).expect("skeleton edge"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn dec(n: usize, edges: &[(u32, u32)]) -> Decomposition {
        Decomposition::new(&Graph::from_edges(n, edges).unwrap())
    }

    const BOWTIE: &[(u32, u32)] = &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)];
    const K4: &[(u32, u32)] = &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    const K4E: &[(u32, u32)] = &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    const C4: &[(u32, u32)] = &[(1, 2), (2, 3), (3, 4), (1, 4)];

    fn tri(a: u32, b: u32, c: u32, kind: TriKind) -> TriCompId {
        TriCompId {
            name: [v(a), v(b), v(c)],
            kind,
        }
    }

    #[test]
    fn cut_vertices_and_blocks() {
        let d = dec(6, BOWTIE);
        assert!(d.is_cut_vertex(v(3)));
        assert!(!d.is_cut_vertex(v(1)));
        assert!(!dec(4, &[(1, 2), (2, 3), (1, 3)]).is_cut_vertex(v(2)));
        assert!(d.same_block(v(1), v(2)));
        assert!(!d.same_block(v(1), v(4)));
        assert!(dec(3, &[(1, 2)]).same_block(v(1), v(2)));
        assert_eq!(d.block_name(v(2), v(3)).unwrap(), BlockId(v(1), v(2)));
        assert_eq!(d.block_name(v(4), v(5)).unwrap(), BlockId(v(3), v(4)));
        assert!(d.block_name(v(1), v(5)).is_err());
        let t = dec(10, &[(5, 7), (7, 9), (5, 9)]);
        assert_eq!(t.block_name(v(7), v(9)).unwrap(), BlockId(v(5), v(7)));
    }

    #[test]
    fn bc_betweenness() {
        // T1 = {1,2,3}, c1 = 3, T2 = {3,4,5}, c2 = 5, T3 = {5,6,7}
        let d = dec(
            8,
            &[
                (1, 2),
                (2, 3),
                (1, 3),
                (3, 4),
                (4, 5),
                (3, 5),
                (5, 6),
                (6, 7),
                (5, 7),
            ],
        );
        let t1 = BcNode::Block(d.block_name(v(1), v(2)).unwrap());
        let t2 = BcNode::Block(d.block_name(v(3), v(4)).unwrap());
        let t3 = BcNode::Block(d.block_name(v(6), v(7)).unwrap());
        assert!(d.bc_between(t1, BcNode::Cut(v(3)), t3).unwrap());
        assert!(!d.bc_between(t1, t3, t2).unwrap());
        assert!(d.bc_between(t1, t1, t3).unwrap());
        let two = dec(7, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let a = BcNode::Block(BlockId(v(1), v(2)));
        let b = BcNode::Block(BlockId(v(4), v(5)));
        assert!(two.bc_between(a, a, b).is_err());
    }

    #[test]
    fn separating_pairs() {
        assert!(dec(5, K4E).is_separating_pair(v(3), v(4)));
        assert!(!dec(5, C4).is_separating_pair(v(1), v(3)));
        assert!(!dec(5, K4).is_separating_pair(v(1), v(2)));
    }

    #[test]
    fn triconnected_components() {
        assert_eq!(
            dec(5, K4E).same_tricomp(v(1), v(3), v(4)),
            Some(tri(1, 3, 4, TriKind::S))
        );
        assert_eq!(
            dec(5, K4).same_tricomp(v(1), v(2), v(3)),
            Some(tri(1, 2, 3, TriKind::R))
        );
        assert_eq!(dec(5, K4E).same_tricomp(v(1), v(2), v(3)), None);
        let c4 = dec(5, C4);
        assert_eq!(
            c4.same_tricomp(v(2), v(3), v(4)),
            Some(tri(1, 2, 3, TriKind::S))
        );
    }

    fn glued_k4s() -> Decomposition {
        dec(
            7,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
    }

    #[test]
    fn spqr_paths() {
        let d = glued_k4s();
        let r1 = SpqrNode::Comp(tri(1, 2, 3, TriKind::R));
        let r2 = SpqrNode::Comp(tri(3, 4, 5, TriKind::R));
        let p = SpqrNode::Pair(SeparatingPairId(v(3), v(4)));
        assert_eq!(d.spqr_path(r1, r2).unwrap(), vec![r1, p, r2]);
        assert!(d.spqr_between(r1, p, r2).unwrap());
        assert!(!d.spqr_between(r1, r2, p).unwrap());
        let k4 = dec(5, K4);
        let r = SpqrNode::Comp(tri(1, 2, 3, TriKind::R));
        assert_eq!(k4.spqr_path(r, r).unwrap(), vec![r]);
    }

    #[test]
    fn levels() {
        let d = dec(5, K4E);
        assert_eq!(d.level(v(1), v(2)), 2);
        assert_eq!(d.level(v(3), v(4)), 2);
        let k4 = dec(6, K4);
        assert_eq!(k4.level(v(1), v(2)), 3);
        assert_eq!(k4.level(v(1), v(5)), 0);
        assert_eq!(dec(6, BOWTIE).level(v(1), v(5)), 1);
        assert_eq!(dec(3, &[(1, 2)]).level(v(1), v(2)), 1);
    }
}
