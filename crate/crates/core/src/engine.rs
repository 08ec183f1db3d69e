//! Change orchestration: classify, gate, update the component embeddings,
//! then rebuild colouring, block rotations and the whole-graph rotation.
//!
//! Every change is computed into a fresh [`State`] and swapped in only on
//! success, so rejected or failed changes leave the engine untouched.

use std::collections::{BTreeMap, BTreeSet};

use crate::coherence::{self, Colouring, CompEmbeddings};
use crate::decomposition::{
    Block, BlockId, Decomposition, SeparatingPairId, SpqrNode, TriComp, TriCompId, TriKind,
};
use crate::error::{internal, precondition, EngineError, Result};
use crate::gate::{self, Verdict};
use crate::graph::{
    ChangeDirection, ChangeOutcome, ChangeStatus, DynamicGraph, Edge, EdgeChangeType, Graph,
    LoggedChange, VertexId,
};
use crate::oracle;
use crate::rotation::{insert_into_face, Embedding, Face, FaceId, Rotation};
use crate::splice::{assemble_block, glue, glue_remaining, graph_rotation, project, restrict};

/// Deliberate faults for checking that the fuzz harness notices breakage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// The gate admits every insertion.
    AdmitAll,
    /// Components on a coalesced path are never mirrored.
    SkipFlips,
}

#[derive(Debug, Clone)]
struct State {
    decomp: Decomposition,
    comps: CompEmbeddings,
    colouring: Colouring,
    blocks: BTreeMap<BlockId, Rotation>,
    graph_rot: Rotation,
}

impl State {
    fn empty(n: usize) -> Self {
        let g = Graph::new(n);
        State {
            decomp: Decomposition::new(&g),
            comps: CompEmbeddings::new(),
            colouring: Colouring::default(),
            blocks: BTreeMap::new(),
            graph_rot: Rotation::new(),
        }
    }

    fn derive(decomp: Decomposition, comps: CompEmbeddings) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for b in decomp.blocks() {
            blocks.insert(b.id, assemble_block(b, &comps)?);
        }
        let colouring = coherence::derive(&decomp, &comps)?;
        let graph_rot = graph_rotation(decomp.graph(), &decomp, &blocks)?;
        Ok(State {
            decomp,
            comps,
            colouring,
            blocks,
            graph_rot,
        })
    }
}

/// The five relation dumps, each canonical and line-oriented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dump {
    pub decomposition: Vec<String>,
    pub components: Vec<String>,
    pub colouring: Vec<String>,
    pub blocks: Vec<String>,
    pub graph: Vec<String>,
}

impl Dump {
    pub fn sections(&self) -> [(&'static str, &[String]); 5] {
        [
            ("decomposition", &self.decomposition),
            ("components", &self.components),
            ("colouring", &self.colouring),
            ("blocks", &self.blocks),
            ("graph", &self.graph),
        ]
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, lines) in self.sections() {
            out.push(format!("# {name}"));
            out.extend(lines.iter().cloned());
        }
        out
    }
}

/// Which invariant family a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Gate,
    Embedding,
    Decomposition,
    Colouring,
    Purity,
    Engine,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Check::Gate => "gate",
            Check::Embedding => "embedding",
            Check::Decomposition => "decomposition",
            Check::Colouring => "colouring",
            Check::Purity => "purity",
            Check::Engine => "engine",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.check, self.message)
    }
}

fn violation(check: Check, message: impl Into<String>) -> Violation {
    Violation {
        check,
        message: message.into(),
    }
}

/// Mirror an R skeleton so its least vertex sees its three least
/// neighbours clockwise, then rebuild faces from scratch.
fn canonical(rot: Rotation, kind: TriKind) -> Result<Embedding> {
    let mut rot = rot;
    if kind == TriKind::R {
        let Some(v) = rot.vertices().next() else {
            return internal("empty rigid component");
        };
        let mut ns = rot.order(v).to_vec();
        ns.sort();
        if ns.len() < 3 {
            return internal(format!(
                "rigid component vertex {v} has degree {}",
                ns.len()
            ));
        }
        if !rot.query(v, ns[0], ns[1], ns[2])? {
            rot.reverse();
        }
    }
    Embedding::from_rotation(rot.normalized())
}

fn to_pairs(rot: &Rotation) -> Vec<(u32, Vec<u32>)> {
    rot.vertices()
        .map(|v| (v.0, rot.order(v).iter().map(|w| w.0).collect()))
        .collect()
}

fn rotation_edges(rot: &Rotation) -> Vec<(u32, u32)> {
    rot.edges().into_iter().map(|(a, b)| (a.0, b.0)).collect()
}

fn cycle_rotation(cycle: &[VertexId]) -> Rotation {
    let k = cycle.len();
    Rotation::from_orders(
        (0..k).map(|i| (cycle[i], vec![cycle[(i + k - 1) % k], cycle[(i + 1) % k]])),
    )
}

fn permutation(order: Option<&[usize]>, k: usize) -> Result<Vec<usize>> {
    let Some(order) = order else {
        return Ok((0..k).collect());
    };
    let set: BTreeSet<usize> = order.iter().copied().collect();
    if order.len() != k || set.len() != k || set.iter().any(|&i| i >= k) {
        return precondition(format!("sub-update order must permute 0..{k}"));
    }
    Ok(order.to_vec())
}

pub struct Engine {
    dg: DynamicGraph,
    state: State,
    mutation: Option<Mutation>,
}

impl Engine {
    pub fn new(n: usize) -> Self {
        Engine {
            dg: DynamicGraph::new(n),
            state: State::empty(n),
            mutation: None,
        }
    }

    /// Insert every edge in order, failing on the first non-accepted one.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut e = Engine::new(n);
        for &(a, b) in edges {
            let out = e.insert_edge(VertexId(a), VertexId(b))?;
            if out.status != ChangeStatus::Accepted {
                return precondition(format!("edge {a}-{b}: {out}"));
            }
        }
        Ok(e)
    }

    pub fn set_mutation(&mut self, m: Option<Mutation>) {
        self.mutation = m;
    }

    pub fn domain(&self) -> usize {
        self.dg.graph().domain()
    }

    pub fn graph(&self) -> &Graph {
        self.dg.graph()
    }

    pub fn log(&self) -> &[LoggedChange] {
        self.dg.log()
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.state.decomp
    }

    pub fn components(&self) -> &CompEmbeddings {
        &self.state.comps
    }

    pub fn embedding(&self, comp: TriCompId) -> Option<&Embedding> {
        self.state.comps.get(&comp.name)
    }

    pub fn colouring(&self) -> &Colouring {
        &self.state.colouring
    }

    pub fn block_rotation(&self, id: BlockId) -> Option<&Rotation> {
        self.state.blocks.get(&id)
    }

    pub fn graph_rotation(&self) -> &Rotation {
        &self.state.graph_rot
    }

    fn edge(&self, a: VertexId, b: VertexId) -> Result<Edge> {
        self.graph().check_vertex(a)?;
        self.graph().check_vertex(b)?;
        Edge::new(a, b)
    }

    pub fn insertable(&self, a: VertexId, b: VertexId) -> Result<Verdict> {
        if self.mutation == Some(Mutation::AdmitAll) {
            let e = self.edge(a, b)?;
            if self.graph().has_edge(e) {
                return Err(EngineError::DuplicateEdge(e));
            }
            return Ok(Verdict::Admit);
        }
        gate::insertable(&self.state.decomp, &self.state.comps, a, b)
    }

    /// Levels of `{a, b}` before and after the change, without applying it.
    pub fn classify_change(
        &self,
        direction: ChangeDirection,
        a: VertexId,
        b: VertexId,
    ) -> Result<EdgeChangeType> {
        let e = self.edge(a, b)?;
        let mut g = self.graph().clone();
        match direction {
            ChangeDirection::Insert if !g.insert(e) => return Err(EngineError::DuplicateEdge(e)),
            ChangeDirection::Delete if !g.remove(e) => return Err(EngineError::AbsentEdge(e)),
            _ => {}
        }
        let after = Decomposition::new(&g).level(a, b);
        Ok(EdgeChangeType {
            direction,
            before: self.state.decomp.level(a, b),
            after,
        })
    }

    /// Number of independent per-block sub-updates of a change: blocks on
    /// the BC-path for a cross-block insertion, resulting blocks for a
    /// deletion that splits a block, zero otherwise.
    pub fn sub_updates(
        &self,
        direction: ChangeDirection,
        a: VertexId,
        b: VertexId,
    ) -> Result<usize> {
        let e = self.edge(a, b)?;
        let d = &self.state.decomp;
        Ok(match direction {
            ChangeDirection::Insert => {
                if self.graph().has_edge(e) || d.level(a, b) != 1 {
                    0
                } else {
                    gate::virtual_insertions(d, a, b)?.len()
                }
            }
            ChangeDirection::Delete => {
                if !self.graph().has_edge(e) {
                    return Ok(0);
                }
                let mut g = self.graph().clone();
                g.remove(e);
                let d2 = Decomposition::new(&g);
                match d.common_block(a, b) {
                    Some(b0) if !b0.is_bridge() => split_blocks(&d2, b0).len(),
                    _ => 0,
                }
            }
        })
    }

    pub fn insert_edge(&mut self, a: VertexId, b: VertexId) -> Result<ChangeOutcome> {
        self.insert_edge_ordered(a, b, None)
    }

    pub fn delete_edge(&mut self, a: VertexId, b: VertexId) -> Result<ChangeOutcome> {
        self.delete_edge_ordered(a, b, None)
    }

    /// As [`Engine::insert_edge`], running the per-block sub-updates in `order`.
    pub fn insert_edge_ordered(
        &mut self,
        a: VertexId,
        b: VertexId,
        order: Option<&[usize]>,
    ) -> Result<ChangeOutcome> {
        let e = self.edge(a, b)?;
        if self.graph().has_edge(e) {
            return Ok(ChangeOutcome {
                status: ChangeStatus::NoopDuplicate,
                change: None,
            });
        }
        if self.insertable(a, b)? == Verdict::Reject {
            return Ok(ChangeOutcome {
                status: ChangeStatus::RejectedNonplanar,
                change: None,
            });
        }
        let mut g = self.graph().clone();
        g.insert(e);
        let d2 = Decomposition::new(&g);
        let change = EdgeChangeType {
            direction: ChangeDirection::Insert,
            before: self.state.decomp.level(a, b),
            after: d2.level(a, b),
        };
        let hosts = self.insert_hosts(&d2, a, b, change.before, order)?;
        let next = self.rebuild(d2, hosts)?;
        self.commit(next, ChangeDirection::Insert, e, change);
        Ok(ChangeOutcome {
            status: ChangeStatus::Accepted,
            change: Some(change),
        })
    }

    /// As [`Engine::delete_edge`], running the per-block sub-updates in `order`.
    pub fn delete_edge_ordered(
        &mut self,
        a: VertexId,
        b: VertexId,
        order: Option<&[usize]>,
    ) -> Result<ChangeOutcome> {
        let e = self.edge(a, b)?;
        if !self.graph().has_edge(e) {
            return Ok(ChangeOutcome {
                status: ChangeStatus::NoopAbsent,
                change: None,
            });
        }
        let mut g = self.graph().clone();
        g.remove(e);
        let d2 = Decomposition::new(&g);
        let change = EdgeChangeType {
            direction: ChangeDirection::Delete,
            before: self.state.decomp.level(a, b),
            after: d2.level(a, b),
        };
        let hosts = self.delete_hosts(&d2, a, b, order)?;
        let next = self.rebuild(d2, hosts)?;
        self.commit(next, ChangeDirection::Delete, e, change);
        Ok(ChangeOutcome {
            status: ChangeStatus::Accepted,
            change: Some(change),
        })
    }

    fn commit(&mut self, next: State, direction: ChangeDirection, e: Edge, change: EdgeChangeType) {
        self.state = next;
        *self.dg.graph_mut() = self.state.decomp.graph().clone();
        self.dg.record(
            direction,
            e,
            ChangeOutcome {
                status: ChangeStatus::Accepted,
                change: Some(change),
            },
        );
    }

    /// Host rotations, keyed by new block, from which changed components
    /// are projected after an insertion.
    fn insert_hosts(
        &self,
        d2: &Decomposition,
        a: VertexId,
        b: VertexId,
        before: u8,
        order: Option<&[usize]>,
    ) -> Result<BTreeMap<BlockId, Rotation>> {
        let mut hosts = BTreeMap::new();
        let Some(target) = d2.common_block(a, b) else {
            return internal("inserted edge is in no block");
        };
        match before {
            // a new bridge: no component changes
            0 => {}
            // blocks along the BC-path fuse around a new cycle
            1 => {
                let subs = gate::virtual_insertions(&self.state.decomp, a, b)?;
                let mut parts: Vec<Option<Rotation>> = vec![None; subs.len()];
                for i in permutation(order, subs.len())? {
                    let (block, p, q) = subs[i];
                    if !block.is_bridge() {
                        parts[i] = Some(self.virtual_insert(d2, block, p, q)?);
                    }
                }
                let mut cycle = vec![a];
                cycle.extend(subs.iter().map(|s| s.2));
                let mut host = cycle_rotation(&cycle);
                for (part, &(_, p, q)) in parts.iter().zip(&subs) {
                    if let Some(r) = part {
                        glue(&mut host, r, p.min(q), p.max(q), true)?;
                    }
                }
                hosts.insert(target.id, host);
            }
            _ => {
                let Some(block) = self.state.decomp.common_block(a, b) else {
                    return internal("endpoints share no block");
                };
                hosts.insert(target.id, self.virtual_insert(d2, block, a, b)?);
            }
        }
        Ok(hosts)
    }

    fn delete_hosts(
        &self,
        d2: &Decomposition,
        a: VertexId,
        b: VertexId,
        order: Option<&[usize]>,
    ) -> Result<BTreeMap<BlockId, Rotation>> {
        let mut hosts = BTreeMap::new();
        let Some(block) = self.state.decomp.common_block(a, b) else {
            return internal("deleted edge is in no block");
        };
        if block.is_bridge() {
            return Ok(hosts);
        }
        let mut host = self.state.blocks[&block.id].clone();
        if !d2.is_separating_pair(a, b) {
            host.remove_edge(a, b);
        }
        let pieces = split_blocks(d2, block);
        for i in permutation(order, pieces.len())? {
            let piece = pieces[i];
            let keep: BTreeSet<VertexId> = piece.vertices.iter().copied().collect();
            hosts.insert(piece.id, restrict(&host, &keep));
        }
        Ok(hosts)
    }

    /// Rotation of `block + {p, q}` where `{p, q}` lies inside the block.
    fn virtual_insert(
        &self,
        d2: &Decomposition,
        block: &Block,
        p: VertexId,
        q: VertexId,
    ) -> Result<Rotation> {
        let comps = &self.state.comps;
        if block.spqr.is_pair(p, q) || self.graph().adjacent(p, q) {
            return assemble_block(block, comps);
        }
        let spqr = &block.spqr;
        let Some((xp, xq)) = gate::closest_comps(block, p, q) else {
            return internal(format!("{p} or {q} is in no component of {}", block.id));
        };
        let path = spqr
            .path(
                SpqrNode::Comp(spqr.comps[xp].id),
                SpqrNode::Comp(spqr.comps[xq].id),
            )
            .expect("nodes of one tree");
        let idx = |c: TriCompId| {
            spqr.comps
                .iter()
                .position(|x| x.id == c)
                .expect("comp on path")
        };
        let path_comps: Vec<usize> = path
            .iter()
            .filter_map(|n| match n {
                SpqrNode::Comp(c) => Some(idx(*c)),
                SpqrNode::Pair(_) => None,
            })
            .collect();
        let pairs: Vec<SeparatingPairId> = path
            .iter()
            .filter_map(|n| match n {
                SpqrNode::Pair(s) => Some(*s),
                SpqrNode::Comp(_) => None,
            })
            .collect();
        let emb_of = |i: usize| -> Result<Embedding> {
            comps.get(&spqr.comps[i].id.name).cloned().ok_or_else(|| {
                EngineError::Internal(format!("no embedding for {}", spqr.comps[i].id))
            })
        };
        let mut placed = vec![false; spqr.comps.len()];
        let mut host;
        if pairs.is_empty() {
            // both endpoints in one skeleton: split the shared face
            let mut x = emb_of(xp)?;
            let Some(f) = x.common_face(&[p, q]) else {
                return internal(format!(
                    "{p} and {q} share no face of {}",
                    spqr.comps[xp].id
                ));
            };
            x.insert_edge(f, p, q)?;
            host = x.rotation().clone();
            placed[xp] = true;
        } else {
            let (col_a, col_b) = self.path_colours(block, &pairs)?;
            let m = pairs.len();
            let mut embs = Vec::with_capacity(m + 1);
            for (j, &ci) in path_comps.iter().enumerate() {
                let mut x = emb_of(ci)?;
                let kind = spqr.comps[ci].id.kind;
                let want = |f: &Face| -> bool {
                    if j == 0 {
                        f.has_dart(col_a[0], col_b[0]) && f.contains(p)
                    } else if j == m {
                        f.has_dart(col_b[m - 1], col_a[m - 1]) && f.contains(q)
                    } else {
                        f.has_dart(col_b[j - 1], col_a[j - 1])
                            && f.contains(col_a[j])
                            && f.contains(col_b[j])
                    }
                };
                self.orient(&mut x, kind, want)?;
                if j > 0 && j < m {
                    let f = x.faces().iter().find(|f| want(f)).expect("oriented");
                    if !f.has_dart(col_a[j], col_b[j]) {
                        return internal(format!(
                            "colouring disagrees with the faces of {}",
                            spqr.comps[ci].id
                        ));
                    }
                }
                embs.push(x);
            }
            let f0 = embs[0]
                .faces()
                .iter()
                .find(|f| f.has_dart(col_a[0], col_b[0]) && f.contains(p));
            let Some(f0) = f0 else {
                return internal("no start face on the coalesced path");
            };
            let pi = f0.trace.iter().position(|&v| v == p).expect("p on face");
            let w = f0.trace[(pi + 1) % f0.trace.len()];
            host = embs[0].rotation().clone();
            placed[path_comps[0]] = true;
            for j in 1..=m {
                let (s, t) = (col_b[j - 1], col_a[j - 1]);
                let keep = d2.graph().adjacent(s, t) || d2.is_separating_pair(s, t);
                glue(&mut host, embs[j].rotation(), s, t, keep)?;
                placed[path_comps[j]] = true;
            }
            let faces = host.trace_faces();
            let phi = faces.iter().find(|f| {
                let n = f.len();
                (0..n).any(|i| f[i] == p && f[(i + 1) % n] == w)
            });
            match phi {
                Some(f) if f.contains(&q) => insert_into_face(&mut host, f, p, q)?,
                _ => return internal(format!("{p} and {q} do not meet on the coalesced face")),
            }
        }
        glue_remaining(&mut host, block, comps, &mut placed)?;
        Ok(host)
    }

    /// Colour classes `(a_i, b_i)` of consecutive pairs, from a stored
    /// coherent path through all of them.
    fn path_colours(
        &self,
        block: &Block,
        pairs: &[SeparatingPairId],
    ) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
        let Some(cp) = self
            .state
            .colouring
            .in_block(block.id)
            .find(|cp| cp.contains_pairs(pairs))
        else {
            return internal(format!(
                "no stored coherent path through the pairs of {}",
                block.id
            ));
        };
        let mut col_a = Vec::new();
        let mut col_b = Vec::new();
        for s in pairs {
            if cp.colour_of(s.0)? == 0 {
                col_a.push(s.0);
                col_b.push(s.1);
            } else {
                col_a.push(s.1);
                col_b.push(s.0);
            }
        }
        Ok((col_a, col_b))
    }

    /// Mirror a rigid skeleton if needed so that some face satisfies `want`.
    fn orient(&self, x: &mut Embedding, kind: TriKind, want: impl Fn(&Face) -> bool) -> Result<()> {
        if x.faces().iter().any(&want) {
            return Ok(());
        }
        if kind == TriKind::R && self.mutation != Some(Mutation::SkipFlips) {
            x.flip();
            if x.faces().iter().any(&want) {
                return Ok(());
            }
        }
        internal("no face of a path component fits the colouring")
    }

    fn unchanged(&self, comp: &TriComp) -> Option<&Embedding> {
        let old = self
            .state
            .decomp
            .blocks()
            .iter()
            .flat_map(|b| b.spqr.comps.iter())
            .find(|c| c.id.name == comp.id.name)?;
        (old == comp)
            .then(|| self.state.comps.get(&comp.id.name))
            .flatten()
    }

    fn rebuild(&self, d2: Decomposition, hosts: BTreeMap<BlockId, Rotation>) -> Result<State> {
        let mut comps = CompEmbeddings::new();
        for block in d2.blocks() {
            let mut fitted = None;
            for comp in &block.spqr.comps {
                if let Some(old) = self.unchanged(comp) {
                    comps.insert(comp.id.name, old.clone());
                    continue;
                }
                if fitted.is_none() {
                    let Some(host) = hosts.get(&block.id) else {
                        return internal(format!(
                            "component {} changed outside the updated blocks",
                            comp.id
                        ));
                    };
                    fitted = Some(fit_host(host, block, &d2)?);
                }
                let rot = project(fitted.as_ref().expect("fitted"), comp)?;
                comps.insert(comp.id.name, canonical(rot, comp.id.kind)?);
            }
        }
        State::derive(d2, comps)
    }

    /// Clockwise query at `v` in the whole-graph rotation.
    pub fn graph_rotation_query(
        &self,
        v: VertexId,
        a: VertexId,
        b: VertexId,
        c: VertexId,
    ) -> Result<bool> {
        for w in [v, a, b, c] {
            self.graph().check_vertex(w)?;
        }
        for w in [a, b, c] {
            if !self.graph().adjacent(v, w) {
                return precondition(format!("{w} is not a neighbour of {v}"));
            }
        }
        self.state.graph_rot.query(v, a, b, c)
    }

    /// The face of the component holding `a, b, c`, and whether the triple is clockwise on it.
    pub fn face_query(
        &self,
        a: VertexId,
        b: VertexId,
        c: VertexId,
    ) -> Result<Option<(TriCompId, FaceId, bool)>> {
        for w in [a, b, c] {
            self.graph().check_vertex(w)?;
        }
        let Some(id) = self.state.decomp.same_tricomp(a, b, c) else {
            return Ok(None);
        };
        let emb = &self.state.comps[&id.name];
        Ok(emb.face_query(a, b, c).map(|(f, cw)| (id, f, cw)))
    }

    pub fn dump(&self) -> Dump {
        let mut components = Vec::new();
        for b in self.state.decomp.blocks() {
            for c in &b.spqr.comps {
                components.push(format!("comp {}", c.id));
                self.state.comps[&c.id.name].dump(&mut components, " ");
            }
        }
        let mut blocks = Vec::new();
        for (id, rot) in &self.state.blocks {
            if rot.vertices().count() < 3 {
                continue;
            }
            blocks.push(format!("block {id}"));
            blocks.extend(rot.to_string().lines().map(|l| format!("  {l}")));
        }
        Dump {
            decomposition: self.state.decomp.dump(),
            components,
            colouring: self.state.colouring.dump(),
            blocks,
            graph: self
                .state
                .graph_rot
                .to_string()
                .lines()
                .map(str::to_string)
                .collect(),
        }
    }

    /// Full invariant suite against the oracles; returns every violation found.
    pub fn check_invariants(&self) -> Vec<Violation> {
        let mut bad = Vec::new();
        let n = self.domain();
        let st = &self.state;
        let valid = |edges: &[(u32, u32)], rot: &Rotation| {
            matches!(
                oracle::validate_rotation(n, edges, &to_pairs(rot)),
                Ok(true)
            )
        };
        for b in st.decomp.blocks() {
            for c in &b.spqr.comps {
                let Some(emb) = st.comps.get(&c.id.name) else {
                    bad.push(violation(
                        Check::Embedding,
                        format!("missing embedding for {}", c.id),
                    ));
                    continue;
                };
                if let Err(e) = emb.check() {
                    bad.push(violation(
                        Check::Embedding,
                        format!("component {}: {e}", c.id),
                    ));
                }
                let mut edges: Vec<(u32, u32)> = c.edges.iter().map(|e| (e.u.0, e.v.0)).collect();
                edges.sort();
                if rotation_edges(emb.rotation()) != edges || !valid(&edges, emb.rotation()) {
                    bad.push(violation(
                        Check::Embedding,
                        format!(
                            "component {} rotation is not a planar embedding of its skeleton",
                            c.id
                        ),
                    ));
                }
            }
            let Some(rot) = st.blocks.get(&b.id) else {
                bad.push(violation(
                    Check::Embedding,
                    format!("missing rotation of block {}", b.id),
                ));
                continue;
            };
            if !valid(&rotation_edges(rot), rot) {
                bad.push(violation(
                    Check::Embedding,
                    format!("block {} rotation is not planar", b.id),
                ));
            }
            for v in &b.vertices {
                if !rot.contains(*v) {
                    bad.push(violation(
                        Check::Embedding,
                        format!("block {} rotation misses {v}", b.id),
                    ));
                }
            }
        }
        let edges = self.graph().edge_pairs();
        if rotation_edges(&st.graph_rot) != edges || !valid(&edges, &st.graph_rot) {
            bad.push(violation(
                Check::Embedding,
                "graph rotation is not a planar embedding of the graph",
            ));
        }
        match oracle::static_decomposition(n, &edges) {
            Ok(expected) if expected == st.decomp.dump() => {}
            Ok(_) => bad.push(violation(
                Check::Decomposition,
                "decomposition differs from the oracle",
            )),
            Err(e) => bad.push(violation(Check::Decomposition, format!("oracle: {e}"))),
        }
        if let Err(e) = coherence::check(&st.decomp, &st.comps, &st.colouring) {
            bad.push(violation(Check::Colouring, format!("{e}")));
        }
        bad
    }
}

/// Blocks of `d2` carved out of the old block `old` (ignoring bridges).
fn split_blocks<'a>(d2: &'a Decomposition, old: &Block) -> Vec<&'a Block> {
    d2.blocks()
        .iter()
        .filter(|b| !b.is_bridge() && b.vertices.iter().all(|v| old.contains(*v)))
        .collect()
}

/// Restrict a host to `block`, keep only real edges and virtual edges of
/// current separating pairs, and add any missing virtual edge inside a
/// face holding both of its ends.
fn fit_host(host: &Rotation, block: &Block, d2: &Decomposition) -> Result<Rotation> {
    let keep: BTreeSet<VertexId> = block.vertices.iter().copied().collect();
    let mut rot = restrict(host, &keep);
    let g = d2.graph();
    for (u, v) in rot.edges() {
        if !g.adjacent(u, v) && !block.spqr.is_pair(u, v) {
            rot.remove_edge(u, v);
        }
    }
    for s in &block.spqr.pairs {
        if rot.has_edge(s.0, s.1) {
            continue;
        }
        let faces = rot.trace_faces();
        let Some(f) = faces.iter().find(|f| f.contains(&s.0) && f.contains(&s.1)) else {
            return internal(format!(
                "pair {s} shares no face in the host of {}",
                block.id
            ));
        };
        insert_into_face(&mut rot, f, s.0, s.1)?;
    }
    Ok(rot)
}
