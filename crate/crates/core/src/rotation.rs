//! Rotation systems and face schemes.
//!
//! A rotation stores, per vertex, its neighbours in clockwise cyclic order.
//! Faces are traced with the rule: after dart `u -> v` follow `v -> w`
//! where `w` is the clockwise predecessor of `u` around `v`. Every face is
//! stored in that trace order; its clockwise order is the trace order,
//! except for the outer face whose clockwise order is reversed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{internal, precondition, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rotation {
    orders: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Rotation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_orders<I, J>(orders: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, J)>,
        J: IntoIterator<Item = VertexId>,
    {
        Rotation {
            orders: orders
                .into_iter()
                .map(|(v, o)| (v, o.into_iter().collect()))
                .collect(),
        }
    }

    /// Convenience constructor from raw `u32` labels.
    pub fn from_u32(orders: &[(u32, &[u32])]) -> Self {
        Self::from_orders(orders.iter().map(|(v, o)| {
            (
                VertexId(*v),
                o.iter().map(|w| VertexId(*w)).collect::<Vec<_>>(),
            )
        }))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.orders.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.orders.contains_key(&v)
    }

    pub fn order(&self, v: VertexId) -> &[VertexId] {
        self.orders.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn set_order(&mut self, v: VertexId, order: Vec<VertexId>) {
        self.orders.insert(v, order);
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.orders.remove(&v);
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.order(a).contains(&b)
    }

    pub fn edge_count(&self) -> usize {
        self.orders.values().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges as `(min, max)` pairs.
    pub fn edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        for (&v, o) in &self.orders {
            for &w in o {
                out.insert((v.min(w), v.max(w)));
            }
        }
        out
    }

    fn position(&self, v: VertexId, w: VertexId) -> Option<usize> {
        self.order(v).iter().position(|&x| x == w)
    }

    pub fn succ(&self, v: VertexId, w: VertexId) -> Option<VertexId> {
        let o = self.order(v);
        self.position(v, w).map(|i| o[(i + 1) % o.len()])
    }

    pub fn pred(&self, v: VertexId, w: VertexId) -> Option<VertexId> {
        let o = self.order(v);
        self.position(v, w).map(|i| o[(i + o.len() - 1) % o.len()])
    }

    /// Whether `(a, b, c)` occur clockwise around `v`.
    pub fn query(&self, v: VertexId, a: VertexId, b: VertexId, c: VertexId) -> Result<bool> {
        if a == b || b == c || a == c {
            return precondition("rotation query needs three distinct neighbours");
        }
        let (Some(i), Some(j), Some(k)) = (
            self.position(v, a),
            self.position(v, b),
            self.position(v, c),
        ) else {
            return precondition(format!("rotation query at {v} with a non-neighbour"));
        };
        Ok(cyclic_between(i, j, k))
    }

    /// Insert `new` immediately before `anchor` in the order around `v`.
    pub fn insert_before(&mut self, v: VertexId, anchor: VertexId, new: VertexId) -> Result<()> {
        let Some(i) = self.position(v, anchor) else {
            return internal(format!("{anchor} is not a neighbour of {v}"));
        };
        self.orders
            .get_mut(&v)
            .expect("vertex present")
            .insert(i, new);
        Ok(())
    }

    /// Insert `new` immediately after `anchor` in the order around `v`.
    pub fn insert_after(&mut self, v: VertexId, anchor: VertexId, new: VertexId) -> Result<()> {
        let Some(i) = self.position(v, anchor) else {
            return internal(format!("{anchor} is not a neighbour of {v}"));
        };
        self.orders
            .get_mut(&v)
            .expect("vertex present")
            .insert(i + 1, new);
        Ok(())
    }

    pub fn add_edge_isolated(&mut self, a: VertexId, b: VertexId) {
        self.orders.entry(a).or_default().push(b);
        self.orders.entry(b).or_default().push(a);
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        for (x, y) in [(a, b), (b, a)] {
            if let Some(o) = self.orders.get_mut(&x) {
                o.retain(|&w| w != y);
            }
        }
    }

    /// Reverse every cyclic order (mirror image).
    pub fn reverse(&mut self) {
        for o in self.orders.values_mut() {
            o.reverse();
        }
    }

    /// Every vertex order rotated to start at its least neighbour.
    pub fn normalized(&self) -> Rotation {
        Rotation {
            orders: self
                .orders
                .iter()
                .map(|(&v, o)| (v, rotate_to_min(o)))
                .collect(),
        }
    }

    /// Each neighbour list must be symmetric and free of duplicates.
    pub fn check_symmetric(&self) -> Result<()> {
        for (&v, o) in &self.orders {
            let set: BTreeSet<_> = o.iter().collect();
            if set.len() != o.len() || set.contains(&v) {
                return internal(format!("rotation at {v} repeats a neighbour or loops"));
            }
            for &w in o {
                if !self.order(w).contains(&v) {
                    return internal(format!("rotation has dart {v}->{w} without its reverse"));
                }
            }
        }
        Ok(())
    }

    /// Face boundaries in trace order.
    pub fn trace_faces(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut faces = Vec::new();
        for (&u, o) in &self.orders {
            for &v in o {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut x, mut y) = (u, v);
                while seen.insert((x, y)) {
                    face.push(x);
                    let Some(z) = self.pred(y, x) else { break };
                    (x, y) = (y, z);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Vertices reachable from `start` through rotation edges.
    pub fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in self.order(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Euler characteristic check per connected component (isolated vertices ignored).
    pub fn is_planar_embedding(&self) -> bool {
        if self.check_symmetric().is_err() {
            return false;
        }
        let faces = self.trace_faces();
        let mut done: BTreeSet<VertexId> = BTreeSet::new();
        for v in self.vertices() {
            if done.contains(&v) || self.order(v).is_empty() {
                continue;
            }
            let comp = self.component_of(v);
            let e: usize = comp.iter().map(|&x| self.order(x).len()).sum::<usize>() / 2;
            let f = faces.iter().filter(|fc| comp.contains(&fc[0])).count();
            if comp.len() + f != e + 2 {
                return false;
            }
            done.extend(comp);
        }
        true
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&v, o) in &self.orders {
            writeln!(f, "{v}: {}", join(&rotate_to_min(o)))?;
        }
        Ok(())
    }
}

pub(crate) fn join(vs: &[VertexId]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whether index `j` is met strictly between `i` and `k` walking forward cyclically.
fn cyclic_between(i: usize, j: usize, k: usize) -> bool {
    (i < j && j < k) || (j < k && k < i) || (k < i && i < j)
}

pub(crate) fn rotate_to_min(o: &[VertexId]) -> Vec<VertexId> {
    match o.iter().enumerate().min_by_key(|(_, v)| **v) {
        Some((i, _)) => o[i..].iter().chain(&o[..i]).copied().collect(),
        None => Vec::new(),
    }
}

/// Rotate a cyclic sequence so it starts at `v`.
pub(crate) fn rotate_to(o: &[VertexId], v: VertexId) -> Option<Vec<VertexId>> {
    let i = o.iter().position(|&x| x == v)?;
    Some(o[i..].iter().chain(&o[..i]).copied().collect())
}

/// Lexicographically least triple occurring in cyclic order in `cycle`.
pub fn least_triple(cycle: &[VertexId]) -> Option<[VertexId; 3]> {
    if cycle.len() < 3 {
        return None;
    }
    let seq = rotate_to_min(cycle);
    let (yi, &y) = seq[1..seq.len() - 1]
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)?;
    let z = *seq[yi + 2..].iter().min()?;
    Some([seq[0], y, z])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub [VertexId; 3]);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Boundary in trace order, starting at its least vertex.
    pub trace: Vec<VertexId>,
}

impl Face {
    fn new(trace: Vec<VertexId>) -> Result<Self> {
        let trace = rotate_to_min(&trace);
        match least_triple(&trace) {
            Some(t) => Ok(Face {
                id: FaceId(t),
                trace,
            }),
            None => internal("face with fewer than three vertices"),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.trace.contains(&v)
    }

    /// Whether the directed edge `a -> b` is traversed by this face.
    pub fn has_dart(&self, a: VertexId, b: VertexId) -> bool {
        let n = self.trace.len();
        (0..n).any(|i| self.trace[i] == a && self.trace[(i + 1) % n] == b)
    }

    fn in_trace_order(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        let pos = |x| self.trace.iter().position(|&y| y == x);
        match (pos(a), pos(b), pos(c)) {
            (Some(i), Some(j), Some(k)) => cyclic_between(i, j, k),
            _ => false,
        }
    }
}

/// Extended embedding of one skeleton: rotation plus its traced faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: Rotation,
    faces: Vec<Face>,
    outer: FaceId,
}

impl Embedding {
    /// Trace faces of `rotation`; the greatest face becomes outer.
    pub fn from_rotation(rotation: Rotation) -> Result<Self> {
        rotation.check_symmetric()?;
        let mut faces = rotation
            .trace_faces()
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>>>()?;
        faces.sort_by_key(|f| f.id);
        if faces.windows(2).any(|w| w[0].id == w[1].id) {
            return internal("two faces share a name");
        }
        let Some(last) = faces.last() else {
            return internal("embedding without faces");
        };
        let outer = last.id;
        Ok(Embedding {
            rotation,
            faces,
            outer,
        })
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer(&self) -> FaceId {
        self.outer
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.iter().find(|f| f.id == id)
    }

    /// Clockwise boundary of a face (reversed trace for the outer face).
    pub fn clockwise(&self, id: FaceId) -> Option<Vec<VertexId>> {
        let f = self.face(id)?;
        let mut t = f.trace.clone();
        if id == self.outer {
            t.reverse();
            t = rotate_to_min(&t);
        }
        Some(t)
    }

    pub fn rotation_query(
        &self,
        v: VertexId,
        a: VertexId,
        b: VertexId,
        c: VertexId,
    ) -> Result<bool> {
        self.rotation.query(v, a, b, c)
    }

    /// The face on which `(a, b, c)` is clockwise, else a face containing all three.
    pub fn face_query(&self, a: VertexId, b: VertexId, c: VertexId) -> Option<(FaceId, bool)> {
        if a == b || b == c || a == c {
            return None;
        }
        let mut fallback = None;
        for f in &self.faces {
            if !(f.contains(a) && f.contains(b) && f.contains(c)) {
                continue;
            }
            let traced = f.in_trace_order(a, b, c);
            let cw = if f.id == self.outer { !traced } else { traced };
            if cw {
                return Some((f.id, true));
            }
            fallback.get_or_insert((f.id, false));
        }
        fallback
    }

    pub fn common_face(&self, vs: &[VertexId]) -> Option<FaceId> {
        self.faces
            .iter()
            .find(|f| vs.iter().all(|&v| f.contains(v)))
            .map(|f| f.id)
    }

    pub fn face_with_dart(&self, a: VertexId, b: VertexId) -> Option<FaceId> {
        self.faces.iter().find(|f| f.has_dart(a, b)).map(|f| f.id)
    }

    pub fn make_outer_face(&mut self, f: FaceId) -> Result<()> {
        if self.face(f).is_none() {
            return precondition(format!("unknown face {f}"));
        }
        self.outer = f;
        Ok(())
    }

    /// Mirror the embedding; face names are recomputed and the outer
    /// face follows its boundary.
    pub fn flip(&mut self) {
        let outer_set: BTreeSet<VertexId> = self
            .face(self.outer)
            .map(|f| f.trace.iter().copied().collect())
            .unwrap_or_default();
        let outer_trace = self
            .face(self.outer)
            .map(|f| f.trace.clone())
            .unwrap_or_default();
        self.rotation.reverse();
        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .map(|f| {
                let mut t = f.trace.clone();
                t.reverse();
                Face::new(t).expect("face keeps its length")
            })
            .collect();
        faces.sort_by_key(|f| f.id);
        let mut rev = outer_trace;
        rev.reverse();
        let rev = rotate_to_min(&rev);
        self.outer = faces
            .iter()
            .find(|f| f.trace == rev)
            .or_else(|| {
                faces
                    .iter()
                    .find(|f| f.trace.iter().copied().collect::<BTreeSet<_>>() == outer_set)
            })
            .map(|f| f.id)
            .unwrap_or(faces[0].id);
        self.faces = faces;
    }

    /// Merge the two faces on either side of `{u, v}` in the face scheme.
    /// The rotation is left untouched; callers drop the edge separately.
    pub fn merge_faces(
        &mut self,
        f1: FaceId,
        f2: FaceId,
        u: VertexId,
        v: VertexId,
    ) -> Result<FaceId> {
        if f1 == f2 {
            return precondition("merge_faces needs two distinct faces");
        }
        let (Some(a), Some(b)) = (self.face(f1), self.face(f2)) else {
            return precondition("merge_faces with an unknown face");
        };
        let (first, second) = if a.has_dart(u, v) && b.has_dart(v, u) {
            (a, b)
        } else if a.has_dart(v, u) && b.has_dart(u, v) {
            (b, a)
        } else {
            return precondition(format!(
                "faces {f1} and {f2} are not separated by {{{u},{v}}}"
            ));
        };
        // first traverses u -> v, second traverses v -> u
        let p = rotate_to(&first.trace, v).expect("v on face");
        let q = rotate_to(&second.trace, u).expect("u on face");
        let mut merged: Vec<VertexId> = p.clone();
        merged.extend_from_slice(&q[1..q.len() - 1]);
        let was_outer = self.outer == f1 || self.outer == f2;
        let face = Face::new(merged)?;
        let id = face.id;
        self.faces.retain(|f| f.id != f1 && f.id != f2);
        self.faces.push(face);
        self.faces.sort_by_key(|f| f.id);
        if was_outer {
            self.outer = id;
        }
        Ok(id)
    }

    /// Split face `f` by a new chord `{u, v}` in the face scheme only.
    /// Returns the side traversing `u -> v` first, then the other.
    pub fn split_face(&mut self, f: FaceId, u: VertexId, v: VertexId) -> Result<(FaceId, FaceId)> {
        let Some(face) = self.face(f) else {
            return precondition(format!("unknown face {f}"));
        };
        if !(face.contains(u) && face.contains(v)) || u == v {
            return precondition(format!("{u} and {v} are not both on face {f}"));
        }
        if self.rotation.has_edge(u, v) {
            return precondition(format!("edge {{{u},{v}}} already present"));
        }
        let t = rotate_to(&face.trace, u).expect("u on face");
        let j = t.iter().position(|&x| x == v).expect("v on face");
        // trace u, s.., v, r..: sides are u..v closed by v -> u, and v..u closed by u -> v
        let side_s = Face::new(t[..=j].to_vec())?;
        let mut rest = t[j..].to_vec();
        rest.push(u);
        let side_r = Face::new(rest)?;
        let was_outer = self.outer == f;
        self.faces.retain(|x| x.id != f);
        let (a, b) = (side_s.id, side_r.id);
        self.faces.push(side_s);
        self.faces.push(side_r);
        self.faces.sort_by_key(|x| x.id);
        if was_outer {
            self.outer = a.max(b);
        }
        Ok((b, a))
    }

    /// Insert the chord `{u, v}` into face `f`, updating rotation and faces.
    pub fn insert_edge(&mut self, f: FaceId, u: VertexId, v: VertexId) -> Result<(FaceId, FaceId)> {
        let Some(face) = self.face(f) else {
            return precondition(format!("unknown face {f}"));
        };
        let trace = face.trace.clone();
        let sides = self.split_face(f, u, v)?;
        insert_into_face(&mut self.rotation, &trace, u, v)?;
        Ok(sides)
    }

    /// Remove the edge `{u, v}`, merging the two faces it separates.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<FaceId> {
        let (Some(f1), Some(f2)) = (self.face_with_dart(u, v), self.face_with_dart(v, u)) else {
            return precondition(format!("{{{u},{v}}} is not an edge"));
        };
        let id = self.merge_faces(f1, f2, u, v)?;
        self.rotation.remove_edge(u, v);
        Ok(id)
    }

    /// Faces agree with a fresh trace of the rotation and Euler's formula holds.
    pub fn check(&self) -> Result<()> {
        let fresh = Embedding::from_rotation(self.rotation.clone())?;
        if fresh.faces != self.faces {
            return internal("face scheme differs from the traced rotation");
        }
        if self.face(self.outer).is_none() {
            return internal("outer face is not a face");
        }
        if !self.rotation.is_planar_embedding() {
            return internal("embedding violates Euler's formula");
        }
        Ok(())
    }

    /// Per vertex clockwise cycle, then per face its clockwise boundary.
    pub fn dump(&self, out: &mut Vec<String>, prefix: &str) {
        for v in self.rotation.vertices() {
            out.push(format!(
                "{prefix} rot {v} : {}",
                join(&rotate_to_min(self.rotation.order(v)))
            ));
        }
        for f in &self.faces {
            let mark = if f.id == self.outer { " outer" } else { "" };
            let cw = self.clockwise(f.id).expect("face exists");
            out.push(format!("{prefix} face {}{mark} : {}", f.id, join(&cw)));
        }
    }
}

/// Insert edge `{u, v}` into the face whose trace is `trace`, adjusting only
/// the rotations at `u` and `v`.
pub fn insert_into_face(
    rot: &mut Rotation,
    trace: &[VertexId],
    u: VertexId,
    v: VertexId,
) -> Result<()> {
    let n = trace.len();
    let incoming = |x: VertexId| (0..n).find(|&i| trace[(i + 1) % n] == x).map(|i| trace[i]);
    let (Some(xu), Some(xv)) = (incoming(u), incoming(v)) else {
        return internal(format!("{u} or {v} missing from face"));
    };
    rot.insert_before(u, xu, v)?;
    rot.insert_before(v, xv, u)?;
    Ok(())
}

/// Merge cyclic orders around one vertex: each `C_i` is cut open between its
/// consecutive anchors `t_i, s_i` and the pieces are concatenated as
/// `s_1 .. t_1, s_2 .. t_2, ..`.
pub fn merge_rotation_schemes(
    orders: &[(Vec<VertexId>, (VertexId, VertexId))],
) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (c, (s, t)) in orders {
        if c.is_empty() {
            return precondition("empty cyclic order");
        }
        let Some(open) = rotate_to(c, *s) else {
            return precondition(format!("anchor {s} not in its order"));
        };
        if open.last() != Some(t) {
            return precondition(format!("anchors {t},{s} are not consecutive"));
        }
        for &v in &open {
            if !seen.insert(v) {
                return precondition(format!("orders overlap at {v}"));
            }
        }
        out.extend(open);
    }
    Ok(out)
}
