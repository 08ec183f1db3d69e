//! Vertex domain, undirected simple graphs and the change log.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{EngineError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(EngineError::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(self) -> VertexId {
        self.u
    }

    pub fn v(self) -> VertexId {
        self.v
    }

    pub fn other(self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChangeDirection {
    Insert,
    Delete,
}

/// Connectivity level of the endpoints before and after a change, each in 0..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeChangeType {
    pub direction: ChangeDirection,
    pub before: u8,
    pub after: u8,
}

impl fmt::Display for EdgeChangeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.before, self.after)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChangeStatus {
    Accepted,
    RejectedNonplanar,
    NoopDuplicate,
    NoopAbsent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChangeOutcome {
    pub status: ChangeStatus,
    pub change: Option<EdgeChangeType>,
}

impl fmt::Display for ChangeOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.status, self.change) {
            (ChangeStatus::Accepted, Some(t)) => write!(f, "accepted {t}"),
            (ChangeStatus::Accepted, None) => write!(f, "accepted"),
            (ChangeStatus::RejectedNonplanar, _) => write!(f, "rejected nonplanar"),
            (ChangeStatus::NoopDuplicate, _) => write!(f, "noop duplicate"),
            (ChangeStatus::NoopAbsent, _) => write!(f, "noop absent"),
        }
    }
}

/// Simple undirected graph over the fixed domain `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<VertexId>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            let e = g.edge(a, b)?;
            if !g.insert(e) {
                return Err(EngineError::DuplicateEdge(e));
            }
        }
        Ok(g)
    }

    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.n {
            Ok(())
        } else {
            Err(EngineError::OutOfDomain {
                vertex: v.0,
                domain: self.n,
            })
        }
    }

    /// Builds a validated edge inside the domain.
    pub fn edge(&self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<Edge> {
        let (a, b) = (a.into(), b.into());
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Edge::new(a, b)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n as u32).map(VertexId)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.adj[a.index()].contains(&b)
    }

    pub fn neighbours(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Returns false if the edge was already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        self.adj[e.u.index()].insert(e.v);
        self.adj[e.v.index()].insert(e.u);
        true
    }

    /// Returns false if the edge was absent.
    pub fn remove(&mut self, e: Edge) -> bool {
        if !self.edges.remove(&e) {
            return false;
        }
        self.adj[e.u.index()].remove(&e.v);
        self.adj[e.v.index()].remove(&e.u);
        true
    }

    pub fn edge_pairs(&self) -> Vec<(u32, u32)> {
        self.edges.iter().map(|e| (e.u.0, e.v.0)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoggedChange {
    pub direction: ChangeDirection,
    pub edge: Edge,
    pub outcome: ChangeOutcome,
}

/// Graph plus the log of every requested change.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    graph: Graph,
    log: Vec<LoggedChange>,
}

impl DynamicGraph {
    pub fn new(n: usize) -> Self {
        DynamicGraph {
            graph: Graph::new(n),
            log: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn log(&self) -> &[LoggedChange] {
        &self.log
    }

    /// Applies a change without any planarity gate. Duplicates and absent
    /// deletions are no-ops and leave the log untouched.
    pub fn apply_raw(&mut self, direction: ChangeDirection, e: Edge) -> Result<ChangeStatus> {
        self.graph.check_vertex(e.v())?;
        let status = match direction {
            ChangeDirection::Insert if self.graph.insert(e) => ChangeStatus::Accepted,
            ChangeDirection::Insert => ChangeStatus::NoopDuplicate,
            ChangeDirection::Delete if self.graph.remove(e) => ChangeStatus::Accepted,
            ChangeDirection::Delete => ChangeStatus::NoopAbsent,
        };
        if status == ChangeStatus::Accepted {
            self.record(
                direction,
                e,
                ChangeOutcome {
                    status,
                    change: None,
                },
            );
        }
        Ok(status)
    }

    pub(crate) fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    pub(crate) fn record(
        &mut self,
        direction: ChangeDirection,
        edge: Edge,
        outcome: ChangeOutcome,
    ) {
        self.log.push(LoggedChange {
            direction,
            edge,
            outcome,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_is_canonical() {
        let e = Edge::new(5, 2).unwrap();
        assert_eq!((e.u(), e.v()), (VertexId(2), VertexId(5)));
        assert_eq!(e, Edge::new(2, 5).unwrap());
        assert!(matches!(Edge::new(3, 3), Err(EngineError::SelfLoop(_))));
    }

    #[test]
    fn duplicate_raw_insert_is_noop() {
        let mut g = DynamicGraph::new(4);
        let e = Edge::new(1, 2).unwrap();
        assert_eq!(
            g.apply_raw(ChangeDirection::Insert, e).unwrap(),
            ChangeStatus::Accepted
        );
        assert_eq!(
            g.apply_raw(ChangeDirection::Insert, e).unwrap(),
            ChangeStatus::NoopDuplicate
        );
        assert_eq!(g.graph().edge_count(), 1);
        assert_eq!(g.log().len(), 1);
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let g = Graph::new(4);
        assert!(matches!(
            g.edge(1, 7),
            Err(EngineError::OutOfDomain { vertex: 7, .. })
        ));
    }
}
