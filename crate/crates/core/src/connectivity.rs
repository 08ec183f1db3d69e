//! Connectivity in `G`, `G - x` and `G - {x, y}` for every removable set.
//!
//! The index is a snapshot: component labels for every removal set are
//! computed once per graph version, so each query is a table lookup.

use std::collections::VecDeque;

use crate::error::{precondition, Result};
use crate::graph::{Graph, VertexId};

const REMOVED: u16 = u16::MAX;

#[derive(Debug, Clone)]
pub struct ConnectivityIndex {
    n: usize,
    base: Vec<u16>,
    /// `pairs[slot(x, y)]` labels components of `G - {x, y}`; `x == y` means `G - x`.
    pairs: Vec<Vec<u16>>,
}

fn slot(n: usize, x: usize, y: usize) -> usize {
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    x * n - x * (x + 1) / 2 + y
}

fn label(g: &Graph, removed: &[usize]) -> Vec<u16> {
    let n = g.domain();
    let mut lab = vec![REMOVED; n];
    let mut next = 0u16;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if lab[s] != REMOVED || removed.contains(&s) {
            continue;
        }
        lab[s] = next;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbours(VertexId(v as u32)) {
                let w = w.index();
                if lab[w] == REMOVED && !removed.contains(&w) {
                    lab[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    lab
}

impl ConnectivityIndex {
    pub fn new(g: &Graph) -> Self {
        let n = g.domain();
        let mut pairs = vec![Vec::new(); n * (n + 1) / 2];
        for x in 0..n {
            for y in x..n {
                pairs[slot(n, x, y)] = label(g, &[x, y]);
            }
        }
        ConnectivityIndex {
            n,
            base: label(g, &[]),
            pairs,
        }
    }

    pub fn domain(&self) -> usize {
        self.n
    }

    pub fn connected(&self, u: VertexId, v: VertexId) -> bool {
        self.base[u.index()] == self.base[v.index()]
    }

    /// Unchecked form of `connected_avoiding`: false if `u` or `v` is removed.
    pub fn conn_minus1(&self, u: VertexId, v: VertexId, x: VertexId) -> bool {
        let lab = &self.pairs[slot(self.n, x.index(), x.index())];
        let a = lab[u.index()];
        a != REMOVED && a == lab[v.index()]
    }

    /// Unchecked form of `connected_avoiding_pair`: false if `u` or `v` is removed.
    pub fn conn_minus2(&self, u: VertexId, v: VertexId, x: VertexId, y: VertexId) -> bool {
        let lab = &self.pairs[slot(self.n, x.index(), y.index())];
        let a = lab[u.index()];
        a != REMOVED && a == lab[v.index()]
    }

    /// Component label of `v` in `G - {x, y}`, `None` if `v` was removed.
    pub fn label_minus2(&self, v: VertexId, x: VertexId, y: VertexId) -> Option<u16> {
        let a = self.pairs[slot(self.n, x.index(), y.index())][v.index()];
        (a != REMOVED).then_some(a)
    }

    pub fn connected_avoiding(&self, u: VertexId, v: VertexId, x: VertexId) -> Result<bool> {
        if u == x || v == x {
            return precondition(format!("avoided vertex {x} is an endpoint"));
        }
        Ok(self.conn_minus1(u, v, x))
    }

    pub fn connected_avoiding_pair(
        &self,
        u: VertexId,
        v: VertexId,
        x: VertexId,
        y: VertexId,
    ) -> Result<bool> {
        if x == y {
            return precondition("avoided vertices must be distinct");
        }
        if [u, v].iter().any(|w| *w == x || *w == y) {
            return precondition("endpoints must not be avoided");
        }
        Ok(self.conn_minus2(u, v, x, y))
    }

    /// Unchecked Menger test; requires `s != t`.
    pub fn three_conn(&self, s: VertexId, t: VertexId) -> bool {
        let others: Vec<VertexId> = (0..self.n as u32)
            .map(VertexId)
            .filter(|w| *w != s && *w != t)
            .collect();
        for (i, &x) in others.iter().enumerate() {
            for &y in &others[i + 1..] {
                if !self.conn_minus2(s, t, x, y) {
                    return false;
                }
            }
        }
        if others.len() == 1 {
            return self.conn_minus1(s, t, others[0]);
        }
        self.connected(s, t)
    }

    pub fn three_connected_pair(&self, s: VertexId, t: VertexId) -> Result<bool> {
        if s == t {
            return precondition("three_connected_pair needs distinct vertices");
        }
        Ok(self.three_conn(s, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: usize, edges: &[(u32, u32)]) -> ConnectivityIndex {
        ConnectivityIndex::new(&Graph::from_edges(n, edges).unwrap())
    }

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    const K4: &[(u32, u32)] = &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    const C4: &[(u32, u32)] = &[(1, 2), (2, 3), (3, 4), (1, 4)];

    #[test]
    fn plain_connectivity() {
        let p = idx(4, &[(1, 2), (2, 3)]);
        assert!(p.connected(v(1), v(3)));
        assert!(p.connected(v(1), v(1)));
        let t = idx(7, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        assert!(!t.connected(v(1), v(4)));
    }

    #[test]
    fn avoiding_one() {
        assert!(!idx(4, &[(1, 2), (2, 3)])
            .connected_avoiding(v(1), v(3), v(2))
            .unwrap());
        assert!(idx(4, &[(1, 2), (2, 3), (1, 3)])
            .connected_avoiding(v(1), v(3), v(2))
            .unwrap());
        assert!(idx(5, K4).connected_avoiding(v(1), v(2), v(4)).unwrap());
        assert!(idx(5, K4).connected_avoiding(v(1), v(2), v(1)).is_err());
    }

    #[test]
    fn avoiding_two() {
        assert!(!idx(5, C4)
            .connected_avoiding_pair(v(2), v(4), v(1), v(3))
            .unwrap());
        assert!(idx(5, K4)
            .connected_avoiding_pair(v(1), v(2), v(3), v(4))
            .unwrap());
        let c5 = idx(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
        assert!(!c5.connected_avoiding_pair(v(1), v(3), v(2), v(5)).unwrap());
        assert!(c5.connected_avoiding_pair(v(1), v(3), v(2), v(2)).is_err());
    }

    #[test]
    fn menger_pairs() {
        assert!(idx(5, K4).three_connected_pair(v(1), v(2)).unwrap());
        assert!(!idx(5, C4).three_connected_pair(v(1), v(3)).unwrap());
        let k4e = idx(5, &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(k4e.three_connected_pair(v(3), v(4)).unwrap());
        assert!(k4e.three_connected_pair(v(3), v(3)).is_err());
    }
}
