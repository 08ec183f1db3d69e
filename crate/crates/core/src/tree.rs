//! Small undirected tree helper used for BC- and SPQR-tree paths.

use std::collections::VecDeque;

#[derive(Debug, Clone, Default)]
pub(crate) struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(nodes: usize) -> Self {
        Tree {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    pub fn neighbours(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    /// Node sequence from `a` to `b`, both inclusive; `None` if unreachable.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[b] == usize::MAX {
            return None;
        }
        let mut out = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            out.push(x);
        }
        out.reverse();
        Some(out)
    }

    /// Distances from `a` to every node (`usize::MAX` if unreachable).
    pub fn distances(&self, a: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}
