//! From-scratch reference implementations for differential testing.
//!
//! Nothing here depends on the engine's data structures: inputs are a
//! domain size and a plain edge list, graphs are adjacency bitmasks, and
//! every relation is evaluated by fresh searches.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub const MAX_DOMAIN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("domain {0} exceeds the oracle budget of {MAX_DOMAIN}")]
    Budget(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
}

type Mask = u64;

#[derive(Debug, Clone)]
struct BitGraph {
    n: usize,
    adj: Vec<Mask>,
}

fn bit(v: usize) -> Mask {
    1u64 << v
}

fn members(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| m & bit(i) != 0)
}

impl BitGraph {
    fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self, OracleError> {
        if n > MAX_DOMAIN {
            return Err(OracleError::Budget(n));
        }
        let mut adj = vec![0; n];
        for &(a, b) in edges {
            let (a, b) = (a as usize, b as usize);
            if a >= n || b >= n || a == b {
                return Err(OracleError::Malformed(format!("edge ({a},{b})")));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(BitGraph { n, adj })
    }

    fn all(&self) -> Mask {
        if self.n == 64 {
            !0
        } else {
            bit(self.n) - 1
        }
    }

    /// Vertices reachable from `s` inside `allowed`.
    fn reach(&self, s: usize, allowed: Mask) -> Mask {
        if allowed & bit(s) == 0 {
            return 0;
        }
        let mut seen = bit(s);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    fn conn(&self, u: usize, v: usize, avoid: Mask) -> bool {
        self.reach(u, self.all() & !avoid) & bit(v) != 0
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }
}

/// Exact planarity test: each block is embedded by the
/// Demoucron-Malgrange-Pertuiset fragment method.
pub fn static_planar(n: usize, edges: &[(u32, u32)]) -> Result<bool, OracleError> {
    let g = BitGraph::new(n, edges)?;
    let m = g.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    let active = g.adj.iter().filter(|a| **a != 0).count();
    if active >= 3 && m > 3 * active - 6 {
        return Ok(false);
    }
    for block in oracle_blocks(&g) {
        if members(block).count() >= 3 && !dmp_planar(&g, block) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertex sets of blocks with at least one edge, via the pairwise definition.
fn oracle_blocks(g: &BitGraph) -> Vec<Mask> {
    let mut out: BTreeSet<Mask> = BTreeSet::new();
    for u in 0..g.n {
        for v in members(g.adj[u]) {
            if v < u {
                continue;
            }
            let mut set = bit(u) | bit(v);
            for w in 0..g.n {
                if w != u && w != v && same_block(g, u, w) && same_block(g, v, w) {
                    set |= bit(w);
                }
            }
            out.insert(set);
        }
    }
    out.into_iter().collect()
}

fn same_block(g: &BitGraph, u: usize, v: usize) -> bool {
    if u == v || !g.conn(u, v, 0) {
        return false;
    }
    if g.adjacent(u, v) {
        return true;
    }
    if g.adj[u] == 0 || g.adj[v] == 0 {
        return false;
    }
    (0..g.n)
        .filter(|&w| w != u && w != v)
        .all(|w| g.conn(u, v, bit(w)))
}

fn dmp_planar(g: &BitGraph, block: Mask) -> bool {
    let adj: Vec<Mask> = (0..g.n)
        .map(|v| {
            if block & bit(v) != 0 {
                g.adj[v] & block
            } else {
                0
            }
        })
        .collect();
    let Some(cycle) = find_cycle(&adj, block) else {
        return true;
    };
    let mut in_h: Mask = cycle.iter().fold(0, |m, &v| m | bit(v));
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];
    let total_edges = members(block)
        .map(|v| adj[v].count_ones() as usize)
        .sum::<usize>()
        / 2;

    while h_edges.len() < total_edges {
        // fragments: (attachments, path finder data)
        let mut fragments: Vec<(Mask, Fragment)> = Vec::new();
        for u in members(in_h) {
            for v in members(adj[u] & in_h) {
                if u < v && !h_edges.contains(&(u, v)) {
                    fragments.push((bit(u) | bit(v), Fragment::Chord(u, v)));
                }
            }
        }
        let mut seen: Mask = 0;
        for s in members(block & !in_h) {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in members(frontier) {
                    next |= adj[v];
                }
                next &= block & !in_h & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            let attach = members(comp).fold(0, |m, v| m | adj[v]) & in_h;
            fragments.push((attach, Fragment::Component(comp)));
        }
        let admissible = |att: Mask| -> Vec<usize> {
            (0..faces.len())
                .filter(|&i| {
                    let fm = faces[i].iter().fold(0, |m, &v| m | bit(v));
                    att & !fm == 0
                })
                .collect()
        };
        let mut choice = None;
        for (att, frag) in &fragments {
            let adm = admissible(*att);
            if adm.is_empty() {
                return false;
            }
            if adm.len() == 1 || choice.is_none() {
                let forced = adm.len() == 1;
                choice = Some((*att, frag.clone(), adm[0]));
                if forced {
                    break;
                }
            }
        }
        let Some((att, frag, fi)) = choice else {
            return true;
        };
        let path = match frag {
            Fragment::Chord(u, v) => vec![u, v],
            Fragment::Component(comp) => {
                let a1 = members(att).next().expect("fragment has an attachment");
                fragment_path(&adj, comp, a1, att & !bit(a1))
            }
        };
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h |= bit(v);
        }
        let face = faces.swap_remove(fi);
        let (x, y) = (path[0], *path.last().expect("path"));
        let i = face
            .iter()
            .position(|&v| v == x)
            .expect("attachment on face");
        let rot: Vec<usize> = face[i..].iter().chain(&face[..i]).copied().collect();
        let j = rot
            .iter()
            .position(|&v| v == y)
            .expect("attachment on face");
        let inner = &path[1..path.len() - 1];
        // rot = x .. y .. ; side one: x..y then path back to x, side two: y..x then path to y
        let mut f1: Vec<usize> = rot[..=j].to_vec();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = rot[j..].to_vec();
        f2.push(x);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

#[derive(Debug, Clone)]
enum Fragment {
    Chord(usize, usize),
    Component(Mask),
}

/// Any cycle of the block: a non-tree edge closed through the BFS tree.
fn find_cycle(adj: &[Mask], block: Mask) -> Option<Vec<usize>> {
    let root = members(block).next()?;
    let mut parent = vec![usize::MAX; adj.len()];
    parent[root] = root;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for w in members(adj[v]) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let to_root = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != v {
            v = parent[v];
            p.push(v);
        }
        p
    };
    for &u in &order {
        for v in members(adj[u]) {
            if parent[u] == v || parent[v] == u {
                continue;
            }
            let (pu, pv) = (to_root(u), to_root(v));
            let lca = *pu.iter().find(|x| pv.contains(x)).expect("common root");
            let mut cyc: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
            cyc.push(lca);
            let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
            cyc.extend(back.into_iter().rev());
            return Some(cyc);
        }
    }
    None
}

/// Path from attachment `a1` through `comp` to some vertex of `targets`.
fn fragment_path(adj: &[Mask], comp: Mask, a1: usize, targets: Mask) -> Vec<usize> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::new();
    for c in members(adj[a1] & comp) {
        parent.insert(c, a1);
        queue.push_back(c);
    }
    while let Some(v) = queue.pop_front() {
        if let Some(t) = members(adj[v] & targets).next() {
            let mut path = vec![t, v];
            let mut x = v;
            while let Some(&p) = parent.get(&x) {
                path.push(p);
                if p == a1 {
                    break;
                }
                x = p;
            }
            path.reverse();
            return path;
        }
        for w in members(adj[v] & comp) {
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

/// Euler check of a rotation system by face tracing.
///
/// `rotation` lists, for each vertex with edges, its neighbours in cyclic
/// order; it must cover every incidence of `edges` exactly once.
pub fn validate_rotation(
    n: usize,
    edges: &[(u32, u32)],
    rotation: &[(u32, Vec<u32>)],
) -> Result<bool, OracleError> {
    let g = BitGraph::new(n, edges)?;
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, o) in rotation {
        let v = *v as usize;
        if v >= n || !order[v].is_empty() {
            return Err(OracleError::Malformed(format!("rotation entry for {v}")));
        }
        order[v] = o.iter().map(|&w| w as usize).collect();
    }
    for v in 0..n {
        let listed = order[v].iter().fold(0u64, |m, &w| m | bit(w));
        if listed != g.adj[v] || order[v].len() != g.adj[v].count_ones() as usize {
            return Err(OracleError::Malformed(format!(
                "rotation at {v} does not match its incidences"
            )));
        }
    }
    // next dart after u->v is v->succ_v(u); reversing the rule only mirrors faces
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut face_of_vertex_comp: BTreeMap<Mask, usize> = BTreeMap::new();
    let mut comp_of = vec![0u64; n];
    for v in 0..n {
        if g.adj[v] != 0 {
            comp_of[v] = g.reach(v, g.all());
        }
    }
    for u in 0..n {
        for &v in &order[u] {
            if used.contains(&(u, v)) {
                continue;
            }
            let (mut x, mut y) = (u, v);
            while used.insert((x, y)) {
                let o = &order[y];
                let i = o.iter().position(|&w| w == x).expect("symmetric rotation");
                let z = o[(i + 1) % o.len()];
                (x, y) = (y, z);
            }
            *face_of_vertex_comp.entry(comp_of[u]).or_default() += 1;
        }
    }
    for (comp, faces) in face_of_vertex_comp {
        let vs = comp.count_ones() as usize;
        let es = members(comp)
            .map(|v| g.adj[v].count_ones() as usize)
            .sum::<usize>()
            / 2;
        if vs + faces != es + 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// BC- and SPQR-tree dump computed from the definitions, in the engine's
/// dump format.
pub fn static_decomposition(n: usize, edges: &[(u32, u32)]) -> Result<Vec<String>, OracleError> {
    let g = BitGraph::new(n, edges)?;
    let blocks = oracle_blocks(&g);
    let cut: Vec<usize> = (0..n)
        .filter(|&w| {
            (0..n).any(|u| {
                (u + 1..n).any(|v| u != w && v != w && g.conn(u, v, 0) && !g.conn(u, v, bit(w)))
            })
        })
        .collect();
    let three_conn = |s: usize, t: usize| {
        (0..n).filter(|&x| x != s && x != t).all(|x| {
            (x + 1..n)
                .filter(|&y| y != s && y != t)
                .all(|y| g.conn(s, t, bit(x) | bit(y)))
        }) && g.conn(s, t, 0)
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if !three_conn(s, t) {
                continue;
            }
            let sep = (0..n).filter(|&u| u != s && u != t).any(|u| {
                (u + 1..n).filter(|&v| v != s && v != t).any(|v| {
                    g.conn(u, v, 0)
                        && g.conn(u, v, bit(s))
                        && g.conn(u, v, bit(t))
                        && !g.conn(u, v, bit(s) | bit(t))
                })
            });
            if sep {
                pairs.push((s, t));
            }
        }
    }

    let mut nodes = Vec::new();
    let mut tree_edges = Vec::new();
    for &b in &blocks {
        let bv: Vec<usize> = members(b).collect();
        let bn = format!("{} {}", bv[0], bv[1]);
        nodes.push(format!("B {bn} : {}", join(&bv)));
        for &c in &cut {
            if b & bit(c) != 0 {
                tree_edges.push(format!("BC {c} | {bn}"));
            }
        }
        if bv.len() < 3 {
            continue;
        }
        let block_pairs: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(s, t)| b & bit(s) != 0 && b & bit(t) != 0)
            .collect();
        let valid = |tri: [usize; 3]| {
            pairs.iter().all(|&(s, t)| {
                let rest: Vec<usize> = tri.iter().copied().filter(|&x| x != s && x != t).collect();
                rest.windows(2).all(|w| g.conn(w[0], w[1], bit(s) | bit(t)))
            })
        };
        let mut triples: Vec<[usize; 3]> = Vec::new();
        for i in 0..bv.len() {
            for j in i + 1..bv.len() {
                for k in j + 1..bv.len() {
                    let t = [bv[i], bv[j], bv[k]];
                    if valid(t) {
                        triples.push(t);
                    }
                }
            }
        }
        let tmask = |t: &[usize; 3]| bit(t[0]) | bit(t[1]) | bit(t[2]);
        let valid_set: BTreeSet<Mask> = triples.iter().map(tmask).collect();
        // union-find over triples; two triples join when their 4-set is all valid
        let mut root: Vec<usize> = (0..triples.len()).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        for i in 0..triples.len() {
            for j in i + 1..triples.len() {
                let four = tmask(&triples[i]) | tmask(&triples[j]);
                if four.count_ones() != 4 {
                    continue;
                }
                let all_valid = members(four).all(|drop| valid_set.contains(&(four & !bit(drop))));
                if all_valid {
                    let (a, c) = (find(&mut root, i), find(&mut root, j));
                    root[a] = c;
                }
            }
        }
        let mut classes: BTreeMap<usize, Mask> = BTreeMap::new();
        for i in 0..triples.len() {
            let r = find(&mut root, i);
            *classes.entry(r).or_default() |= tmask(&triples[i]);
        }
        let comps: BTreeSet<Mask> = classes.into_values().collect();
        for &(s, t) in &block_pairs {
            nodes.push(format!("P {bn} | {s} {t}"));
        }
        for c in comps {
            let cv: Vec<usize> = members(c).collect();
            // a cycle skeleton has every vertex of degree two, counting virtual edges
            let cycle = cv.iter().all(|&x| {
                cv.iter()
                    .filter(|&&y| {
                        y != x && (g.adjacent(x, y) || block_pairs.contains(&(x.min(y), x.max(y))))
                    })
                    .count()
                    == 2
            });
            let kind = if cycle { "S" } else { "R" };
            let name = format!("{} {} {}", cv[0], cv[1], cv[2]);
            nodes.push(format!("T {bn} | {kind} {name} : {}", join(&cv)));
            for &(s, t) in &block_pairs {
                if c & bit(s) != 0 && c & bit(t) != 0 {
                    tree_edges.push(format!("TP {bn} | {s} {t} | {name}"));
                }
            }
        }
    }
    for &c in &cut {
        nodes.push(format!("C {c}"));
    }
    nodes.sort();
    tree_edges.sort();
    nodes.extend(tree_edges);
    Ok(nodes)
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(k: u32) -> Vec<(u32, u32)> {
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect()
    }

    fn k33() -> Vec<(u32, u32)> {
        (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect()
    }

    #[test]
    fn classic_planarity() {
        assert!(!static_planar(5, &complete(5)).unwrap());
        assert!(!static_planar(6, &k33()).unwrap());
        assert!(static_planar(4, &complete(4)).unwrap());
        let mut k33e = k33();
        k33e.pop();
        assert!(static_planar(6, &k33e).unwrap());
        assert!(static_planar(0, &[]).unwrap());
        assert!(static_planar(70, &[]).is_err());
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        let edges: Vec<(u32, u32)> = outer.chain(spokes).chain(inner).collect();
        assert!(!static_planar(10, &edges).unwrap());
        let minus: Vec<(u32, u32)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != 0 && b != 0)
            .collect();
        assert!(!static_planar(10, &minus).unwrap());
        let cube: Vec<(u32, u32)> = (0..8u32)
            .flat_map(|a| [1, 2, 4].into_iter().map(move |m| (a, a ^ m)))
            .filter(|(a, b)| a < b)
            .collect();
        assert!(static_planar(8, &cube).unwrap());
    }

    #[test]
    fn subdivided_k5_is_not_planar() {
        let mut edges = Vec::new();
        let mut next = 5;
        for (a, b) in complete(5) {
            edges.push((a, next));
            edges.push((next, b));
            next += 1;
        }
        assert!(!static_planar(15, &edges).unwrap());
    }

    #[test]
    fn rotation_validation() {
        let c4 = [(0, 1), (1, 2), (2, 3), (0, 3)];
        let rot = vec![
            (0, vec![1, 3]),
            (1, vec![0, 2]),
            (2, vec![1, 3]),
            (3, vec![2, 0]),
        ];
        assert!(validate_rotation(4, &c4, &rot).unwrap());
        let k4 = complete(4);
        let good = vec![
            (0, vec![1, 2, 3]),
            (1, vec![2, 0, 3]),
            (2, vec![0, 1, 3]),
            (3, vec![0, 2, 1]),
        ];
        assert!(validate_rotation(4, &k4, &good).unwrap());
        let mut bad = good.clone();
        bad[0].1 = vec![1, 3, 2];
        assert!(!validate_rotation(4, &k4, &bad).unwrap());
        assert!(validate_rotation(2, &[(0, 1)], &[(0, vec![1]), (1, vec![0])]).unwrap());
        assert!(validate_rotation(2, &[(0, 1)], &[(0, vec![1])]).is_err());
    }

    #[test]
    fn definitional_decomposition() {
        let bowtie = [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)];
        let d = static_decomposition(6, &bowtie).unwrap();
        assert!(d.contains(&"B 1 2 : 1 2 3".to_string()));
        assert!(d.contains(&"B 3 4 : 3 4 5".to_string()));
        assert!(d.contains(&"C 3".to_string()));
        let k4e = [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let d = static_decomposition(5, &k4e).unwrap();
        assert!(d.contains(&"P 1 2 | 3 4".to_string()));
        assert!(d.contains(&"T 1 2 | S 1 3 4 : 1 3 4".to_string()));
        assert!(d.contains(&"T 1 2 | S 2 3 4 : 2 3 4".to_string()));
        let d = static_decomposition(5, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(
            d,
            vec![
                "B 1 2 : 1 2 3 4".to_string(),
                "T 1 2 | R 1 2 3 : 1 2 3 4".to_string()
            ]
        );
    }
}
