//! Connectivity under strong vertex deletion.
//!
//! Deleting a vertex set `S` removes `S` together with every edge that meets
//! it; the surviving edges connect the remaining vertices. A hypergraph is
//! `(k+1)`-connected when it has at least `k+2` vertices and no deletion of at
//! most `k` vertices disconnects it.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::for_each_subset;

/// A split of the vertex set along a separator `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub s: Vec<Vertex>,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "separator", rename_all = "kebab-case")]
pub enum ConnectivityWitness {
    /// The hypergraph is `(k+1)`-connected.
    #[serde(rename = "(k+1)-connected")]
    Connected,
    /// Fewer than `k+2` vertices.
    TooFewVertices,
    /// Strongly deleting this set disconnects the hypergraph.
    Refuted(Vec<Vertex>),
}

impl ConnectivityWitness {
    pub fn is_connected(&self) -> bool {
        matches!(self, ConnectivityWitness::Connected)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot separate {n} vertices with {k}-sets: both sides would need a vertex outside the separator")]
pub struct TooSmall {
    pub n: usize,
    pub k: usize,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Edge storage tuned for repeated component queries on one hypergraph.
pub(crate) struct Components {
    n: usize,
    r: usize,
    small: Option<Vec<u128>>,
    flat: Vec<Vertex>,
    uf: UnionFind,
    removed: Vec<bool>,
}

impl Components {
    pub(crate) fn new(h: &Hypergraph) -> Self {
        let flat: Vec<Vertex> = h.iter().flat_map(|e| e.to_vec()).collect();
        let small = (h.n() <= 128).then(|| {
            h.iter()
                .map(|e| e.iter().fold(0u128, |m, &v| m | 1u128 << v))
                .collect()
        });
        Components {
            n: h.n(),
            r: h.r(),
            small,
            flat,
            uf: UnionFind::new(h.n()),
            removed: vec![false; h.n()],
        }
    }

    fn run(&mut self, s: &[Vertex]) {
        self.uf.reset();
        for &v in s {
            self.removed[v as usize] = true;
        }
        let r = self.r;
        match &self.small {
            Some(masks) => {
                let dead = s.iter().fold(0u128, |m, &v| m | 1u128 << v);
                for (i, &m) in masks.iter().enumerate() {
                    if m & dead == 0 {
                        let e = &self.flat[i * r..(i + 1) * r];
                        for &v in &e[1..] {
                            self.uf.union(e[0], v);
                        }
                    }
                }
            }
            None => {
                for e in self.flat.chunks_exact(r) {
                    if e.iter().all(|&v| !self.removed[v as usize]) {
                        for &v in &e[1..] {
                            self.uf.union(e[0], v);
                        }
                    }
                }
            }
        }
        for &v in s {
            self.removed[v as usize] = false;
        }
    }

    /// Number of components of `H - S`.
    pub(crate) fn count(&mut self, s: &[Vertex]) -> usize {
        self.run(s);
        let mut dead = vec![false; self.n];
        for &v in s {
            dead[v as usize] = true;
        }
        (0..self.n as u32)
            .filter(|&v| !dead[v as usize] && self.uf.find(v) == v)
            .count()
    }

    /// Components of `H - S`, each sorted, ordered by smallest member.
    pub(crate) fn list(&mut self, s: &[Vertex]) -> Vec<Vec<Vertex>> {
        self.run(s);
        let mut dead = vec![false; self.n];
        for &v in s {
            dead[v as usize] = true;
        }
        let mut slot = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for v in 0..self.n as u32 {
            if dead[v as usize] {
                continue;
            }
            let root = self.uf.find(v) as usize;
            if slot[root] == usize::MAX {
                slot[root] = out.len();
                out.push(Vec::new());
            }
            out[slot[root]].push(v);
        }
        out
    }
}

/// Components of `H - S` under strong deletion, ordered by smallest vertex.
pub fn components_after_strong_deletion(h: &Hypergraph, s: &[Vertex]) -> Vec<Vec<Vertex>> {
    Components::new(h).list(s)
}

pub fn is_connected(h: &Hypergraph) -> bool {
    Components::new(h).count(&[]) == 1
}

/// Decides `(k+1)`-connectivity. A refutation is a smallest disconnecting
/// set; among those the most balanced split wins, ties going to the
/// lexicographically first set.
pub fn is_k1_connected(h: &Hypergraph, k: usize) -> ConnectivityWitness {
    if h.n() < k + 2 {
        return ConnectivityWitness::TooFewVertices;
    }
    let mut comps = Components::new(h);
    let pool = h.vertices();
    for size in 0..=k {
        let ideal = (h.n() - size) / 2;
        let mut best: Option<Separation> = None;
        let _ = for_each_subset(&pool, size, |s| {
            if comps.count(s) < 2 {
                return ControlFlow::Continue(());
            }
            let sep = fold_sides(s, &comps.list(s));
            if best.as_ref().map_or(true, |b| balance(&sep) > balance(b)) {
                let done = balance(&sep) == ideal;
                best = Some(sep);
                if done {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if let Some(sep) = best {
            return ConnectivityWitness::Refuted(sep.s);
        }
    }
    ConnectivityWitness::Connected
}

/// Folds the components of `V - S` into two sides: components are taken in
/// order of smallest vertex into side A until it holds at least half of the
/// non-separator vertices, and the last component always goes to side B.
pub(crate) fn fold_sides(s: &[Vertex], comps: &[Vec<Vertex>]) -> Separation {
    let total: usize = comps.iter().map(Vec::len).sum();
    let half = total.div_ceil(2);
    let mut a: Vec<Vertex> = s.to_vec();
    let mut b: Vec<Vertex> = s.to_vec();
    let mut in_a = 0;
    for (i, c) in comps.iter().enumerate() {
        if i + 1 < comps.len() && in_a < half {
            a.extend(c);
            in_a += c.len();
        } else {
            b.extend(c);
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    Separation { s: s.to_vec(), a, b }
}

fn balance(sep: &Separation) -> usize {
    let k = sep.s.len();
    (sep.a.len() - k).min(sep.b.len() - k)
}

/// Finds a separator of size exactly `k`, or `None` when `H` is
/// `(k+1)`-connected.
///
/// Every disconnecting set of size at most `k` can be padded to a
/// disconnecting `k`-set when `n > k+1`, so only `k`-sets are scanned. Among
/// them the most balanced split wins, ties going to the lexicographically
/// first set; the scan stops early once a split is perfectly balanced.
pub fn find_separator(h: &Hypergraph, k: usize) -> Result<Option<Separation>, TooSmall> {
    let n = h.n();
    if n <= k + 1 {
        return Err(TooSmall { n, k });
    }
    let mut comps = Components::new(h);
    let pool = h.vertices();
    let ideal = (n - k) / 2;
    let mut best: Option<Separation> = None;
    let _ = for_each_subset(&pool, k, |s| {
        if comps.count(s) < 2 {
            return ControlFlow::Continue(());
        }
        let sep = fold_sides(s, &comps.list(s));
        if best.as_ref().map_or(true, |b| balance(&sep) > balance(b)) {
            let done = balance(&sep) == ideal;
            best = Some(sep);
            if done {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(best)
}

/// Independent check of the two separation properties: the sides cover `V`,
/// meet exactly in `S`, both have a private vertex, and no edge avoiding `S`
/// joins the two private parts.
pub fn check_separation(h: &Hypergraph, sep: &Separation) -> bool {
    use crate::subsets::{difference, intersection, union};
    let n_all: Vec<Vertex> = h.vertices();
    if union(&sep.a, &sep.b) != n_all || intersection(&sep.a, &sep.b) != sep.s {
        return false;
    }
    let pa = difference(&sep.a, &sep.s);
    let pb = difference(&sep.b, &sep.s);
    if pa.is_empty() || pb.is_empty() {
        return false;
    }
    h.iter().all(|e| {
        let meets_s = e.iter().any(|v| sep.s.binary_search(v).is_ok());
        let meets_a = e.iter().any(|v| pa.binary_search(v).is_ok());
        let meets_b = e.iter().any(|v| pb.binary_search(v).is_ok());
        meets_s || !(meets_a && meets_b)
    })
}

/// Searches induced subgraphs from the largest down to `min_size` vertices
/// for one that is `(k+1)`-connected.
///
/// Adding edges never breaks connectivity under strong deletion, so a
/// `(k+1)`-connected subgraph exists exactly when a `(k+1)`-connected induced
/// subgraph does.
pub fn contains_k1_connected_subgraph(h: &Hypergraph, k: usize, min_size: usize) -> Option<Vec<Vertex>> {
    let pool = h.vertices();
    let lo = min_size.max(k + 2);
    for size in (lo..=h.n()).rev() {
        let mut found = None;
        let _ = for_each_subset(&pool, size, |w| {
            let (sub, _) = h.induced_subgraph(w);
            if is_k1_connected(&sub, k).is_connected() {
                found = Some(w.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> Hypergraph {
        Hypergraph::new(3, 5, [[0, 1, 2], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn components_examples() {
        let h = path();
        assert_eq!(
            components_after_strong_deletion(&h, &[2]),
            vec![vec![0], vec![1], vec![3], vec![4]]
        );
        assert_eq!(components_after_strong_deletion(&h, &[]), vec![vec![0, 1, 2, 3, 4]]);
        let k6 = Hypergraph::complete(3, 6).unwrap();
        let comps = components_after_strong_deletion(&k6, &[1, 4]);
        assert_eq!(comps, vec![vec![0, 2, 3, 5]]);
    }

    #[test]
    fn connected_examples() {
        assert!(is_connected(&Hypergraph::empty(3, 1).unwrap()));
        assert!(!is_connected(&Hypergraph::empty(3, 2).unwrap()));
        assert!(is_connected(&Hypergraph::complete(3, 5).unwrap()));
    }

    #[test]
    fn k1_examples() {
        let k9 = Hypergraph::complete(3, 9).unwrap();
        assert_eq!(is_k1_connected(&k9, 3), ConnectivityWitness::Connected);
        let k4 = Hypergraph::complete(3, 4).unwrap();
        match is_k1_connected(&k4, 2) {
            ConnectivityWitness::Refuted(s) => assert_eq!(s.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(is_k1_connected(&path(), 1), ConnectivityWitness::Refuted(vec![2]));
        assert_eq!(is_k1_connected(&k4, 3), ConnectivityWitness::TooFewVertices);
    }

    #[test]
    fn separator_examples() {
        let sep = find_separator(&path(), 1).unwrap().unwrap();
        assert_eq!(sep, Separation { s: vec![2], a: vec![0, 1, 2], b: vec![2, 3, 4] });
        assert!(check_separation(&path(), &sep));
        let k9 = Hypergraph::complete(3, 9).unwrap();
        assert_eq!(find_separator(&k9, 3).unwrap(), None);
        assert!(find_separator(&k9, 8).is_err());
    }

    #[test]
    fn fold_keeps_last_component_on_b() {
        let sep = fold_sides(&[9], &[vec![0, 1, 2, 3], vec![4]]);
        assert_eq!(sep.a, vec![0, 1, 2, 3, 9]);
        assert_eq!(sep.b, vec![4, 9]);
    }

    #[test]
    fn witness_serialises() {
        let w = ConnectivityWitness::Refuted(vec![2]);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"status":"refuted","separator":[2]}"#);
        assert_eq!(
            serde_json::to_string(&ConnectivityWitness::Connected).unwrap(),
            r#"{"status":"(k+1)-connected"}"#
        );
    }
}
