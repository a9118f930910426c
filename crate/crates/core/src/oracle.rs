//! Exhaustive maximum-edge search at micro scale.
//!
//! Containing a `(k+1)`-connected subgraph is preserved under adding edges,
//! so a depth-first search that includes edges first can discard every
//! extension of an infeasible set. The search space is split on a fixed
//! prefix of edge decisions; each branch runs with the same seed bound and
//! the branches are combined in prefix order, which makes the value, the
//! witness and the statistics independent of the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::choose;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::subsets;
use crate::{param, Error, Result};

/// Largest `C(n,r)` the search accepts.
pub const MAX_RSETS: u128 = 25;

const PREFIX_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub min_size: usize,
    pub value: usize,
    pub witness: Hypergraph,
    pub nodes: u64,
    pub prunes: u64,
}

struct Space {
    k: usize,
    rsets: Vec<Vec<Vertex>>,
    masks: Vec<u32>,
    /// For each r-set, the vertex sets `W` that contain it and are large
    /// enough to matter.
    windows: Vec<Vec<u32>>,
}

fn connected_after(w: u32, s: u32, edges: u64, masks: &[u32]) -> bool {
    let rest = w & !s;
    if rest == 0 {
        return true;
    }
    let mut reached = rest & rest.wrapping_neg();
    loop {
        let before = reached;
        let mut bits = edges;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let m = masks[i];
            if m & !rest == 0 && m & reached != 0 {
                reached |= m;
            }
        }
        if reached == before {
            return reached == rest;
        }
    }
}

impl Space {
    /// Whether `H[W]` with the chosen edges is `(k+1)`-connected.
    fn highly_connected(&self, w: u32, edges: u64) -> bool {
        let inside: u64 = (0..self.masks.len())
            .filter(|&i| edges >> i & 1 == 1 && self.masks[i] & !w == 0)
            .fold(0, |m, i| m | 1 << i);
        let mut s = 0u32;
        // all subsets of w with at most k vertices
        loop {
            if s.count_ones() as usize <= self.k && !connected_after(w, s, inside, &self.masks) {
                return false;
            }
            if s == w {
                return true;
            }
            s = (s.wrapping_sub(w)) & w;
        }
    }

    fn feasible_with(&self, edges: u64, added: usize) -> bool {
        self.windows[added].iter().all(|&w| !self.highly_connected(w, edges))
    }
}

#[derive(Default)]
struct Branch {
    best: usize,
    witness: Option<u64>,
    nodes: u64,
    prunes: u64,
}

fn search(space: &Space, idx: usize, edges: u64, count: usize, b: &mut Branch) {
    b.nodes += 1;
    let total = space.masks.len();
    if count + (total - idx) <= b.best {
        b.prunes += 1;
        return;
    }
    if idx == total {
        b.best = count;
        b.witness = Some(edges);
        return;
    }
    let with = edges | 1 << idx;
    if space.feasible_with(with, idx) {
        search(space, idx + 1, with, count + 1, b);
    } else {
        b.prunes += 1;
    }
    search(space, idx + 1, edges, count, b);
}

/// Maximum number of edges of an `r`-uniform hypergraph on `n` vertices with
/// no `(k+1)`-connected subgraph on at least `min_size` vertices.
pub fn oracle_max_edges(n: usize, k: usize, r: usize, min_size: usize, threads: Option<usize>) -> Result<OracleResult> {
    if r < 2 || k == 0 || n < k + 2 || n < r {
        return Err(param(format!("need r >= 2, k >= 1, n >= k + 2 and n >= r, got n = {n}, k = {k}, r = {r}")));
    }
    let total = choose(n as u64, r as u64);
    if total > MAX_RSETS {
        return Err(Error::ScaleLimit(format!("C({n},{r}) = {total} exceeds the oracle limit {MAX_RSETS}")));
    }
    let pool: Vec<Vertex> = (0..n as Vertex).collect();
    let rsets = subsets(&pool, r);
    let masks: Vec<u32> = rsets.iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let floor = min_size.max(k + 2);
    let windows = masks
        .iter()
        .map(|&m| {
            (0u32..1 << n)
                .filter(|&w| w & m == m && w.count_ones() as usize >= floor)
                .collect()
        })
        .collect();
    let space = Space { k, rsets, masks, windows };

    // all r-sets meeting a fixed k-set form a member, so the optimum is at least this
    let seed = (total - choose((n - k) as u64, r as u64)) as usize;
    let depth = PREFIX_DEPTH.min(space.masks.len());
    // bit i of a prefix decides r-set i; listed in include-first order
    let order: Vec<u64> = (0..1u64 << depth)
        .map(|j| (0..depth).filter(|&i| j >> (depth - 1 - i) & 1 == 0).fold(0, |p, i| p | 1 << i))
        .collect();
    let run = |prefix: &u64| {
        let mut b = Branch { best: seed - 1, ..Default::default() };
        let mut edges = 0u64;
        let mut count = 0;
        for i in 0..depth {
            if prefix >> i & 1 == 0 {
                continue;
            }
            edges |= 1 << i;
            count += 1;
            if !space.feasible_with(edges, i) {
                b.prunes += 1;
                return b;
            }
        }
        search(&space, depth, edges, count, &mut b);
        b
    };
    let branches: Vec<Branch> = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| param(format!("thread pool: {e}")))?
            .install(|| order.par_iter().map(run).collect()),
        None => order.par_iter().map(run).collect(),
    };
    let mut best: Option<(usize, u64)> = None;
    let (mut nodes, mut prunes) = (0, 0);
    for b in &branches {
        nodes += b.nodes;
        prunes += b.prunes;
        if let Some(w) = b.witness {
            if best.map_or(true, |(v, _)| b.best > v) {
                best = Some((b.best, w));
            }
        }
    }
    let (value, mask) = best.expect("the seed construction is always reachable");
    let witness = Hypergraph::new(
        r,
        n,
        (0..space.rsets.len()).filter(|&i| mask >> i & 1 == 1).map(|i| space.rsets[i].clone()),
    )?;
    Ok(OracleResult { n, k, r, min_size, value, witness, nodes, prunes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::contains_k1_connected_subgraph;

    #[test]
    fn mader_value_is_reached() {
        let a = oracle_max_edges(6, 3, 3, 5, Some(1)).unwrap();
        assert!(a.value >= 19);
        assert_eq!(a.witness.edge_count(), a.value);
        assert!(contains_k1_connected_subgraph(&a.witness, 3, 5).is_none());
        let b = oracle_max_edges(6, 3, 3, 5, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complete_hypergraph_is_excluded() {
        // n = k + r: K_n is (k+1)-connected, so the optimum misses something
        let a = oracle_max_edges(5, 2, 3, 0, None).unwrap();
        assert!(a.value < 10);
    }

    #[test]
    fn limits() {
        assert!(matches!(oracle_max_edges(7, 3, 3, 5, None), Err(Error::ScaleLimit(_))));
        assert!(oracle_max_edges(4, 3, 3, 0, None).is_err());
    }
}
