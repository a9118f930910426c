//! Exact edge identity of a separator tree:
//!
//! `e(H) = C(n,r) - C(n-k,r) + sum_A (C(|A|-k,r) - ē(A)) + sum_S (ē(S) - β̄(S))`
//!
//! where `ē` counts anti-edges inside a node and `β̄(S)` counts anti-edges
//! meeting `S` and both private parts below it.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::arith::{choose, choose_i};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::{difference, for_each_subset};
use crate::{Error, Result};

use super::tree::{NodeId, SeparatorTree};
use super::validate::{scan_edges, structural};

/// Above this many three-part `r`-sets the direct count of bonded anti-edges
/// is derived from the edge scan instead of enumerated.
const ENUMERATION_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomTerm {
    pub node: NodeId,
    pub size: usize,
    pub anti_edges: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectMethod {
    /// Every `r`-set meeting all three parts was tested.
    Enumerated,
    /// Three-part total minus `e(P) - e(A) - e(B) + e(S)`.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorTerm {
    pub node: NodeId,
    /// `ē(S)`.
    pub anti_edges: u128,
    /// `β(S)`, bonded edges.
    pub bonded_edges: u128,
    /// `β̄(S)` by inclusion-exclusion on the part sizes.
    pub bonded_anti_edges: u128,
    /// `β̄(S)` counted independently.
    pub bonded_anti_edges_direct: u128,
    pub direct_method: DirectMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeLedger {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub edges: u128,
    pub atoms: Vec<AtomTerm>,
    pub separators: Vec<SeparatorTerm>,
    /// `C(n,r) - C(n-k,r)`.
    pub base: i128,
    /// `sum_A (C(|A|-k,r) - ē(A))`.
    pub atom_total: i128,
    /// `sum_S (ē(S) - β̄(S))`.
    pub separator_total: i128,
    pub rhs: i128,
}

impl EdgeLedger {
    pub fn holds(&self) -> bool {
        self.rhs == self.edges as i128
    }
}

/// Inclusion-exclusion count of `r`-sets meeting a `k`-set and two disjoint
/// private parts of sizes `p1` and `p2`.
pub fn three_part_sets(k: usize, p1: usize, p2: usize, r: usize) -> u128 {
    let c = |x: usize| choose(x as u64, r as u64);
    c(p1 + p2 + k) + c(k) + c(p1) + c(p2) - c(p1 + k) - c(p2 + k) - c(p1 + p2)
}

fn three_part_sets_by_composition(k: usize, p1: usize, p2: usize, r: usize) -> u128 {
    let mut total = 0;
    for i in 1..r {
        for j in 1..r - i {
            let l = r - i - j;
            total += choose(k as u64, i as u64) * choose(p1 as u64, j as u64) * choose(p2 as u64, l as u64);
        }
    }
    total
}

fn count_three_part_anti_edges(h: &Hypergraph, s: &[Vertex], pa: &[Vertex], pb: &[Vertex]) -> u128 {
    let r = h.r();
    let mut missing = 0u128;
    let mut buf = Vec::with_capacity(r);
    for i in 1..r {
        for j in 1..r - i {
            let l = r - i - j;
            let _ = for_each_subset(s, i, |x| {
                for_each_subset(pa, j, |y| {
                    for_each_subset(pb, l, |z| {
                        buf.clear();
                        buf.extend_from_slice(x);
                        buf.extend_from_slice(y);
                        buf.extend_from_slice(z);
                        buf.sort_unstable();
                        if !h.contains(&buf) {
                            missing += 1;
                        }
                        ControlFlow::Continue(())
                    })
                })
            });
        }
    }
    missing
}

/// Evaluates every term of the edge identity for a valid tree and checks it
/// against the direct edge count. Both counts of `β̄(S)` must agree.
pub fn audit_edge_identity(h: &Hypergraph, t: &SeparatorTree) -> Result<EdgeLedger> {
    let k = t.separators().next().map_or(0, |s| t.vertices(s).len());
    let broken = structural(h.n(), t, k, None);
    if let Some(v) = broken.first() {
        return Err(crate::precondition(format!("tree is not a separator tree of H: {v}")));
    }
    let scan = scan_edges(h, t);
    if let Some(s) = t.separators().find(|&s| scan.crossing[s].0 > 0) {
        return Err(crate::precondition(format!("edges cross separator {s}")));
    }
    let r = h.r();
    let cr = |x: usize| choose(x as u64, r as u64);
    let ci = |x: i128| choose_i(x, r as u64);

    let atoms: Vec<AtomTerm> = t
        .atoms()
        .map(|a| {
            let size = t.vertices(a).len();
            AtomTerm { node: a, size, anti_edges: cr(size) - scan.inside[a] }
        })
        .collect();

    let mut separators = Vec::new();
    for s in t.separators() {
        let (a, b) = t.branches(s).expect("separator");
        let p = t.parent(s).expect("separator has a parent");
        let sv = t.vertices(s);
        let pa = difference(t.vertices(a), sv);
        let pb = difference(t.vertices(b), sv);
        let total = three_part_sets(k, pa.len(), pb.len(), r);
        let beta = scan.bonded[s];
        let beta_bar = total.checked_sub(beta).ok_or_else(|| {
            Error::LedgerMismatch(format!("separator {s}: {beta} bonded edges exceed {total} three-part sets"))
        })?;
        if three_part_sets_by_composition(k, pa.len(), pb.len(), r) != total {
            return Err(Error::LedgerMismatch(format!("separator {s}: three-part totals disagree")));
        }
        let (direct, method) = if total <= ENUMERATION_LIMIT {
            (count_three_part_anti_edges(h, sv, &pa, &pb), DirectMethod::Enumerated)
        } else {
            let joined = scan.inside[p] + scan.inside[s] - scan.inside[a] - scan.inside[b];
            (total - joined, DirectMethod::Complement)
        };
        if direct != beta_bar {
            return Err(Error::LedgerMismatch(format!(
                "separator {s}: bonded anti-edges {beta_bar} by inclusion-exclusion but {direct} counted"
            )));
        }
        separators.push(SeparatorTerm {
            node: s,
            anti_edges: cr(k) - scan.inside[s],
            bonded_edges: beta,
            bonded_anti_edges: beta_bar,
            bonded_anti_edges_direct: direct,
            direct_method: method,
        });
    }

    let n = h.n();
    let base = ci(n as i128) - ci(n as i128 - k as i128);
    let atom_total: i128 = atoms.iter().map(|a| ci(a.size as i128 - k as i128) - a.anti_edges as i128).sum();
    let separator_total: i128 = separators
        .iter()
        .map(|s| s.anti_edges as i128 - s.bonded_anti_edges as i128)
        .sum();
    let ledger = EdgeLedger {
        n,
        k,
        r,
        edges: h.edge_count() as u128,
        atoms,
        separators,
        base,
        atom_total,
        separator_total,
        rhs: base + atom_total + separator_total,
    };
    if !ledger.holds() {
        return Err(Error::LedgerMismatch(format!(
            "identity gives {} but H has {} edges",
            ledger.rhs, ledger.edges
        )));
    }
    Ok(ledger)
}
