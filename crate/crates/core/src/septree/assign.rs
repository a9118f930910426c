//! Assignment of tiny vertices to separators, and the free-count bounds
//! built on it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::choose;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::difference;
use crate::{param, Result};

use super::orient::{free_count, Orientation};
use super::tree::{NodeId, SeparatorTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentPair {
    pub atom: NodeId,
    pub separator: NodeId,
    pub m: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AssignmentData {
    /// Nonzero `m(A,S)`, sorted by `(atom, separator)`.
    pub pairs: Vec<AssignmentPair>,
    /// `m(S)` for every separator with at least one assigned vertex.
    pub per_separator: BTreeMap<NodeId, usize>,
    /// Tiny vertices with no qualifying separator.
    pub unassigned: Vec<Vertex>,
}

impl AssignmentData {
    pub fn m(&self, sep: NodeId) -> usize {
        self.per_separator.get(&sep).copied().unwrap_or(0)
    }

    pub fn m_pair(&self, atom: NodeId, sep: NodeId) -> usize {
        self.pairs.iter().find(|p| p.atom == atom && p.separator == sep).map_or(0, |p| p.m)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Assigns each tiny vertex `v` of tiny atom `A` to the lowest separator
/// `S` above `A` (other than the one directly above) with `v ∈ S` and `A` in
/// the small branch of `S`.
pub fn assignment(t: &SeparatorTree, sigma: &Orientation) -> AssignmentData {
    let mut data = AssignmentData::default();
    for a in t.atoms() {
        if !sigma.is_tiny_atom(a) {
            continue;
        }
        let Some(direct) = t.parent(a) else { continue };
        let tiny = difference(t.vertices(a), t.vertices(direct));
        // separators strictly above `direct` that hold A in their small branch
        let mut chain = Vec::new();
        let mut sub = t.parent(direct).expect("separator has a parent");
        while let Some(s) = t.parent(sub) {
            if sigma.small(s) == sub {
                chain.push(s);
            }
            sub = t.parent(s).expect("separator has a parent");
        }
        let mut counts: BTreeMap<NodeId, usize> = BTreeMap::new();
        for v in tiny {
            match chain.iter().find(|&&s| t.vertices(s).binary_search(&v).is_ok()) {
                Some(&s) => *counts.entry(s).or_default() += 1,
                None => data.unassigned.push(v),
            }
        }
        for (s, m) in counts {
            data.pairs.push(AssignmentPair { atom: a, separator: s, m });
            *data.per_separator.entry(s).or_default() += m;
        }
    }
    data.unassigned.sort_unstable();
    data
}

/// Forbidden-class count `C(k,r) - (l-q)C(⌊k/l⌋,r) - q C(⌈k/l⌉,r)` with
/// `q = k mod l`.
pub fn fhat(k: usize, r: usize, l: usize) -> Result<u128> {
    if l == 0 {
        return Err(param("fhat needs l >= 1"));
    }
    Ok(choose(k as u64, r as u64) - split_classes(k, r, l))
}

/// `r`-sets inside one class when `total` items are spread as evenly as
/// possible over `l` classes.
fn split_classes(total: usize, r: usize, l: usize) -> u128 {
    let (lo, q) = (total / l, total % l);
    let c = |x: usize| choose(x as u64, r as u64);
    (l - q) as u128 * c(lo) + q as u128 * c(lo + 1)
}

/// `D_f(S) = f(S) - f̂(S)`. Needs reach at least 1.
pub fn free_difference(h: &Hypergraph, t: &SeparatorTree, sigma: &Orientation, s: NodeId) -> Result<i128> {
    let l = sigma.get(s).ok_or_else(|| param(format!("node {s} is not a separator")))?.reach;
    if l == 0 {
        return Err(param(format!("separator {s} has reach 0 and does not survive deletion")));
    }
    let k = t.vertices(s).len();
    Ok(free_count(h, t, sigma, s) as i128 - fhat(k, h.r(), l)? as i128)
}

/// Upper bound on `f(S)` given the assignment; 0 when the reach is 0.
pub fn free_count_bound(t: &SeparatorTree, sigma: &Orientation, data: &AssignmentData, s: NodeId, r: usize) -> u128 {
    let l = sigma.reach(s);
    if l == 0 {
        return 0;
    }
    let k = t.vertices(s).len();
    let m = data.m(s);
    let tiny: u128 = data
        .pairs
        .iter()
        .filter(|p| p.separator == s)
        .map(|p| choose(p.m as u64, r as u64))
        .sum();
    choose(k as u64, r as u64) - split_classes(k - m, r, l) - tiny
}

/// Upper bound on `D_f(S)` for reach at least 2: `m(S) r C(k,r) / (2^(r-1) k)`.
pub fn free_difference_cap(k: usize, r: usize, m: usize) -> crate::Rational {
    use crate::arith::{rat_int, rpow};
    rat_int(m as i64 * r as i64) * rat_int(choose(k as u64, r as u64) as i64)
        / (rpow(&rat_int(2), r as u32 - 1) * rat_int(k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::septree::orient::orient;

    #[test]
    fn fhat_values() {
        assert_eq!(fhat(6, 3, 2).unwrap(), 18);
        assert_eq!(fhat(6, 3, 1).unwrap(), 0);
        assert_eq!(fhat(7, 3, 2).unwrap(), 30);
        assert!(fhat(6, 3, 0).is_err());
    }

    #[test]
    fn no_tiny_atoms_no_data() {
        let t = SeparatorTree::split(vec![2], SeparatorTree::atom(vec![0, 1, 2]), SeparatorTree::atom(vec![2, 3, 4]));
        assert!(assignment(&t, &orient(&t, 1)).is_empty());
    }

    #[test]
    fn tiny_vertex_in_higher_separator() {
        // k = 3; {0,1,2,3} is a tiny atom whose tiny vertex 0 sits in the root separator
        let inner = SeparatorTree::split(
            vec![1, 2, 3],
            SeparatorTree::atom(vec![0, 1, 2, 3]),
            SeparatorTree::atom(vec![1, 2, 3, 4, 5, 6]),
        );
        let right = SeparatorTree::split(
            vec![10, 11, 12],
            SeparatorTree::atom(vec![0, 5, 6, 10, 11, 12]),
            SeparatorTree::atom(vec![10, 11, 12, 13, 14, 15]),
        );
        let t = SeparatorTree::split(vec![0, 5, 6], inner, right);
        let o = orient(&t, 3);
        assert!(o.is_tiny_atom(4));
        assert_eq!(o.small(1), 2);
        let d = assignment(&t, &o);
        assert_eq!(d.m(1), 1);
        assert_eq!(d.m_pair(4, 1), 1);
        assert!(d.unassigned.is_empty());
    }
}
