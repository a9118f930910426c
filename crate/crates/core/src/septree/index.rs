//! Per-vertex node-membership bitsets for single-pass edge scans.

use crate::hypergraph::Vertex;

use super::tree::{NodeId, SeparatorTree};

pub(crate) struct TreeIndex {
    pub(crate) words: usize,
    vmask: Vec<u64>,
}

#[inline]
pub(crate) fn has(mask: &[u64], id: NodeId) -> bool {
    mask[id >> 6] >> (id & 63) & 1 == 1
}

pub(crate) fn for_each_bit(mask: &[u64], mut f: impl FnMut(NodeId)) {
    for (w, &word) in mask.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            f(w * 64 + b);
            x &= x - 1;
        }
    }
}

impl TreeIndex {
    /// Vertices at or beyond `n` are ignored.
    pub(crate) fn new(tree: &SeparatorTree, n: usize) -> Self {
        let words = tree.len().div_ceil(64).max(1);
        let mut vmask = vec![0u64; n * words];
        for id in 0..tree.len() {
            for &v in tree.vertices(id) {
                if (v as usize) < n {
                    vmask[v as usize * words + (id >> 6)] |= 1 << (id & 63);
                }
            }
        }
        TreeIndex { words, vmask }
    }

    #[inline]
    pub(crate) fn vertex(&self, v: Vertex) -> &[u64] {
        let at = v as usize * self.words;
        &self.vmask[at..at + self.words]
    }

    /// Nodes containing all of `e` into `and`, nodes meeting `e` into `or`.
    #[inline]
    pub(crate) fn masks(&self, e: &[Vertex], and: &mut [u64], or: &mut [u64]) {
        and.fill(u64::MAX);
        or.fill(0);
        for &v in e {
            let m = self.vertex(v);
            for w in 0..self.words {
                and[w] &= m[w];
                or[w] |= m[w];
            }
        }
    }
}

/// Membership in the glue closure of a tree: atoms are complete, and an
/// `r`-set that falls into neither child of a separator is an edge exactly
/// when it meets the separator.
#[inline]
pub(crate) fn glue_closure_member(tree: &SeparatorTree, and: &[u64], or: &[u64]) -> bool {
    let mut node = 0;
    if !has(and, node) {
        return false;
    }
    loop {
        match tree.child(node) {
            None => return true,
            Some(s) => {
                let (a, b) = tree.branches(s).expect("separator");
                if has(and, a) {
                    node = a;
                } else if has(and, b) {
                    node = b;
                } else {
                    return has(or, s);
                }
            }
        }
    }
}
