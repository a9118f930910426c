//! Small/big orientation of separators and the classification of anti-edges.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::{difference, for_each_subset, is_subset};
use crate::{precondition, Result};

use super::abstract_tree::AbstractTree;
use super::tree::{NodeId, SeparatorTree};

/// Atoms with more than `4k/3` vertices are normal, the rest tiny.
pub fn is_normal_size(size: usize, k: usize) -> bool {
    3 * size > 4 * k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatorOrientation {
    pub separator: NodeId,
    pub small: NodeId,
    pub big: NodeId,
    /// Whether the computed small branch is the stored `big` child.
    pub flipped: bool,
    /// Normal atoms in the small branch.
    pub reach: usize,
    /// Normal atoms in the big branch.
    pub reach_plus: usize,
    pub tiny_small: usize,
    pub tiny_big: usize,
    pub balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub k: usize,
    entries: Vec<Option<SeparatorOrientation>>,
    normal_below: Vec<usize>,
    tiny_below: Vec<usize>,
    atom_normal: Vec<Option<bool>>,
}

impl Orientation {
    pub fn get(&self, sep: NodeId) -> Option<&SeparatorOrientation> {
        self.entries.get(sep).and_then(Option::as_ref)
    }

    fn entry(&self, sep: NodeId) -> &SeparatorOrientation {
        self.get(sep).unwrap_or_else(|| panic!("node {sep} is not a separator"))
    }

    pub fn small(&self, sep: NodeId) -> NodeId {
        self.entry(sep).small
    }

    pub fn big(&self, sep: NodeId) -> NodeId {
        self.entry(sep).big
    }

    pub fn reach(&self, sep: NodeId) -> usize {
        self.entry(sep).reach
    }

    pub fn separators(&self) -> impl Iterator<Item = &SeparatorOrientation> {
        self.entries.iter().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.separators().next().is_none()
    }

    pub fn is_normal_atom(&self, id: NodeId) -> bool {
        self.atom_normal[id] == Some(true)
    }

    pub fn is_tiny_atom(&self, id: NodeId) -> bool {
        self.atom_normal[id] == Some(false)
    }

    /// Normal atoms below a subgraph node.
    pub fn normal_atoms_below(&self, id: NodeId) -> usize {
        self.normal_below[id]
    }

    /// Tiny vertices below a subgraph node, counted per tiny atom as `|A| - k`.
    pub fn tiny_vertices_below(&self, id: NodeId) -> usize {
        self.tiny_below[id]
    }
}

trait Shape {
    fn len(&self) -> usize;
    fn child(&self, id: NodeId) -> Option<NodeId>;
    fn branches(&self, id: NodeId) -> Option<(NodeId, NodeId)>;
    fn size(&self, id: NodeId) -> usize;
}

impl Shape for SeparatorTree {
    fn len(&self) -> usize {
        SeparatorTree::len(self)
    }
    fn child(&self, id: NodeId) -> Option<NodeId> {
        SeparatorTree::child(self, id)
    }
    fn branches(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        SeparatorTree::branches(self, id)
    }
    fn size(&self, id: NodeId) -> usize {
        self.vertices(id).len()
    }
}

impl Shape for AbstractTree {
    fn len(&self) -> usize {
        AbstractTree::len(self)
    }
    fn child(&self, id: NodeId) -> Option<NodeId> {
        AbstractTree::child(self, id)
    }
    fn branches(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        AbstractTree::branches(self, id)
    }
    fn size(&self, id: NodeId) -> usize {
        AbstractTree::size(self, id)
    }
}

/// `tie(sep, a, b)` decides whether the stored first child `a` goes big when
/// both counts agree.
fn orient_shape(t: &dyn Shape, k: usize, tie: &dyn Fn(NodeId, NodeId, NodeId) -> bool) -> Orientation {
    let len = t.len();
    let mut normal_below = vec![0; len];
    let mut tiny_below = vec![0; len];
    let mut atom_normal = vec![None; len];
    let mut entries = vec![None; len];
    // children always carry larger preorder ids than their parents
    for id in (0..len).rev() {
        if let Some((a, b)) = t.branches(id) {
            let a_big = match normal_below[a].cmp(&normal_below[b]) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => match tiny_below[a].cmp(&tiny_below[b]) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => tie(id, a, b),
                },
            };
            let (small, big) = if a_big { (b, a) } else { (a, b) };
            entries[id] = Some(SeparatorOrientation {
                separator: id,
                small,
                big,
                flipped: a_big,
                reach: normal_below[small],
                reach_plus: normal_below[big],
                tiny_small: tiny_below[small],
                tiny_big: tiny_below[big],
                balanced: normal_below[small] == normal_below[big],
            });
        } else {
            match t.child(id) {
                None => {
                    let normal = is_normal_size(t.size(id), k);
                    atom_normal[id] = Some(normal);
                    normal_below[id] = normal as usize;
                    tiny_below[id] = if normal { 0 } else { t.size(id).saturating_sub(k) };
                }
                Some(s) => {
                    let (a, b) = t.branches(s).expect("separator");
                    normal_below[id] = normal_below[a] + normal_below[b];
                    tiny_below[id] = tiny_below[a] + tiny_below[b];
                }
            }
        }
    }
    Orientation { k, entries, normal_below, tiny_below, atom_normal }
}

/// Orients every separator: the branch with more normal atoms is big, then
/// the branch with more tiny vertices, and on a full tie the branch whose
/// private part holds the smallest vertex label.
pub fn orient(t: &SeparatorTree, k: usize) -> Orientation {
    orient_shape(t, k, &|s, a, b| {
        let sep = t.vertices(s);
        let min_a = difference(t.vertices(a), sep).first().copied();
        let min_b = difference(t.vertices(b), sep).first().copied();
        match (min_a, min_b) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            _ => false,
        }
    })
}

pub(crate) fn orient_abstract(t: &AbstractTree, k: usize) -> Orientation {
    orient_shape(t, k, &|_, _, _| false)
}

/// Copy of `t` whose stored small/big order matches [`orient`].
pub fn oriented(t: &SeparatorTree, k: usize) -> SeparatorTree {
    let o = orient(t, k);
    let flips: Vec<bool> = (0..t.len()).map(|id| o.get(id).is_some_and(|x| x.flipped)).collect();
    t.with_flips(&flips)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AntiEdgeClass {
    Atomic,
    Free,
    Bonded,
}

/// Follows an anti-edge `e` down from subgraph node `p`. At each separator
/// `S0` with small branch `A` and big branch `B`: `e` is free if it avoids
/// `S0` and meets both private parts, bonded if it meets `S0` and both
/// private parts, and otherwise descends into `B` when `e` lies in `B` and
/// into `A` if not. Returns the class and the node where it was decided.
pub fn classify_anti_edge(
    h: &Hypergraph,
    t: &SeparatorTree,
    sigma: &Orientation,
    e: &[Vertex],
    p: NodeId,
) -> Result<(AntiEdgeClass, NodeId)> {
    if h.contains(e) {
        return Err(precondition(format!("{e:?} is an edge, not an anti-edge")));
    }
    if t.is_separator(p) || !is_subset(e, t.vertices(p)) {
        return Err(precondition(format!("{e:?} is not inside subgraph node {p}")));
    }
    Ok(classify_unchecked(t, sigma, e, p))
}

fn classify_unchecked(t: &SeparatorTree, sigma: &Orientation, e: &[Vertex], p: NodeId) -> (AntiEdgeClass, NodeId) {
    let mut node = p;
    loop {
        let Some(s0) = t.child(node) else {
            return (AntiEdgeClass::Atomic, node);
        };
        let (a, b) = (sigma.small(s0), sigma.big(s0));
        let sep = t.vertices(s0);
        let in_sep = |v: &Vertex| sep.binary_search(v).is_ok();
        let meets_s = e.iter().any(in_sep);
        let meets_a = e.iter().any(|v| !in_sep(v) && t.vertices(a).binary_search(v).is_ok());
        let meets_b = e.iter().any(|v| !in_sep(v) && t.vertices(b).binary_search(v).is_ok());
        if meets_a && meets_b {
            let class = if meets_s { AntiEdgeClass::Bonded } else { AntiEdgeClass::Free };
            return (class, node);
        }
        node = if is_subset(e, t.vertices(b)) { b } else { a };
    }
}

/// Number of anti-edges inside separator `s` that are free in its small branch.
pub fn free_count(h: &Hypergraph, t: &SeparatorTree, sigma: &Orientation, s: NodeId) -> u128 {
    let small = sigma.small(s);
    let mut count = 0;
    let _ = for_each_subset(t.vertices(s), h.r(), |e| {
        if !h.contains(e) && classify_unchecked(t, sigma, e, small).0 == AntiEdgeClass::Free {
            count += 1;
        }
        ControlFlow::Continue(())
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_boundary_is_strict() {
        assert!(!is_normal_size(8, 6));
        assert!(is_normal_size(9, 6));
        assert!(!is_normal_size(7, 6));
        assert!(is_normal_size(10, 7));
    }

    #[test]
    fn single_atom_has_no_separators() {
        let t = SeparatorTree::atom((0..5).collect());
        assert!(orient(&t, 3).is_empty());
    }

    #[test]
    fn more_normal_atoms_go_big() {
        // k = 1: atoms with more than 4/3 vertices are normal
        let right = SeparatorTree::split(vec![3], SeparatorTree::atom(vec![2, 3]), SeparatorTree::atom(vec![3, 4]));
        let t = SeparatorTree::split(vec![2], right, SeparatorTree::atom(vec![0, 1, 2]));
        let o = orient(&t, 1);
        let root = o.get(1).unwrap();
        assert_eq!((root.reach, root.reach_plus), (1, 2));
        assert!(root.flipped);
        assert_eq!(t.vertices(root.small), &[0, 1, 2]);
        let t2 = oriented(&t, 1);
        assert_eq!(t2.vertices(2), &[0, 1, 2]);
        assert!(orient(&t2, 1).separators().all(|x| !x.flipped));
    }

    #[test]
    fn ties_follow_smallest_private_label() {
        let t = SeparatorTree::split(vec![2], SeparatorTree::atom(vec![2, 3, 4]), SeparatorTree::atom(vec![0, 1, 2]));
        let o = orient(&t, 1);
        let s = o.get(1).unwrap();
        assert!(s.balanced);
        assert_eq!(t.vertices(s.big), &[0, 1, 2]);
    }

    #[test]
    fn classification_cases() {
        // empty hypergraph: every triple is an anti-edge
        let h = Hypergraph::empty(3, 5).unwrap();
        let t = SeparatorTree::split(vec![2], SeparatorTree::atom(vec![0, 1, 2]), SeparatorTree::atom(vec![2, 3, 4]));
        let o = orient(&t, 1);
        assert_eq!(classify_anti_edge(&h, &t, &o, &[0, 2, 3], 0).unwrap().0, AntiEdgeClass::Bonded);
        assert_eq!(classify_anti_edge(&h, &t, &o, &[0, 1, 3], 0).unwrap().0, AntiEdgeClass::Free);
        assert_eq!(classify_anti_edge(&h, &t, &o, &[0, 1, 2], 0).unwrap().0, AntiEdgeClass::Atomic);
        assert!(classify_anti_edge(&h, &t, &o, &[0, 1, 2], 3).is_err());
        let single = SeparatorTree::atom((0..5).collect());
        let o1 = orient(&single, 1);
        assert_eq!(classify_anti_edge(&h, &single, &o1, &[1, 3, 4], 0).unwrap(), (AntiEdgeClass::Atomic, 0));
    }
}
