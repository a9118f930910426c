//! Size-only shadows of separator trees and the tiny-atom deletion.

use serde::{Deserialize, Serialize};

use crate::arith::choose_i;
use crate::{precondition, Error, Result};

use super::orient::{is_normal_size, orient_abstract, Orientation};
use super::tree::{NodeId, SeparatorTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbstractNode {
    Subgraph { size: usize, child: Option<NodeId> },
    Separator { size: usize, small: NodeId, big: NodeId },
}

/// Separator tree reduced to node sizes. Node ids follow the same preorder
/// as [`SeparatorTree`], so `abstract_tree` preserves them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractTree {
    nodes: Vec<AbstractNode>,
    parent: Vec<Option<NodeId>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Wire {
    Subgraph { size: usize, child: Option<Box<Wire>> },
    Separator { size: usize, small: Box<Wire>, big: Box<Wire> },
}

/// The size-only shadow of `tree`, keeping its stored small/big order.
pub fn abstract_tree(tree: &SeparatorTree) -> AbstractTree {
    let nodes = (0..tree.len())
        .map(|id| match tree.branches(id) {
            Some((small, big)) => AbstractNode::Separator { size: tree.vertices(id).len(), small, big },
            None => AbstractNode::Subgraph { size: tree.vertices(id).len(), child: tree.child(id) },
        })
        .collect();
    AbstractTree { nodes, parent: (0..tree.len()).map(|i| tree.parent(i)).collect() }
}

impl AbstractTree {
    pub fn atom(size: usize) -> Self {
        AbstractTree { nodes: vec![AbstractNode::Subgraph { size, child: None }], parent: vec![None] }
    }

    /// Joins two trees along a separator of size `k`; the root gets
    /// `|A| + |B| - k` vertices.
    pub fn split(k: usize, small: AbstractTree, big: AbstractTree) -> Self {
        let size = small.size(0) + big.size(0) - k;
        let (small_at, big_at) = (2, 2 + small.len());
        let mut nodes = vec![
            AbstractNode::Subgraph { size, child: Some(1) },
            AbstractNode::Separator { size: k, small: small_at, big: big_at },
        ];
        let mut parent = vec![None, Some(0)];
        for (offset, sub) in [(small_at, small), (big_at, big)] {
            for (i, node) in sub.nodes.into_iter().enumerate() {
                nodes.push(match node {
                    AbstractNode::Subgraph { size, child } => {
                        AbstractNode::Subgraph { size, child: child.map(|c| c + offset) }
                    }
                    AbstractNode::Separator { size, small, big } => {
                        AbstractNode::Separator { size, small: small + offset, big: big + offset }
                    }
                });
                parent.push(Some(sub.parent[i].map_or(1, |p| p + offset)));
            }
        }
        AbstractTree { nodes, parent }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> AbstractNode {
        self.nodes[id]
    }

    pub fn size(&self, id: NodeId) -> usize {
        match self.nodes[id] {
            AbstractNode::Subgraph { size, .. } | AbstractNode::Separator { size, .. } => size,
        }
    }

    /// Number of vertices of the whole tree.
    pub fn vertex_count(&self) -> usize {
        self.size(0)
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn child(&self, id: NodeId) -> Option<NodeId> {
        match self.nodes[id] {
            AbstractNode::Subgraph { child, .. } => child,
            AbstractNode::Separator { .. } => None,
        }
    }

    pub fn branches(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id] {
            AbstractNode::Separator { small, big, .. } => Some((small, big)),
            AbstractNode::Subgraph { .. } => None,
        }
    }

    pub fn is_atom(&self, id: NodeId) -> bool {
        matches!(self.nodes[id], AbstractNode::Subgraph { child: None, .. })
    }

    pub fn atoms(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.is_atom(i))
    }

    pub fn separators(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.branches(i).is_some())
    }

    /// The common separator size, if the tree has separators.
    pub fn k(&self) -> Option<usize> {
        self.separators().next().map(|s| self.size(s))
    }

    /// Checks `|P| = |A| + |B| - k` at every separator.
    pub fn sizes_consistent(&self) -> bool {
        self.separators().all(|s| {
            let (a, b) = self.branches(s).expect("separator");
            let p = self.parent[s].expect("separator has a parent");
            self.size(a) + self.size(b) == self.size(p) + self.size(s)
        })
    }

    /// Whether every atom has more than `4k/3` vertices.
    pub fn is_normal(&self, k: usize) -> bool {
        self.atoms().all(|a| is_normal_size(self.size(a), k))
    }

    /// Merges sibling atoms with `|A| + |B| < (c+2)k`, as on concrete trees.
    pub fn merge_small_siblings(&self, k: usize, c: &crate::Rational) -> AbstractTree {
        let limit = (c + crate::arith::rat_int(2)) * crate::arith::rat_int(k as i64);
        self.merge_node(0, &limit)
    }

    fn merge_node(&self, id: NodeId, limit: &crate::Rational) -> AbstractTree {
        match self.child(id) {
            None => AbstractTree::atom(self.size(id)),
            Some(s) => {
                let (a, b) = self.branches(s).expect("separator");
                let (ta, tb) = (self.merge_node(a, limit), self.merge_node(b, limit));
                if ta.len() == 1 && tb.len() == 1 && &crate::arith::rat_int((ta.size(0) + tb.size(0)) as i64) < limit {
                    return AbstractTree::atom(self.size(id));
                }
                AbstractTree::split(self.size(s), ta, tb)
            }
        }
    }

    fn to_wire(&self, id: NodeId) -> Wire {
        match self.nodes[id] {
            AbstractNode::Subgraph { size, child } => {
                Wire::Subgraph { size, child: child.map(|c| Box::new(self.to_wire(c))) }
            }
            AbstractNode::Separator { size, small, big } => Wire::Separator {
                size,
                small: Box::new(self.to_wire(small)),
                big: Box::new(self.to_wire(big)),
            },
        }
    }

    fn from_wire(w: Wire) -> Result<Self> {
        match w {
            Wire::Subgraph { size, child: None } => Ok(AbstractTree::atom(size)),
            Wire::Subgraph { size, child: Some(sep) } => match *sep {
                Wire::Separator { size: k, small, big } => {
                    let (a, b) = (Self::from_wire(*small)?, Self::from_wire(*big)?);
                    if !matches!(a.nodes[0], AbstractNode::Subgraph { .. }) {
                        return Err(Error::TreeShape("separator children must be subgraph nodes".into()));
                    }
                    if a.size(0) + b.size(0) < k {
                        return Err(Error::TreeShape("children smaller than the separator".into()));
                    }
                    let t = AbstractTree::split(k, a, b);
                    if t.size(0) != size {
                        return Err(Error::TreeShape(format!(
                            "subgraph node of size {size} does not equal |A| + |B| - k = {}",
                            t.size(0)
                        )));
                    }
                    Ok(t)
                }
                Wire::Subgraph { .. } => Err(Error::TreeShape("the child of a subgraph node must be a separator".into())),
            },
            Wire::Separator { .. } => Err(Error::TreeShape("expected a subgraph node".into())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire(0)).expect("tree serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(s)?)
    }

    /// Orientation by normal-atom count, then tiny-vertex count, keeping the
    /// stored order on a full tie.
    pub fn orientation(&self, k: usize) -> Orientation {
        orient_abstract(self, k)
    }

    /// Copy with every separator stored in its computed orientation.
    pub fn oriented(&self, k: usize) -> AbstractTree {
        let o = self.orientation(k);
        self.rebuild(0, &|s| o.get(s).is_some_and(|x| x.flipped))
    }

    fn rebuild(&self, id: NodeId, flip: &dyn Fn(NodeId) -> bool) -> AbstractTree {
        match self.child(id) {
            None => AbstractTree::atom(self.size(id)),
            Some(s) => {
                let (a, b) = self.branches(s).expect("separator");
                let (a, b) = if flip(s) { (b, a) } else { (a, b) };
                AbstractTree::split(self.size(s), self.rebuild(a, flip), self.rebuild(b, flip))
            }
        }
    }
}

impl Serialize for AbstractTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire(0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbstractTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        AbstractTree::from_wire(Wire::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Result of deleting every tiny atom from an abstract tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub tree: AbstractTree,
    /// Sizes `a_i = |A_i| - k` of the deleted tiny atoms.
    pub removed: Vec<usize>,
    /// `(old, new)` ids of the separators that survive.
    pub survivors: Vec<(NodeId, NodeId)>,
}

impl Deletion {
    pub fn tiny_vertices_removed(&self) -> usize {
        self.removed.iter().sum()
    }
}

/// Deletes every tiny atom together with the separator directly above it,
/// merging the subgraph nodes above and below that separator. Sizes are
/// recomputed from the surviving atoms, and surviving separators keep their
/// stored orientation.
pub fn delete_tiny_atoms(t: &AbstractTree, k: usize) -> Result<Deletion> {
    let tiny = |id: NodeId| t.is_atom(id) && !is_normal_size(t.size(id), k);
    if t.len() == 1 && tiny(0) {
        return Err(precondition("a tree consisting of one tiny atom has nothing left after deletion"));
    }
    for s in t.separators() {
        let (a, b) = t.branches(s).expect("separator");
        if tiny(a) && tiny(b) {
            return Err(precondition(format!(
                "separator {s} has two tiny atoms below it; merge small siblings first"
            )));
        }
    }
    let mut removed = Vec::new();
    let mut kept = Vec::new();
    let tree = rebuild_without_tiny(t, 0, k, &tiny, &mut removed, &mut kept);
    // the rebuilt tree is laid out in preorder, and so are the survivors
    let new_ids: Vec<NodeId> = tree.separators().collect();
    debug_assert_eq!(new_ids.len(), kept.len());
    Ok(Deletion { tree, removed, survivors: kept.into_iter().zip(new_ids).collect() })
}

fn rebuild_without_tiny(
    t: &AbstractTree,
    id: NodeId,
    k: usize,
    tiny: &dyn Fn(NodeId) -> bool,
    removed: &mut Vec<usize>,
    kept: &mut Vec<NodeId>,
) -> AbstractTree {
    match t.child(id) {
        None => AbstractTree::atom(t.size(id)),
        Some(s) => {
            let (a, b) = t.branches(s).expect("separator");
            if tiny(a) {
                removed.push(t.size(a) - k);
                return rebuild_without_tiny(t, b, k, tiny, removed, kept);
            }
            if tiny(b) {
                removed.push(t.size(b) - k);
                return rebuild_without_tiny(t, a, k, tiny, removed, kept);
            }
            kept.push(s);
            let ta = rebuild_without_tiny(t, a, k, tiny, removed, kept);
            let tb = rebuild_without_tiny(t, b, k, tiny, removed, kept);
            AbstractTree::split(t.size(s), ta, tb)
        }
    }
}

/// `C(t+k,r) - C(t,r) - C(t-a+k,r) + C(t-a,r) + sum C(a_i,r)`, where
/// `t + k` is the vertex count and `a = sum a_i` over the tiny atoms.
pub fn essential_difference(t: &AbstractTree, k: usize, r: usize) -> Result<i128> {
    let tiny: Vec<usize> = t
        .atoms()
        .filter(|&a| !is_normal_size(t.size(a), k))
        .map(|a| t.size(a).saturating_sub(k))
        .collect();
    essential_difference_of(t.vertex_count() as i128 - k as i128, k, r, &tiny)
}

pub fn essential_difference_of(t: i128, k: usize, r: usize, a: &[usize]) -> Result<i128> {
    let total: i128 = a.iter().map(|&x| x as i128).sum();
    if total > t {
        return Err(precondition(format!("tiny vertices ({total}) exceed t = {t}")));
    }
    let (k, r) = (k as i128, r as u64);
    let c = |x: i128| choose_i(x, r);
    Ok(c(t + k) - c(t) - c(t - total + k) + c(t - total) + a.iter().map(|&x| c(x as i128)).sum::<i128>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_then_pair() -> AbstractTree {
        // A tiny (size 7) against B and C (size 12) below a second separator, k = 6
        let bc = AbstractTree::split(6, AbstractTree::atom(12), AbstractTree::atom(12));
        AbstractTree::split(6, AbstractTree::atom(7), bc)
    }

    #[test]
    fn sizes_follow_the_separator_rule() {
        let t = tiny_then_pair();
        assert_eq!(t.size(0), 7 + 18 - 6);
        assert!(t.sizes_consistent());
        assert_eq!(t.k(), Some(6));
    }

    #[test]
    fn deleting_tiny_then_pair_leaves_two_atoms() {
        let d = delete_tiny_atoms(&tiny_then_pair(), 6).unwrap();
        assert_eq!(d.tree.atoms().count(), 2);
        assert_eq!(d.tree.separators().count(), 1);
        assert_eq!(d.tree.vertex_count(), 18);
        assert_eq!(d.removed, vec![1]);
        assert_eq!(d.survivors, vec![(4, 1)]);
        assert!(d.tree.is_normal(6));
    }

    #[test]
    fn normal_tree_is_unchanged() {
        let t = AbstractTree::split(6, AbstractTree::atom(12), AbstractTree::atom(12));
        let d = delete_tiny_atoms(&t, 6).unwrap();
        assert_eq!(d.tree, t);
        assert_eq!(essential_difference(&t, 6, 3).unwrap(), 0);
    }

    #[test]
    fn essential_difference_values() {
        assert_eq!(essential_difference_of(28, 6, 3, &[1, 1, 1, 1]).unwrap(), 672);
        assert!(essential_difference_of(4, 6, 3, &[5]).is_err());
        assert_eq!(essential_difference_of(4, 6, 3, &[4]).unwrap(), 120 - 4 - 20 + 0 + 4);
    }

    #[test]
    fn two_tiny_siblings_are_rejected() {
        let t = AbstractTree::split(6, AbstractTree::atom(7), AbstractTree::atom(8));
        assert!(delete_tiny_atoms(&t, 6).is_err());
        assert!(delete_tiny_atoms(&AbstractTree::atom(7), 6).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = tiny_then_pair();
        let js = t.to_json();
        assert!(js.starts_with(r#"{"type":"subgraph","size":19,"child":{"type":"separator","size":6,"small""#));
        assert_eq!(AbstractTree::from_json(&js).unwrap(), t);
        assert!(AbstractTree::from_json(r#"{"type":"subgraph","size":20,"child":{"type":"separator","size":6,"small":{"type":"subgraph","size":7,"child":null},"big":{"type":"subgraph","size":7,"child":null}}}"#).is_err());
    }
}
