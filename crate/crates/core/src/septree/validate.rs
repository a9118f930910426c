use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{floor, rat_int, Rational};
use crate::connectivity::{find_separator, is_k1_connected, ConnectivityWitness};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::subsets::{difference, intersection, union};

use super::index::{for_each_bit, has, TreeIndex};
use super::tree::{NodeId, SeparatorTree};

/// Largest atom size allowed: `floor(c*k) + k`.
pub fn atom_threshold(k: usize, c: &Rational) -> usize {
    let ck = floor(&(c * rat_int(k as i64)));
    ck.to_usize().unwrap_or(0) + k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeViolation {
    RootMismatch,
    UnsortedVertices { node: NodeId },
    VertexOutOfRange { node: NodeId, vertex: Vertex },
    SeparatorSize { node: NodeId, size: usize, k: usize },
    OversizedAtom { node: NodeId, size: usize, threshold: usize },
    UnneededSeparator { node: NodeId, size: usize, threshold: usize },
    ChildrenDoNotMeetInSeparator { node: NodeId },
    ChildrenDoNotCoverParent { node: NodeId },
    EmptyPrivatePart { node: NodeId },
    CrossingEdge { node: NodeId, edge: Vec<Vertex>, count: u64 },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TreeViolation::*;
        match self {
            RootMismatch => write!(f, "root is not labelled by the full vertex set"),
            UnsortedVertices { node } => write!(f, "node {node}: vertices not strictly ascending"),
            VertexOutOfRange { node, vertex } => write!(f, "node {node}: vertex {vertex} out of range"),
            SeparatorSize { node, size, k } => write!(f, "separator {node} has {size} vertices, expected {k}"),
            OversizedAtom { node, size, threshold } => {
                write!(f, "atom {node} has {size} vertices, more than {threshold}")
            }
            UnneededSeparator { node, size, threshold } => {
                write!(f, "subgraph node {node} has {size} <= {threshold} vertices but is split")
            }
            ChildrenDoNotMeetInSeparator { node } => {
                write!(f, "separator {node}: children do not intersect exactly in the separator")
            }
            ChildrenDoNotCoverParent { node } => write!(f, "separator {node}: children do not cover the parent"),
            EmptyPrivatePart { node } => write!(f, "separator {node}: a child has no vertex outside the separator"),
            CrossingEdge { node, edge, count } => {
                write!(f, "separator {node}: {count} edge(s) avoid it and cross, e.g. {edge:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub valid: bool,
    pub k: usize,
    pub threshold: usize,
    pub atoms: usize,
    pub separators: usize,
    pub violations: Vec<TreeViolation>,
}

/// Per-node counts gathered in one pass over the edges.
pub(crate) struct EdgeScan {
    /// Edges contained in each node.
    pub(crate) inside: Vec<u128>,
    /// Edges meeting the separator and both private parts, per separator.
    pub(crate) bonded: Vec<u128>,
    pub(crate) crossing: Vec<(u64, Option<Vec<Vertex>>)>,
}

pub(crate) fn scan_edges(h: &Hypergraph, tree: &SeparatorTree) -> EdgeScan {
    let idx = TreeIndex::new(tree, h.n());
    let len = tree.len();
    let mut inside = vec![0u128; len];
    let mut bonded = vec![0u128; len];
    let mut crossing: Vec<(u64, Option<Vec<Vertex>>)> = vec![(0, None); len];
    let mut and = vec![0u64; idx.words];
    let mut or = vec![0u64; idx.words];
    for e in h.iter() {
        idx.masks(&e, &mut and, &mut or);
        for_each_bit(&and, |id| {
            inside[id] += 1;
            if let Some(s) = tree.child(id) {
                let (a, b) = tree.branches(s).expect("separator");
                if !has(&and, a) && !has(&and, b) {
                    if has(&or, s) {
                        bonded[s] += 1;
                    } else {
                        let c = &mut crossing[s];
                        c.0 += 1;
                        c.1.get_or_insert_with(|| e.to_vec());
                    }
                }
            }
        });
    }
    EdgeScan { inside, bonded, crossing }
}

pub(crate) fn structural(n: usize, tree: &SeparatorTree, k: usize, threshold: Option<usize>) -> Vec<TreeViolation> {
    let mut out = Vec::new();
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    if tree.root_vertices() != all.as_slice() {
        out.push(TreeViolation::RootMismatch);
    }
    for id in 0..tree.len() {
        let vs = tree.vertices(id);
        if vs.windows(2).any(|w| w[0] >= w[1]) {
            out.push(TreeViolation::UnsortedVertices { node: id });
        }
        if let Some(&v) = vs.iter().find(|&&v| v as usize >= n) {
            out.push(TreeViolation::VertexOutOfRange { node: id, vertex: v });
        }
        if let Some((a, b)) = tree.branches(id) {
            if vs.len() != k {
                out.push(TreeViolation::SeparatorSize { node: id, size: vs.len(), k });
            }
            let p = tree.parent(id).expect("separator has a parent");
            let (va, vb) = (tree.vertices(a), tree.vertices(b));
            if intersection(va, vb) != vs {
                out.push(TreeViolation::ChildrenDoNotMeetInSeparator { node: id });
            }
            if union(va, vb) != tree.vertices(p) {
                out.push(TreeViolation::ChildrenDoNotCoverParent { node: id });
            }
            if difference(va, vs).is_empty() || difference(vb, vs).is_empty() {
                out.push(TreeViolation::EmptyPrivatePart { node: id });
            }
        } else if let Some(threshold) = threshold {
            let size = vs.len();
            match tree.child(id) {
                None if size > threshold => {
                    out.push(TreeViolation::OversizedAtom { node: id, size, threshold })
                }
                Some(_) if size <= threshold => {
                    out.push(TreeViolation::UnneededSeparator { node: id, size, threshold })
                }
                _ => {}
            }
        }
    }
    out
}

/// Checks every separator-tree condition of `tree` against `h`. Acceptance
/// certifies that `h` has no `(k+1)`-connected subgraph on more than
/// `floor(c*k) + k` vertices: such a subgraph would survive each separator on
/// one side and so fit inside an atom.
pub fn validate_separator_tree(h: &Hypergraph, tree: &SeparatorTree, k: usize, c: &Rational) -> CertificateReport {
    let threshold = atom_threshold(k, c);
    let mut violations = structural(h.n(), tree, k, Some(threshold));
    let scan = scan_edges(h, tree);
    for s in tree.separators() {
        if let (count, Some(edge)) = &scan.crossing[s] {
            violations.push(TreeViolation::CrossingEdge { node: s, edge: edge.clone(), count: *count });
        }
    }
    CertificateReport {
        valid: violations.is_empty(),
        k,
        threshold,
        atoms: tree.atoms().count(),
        separators: tree.separators().count(),
        violations,
    }
}

/// Why a decomposition stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildFailure {
    /// The subgraph node that could not be split.
    pub vertices: Vec<Vertex>,
    pub reason: BuildFailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildFailureReason {
    /// The node induces a `(k+1)`-connected subgraph larger than an atom may be.
    HighlyConnected,
    /// The node has at most `k+1` vertices but exceeds the atom threshold.
    TooFewVertices,
}

impl fmt::Display for BuildFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            BuildFailureReason::HighlyConnected => write!(
                f,
                "the {} vertices {:?} induce a (k+1)-connected subgraph larger than an atom",
                self.vertices.len(),
                self.vertices
            ),
            BuildFailureReason::TooFewVertices => {
                write!(f, "node {:?} is too large for an atom but too small to separate", self.vertices)
            }
        }
    }
}

/// Recursive decomposition by [`find_separator`]. Succeeds exactly when `h`
/// has no `(k+1)`-connected subgraph on more than `floor(c*k) + k` vertices.
/// The emitted tree stores the computed orientation.
pub fn build_separator_tree(h: &Hypergraph, k: usize, c: &Rational) -> Result<SeparatorTree, BuildFailure> {
    let threshold = atom_threshold(k, c);
    let tree = build_node(h, &h.vertices(), k, threshold)?;
    Ok(super::orient::oriented(&tree, k))
}

fn build_node(h: &Hypergraph, p: &[Vertex], k: usize, threshold: usize) -> Result<SeparatorTree, BuildFailure> {
    if p.len() <= threshold {
        return Ok(SeparatorTree::atom(p.to_vec()));
    }
    let (sub, map) = h.induced_subgraph(p);
    let fail = |reason| BuildFailure { vertices: p.to_vec(), reason };
    match find_separator(&sub, k) {
        Err(_) => Err(fail(BuildFailureReason::TooFewVertices)),
        Ok(None) => {
            debug_assert_eq!(is_k1_connected(&sub, k), ConnectivityWitness::Connected);
            Err(fail(BuildFailureReason::HighlyConnected))
        }
        Ok(Some(sep)) => {
            let back = |vs: &[Vertex]| vs.iter().map(|&v| map[v as usize]).collect::<Vec<_>>();
            let a = build_node(h, &back(&sep.a), k, threshold)?;
            let b = build_node(h, &back(&sep.b), k, threshold)?;
            Ok(SeparatorTree::split(back(&sep.s), a, b))
        }
    }
}

/// Merges sibling atoms whose sizes add up to less than `(c+2)k` into their
/// parent, repeating until no such pair remains.
pub fn merge_small_siblings(tree: &SeparatorTree, k: usize, c: &Rational) -> SeparatorTree {
    let limit = (c + rat_int(2)) * rat_int(k as i64);
    merge_node(tree, 0, &limit)
}

fn merge_node(tree: &SeparatorTree, id: NodeId, limit: &Rational) -> SeparatorTree {
    match tree.child(id) {
        None => SeparatorTree::atom(tree.vertices(id).to_vec()),
        Some(s) => {
            let (a, b) = tree.branches(s).expect("separator");
            let ta = merge_node(tree, a, limit);
            let tb = merge_node(tree, b, limit);
            if ta.len() == 1 && tb.len() == 1 {
                let total = rat_int((ta.root_vertices().len() + tb.root_vertices().len()) as i64);
                if &total < limit {
                    return SeparatorTree::atom(tree.vertices(id).to_vec());
                }
            }
            SeparatorTree::split(tree.vertices(s).to_vec(), ta, tb)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn path() -> Hypergraph {
        Hypergraph::new(3, 5, [[0, 1, 2], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn threshold_uses_floor() {
        assert_eq!(atom_threshold(6, &rat(1, 1)), 12);
        assert_eq!(atom_threshold(6, &rat(1, 4)), 7);
        assert_eq!(atom_threshold(3, &rat(0, 1)), 3);
    }

    #[test]
    fn build_path() {
        let t = build_separator_tree(&path(), 1, &rat(2, 1)).unwrap();
        assert_eq!(t.separators().count(), 1);
        assert_eq!(t.atoms().count(), 2);
        assert_eq!(t.vertices(1), &[2]);
        let rep = validate_separator_tree(&path(), &t, 1, &rat(2, 1));
        assert!(rep.valid, "{:?}", rep.violations);
    }

    #[test]
    fn build_single_atom() {
        let k6 = Hypergraph::complete(3, 6).unwrap();
        let t = build_separator_tree(&k6, 3, &rat(1, 1)).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn build_reports_highly_connected_part() {
        let k9 = Hypergraph::complete(3, 9).unwrap();
        let err = build_separator_tree(&k9, 3, &rat(1, 1)).unwrap_err();
        assert_eq!(err.reason, BuildFailureReason::HighlyConnected);
        assert_eq!(err.vertices.len(), 9);
        let err = build_separator_tree(&Hypergraph::empty(3, 4).unwrap(), 3, &rat(0, 1)).unwrap_err();
        assert_eq!(err.reason, BuildFailureReason::TooFewVertices);
    }

    #[test]
    fn validation_rejects() {
        let h = path();
        // atom too large
        let t = SeparatorTree::atom(h.vertices());
        let rep = validate_separator_tree(&h, &t, 1, &rat(1, 1));
        assert!(matches!(rep.violations[..], [TreeViolation::OversizedAtom { size: 5, threshold: 2, .. }]));
        // wrong separator lets {0,1,2} cross
        let t = SeparatorTree::split(vec![3], SeparatorTree::atom(vec![0, 1, 3]), SeparatorTree::atom(vec![2, 3, 4]));
        let rep = validate_separator_tree(&h, &t, 1, &rat(2, 1));
        assert!(rep.violations.iter().any(|v| matches!(v, TreeViolation::CrossingEdge { node: 1, count: 1, .. })));
    }

    #[test]
    fn merge_collapses_small_pairs() {
        let t = SeparatorTree::split(vec![2], SeparatorTree::atom(vec![0, 1, 2]), SeparatorTree::atom(vec![2, 3, 4]));
        // 3 + 3 < (2 + 2) * 1 is false, so nothing merges at c = 2
        assert_eq!(merge_small_siblings(&t, 1, &rat(2, 1)).len(), 4);
        assert_eq!(merge_small_siblings(&t, 1, &rat(5, 1)).len(), 1);
    }
}
