//! Separator trees: construction, certificate checks, orientation, the exact
//! edge identity, size-only abstract trees and tiny-atom deletion.

mod abstract_tree;
mod assign;
pub(crate) mod index;
mod ledger;
mod orient;
mod tree;
mod validate;

pub use abstract_tree::{
    abstract_tree, delete_tiny_atoms, essential_difference, essential_difference_of, AbstractNode, AbstractTree,
    Deletion,
};
pub use assign::{
    assignment, fhat, free_count_bound, free_difference, free_difference_cap, AssignmentData, AssignmentPair,
};
pub use ledger::{audit_edge_identity, three_part_sets, AtomTerm, DirectMethod, EdgeLedger, SeparatorTerm};
pub use orient::{
    classify_anti_edge, free_count, is_normal_size, orient, oriented, AntiEdgeClass, Orientation,
    SeparatorOrientation,
};
pub use tree::{Node, NodeId, SeparatorTree};
pub use validate::{
    atom_threshold, build_separator_tree, merge_small_siblings, validate_separator_tree, BuildFailure,
    BuildFailureReason, CertificateReport, TreeViolation,
};
