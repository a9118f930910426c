//! Separator trees for uniform hypergraphs without highly connected
//! subgraphs.
//!
//! The crate builds and checks separator-tree certificates, evaluates the
//! associated edge bounds in exact rational arithmetic, generates the
//! extremal families that attain them, and cross-checks everything with
//! brute-force oracles on small instances.
//!
//! ```
//! use hypersep::constructions::example1;
//! use hypersep::septree::validate_separator_tree;
//! use hypersep::arith::rat_int;
//!
//! let out = example1(1, 3, 1).unwrap();
//! assert_eq!(out.hypergraph.edge_count(), 2134);
//! let report = validate_separator_tree(&out.hypergraph, &out.tree, 6, &rat_int(1));
//! assert!(report.valid);
//! ```

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod connectivity;
pub mod constructions;
pub mod hypergraph;
pub mod oracle;
pub mod report;
pub mod septree;
pub mod subsets;

pub use arith::Rational;
pub use hypergraph::{Hypergraph, Vertex};
pub use septree::{AbstractTree, SeparatorTree};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Hypergraph(#[from] hypergraph::HypergraphError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed tree: {0}")]
    TreeShape(String),
    #[error("edge identity breached: {0}")]
    LedgerMismatch(String),
    #[error("{0}")]
    ScaleLimit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
