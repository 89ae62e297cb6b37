//! Finite topological spaces as preorders.
//!
//! A set is open iff it is an up-set of the specialization preorder, so the
//! minimal open of a point `x` is `↑x`. Topologies are never stored as lists
//! of opens; openness of a given set is a linear scan over its points.

mod complex;
mod ops;
mod parse;
mod report;
mod space;

use thiserror::Error;

pub use complex::{face_poset, order_complex, SimplicialComplex};
pub use ops::{
    local_homeomorphism, partition_from_names, product_projections, product_space, quotient_space,
    quotient_with_names, relation_is_closed, LocalHomeo, Quotient,
};
pub use parse::{parse_poset, write_poset};
pub use report::{
    hausdorff_witness, is_hausdorff, is_locally_compact, space_report, HypothesesCertificate,
    SpaceReport,
};
pub use space::{
    is_open, minimal_open, monotone_witness, preimage_witness, FinSpace, OpenSet, SpaceMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinSpaceError {
    #[error("antisymmetry requested but {0} and {1} lie on a cycle")]
    CycleWithT0Flag(String, String),
    #[error("space is not T0: {0} and {1} are indistinguishable")]
    NotT0(String, String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("bad identifier `{0}`")]
    BadIdentifier(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("set is not open")]
    NotOpen,
    #[error("facet must be nonempty")]
    EmptyFacet,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed space: {0}")]
    Malformed(String),
}
