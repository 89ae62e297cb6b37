//! Finite topological groupoids: the fundamental groupoid as a quotient
//! of the square of the universal cover, its UC topology, pair and
//! transformation groupoids, induced morphisms and isomorphism testing.

mod constructions;
mod groupoid;
mod io;
mod iso;
mod morphism;
mod quotient;

use thiserror::Error;

use crate::finspace::FinSpaceError;
use crate::pi1core::Pi1Error;

pub use constructions::{transformation_groupoid, trivial_pair_groupoid};
pub use groupoid::{disjoint_union, FinTopGroupoid, GroupoidMorphism, Provenance};
pub use io::{
    groupoid_from_json, groupoid_to_dot, groupoid_to_json, morphism_from_json, morphism_to_json,
    GroupoidJson, SCHEMA_VERSION,
};
pub use iso::{groupoid_iso_check, IsoOutcome};
pub use morphism::induced_morphism;
pub use quotient::{
    arrow_of_pair, arrow_representative, quotient_groupoid, topologies_equal, uc_topology,
    ComponentGroupoid, FundamentalGroupoid, TopologyComparison, UcTopology,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GpdError {
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    FinSpace(#[from] FinSpaceError),
    #[error("groupoid was not built from this cover")]
    MismatchedProvenance,
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("not continuous: {0}")]
    NotContinuous(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("isomorphism search exceeded its cap of {0}")]
    SearchCapExceeded(usize),
    #[error("space is not simply connected: π₁ has order {0}")]
    NotSimplyConnected(usize),
    #[error("malformed groupoid: {0}")]
    Malformed(String),
    #[error("schema error: {0}")]
    Schema(String),
}
