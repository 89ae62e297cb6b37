//! Fundamental groupoids of finite spaces, built as topological groupoids
//! and checked exhaustively, plus an exact rational model of the circle.

pub mod circlemodel;
pub mod finspace;
pub mod gpdbuild;
pub mod gpdcheck;
pub mod homology;
pub mod pi1core;
