//! Exact computation with delta-matroids: twists, minors, interlacement,
//! order-based activities, and the transition, interlace, and
//! Bollobas-Riordan polynomial invariants, each with independently
//! implemented evaluators that must agree.

pub mod activity;
pub mod dm;
pub mod engines;
pub mod error;
pub mod gen;
pub mod graphs;
pub mod ground;
pub mod interlace;
pub mod poly;
pub mod ribbon;
pub mod verify;

pub use dm::{Connectivity, DeltaMatroid, RankProfile};
pub use error::{Error, Result};
pub use ground::{GroundSet, SubsetMask, TotalOrder};

/// Coefficient scalar used by the shipped engines and the CLI.
pub type Coeff = num_bigint::BigInt;

/// Concrete polynomial type over [`Coeff`].
pub type Poly = poly::LaurentHalfPoly<Coeff>;
