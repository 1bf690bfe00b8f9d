//! Exact computational algebra over concrete discretely valued fields.
//!
//! The crate covers the constructive side of coding imaginaries in
//! algebraically closed valued fields: lattices and residue sorts,
//! classification of definable `O`-submodules, separating bases of valued
//! vector spaces, swiss-cheese decompositions of one-variable sets, and the
//! coding maps into the geometric sorts.
//!
//! Everything is exact. Scalars are rationals (p-adic backend) or rational
//! functions over `F_q` (Laurent backend); randomness only enters through
//! explicitly seeded samplers.

pub mod cheese;
pub mod coding;
pub mod error;
pub mod field;
pub mod lattice;
pub mod matrix;
pub mod random;
pub mod rng;
pub mod submodule;
pub mod task;
pub mod vvspace;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, Scalar, Val};
