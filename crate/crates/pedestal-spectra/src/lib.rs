//! Pedestal matrices of finite posets.
//!
//! For a finite poset X, the pedestal matrix M^X is indexed by pairs of
//! linear extensions; each entry is a formal variable a_eps determined by
//! the disagreement pattern of the two orders. Every eigenvalue of M^X is
//! an integer linear combination of the a_eps. This crate constructs the
//! matrix, decomposes it through the filter semigroup, triangularizes all
//! the operators simultaneously over exact rationals, emits the eigenvalue
//! forms with multiplicities, and cross-checks everything against
//! independent oracles (seeded integer specializations, characteristic
//! polynomials, generating-function identities).

pub mod error;
pub mod exact;
pub mod filters;
pub mod genfun;
pub mod pedestal;
pub mod poset;
pub mod spectra;

pub use error::{Error, Result};
pub use poset::{LinearExtension, Poset, DEFAULT_EXTENSION_CAP};
