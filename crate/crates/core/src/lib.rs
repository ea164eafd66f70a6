//! Exact computational kernels for the equations of affine Grassmannians.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: scalar rings, Hermite normal form, unitriangular inversion, cyclotomic reduction.
//! * [`partitions`]: partitions, Maya diagrams, jump orders, regularization and cores.
//! * [`fock`]: the semi-infinite wedge space with Clifford and shuffle operators.
//! * [`symfunc`]: symmetric polynomials, Kostka–Foulkes polynomials, determinant identities.
//! * [`exterior`]: finite exterior algebra, KP two-tensors and T-shuffle operators.
//! * [`grassmann`]: Plücker ideals, invariant subspaces over finite fields, tangent probes.
//! * [`klmw`]: straightening of dual wedges and the cross-checks built on it.
//! * [`cli`]: job specifications, verification suites and reports used by the `affgr` binary.

pub mod cli;
pub mod error;
pub mod exact;
pub mod exterior;
pub mod fock;
pub mod grassmann;
pub mod klmw;
pub mod partitions;
pub mod symfunc;

pub use error::{Error, Result};
