//! Exact-arithmetic workbench for the su(1,1) dynamical symmetry of the
//! N-particle Calogero model.
//!
//! The crate is layered bottom-up:
//!
//! - [`numeric`]: exact rationals and Gaussian rationals.
//! - [`multipoly`]: sparse multivariate polynomials, derivatives, exact
//!   division by coordinate differences, invariant bases.
//! - [`realization`]: the differential-operator generators `T+`, `T0`, `T-`
//!   acting on symmetric translation-invariant polynomials, plus the Jastrow
//!   conjugation check.
//! - [`kernel`]: zero-energy polynomials as the exact nullspace of `T+`.
//! - [`radial`]: the abstract lowest-weight module, the time operator,
//!   coherent states and the compact `R`/`L±` sector.
//! - [`report`] and [`session`]: verification reports and CLI orchestration.

pub mod error;
pub mod kernel;
pub mod matrix;
pub mod multipoly;
pub mod numeric;
pub mod radial;
pub mod realization;
pub mod report;
pub mod session;

pub use error::{Error, Result};
pub use multipoly::{InvariantBasis, MultiPoly};
pub use numeric::{GaussScalar, Rational};
pub use radial::RadialVector;
pub use realization::SystemParams;
pub use report::{Status, VerificationReport};
