//! Isometries of complex hyperbolic space.
//!
//! Elements of `U(n,1)` are stored as dense `(n+1)×(n+1)` complex matrices
//! tagged with the Hermitian form they preserve: the diagonal form
//! `diag(-1, 1, …, 1)` of the ball model or the anti-diagonal form of the
//! Siegel domain. On top of that representation the crate provides
//!
//! * classification into elliptic, parabolic and hyperbolic kinds with their
//!   finer subtypes ([`classify`]),
//! * the Heisenberg group and the stabilizer of the point at infinity
//!   ([`heisenberg`]),
//! * a commutation test that follows the geometric case analysis, alongside
//!   the plain matrix commutator ([`commute`]),
//! * symbolic centralizers, their real dimensions and a numerical Lie-algebra
//!   cross-check ([`centralizer`]).
//!
//! All arithmetic is `f64`; every predicate takes an explicit tolerance and
//! [`Tolerances`] collects the defaults.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is deliberate: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod centralizer;
pub mod classify;
pub mod commute;
mod error;
pub mod heisenberg;
pub mod linalg;
pub mod models;
mod tolerance;

pub use error::{Error, Result};
pub use linalg::{Matrix, C64};
pub use tolerance::Tolerances;
