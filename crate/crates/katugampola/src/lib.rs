//! Numerical toolkit for the Katugampola fractional integral.
//!
//! The Katugampola operator is a one-parameter family of fractional
//! integrals with kernel `tau^(rho-1) (t^rho - tau^rho)^(alpha-1)`. It
//! interpolates between the Riemann–Liouville integral (`rho = 1`) and the
//! Hadamard integral (`rho -> 0+`). This crate provides four independent
//! routes to it:
//!
//! - [`exact`] — closed forms for power functions, the ground truth for
//!   everything else.
//! - [`oracle`] — direct adaptive quadrature of the defining integral with
//!   the endpoint singularity removed analytically, usable on arbitrary
//!   integrands.
//! - [`approx`] — a truncated-series decomposition that rewrites the
//!   fractional integral in terms of the function itself and a family of
//!   running moment integrals, together with an a-priori error envelope.
//! - [`solver`] — solves fractional integral equations of the form
//!   `I x + x = f`, `x(0) = 0`, by replacing the operator with its
//!   truncation and marching the resulting coupled system.
//!
//! The [`cli`] module exposes all of the above as `exact`, `approx`,
//! `compare`, `solve` and `sweep` subcommands emitting CSV.

pub mod approx;
pub mod cli;
pub mod domain;
mod error;
pub mod exact;
pub mod interp;
pub mod oracle;
pub mod solver;
pub mod specfun;

pub use domain::{Grid, OperatorParams, SampledFunction};
pub use error::{Error, Result};
