//! Bound states of a spin-0 DKP particle in a screened Coulomb (Yukawa)
//! vector potential.
//!
//! - [`specfun`]: terminating hypergeometric sums, Jacobi and Laguerre polynomials.
//! - [`nu_engine`]: the parametric Nikiforov–Uvarov solver.
//! - [`dkp_yukawa`]: closed-form spectra, wavefunctions and spinors.
//! - [`oracle`]: direct numerical integration of the radial equation.
//! - [`cli`]: the `dkp-spectra` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dkp_yukawa;
pub mod error;
pub mod nu_engine;
pub mod oracle;
pub mod specfun;

pub use error::{Error, Result};
