//! Computational toolkit for the modular curve X0(N) at square-free level.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: Moebius, Euler phi, Ramanujan sums and the exponents a_N(t).
//! - [`qexp`]: exact q-expansions, the Delta functions Delta_N and Delta_N^0, Atkin-Lehner
//!   transforms and evaluation with the renormalised Petersson norm.
//! - [`lattice`]: the lattice L of trace-zero matrices, vector enumeration, Heegner degrees,
//!   cusp data, isotropic counts and the Weil representation.
//! - [`analytic`]: special functions, scalar Eisenstein series, the Kronecker limit formula
//!   and scattering constants.
//! - [`theta`]: the Kudla-Millson kernel, Kudla Green functions, vector-valued Eisenstein
//!   series and the theta lift.
//! - [`arithgeom`]: symbolic arithmetic divisors on the integral model and their pairing table.

// negated float comparisons are used on purpose: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod arithgeom;
pub mod error;
pub mod lattice;
pub mod numtheory;
pub mod qexp;
pub mod theta;

pub use error::{Error, Result};
