//! Arithmetic divisors on the integral model of X0(N) at square-free level.
//!
//! Divisors are finite combinations of a fixed component basis with exact symbolic
//! coefficients. The intersection pairing is a closed table on that basis: pairs without a
//! closed form are rejected. On top of the table sit the divisors of Delta_N and Delta_N^0,
//! the special divisors Z(n, mu, v), their degrees and the vertical pairing identity.
//!
//! Degree convention: deg X = 2 <X, a(1)>, so that <X, Const> = deg X / 2.

pub mod divisor;
pub mod pairing;
pub mod special;
pub mod symbolic;

pub use divisor::{parse_divisor, parse_rational, ArithDivisor, Component};
pub use pairing::{
    component_degree, degree, finite_basis, hodge_self_intersection, pair, pair_basis,
    pairing_table, vertical_cross_term, PairingTable, TableEntry,
};
pub use special::{
    assemble_z_hat, degree_series, delta_hat, delta_hat_zero, divisor_of_delta_n,
    divisor_of_delta_n_zero, row_kind, series_indices, vertical_pairing_identity, DegreeRow,
    RowKind, VerticalReport, VerticalRow,
};
pub use symbolic::{Atom, Monomial, SymReal};
