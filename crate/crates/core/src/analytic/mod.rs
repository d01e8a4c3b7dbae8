//! Special functions, quadrature and the scalar Eisenstein series of Gamma_0(N).

pub mod consts;
pub mod eisenstein;
pub mod quad;
pub mod special;

pub use eisenstein::*;
pub use special::*;
