//! Exact q-expansions and the generalized Delta functions.

mod delta;
mod series;

pub use delta::*;
pub use series::*;
