//! The Kudla-Millson theta kernel, Kudla Green functions with their cusp asymptotics,
//! vector-valued Eisenstein series of weight 3/2 and the theta lift over Gamma_0(N)\H.

pub mod green;
pub mod kernel;
pub mod lift;
pub mod majorant;
pub mod vv_eisenstein;
pub mod vv_fourier;

pub use green::{cusp_asymptotic_residual, green_cusp_constants, kudla_green, CuspConstant, GreenEval};
pub use kernel::{km_kernel, theta_mu, theta_mu_poisson, theta_vector, theta_vector_at, ThetaEval};
pub use majorant::{pairing_w_wz, CosetLattice, MajorantContext, VVec};
pub use vv_eisenstein::{coset_term, vv_eisenstein, vv_eisenstein_normalized, vv_normalization, VvEisenstein};
pub use vv_fourier::{
    default_max_mode, dirichlet_l, dirichlet_value, local_factor, normalized_counts, root_counts, vv_eisenstein_fourier,
    vv_eisenstein_fourier_modes, vv_eisenstein_fourier_normalized, VvFourier,
};
pub use lift::{eisenstein_integrand, lift_identity, theta_lift, EisensteinVariant, LiftComparison, LiftResult, RefinementStep};
