//! The theta lift I(tau, f) = int over Gamma_0(N)\H of f(z) Theta_L(tau, z) for a
//! Gamma_0(N)-invariant f, as sum_j int_F f(g_j z) Theta_L(tau, g_j z) dx dy / y^2 over right
//! coset representatives g_j and the standard fundamental domain F of SL_2(Z).
//!
//! F is truncated at the height where the integrand has decayed below a fixed fraction of its
//! size near the bottom of F, and integrated by a tensor Gauss-Legendre rule: x in [-1/2, 1/2],
//! y in panels of width at most 1/2 from sqrt(1 - x^2) upwards. Node counts are doubled until two
//! successive rules agree to the requested relative tolerance.

use super::kernel::theta_vector_at;
use super::vv_eisenstein::{vv_eisenstein_normalized, VvEisenstein};
use super::vv_fourier::{vv_eisenstein_fourier_normalized, VvFourier};
use crate::analytic::eisenstein::{eisenstein_at, normalization};
use crate::analytic::quad::gauss_legendre;
use crate::analytic::special::zeta_star;
use crate::error::{Error, Result};
use crate::lattice::cosets::{gamma0_coset_reps, Mat};
use crate::lattice::weil::mobius;
use crate::numtheory::Level;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Decay of the integrand relative to its size at y = 1 that fixes the truncation height.
const DECAY: f64 = 1e-14;
const PANEL: f64 = 0.5;
const RULES: [(usize, usize); 4] = [(16, 8), (24, 12), (32, 16), (48, 24)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementStep {
    pub nx: usize,
    pub ny: usize,
    pub nodes: usize,
    /// max-norm change against the previous rule (infinite for the first)
    pub change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftResult {
    pub level: i64,
    pub tau: (f64, f64),
    /// I_mu for mu = 0, ..., 2N - 1
    pub values: Vec<Complex64>,
    pub error_estimate: f64,
    pub y_max: f64,
    pub trace: Vec<RefinementStep>,
}

fn integrand<F>(level: i64, f: &F, reps: &[Mat], tau: Complex64, z: Complex64) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * level as usize];
    for &g in reps {
        let fz = f(mobius(g, z))?;
        let th = theta_vector_at(level, tau, z, g)?;
        for (o, t) in out.iter_mut().zip(&th.values) {
            *o += fz * t;
        }
    }
    let w = 1.0 / (z.im * z.im);
    Ok(out.into_iter().map(|x| x * w).collect())
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Smallest height in steps of 1/2 where the integrand at x in {-1/2, 0, 1/2} lies below
/// DECAY times its size at y = 1.
fn truncation_height<F>(level: i64, f: &F, reps: &[Mat], tau: Complex64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let size = |y: f64| -> Result<f64> {
        let mut m: f64 = 0.0;
        for x in [-0.5, 0.0, 0.5] {
            m = m.max(max_norm(&integrand(level, f, reps, tau, Complex64::new(x, y))?));
        }
        Ok(m)
    };
    let base = size(1.0)?.max(1e-300);
    let mut y = 2.0;
    while y <= 40.0 {
        if size(y)? < DECAY * base && size(y + 0.5)? < DECAY * base {
            return Ok(y);
        }
        y += 0.5;
    }
    Err(Error::Quadrature(format!(
        "theta integrand has not decayed below {DECAY:e} of its size by y = 40"
    )))
}

fn tensor_rule<F>(
    level: i64,
    f: &F,
    reps: &[Mat],
    tau: Complex64,
    y_max: f64,
    nx: usize,
    ny: usize,
) -> Result<(Vec<Complex64>, usize)>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    let gx = gauss_legendre(nx);
    let gy = gauss_legendre(ny);
    // every x node is independent; the results are reduced in node order
    let columns: Vec<Result<(Vec<Complex64>, usize)>> = gx
        .par_iter()
        .map(|&(tx, wx)| {
            let x = 0.5 * tx;
            let y0 = (1.0 - x * x).sqrt();
            let panels = ((y_max - y0) / PANEL).ceil().max(1.0) as usize;
            let h = (y_max - y0) / panels as f64;
            let mut col = vec![Complex64::new(0.0, 0.0); 2 * level as usize];
            let mut count = 0;
            for p in 0..panels {
                let a = y0 + p as f64 * h;
                for &(ty, wy) in &gy {
                    let y = a + 0.5 * h * (ty + 1.0);
                    let val = integrand(level, f, reps, tau, Complex64::new(x, y))?;
                    let w = 0.5 * wx * 0.5 * h * wy;
                    for (c, v) in col.iter_mut().zip(&val) {
                        *c += w * v;
                    }
                    count += 1;
                }
            }
            Ok((col, count))
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); 2 * level as usize];
    let mut nodes = 0;
    for c in columns {
        let (col, count) = c?;
        for (t, v) in total.iter_mut().zip(&col) {
            *t += v;
        }
        nodes += count;
    }
    Ok((total, nodes))
}

/// I(tau, f) to relative tolerance tol (at least 1e-4 is required of callers that need it;
/// any positive tol is accepted).
pub fn theta_lift<F>(level: i64, f: &F, tau: Complex64, tol: f64) -> Result<LiftResult>
where
    F: Fn(Complex64) -> Result<f64> + Sync,
{
    Level::new(level as u64)?;
    if !(tau.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im tau must be positive, got {tau}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let reps = gamma0_coset_reps(level);
    let y_max = truncation_height(level, f, &reps, tau)?;
    let mut trace = Vec::new();
    let mut prev: Option<Vec<Complex64>> = None;
    for &(nx, ny) in RULES.iter() {
        let (vals, nodes) = tensor_rule(level, f, &reps, tau, y_max, nx, ny)?;
        let change = match &prev {
            Some(p) => max_norm(&vals.iter().zip(p).map(|(a, b)| a - b).collect::<Vec<_>>()),
            None => f64::INFINITY,
        };
        trace.push(RefinementStep { nx, ny, nodes, change });
        let scale = max_norm(&vals).max(1e-300);
        if change <= tol * scale {
            return Ok(LiftResult {
                level,
                tau: (tau.re, tau.im),
                values: vals,
                error_estimate: change,
                y_max,
                trace,
            });
        }
        prev = Some(vals);
    }
    let steps: Vec<String> = trace
        .iter()
        .map(|s| format!("(nx={}, ny={}, change={:e})", s.nx, s.ny, s.change))
        .collect();
    Err(Error::Quadrature(format!(
        "theta lift did not reach relative tolerance {tol:e}; refinement trace: {}",
        steps.join(", ")
    )))
}

/// Which Eisenstein series is lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EisensteinVariant {
    /// calE(N, z, s)
    Standard,
    /// calE(N, w_N z, s) with w_N z = -1/(N z)
    AtkinLehner,
}

/// Both sides of I(tau, calE(N, ., s)) = zeta*(s) calE_L(tau, s) and the relative residual
/// max_mu |lhs_mu - rhs_mu| / max_mu |rhs_mu|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftComparison {
    pub level: i64,
    pub tau: (f64, f64),
    pub s: f64,
    pub variant: EisensteinVariant,
    pub lift: LiftResult,
    /// calE_L from its Fourier expansion, used for the right-hand side
    pub eisenstein: VvFourier,
    /// calE_L as a truncated coset sum, when a bound was requested
    pub coset_sum: Option<VvEisenstein>,
    pub zeta_star: f64,
    pub rhs: Vec<Complex64>,
    pub residual: f64,
    /// max over components of |lhs_mu - rhs_mu| / |rhs_mu|
    pub componentwise_residual: f64,
}

/// The normalised Eisenstein series calE(N, z, s) or calE(N, w_N z, s) as a function of z.
pub fn eisenstein_integrand(level: i64, s: f64, variant: EisensteinVariant) -> Result<impl Fn(Complex64) -> Result<f64> + Sync> {
    let l = Level::new(level as u64)?;
    let c = normalization(&l, s)?;
    Ok(move |z: Complex64| {
        let w = match variant {
            EisensteinVariant::Standard => z,
            EisensteinVariant::AtkinLehner => -1.0 / (z * level as f64),
        };
        Ok(c * eisenstein_at(&l, w, s)?.value)
    })
}

/// Lift calE(N, ., s) and compare with zeta*(s) calE_L(tau, s).
pub fn lift_identity(
    level: i64,
    tau: Complex64,
    s: f64,
    variant: EisensteinVariant,
    tol: f64,
    bound: Option<i64>,
) -> Result<LiftComparison> {
    let f = eisenstein_integrand(level, s, variant)?;
    let lift = theta_lift(level, &f, tau, tol)?;
    let eisenstein = vv_eisenstein_fourier_normalized(level, tau, s)?;
    let coset_sum = bound.map(|b| vv_eisenstein_normalized(level, tau, s, b)).transpose()?;
    let zs = zeta_star(s)?;
    let rhs: Vec<Complex64> = eisenstein.values.iter().map(|x| x * zs).collect();
    let scale = max_norm(&rhs).max(1e-300);
    let diff: Vec<Complex64> = lift.values.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    let residual = max_norm(&diff) / scale;
    let componentwise_residual = diff
        .iter()
        .zip(&rhs)
        .map(|(d, r)| d.norm() / r.norm().max(1e-300))
        .fold(0.0, f64::max);
    Ok(LiftComparison {
        level,
        tau: (tau.re, tau.im),
        s,
        variant,
        lift,
        eisenstein,
        coset_sum,
        zeta_star: zs,
        rhs,
        residual,
        componentwise_residual,
    })
}
