//! The Kudla-Millson kernel phi^0(w, z) = ((w, w(z))^2 - 1/2 pi) e^{-2 pi R(w, z)} and the theta
//! components theta_mu(tau, z) = sum over w in L_mu of e(Q(w) tau) phi^0(sqrt(v) w, z), as
//! coefficients of the invariant measure dx dy / y^2.

use super::majorant::{q_form, CosetLattice, MajorantContext, VVec};
use crate::error::{Error, Result};
use crate::lattice::weil::e;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Gaussian exponent pi v (w, w)_z beyond which lattice vectors are dropped.
const CUTOFF: f64 = 42.0;

/// phi^0(sqrt(v) w, z) with v = Im tau; the full kernel is e(Q(w) tau) times this value.
pub fn km_kernel(level: i64, w: VVec, tau: Complex64, z: Complex64) -> Result<f64> {
    check_tau(tau)?;
    let ctx = MajorantContext::new(level, z)?;
    Ok(km_kernel_at(&ctx, w, tau.im))
}

fn km_kernel_at(ctx: &MajorantContext, w: VVec, v: f64) -> f64 {
    let p = ctx.pairing(w);
    (v * p * p - 0.5 / PI) * (-2.0 * PI * v * ctx.r_value(w)).exp()
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im tau must be positive, got {tau}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaEval {
    /// theta_mu for mu = 0, ..., 2N - 1
    pub values: Vec<Complex64>,
    pub tail_bound: f64,
    pub terms: usize,
}

/// One term e(Q tau) phi^0(sqrt(v) w, z) = (v p^2 - 1/2pi) e(Q u) e^{-pi v (w, w)_z}.
fn term(ctx: &MajorantContext, level: i64, w: VVec, tau: Complex64) -> Complex64 {
    let v = tau.im;
    let p = ctx.pairing(w);
    let q = q_form(level, w);
    let maj = p * p - 2.0 * q;
    e(q * tau.re) * ((v * p * p - 0.5 / PI) * (-PI * v * maj).exp())
}

/// All components of Theta_L(tau, g z) for g in SL_2(Z), summed over g^{-1} L# g at z.
pub fn theta_vector_at(level: i64, tau: Complex64, z: Complex64, g: [i64; 4]) -> Result<ThetaEval> {
    check_tau(tau)?;
    let ctx = MajorantContext::new(level, z)?;
    let ginv = [g[3] as f64, -g[1] as f64, -g[2] as f64, g[0] as f64];
    let base = CosetLattice::dual(level);
    let lat = base.conjugated(ginv);
    let v = tau.im;
    let bound = CUTOFF / (PI * v);
    let m = 2 * level;
    let mut values = vec![Complex64::new(0.0, 0.0); m as usize];
    let pts = lat.enumerate(&ctx, bound);
    for (k, w) in &pts {
        let r = k[0].rem_euclid(m) as usize;
        values[r] += term(&ctx, level, *w, tau);
    }
    // dropped terms are below (v p^2 + 1) e^{-CUTOFF} with v p^2 <= CUTOFF / pi
    let tail_bound = (CUTOFF / PI + 1.0) * (-CUTOFF).exp() * 8.0 * (pts.len() as f64 + 1.0);
    Ok(ThetaEval { values, tail_bound, terms: pts.len() })
}

/// Theta_L(tau, z), every component.
pub fn theta_vector(level: i64, tau: Complex64, z: Complex64) -> Result<ThetaEval> {
    theta_vector_at(level, tau, z, [1, 0, 0, 1])
}

/// theta_{mu_r}(tau, z); includes the w = 0 term -1/2pi when r = 0.
pub fn theta_mu(level: i64, r: i64, tau: Complex64, z: Complex64) -> Result<(Complex64, f64)> {
    check_tau(tau)?;
    let ctx = MajorantContext::new(level, z)?;
    let lat = CosetLattice::coset(level, r);
    let bound = CUTOFF / (PI * tau.im);
    let pts = lat.enumerate(&ctx, bound);
    let mut sum = Complex64::new(0.0, 0.0);
    for (_, w) in &pts {
        sum += term(&ctx, level, *w, tau);
    }
    let tail_bound = (CUTOFF / PI + 1.0) * (-CUTOFF).exp() * 8.0 * (pts.len() as f64 + 1.0);
    Ok((sum, tail_bound))
}

/// Poisson summation of theta_{mu_r} over w2 in (1/N) Z, an independent evaluation:
/// sum over w1 in r/2N + Z, w3, m in Z of e(-N taubar w1^2 - taubar w3 t - m t) fhat(m), where
/// t = N (w3 z zbar - 2 x w1), k = taubar w3 + m and
/// fhat(m) = -(N^{3/2} y^3 / v^{3/2}) k^2 exp(-pi N y^2 k^2 / v).
/// The modulus of each term is exp(-2 pi N v (w1 - w3 x)^2 - pi N y^2 |m + w3 tau|^2 / v).
pub fn theta_mu_poisson(level: i64, r: i64, tau: Complex64, z: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    if !(z.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im z must be positive, got {z}")));
    }
    let n = level as f64;
    let (x, y) = (z.re, z.im);
    let v = tau.im;
    let taubar = tau.conj();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let zz = x * x + y * y;
    let mut sum = Complex64::new(0.0, 0.0);
    let lim = (CUTOFF * v / (PI * n * y * y)).sqrt();
    let w3max = (lim / v).ceil() as i64 + 1;
    let half = (CUTOFF / (2.0 * PI * n * v)).sqrt();
    for w3 in -w3max..=w3max {
        let mmax = (lim + (w3 as f64 * tau.re).abs()).ceil() as i64 + 1;
        for m in -mmax..=mmax {
            let a = Complex64::new(m as f64 + w3 as f64 * tau.re, w3 as f64 * v).norm_sqr();
            if PI * n * y * y * a / v > CUTOFF || (m == 0 && w3 == 0) {
                continue;
            }
            let k = taubar * w3 as f64 + m as f64;
            let centre = w3 as f64 * x - r as f64 / (2.0 * n);
            let (lo, hi) = ((centre - half).floor() as i64 - 1, (centre + half).ceil() as i64 + 1);
            for j in lo..=hi {
                let w1 = r as f64 / (2.0 * n) + j as f64;
                let t = n * (w3 as f64 * zz - 2.0 * x * w1);
                let ex = two_pi_i * (-n * taubar * w1 * w1 - taubar * w3 as f64 * t - m as f64 * t)
                    - PI * n * y * y * k * k / v;
                sum += k * k * ex.exp();
            }
        }
    }
    Ok(-(n.powf(1.5) * y.powi(3) / v.powf(1.5)) * sum)
}
