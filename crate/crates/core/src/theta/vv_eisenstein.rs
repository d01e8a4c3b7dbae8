//! The vector-valued Eisenstein series of weight 3/2 for the Weil representation,
//! E_L(tau, s) = sum over gamma' in Gamma'_inf \ Gamma' of (v^{(s-1)/2} e_0) |_{3/2} gamma',
//! in the convergent range s > 1, and its normalisation
//! calE_L(tau, s) = -(s/4) pi^{-s-1} Gamma(s) zeta^{(N)}(2s) N^{1/2 + 3s/2} E_L(tau, s).
//!
//! The sum runs over all coprime pairs (c, d) of both signs, with the principal square root of
//! c tau + d as metaplectic lift; (c, d) and (-c, -d) give equal terms, so every coset of
//! Gamma_inf \ SL_2(Z) is counted twice. The term of (c, d) is
//! v^{(s-1)/2} (c tau + d)^{-3/2} |c tau + d|^{1-s} rho_L(gamma)^{-1} e_0,
//! and rho_L(gamma)^{-1} e_0 depends only on d mod 4Nc. For each c > 0 the sum over all d in one
//! residue class is evaluated in full: a direct sum over the nearby terms and an asymptotic
//! expansion in Hurwitz zeta values for the two tails. Only the c-sum is truncated, and its
//! remainder decays like bound^{1-s}; the Fourier evaluation in `vv_fourier` has no such tail.

use crate::analytic::special::{hurwitz_zeta, zeta_level};
use crate::error::{Error, Result};
use crate::lattice::cosets::complete_bottom_row;
use crate::lattice::weil::WeilRep;
use crate::numtheory::Level;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

/// Number of terms of the tail expansion in 1/k.
const TAIL_TERMS: usize = 18;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VvEisenstein {
    pub level: i64,
    pub tau: (f64, f64),
    pub s: f64,
    /// cosets with 0 <= c < bound are summed
    pub bound: i64,
    /// components for mu = 0, ..., 2N - 1
    pub values: Vec<Complex64>,
    /// max-norm change between the truncations at bound and ceil(bound / 2)
    pub tail_estimate: f64,
    /// number of residue classes (c, d mod 4Nc) summed
    pub classes: usize,
}

fn check_args(tau: Complex64, s: f64, bound: i64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im tau must be positive, got {tau}")));
    }
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "the weight 3/2 Eisenstein series converges only for s > 1, got s = {s}"
        )));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("coprime bound must be at least 1, got {bound}")));
    }
    Ok(())
}

/// g(u) = u^{-3/2} |u|^{1-s} with the principal root.
fn g(u: Complex64, s: f64) -> Complex64 {
    let r = u.sqrt();
    (r * r * r).inv() * u.norm().powf(1.0 - s)
}

/// Binomial coefficients binom(a, j) for j < TAIL_TERMS.
fn binomials(a: f64) -> [f64; TAIL_TERMS] {
    let mut out = [0.0; TAIL_TERMS];
    out[0] = 1.0;
    for j in 1..TAIL_TERMS {
        out[j] = out[j - 1] * (a - (j - 1) as f64) / j as f64;
    }
    out
}

/// Evaluates sum over k in Z of g(w + k) for w in the upper half plane.
struct ProgressionSum {
    s: f64,
    cut: i64,
    /// hurwitz(s + 1/2 + j, cut + 1)
    zeta_tail: [f64; TAIL_TERMS],
    alpha: [f64; TAIL_TERMS],
    beta: [f64; TAIL_TERMS],
}

impl ProgressionSum {
    fn new(s: f64, max_abs_w: f64) -> Result<Self> {
        let cut = (8.0 * max_abs_w).ceil() as i64 + 8;
        let mut zeta_tail = [0.0; TAIL_TERMS];
        for (j, z) in zeta_tail.iter_mut().enumerate() {
            *z = hurwitz_zeta(s + 0.5 + j as f64, (cut + 1) as f64)?;
        }
        Ok(ProgressionSum {
            s,
            cut,
            zeta_tail,
            alpha: binomials(-(s + 2.0) / 2.0),
            beta: binomials((1.0 - s) / 2.0),
        })
    }

    /// sum over k > cut of k^{-(s+1/2)} (1 + w/k)^alpha (1 + wbar/k)^beta
    fn tail(&self, w: Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        let wb = w.conj();
        let mut wa = [Complex64::new(1.0, 0.0); TAIL_TERMS];
        let mut wba = [Complex64::new(1.0, 0.0); TAIL_TERMS];
        for j in 1..TAIL_TERMS {
            wa[j] = wa[j - 1] * w;
            wba[j] = wba[j - 1] * wb;
        }
        for j in 0..TAIL_TERMS {
            let mut e = Complex64::new(0.0, 0.0);
            for a in 0..=j {
                e += self.alpha[a] * wa[a] * self.beta[j - a] * wba[j - a];
            }
            total += e * self.zeta_tail[j];
        }
        total
    }

    fn eval(&self, w: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in -self.cut..=self.cut {
            sum += g(w + k as f64, self.s);
        }
        // u = w + k for k > cut, and u = -(k - w) = i^2 (k - w) with u^{-3/2} = i k^{-3/2} (...)
        sum += self.tail(w);
        sum += Complex64::new(0.0, 1.0) * self.tail(-w);
        sum
    }
}

/// The unnormalised E_L(tau, s).
pub fn vv_eisenstein(level: i64, tau: Complex64, s: f64, bound: i64) -> Result<VvEisenstein> {
    check_args(tau, s, bound)?;
    Level::new(level as u64)?;
    let rho = WeilRep::new(level);
    let dim = rho.dim;
    let v = tau.im;
    let vfac = v.powf((s - 1.0) / 2.0);
    let mut values = vec![Complex64::new(0.0, 0.0); dim];
    values[0] = Complex64::new(vfac, 0.0);
    let half = (bound + 1) / 2;
    let mut at_half = values.clone();
    let progression = ProgressionSum::new(s, tau.norm() + 1.0)?;
    let mut classes = 1usize;
    for c in 1..bound {
        let step = 4 * level * c;
        let lf = step as f64;
        let scale = vfac * lf.powf(-(s + 0.5));
        for d0 in 0..step {
            if c.gcd(&d0) != 1 {
                continue;
            }
            let w = (tau * c as f64 + d0 as f64) / lf;
            let h = progression.eval(w) * scale;
            let col = rho.inverse_applied_to_e0(complete_bottom_row(c, d0));
            for (x, y) in values.iter_mut().zip(&col) {
                *x += h * y;
            }
            classes += 1;
        }
        if c + 1 == half {
            at_half = values.clone();
        }
    }
    // both signs of (c, d)
    for x in values.iter_mut().chain(at_half.iter_mut()) {
        *x *= 2.0;
    }
    let tail_estimate = values
        .iter()
        .zip(&at_half)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(VvEisenstein {
        level,
        tau: (tau.re, tau.im),
        s,
        bound,
        values,
        tail_estimate,
        classes,
    })
}

/// -(s/4) pi^{-s-1} Gamma(s) zeta^{(N)}(2s) N^{1/2 + 3s/2}.
pub fn vv_normalization(level: i64, s: f64) -> Result<f64> {
    let l = Level::new(level as u64)?;
    let n = level as f64;
    Ok(-(s / 4.0) * PI.powf(-s - 1.0) * gamma(s) * zeta_level(2.0 * s, &l.primes)? * n.powf(0.5 + 1.5 * s))
}

/// The normalised calE_L(tau, s); the tail estimate is scaled accordingly.
pub fn vv_eisenstein_normalized(level: i64, tau: Complex64, s: f64, bound: i64) -> Result<VvEisenstein> {
    let mut e = vv_eisenstein(level, tau, s, bound)?;
    let c = vv_normalization(level, s)?;
    for x in e.values.iter_mut() {
        *x *= c;
    }
    e.tail_estimate *= c.abs();
    Ok(e)
}

/// The term v^{(s-1)/2} (c tau + d)^{-3/2} |c tau + d|^{1-s} rho_L(gamma)^{-1} e_0 of one coprime
/// pair, for any signs of c and d; used to check that (c, d) and (-c, -d) give the same term.
pub fn coset_term(level: i64, tau: Complex64, s: f64, c: i64, d: i64) -> Result<Vec<Complex64>> {
    check_args(tau, s, 1)?;
    if c.gcd(&d) != 1 {
        return Err(Error::InvalidArgument(format!("({c}, {d}) is not a coprime pair")));
    }
    let rho = WeilRep::new(level);
    let u = tau * c as f64 + d as f64;
    let h = tau.im.powf((s - 1.0) / 2.0) * g(u, s);
    Ok(rho
        .inverse_applied_to_e0(complete_bottom_row(c, d))
        .into_iter()
        .map(|x| x * h)
        .collect())
}
