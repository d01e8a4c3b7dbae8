//! Kudla Green functions Xi(n, mu, v)(z) = sum over 0 != w in L_mu[n] of beta_1(2 pi v R(w, z)),
//! the cusp constants g(n, mu, v) and the cusp-asymptotic residuals.

use super::majorant::{CosetLattice, MajorantContext, VVec};
use crate::analytic::consts::f0;
use crate::analytic::special::{beta_s, e1};
use crate::error::{Error, Result};
use crate::lattice::vector::{discriminant_of, two_mu_in_lattice};
use crate::lattice::CuspData;
use crate::numtheory::exact_sqrt;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;

/// Terms with 2 pi v R above this are dropped; beta_1(t) <= e^{-t}/t.
const CUTOFF: f64 = 46.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreenEval {
    pub n: Rational64,
    pub r: i64,
    pub v: f64,
    pub z: (f64, f64),
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Xi(n, mu_r, v) at z.
pub fn kudla_green(level: i64, r: i64, n: Rational64, v: f64, z: Complex64) -> Result<GreenEval> {
    discriminant_of(level, r, n)?;
    if !(v > 0.0) {
        return Err(Error::InvalidArgument(format!("v must be positive, got {v}")));
    }
    let ctx = MajorantContext::new(level, z)?;
    let nf = *n.numer() as f64 / *n.denom() as f64;
    // R <= rmax  <=>  majorant = 2R + 2n <= 2 rmax + 2n
    let rmax = CUTOFF / (2.0 * PI * v);
    let bound = 2.0 * rmax + 2.0 * nf;
    let mut value = 0.0;
    let mut terms = 0usize;
    if bound >= 0.0 {
        let lat = CosetLattice::coset(level, r);
        for (_, w) in lat.enumerate(&ctx, bound + 1e-9) {
            if w == [0.0; 3] {
                continue;
            }
            let q = super::majorant::q_form(level, w);
            if (q - nf).abs() > 1e-9 * (1.0 + nf.abs()) {
                continue;
            }
            let t = 2.0 * PI * v * ctx.r_value(w);
            if t > CUTOFF {
                continue;
            }
            if t < 1e-12 {
                return Err(Error::Divergence(format!(
                    "z = {z} lies on the divisor of w = {}",
                    fmt_w(w)
                )));
            }
            value += e1(t)?;
            terms += 1;
        }
    }
    // every dropped term is below e^{-CUTOFF}/CUTOFF; the shell beyond the cutoff holds at most
    // a few times as many vectors as were summed, each further shell decaying geometrically
    let tail_bound = (-CUTOFF).exp() / CUTOFF * 4.0 * (terms as f64 + 1.0);
    Ok(GreenEval {
        n,
        r: r.rem_euclid(2 * level),
        v,
        z: (z.re, z.im),
        value,
        tail_bound,
        terms,
    })
}

fn fmt_w(w: VVec) -> String {
    format!("[[{}, {}], [{}, {}]]", w[0], w[1], w[2], -w[0])
}

/// g(n, mu, v) together with whether D = -4Nn is a square (g = 0 by convention otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuspConstant {
    pub value: f64,
    pub square_discriminant: bool,
}

/// The log-singularity coefficient g(n, mu, v) at every cusp:
/// sqrt(N)/(4 pi sqrt v) beta_{3/2}(-4 n v pi), doubled when 2 mu lies in L, for n != 0;
/// sqrt(N)/(2 pi sqrt v) for n = 0, mu = 0; zero for n = 0, mu != 0 and for non-square D.
pub fn green_cusp_constants(level: i64, r: i64, n: Rational64, v: f64) -> Result<CuspConstant> {
    let d = discriminant_of(level, r, n)?;
    if !(v > 0.0) {
        return Err(Error::InvalidArgument(format!("v must be positive, got {v}")));
    }
    let square = d >= 0 && exact_sqrt(d).is_some();
    if !square {
        return Ok(CuspConstant { value: 0.0, square_discriminant: false });
    }
    let sn = (level as f64).sqrt();
    let value = if d == 0 {
        if r.rem_euclid(2 * level) == 0 {
            sn / (2.0 * PI * v.sqrt())
        } else {
            0.0
        }
    } else {
        let nf = *n.numer() as f64 / *n.denom() as f64;
        let b = beta_s(-4.0 * nf * v * PI, 1.5)?;
        let factor = if two_mu_in_lattice(level, r) { 2.0 } else { 1.0 };
        factor * sn / (4.0 * PI * v.sqrt()) * b
    };
    Ok(CuspConstant { value, square_discriminant: true })
}

/// The limit of the residual: 0 for D > 0 a square, -2 (log(sqrt N/(4 pi sqrt v)) - f(0)/2) for D = 0.
pub fn residual_limit(level: i64, r: i64, n: Rational64, v: f64) -> Result<f64> {
    let d = discriminant_of(level, r, n)?;
    if d == 0 && r.rem_euclid(2 * level) == 0 {
        Ok(-2.0 * (((level as f64).sqrt() / (4.0 * PI * v.sqrt())).ln() - f0() / 2.0))
    } else {
        Ok(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub y: f64,
    pub green: f64,
    pub residual: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub level: i64,
    pub r: i64,
    pub n: Rational64,
    pub v: f64,
    pub cusp: i64,
    pub g: f64,
    pub limit: f64,
    pub rows: Vec<ResidualRow>,
    /// |residual - limit| is non-increasing along the grid (up to the tail bounds)
    pub monotone: bool,
}

/// Residuals of Xi(n, mu, v) at z = sigma_M(x0 + i y) for y on the grid, where sigma_M maps
/// infinity to the cusp 1/M and q = e(t / width) is the local parameter:
/// residual = Xi + g log|q|^2 for square D > 0, and Xi + g log|q|^2 + 2 log(-log|q|^2) for D = 0.
pub fn cusp_asymptotic_residual(
    level: i64,
    r: i64,
    n: Rational64,
    v: f64,
    cusp: i64,
    x0: f64,
    y_grid: &[f64],
) -> Result<ResidualReport> {
    let d = discriminant_of(level, r, n)?;
    if d < 0 || exact_sqrt(d).is_none() {
        return Err(Error::InvalidArgument(format!(
            "cusp asymptotics need a square discriminant, got D = {d}"
        )));
    }
    if y_grid.is_empty() || y_grid.windows(2).any(|w| w[1] <= w[0]) || y_grid[0] < 2.0 {
        return Err(Error::InvalidArgument("y grid must be increasing with minimum >= 2".into()));
    }
    let cd = CuspData::new(level, cusp)?;
    let sigma = cd.sigma();
    let width = cd.width as f64;
    let g = green_cusp_constants(level, r, n, v)?.value;
    let limit = residual_limit(level, r, n, v)?;
    let mut rows = Vec::new();
    for &y in y_grid {
        let t = Complex64::new(x0, y);
        let s = sigma.map(|e| e as f64);
        let z = (t * s[0] + s[1]) / (t * s[2] + s[3]);
        let ge = kudla_green(level, r, n, v, z)?;
        let log_q2 = -4.0 * PI * y / width;
        let mut residual = ge.value + g * log_q2;
        if d == 0 {
            residual += 2.0 * (-log_q2).ln();
        }
        rows.push(ResidualRow { y, green: ge.value, residual, tail_bound: ge.tail_bound });
    }
    let monotone = rows.windows(2).all(|w| {
        (w[1].residual - limit).abs() <= (w[0].residual - limit).abs() + 1e-9 + w[1].tail_bound
    });
    Ok(ResidualReport {
        level,
        r: r.rem_euclid(2 * level),
        n,
        v,
        cusp,
        g,
        limit,
        rows,
        monotone,
    })
}
