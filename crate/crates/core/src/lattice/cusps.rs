//! Cusps of X_0(N) for square-free N and the alpha-counts of square-discriminant vectors.

use super::cosets::{in_gamma0, Mat};
use super::vector::{conjugate_scaled_raw, discriminant_of, in_coset_scaled, two_mu_in_lattice};
use crate::error::{Error, Result};
use crate::numtheory::exact_sqrt;
use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

/// The cusp P_{1/M}: width, primitive isotropic scale and Funke constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CuspData {
    pub m: i64,
    pub width: i64,
    pub beta: Rational64,
    pub funke: Rational64,
}

impl CuspData {
    pub fn new(level: i64, m: i64) -> Result<Self> {
        if m <= 0 || level % m != 0 {
            return Err(Error::NotADivisor {
                t: m.max(0) as u64,
                n: level as u64,
            });
        }
        let width = level / m;
        let beta = Rational64::new(1, m);
        let funke = Rational64::from_integer(width) / beta;
        Ok(CuspData { m, width, beta, funke })
    }

    /// sigma_M = [[1, 0], [M, 1]] maps infinity to 1/M.
    pub fn sigma(&self) -> Mat {
        [1, 0, self.m, 1]
    }
}

/// All cusps P_{1/M}, M | N, in increasing order of M (P_{1/1} = P_0, P_{1/N} = P_infinity).
pub fn cusps(level: i64) -> Vec<CuspData> {
    (1..=level)
        .filter(|m| level % m == 0)
        .map(|m| CuspData::new(level, m).unwrap())
        .collect()
}

/// The M with p/q equivalent to 1/M under Gamma_0(N); q = 0 stands for infinity.
pub fn cusp_class(level: i64, p: i64, q: i64) -> i64 {
    debug_assert_eq!(p.gcd(&q), 1);
    q.gcd(&level)
}

/// Smallest h > 0 with sigma_M T^h sigma_M^{-1} in Gamma_0(N), found by search.
pub fn brute_width(level: i64, m: i64) -> i64 {
    (1..=level)
        .find(|&h| {
            let g: Mat = [1 - m * h, h, -m * m * h, 1 + m * h];
            in_gamma0(level, g)
        })
        .unwrap()
}

/// Closed form: sqrt(D) if 2 mu_r is not in L, 2 sqrt(D) otherwise.
///
/// Once D = r^2 mod 4N the set L_mu[n] is never empty: b = 0, c = 1, a = (r^2 - D)/4N works.
pub fn alpha_closed_form(level: i64, r: i64, n: Rational64) -> Result<i64> {
    let d = square_discriminant(level, r, n)?;
    let s = exact_sqrt(d).unwrap();
    Ok(if two_mu_in_lattice(level, r) { 2 * s } else { s })
}

/// Brute-force count of Gamma_0(N)-classes of pairs (w, l) with w in L_mu[n] and l an isotropic
/// line of w^perp whose cusp is equivalent to P_{1/M}.
///
/// After moving the cusp to 1/M and conjugating by sigma_M, such a pair becomes
/// w'' = [[e, f], [0, -e]] with e = +-sqrt(D)/2N, taken modulo f -> f + 2 e kappa.
pub fn alpha_count(level: i64, r: i64, n: Rational64, m: i64) -> Result<i64> {
    let d = square_discriminant(level, r, n)?;
    let cusp = CuspData::new(level, m)?;
    let s = exact_sqrt(d).unwrap();
    let sigma_inv: Mat = [1, 0, -m, 1];
    let mut count = 0;
    for e in [s, -s] {
        for j in 0..2 * cusp.width * s {
            // scaled entries (2N w1, 2N w2, 2N w3) of w'' and sigma_M w'' sigma_M^{-1}
            let w = conjugate_scaled_raw([e, j, 0], sigma_inv);
            if in_coset_scaled(level, r, w) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn square_discriminant(level: i64, r: i64, n: Rational64) -> Result<i64> {
    let d = discriminant_of(level, r, n)?;
    if d <= 0 || exact_sqrt(d).is_none() {
        return Err(Error::InvalidArgument(format!(
            "alpha counts need D = -4Nn a positive square, got D = {d}"
        )));
    }
    Ok(d)
}
