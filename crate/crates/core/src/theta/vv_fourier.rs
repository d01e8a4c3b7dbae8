//! The Fourier expansion of E_L(tau, s), an exponentially convergent evaluation.
//!
//! Summing the coset terms of one c over every d in a class mod 4Nc and expanding in Fourier
//! modes of u gives
//! E_L(tau, s)_mu = 2 v^{(s-1)/2} (delta_{mu, 0} + sum_n p_n(v / 4N) e(n u / 4N) A(n, mu)),
//! where n runs over n = -r^2 mod 4N for mu = mu_r, p_n(Y) is the n-th Fourier coefficient of
//! t -> (t + iY)^{-3/2} |t + iY|^{1-s}, and
//! A(n, mu) = sum_{c >= 1} (4Nc)^{-s-1/2} sum_{d mod 4Nc, (c, d) = 1} e(n d / 4Nc) rho_L(gamma)^{-1} e_0.
//!
//! The Gauss-sum formula for the e_0-row of rho_L(gamma) turns A into an Euler product:
//! A(n, mu) = e(-1/8) (4N)^{1/2 - s} (2N)^{-1/2} prod_p L_p,
//! L_p = (1 - p^{1-s}) sum_j N(p^j) p^{-j(s+1)}, with N(k) = #{x in L/kL : Q(x + mu) = n/4N mod k}.
//! In the coordinates Q(x + mu) = ac - N (b + r/2N)^2 the count reduces to the root counts of
//! f(b) = N b^2 + r b + m' (m' = (n + r^2)/4N), whose discriminant is D = -n. For p not dividing
//! 2ND the factor is 1 + (D/p) p^{-s}, so the product is an L-value times finitely many local
//! factors, each computed exactly from the root counts.

use crate::analytic::special::{hurwitz_zeta, whittaker_t, zeta};
use crate::error::{Error, Result};
use crate::lattice::weil::e;
use crate::numtheory::{factorize, fundamental_discriminant, kronecker, valuation, Level};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

fn check(level: i64, r: i64, n: i64) -> Result<()> {
    Level::new(level as u64)?;
    if (n + r * r).rem_euclid(4 * level) != 0 {
        return Err(Error::Congruence(format!(
            "mode n = {n} does not occur in component r = {r} (need n = -r^2 mod {})",
            4 * level
        )));
    }
    Ok(())
}

/// #{b mod p^k : N b^2 + r b + m' = 0 mod p^k} for k = 0..=kmax.
pub fn root_counts(level: i64, r: i64, n: i64, p: u64, kmax: usize) -> Result<Vec<f64>> {
    check(level, r, n)?;
    let big_n = level as i128;
    let r128 = r as i128;
    let m1 = ((n + r * r) / (4 * level)) as i128;
    let p128 = p as i128;
    let mut out = vec![1.0];
    if n == 0 {
        // f(b) = (2Nb + r)^2 / 4N vanishes mod p^k iff ord_p(2Nb + r) >= ceil((k + eps) / 2)
        let eps = valuation(4 * level, p) as i64;
        let e2n = valuation(2 * level, p) as i64;
        let ord_r = if r == 0 { i64::MAX } else { valuation(r, p) as i64 };
        for k in 1..=kmax as i64 {
            let t = (k + eps + 1) / 2;
            let count = if ord_r < e2n {
                if ord_r >= t {
                    (p as f64).powi(k as i32)
                } else {
                    0.0
                }
            } else {
                let t1 = t - e2n;
                if t1 <= 0 {
                    (p as f64).powi(k as i32)
                } else {
                    (p as f64).powi((k - t1.min(k)) as i32)
                }
            };
            out.push(count);
        }
        return Ok(out);
    }
    // Hensel tree: the root count is constant once k exceeds ord_p(D) + 2 ord_p(4N) + 2
    let d = -n;
    let stable = (valuation(d, p) + 2 * valuation(4 * level, p) + 3) as usize;
    let f = |b: i128| big_n * b * b + r128 * b + m1;
    let mut roots: Vec<i128> = vec![0];
    let mut modulus: i128 = 1;
    for k in 1..=kmax {
        if k > stable {
            out.push(*out.last().unwrap());
            continue;
        }
        let mut next = Vec::new();
        for &b in &roots {
            for t in 0..p128 {
                let b1 = b + t * modulus;
                if f(b1).rem_euclid(modulus * p128) == 0 {
                    next.push(b1);
                }
            }
        }
        modulus *= p128;
        roots = next;
        out.push(roots.len() as f64);
    }
    if kmax > stable && out[stable] != out[stable - 1] && n != 0 {
        return Err(Error::Consistency(format!(
            "root count of the quadratic mod {p}^k has not stabilised at k = {stable}"
        )));
    }
    Ok(out)
}

/// N(p^j) / p^{2j} for j = 0..=jmax from the root counts.
pub fn normalized_counts(level: i64, r: i64, n: i64, p: u64, jmax: usize) -> Result<Vec<f64>> {
    let rc = root_counts(level, r, n, p, jmax + 1)?;
    let pf = p as f64;
    let scaled: Vec<f64> = rc.iter().enumerate().map(|(k, &x)| x * pf.powi(-(k as i32))).collect();
    let mut out = Vec::with_capacity(jmax + 1);
    let mut prefix = 0.0;
    for j in 0..=jmax {
        if j > 0 {
            let k = j - 1;
            prefix += (scaled[k] - scaled[k + 1]) * (k + 1) as f64 * (1.0 - 1.0 / pf);
        }
        out.push(prefix + scaled[j] * ((j + 1) as f64 - j as f64 / pf));
    }
    Ok(out)
}

/// L_p = (1 - p^{1-s}) sum_j N(p^j) p^{-j(s+1)}.
pub fn local_factor(level: i64, r: i64, n: i64, p: u64, s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!("local factors need s > 1, got {s}")));
    }
    let pf = p as f64;
    let x = pf.powf(1.0 - s);
    // terms are O(j^2 x^j)
    let mut jmax = 8usize;
    while (jmax as f64 + 2.0).powi(2) * x.powi(jmax as i32) > 1e-18 && jmax < 2000 {
        jmax += 8;
    }
    let counts = normalized_counts(level, r, n, p, jmax)?;
    let mut sum = 0.0;
    let mut xj = 1.0;
    for c in counts {
        sum += c * xj;
        xj *= x;
    }
    Ok((1.0 - x) * sum)
}

/// Dirichlet L-function of the Kronecker character of a fundamental discriminant d0.
pub fn dirichlet_l(d0: i64, s: f64) -> Result<f64> {
    if d0 == 1 {
        return zeta(s);
    }
    let m = d0.unsigned_abs();
    let mut sum = 0.0;
    for a in 1..=m {
        let chi = kronecker(d0, a);
        if chi != 0 {
            sum += chi as f64 * hurwitz_zeta(s, a as f64 / m as f64)?;
        }
    }
    Ok((m as f64).powf(-s) * sum)
}

fn primes_of(n: u64) -> Vec<u64> {
    if n <= 1 {
        return Vec::new();
    }
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The Dirichlet series A(n, mu_r) at s > 1.
pub fn dirichlet_value(level: i64, r: i64, n: i64, s: f64) -> Result<Complex64> {
    check(level, r, n)?;
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!("the Dirichlet series converges only for s > 1, got {s}")));
    }
    let d = -n;
    let mut bad = primes_of(2 * level as u64);
    let product = if d == 0 {
        // the unramified factor at D = 0 is (1 - p^{-2s}) / (1 - p^{1-2s})
        let mut prod = zeta(2.0 * s - 1.0)? / zeta(2.0 * s)?;
        for &p in &bad {
            let pf = p as f64;
            let generic = (1.0 - pf.powf(-2.0 * s)) / (1.0 - pf.powf(1.0 - 2.0 * s));
            prod *= local_factor(level, r, n, p, s)? / generic;
        }
        prod
    } else {
        let (d0, _) = fundamental_discriminant(d)?;
        for p in primes_of(d.unsigned_abs()) {
            if !bad.contains(&p) {
                bad.push(p);
            }
        }
        // prod over all p of 1 + chi(p) p^{-s} = L(chi, s) / zeta(2s) / prod_{p | d0} (1 - p^{-2s})
        let mut prod = dirichlet_l(d0, s)? / zeta(2.0 * s)?;
        for p in primes_of(d0.unsigned_abs()) {
            prod /= 1.0 - (p as f64).powf(-2.0 * s);
        }
        for &p in &bad {
            let generic = 1.0 + kronecker(d0, p) as f64 * (p as f64).powf(-s);
            prod *= local_factor(level, r, n, p, s)? / generic;
        }
        prod
    };
    let nf = level as f64;
    Ok(e(-1.0 / 8.0) * (4.0 * nf).powf(0.5 - s) * (2.0 * nf).powf(-0.5) * product)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VvFourier {
    pub level: i64,
    pub tau: (f64, f64),
    pub s: f64,
    pub values: Vec<Complex64>,
    /// |n| <= max_mode are summed
    pub max_mode: i64,
    /// largest contribution among the outermost summed modes; the omitted ones decay geometrically
    pub tail_bound: f64,
}

/// Smallest mode bound at which the omitted modes are below 1e-18 of the leading term.
pub fn default_max_mode(level: i64, tau: Complex64) -> i64 {
    if !(tau.im > 0.0) || level < 1 {
        return 0;
    }
    let y = tau.im / (4 * level) as f64;
    (42.0 / (2.0 * PI * y)).ceil() as i64 + 4
}

/// E_L(tau, s) from its Fourier expansion, with the mode bound chosen automatically.
pub fn vv_eisenstein_fourier(level: i64, tau: Complex64, s: f64) -> Result<VvFourier> {
    vv_eisenstein_fourier_modes(level, tau, s, default_max_mode(level, tau))
}

/// E_L(tau, s) from the Fourier modes |n| <= max_mode.
pub fn vv_eisenstein_fourier_modes(level: i64, tau: Complex64, s: f64, max_mode: i64) -> Result<VvFourier> {
    Level::new(level as u64)?;
    if !(tau.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im tau must be positive, got {tau}")));
    }
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "the weight 3/2 Eisenstein series converges only for s > 1, got s = {s}"
        )));
    }
    let m = 4 * level;
    let v = tau.im;
    let y = v / m as f64;
    let vfac = v.powf((s - 1.0) / 2.0);
    if max_mode < 0 {
        return Err(Error::InvalidArgument(format!("mode bound must be non-negative, got {max_mode}")));
    }
    let (alpha, beta) = ((s + 2.0) / 2.0, (s - 1.0) / 2.0);
    let mut values = Vec::with_capacity(2 * level as usize);
    let mut tail_bound: f64 = 0.0;
    for r in 0..2 * level {
        let mut acc = Complex64::new(if r == 0 { 1.0 } else { 0.0 }, 0.0);
        let start = (-r * r).rem_euclid(m);
        let mut n = start - ((max_mode + start) / m + 1) * m;
        while n <= max_mode {
            if n.abs() <= max_mode {
                let pn = whittaker_t(n, y, alpha, beta)?;
                let a = dirichlet_value(level, r, n, s)?;
                let term = pn * e(n as f64 * tau.re / m as f64) * a;
                acc += term;
                if n.abs() + m > max_mode {
                    tail_bound = tail_bound.max(term.norm());
                }
            }
            n += m;
        }
        values.push(acc * (2.0 * vfac));
    }
    Ok(VvFourier {
        level,
        tau: (tau.re, tau.im),
        s,
        values,
        max_mode,
        tail_bound: 2.0 * vfac * tail_bound,
    })
}

/// The normalised calE_L(tau, s) from the Fourier expansion.
pub fn vv_eisenstein_fourier_normalized(level: i64, tau: Complex64, s: f64) -> Result<VvFourier> {
    let mut e = vv_eisenstein_fourier(level, tau, s)?;
    let c = super::vv_eisenstein::vv_normalization(level, s)?;
    for x in e.values.iter_mut() {
        *x *= c;
    }
    e.tail_bound *= c.abs();
    Ok(e)
}
