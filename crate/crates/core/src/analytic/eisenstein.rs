//! The Eisenstein series E(N, z, s) at the cusp infinity of Gamma_0(N), its normalisation
//! calE(N, z, s) = N^{2s} pi^{-s} Gamma(s) zeta^{(N)}(2s) E(N, z, s), the Kronecker limit
//! formula and the Laurent coefficients of the scattering function.
//!
//! E(N, z, s) = y^s / (2 zeta^{(N)}(2s)) * sum over (m, n) with (n, N) = 1 of |m N z + n|^{-2s}.
//! Only real s is supported.

use super::consts::{log_4pi, ZETA_PRIME_MINUS_ONE};
use super::quad::integrate;
use super::special::{bessel_k, hurwitz_zeta, whittaker_t, zeta, zeta_level};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, moebius, ramanujan_sum, Level};
use crate::qexp::{delta_n, DeltaN};
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarEval {
    pub value: f64,
    pub tail_bound: f64,
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "the lattice sum converges only for s > 1, got s = {s}"
        )));
    }
    Ok(())
}

fn check_z(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) {
        return Err(Error::InvalidArgument(format!("Im z must be positive, got {z}")));
    }
    Ok(())
}

/// N^{2s} pi^{-s} Gamma(s) zeta^{(N)}(2s).
pub fn normalization(level: &Level, s: f64) -> Result<f64> {
    Ok((level.n as f64).powf(2.0 * s) * PI.powf(-s) * gamma(s) * zeta_level(2.0 * s, &level.primes)?)
}

/// Plain truncated sum (1/2) sum y^s |cz + d|^{-2s} over coprime (c, d) with N | c, (d, N) = 1
/// and |cz + d| <= radius. The discarded part is estimated by the integral comparison with
/// point density phi(N) / (N^2 y zeta^{(N)}(2)).
pub fn eisenstein_lattice_sum(level: &Level, z: Complex64, s: f64, radius: f64) -> Result<ScalarEval> {
    check_s(s)?;
    check_z(z)?;
    let n = level.n as i64;
    let nf = n as f64;
    let (x, y) = (z.re, z.im);
    let mmax = (radius / (nf * y)).floor() as i64;
    let mut sum = 0.0;
    for m in -mmax..=mmax {
        let re0 = m as f64 * nf * x;
        let im = m as f64 * nf * y;
        let span = (radius * radius - im * im).max(0.0).sqrt();
        let lo = (-re0 - span).ceil() as i64;
        let hi = (-re0 + span).floor() as i64;
        for k in lo..=hi {
            if k.gcd(&n) != 1 || k.gcd(&m) != 1 {
                continue;
            }
            let r2 = (re0 + k as f64).powi(2) + im * im;
            if r2 > radius * radius {
                continue;
            }
            sum += r2.powf(-s);
        }
    }
    let pref = y.powf(s) / 2.0;
    let density = level.phi as f64 / (nf * nf * y * zeta_level(2.0, &level.primes)?);
    let tail = density * 2.0 * PI * radius.powf(2.0 - 2.0 * s) / (2.0 * s - 2.0);
    Ok(ScalarEval { value: pref * sum, tail_bound: pref * tail })
}

/// Row sum sum_{(k, N) = 1} ((mNx + k)^2 + (mNy)^2)^{-s} for m >= 1: a direct window plus
/// midpoint Euler-Maclaurin tails on each residue class.
fn row_sum(level: &Level, m: i64, z: Complex64, s: f64) -> Result<f64> {
    let n = level.n as i64;
    let nf = n as f64;
    let big_y = m as f64 * nf * z.im;
    let c = m as f64 * nf * z.re;
    let window = 64 + (8.0 * big_y / nf).ceil() as i64;
    let mut total = 0.0;
    for a in 1..=n {
        if a.gcd(&n) != 1 {
            continue;
        }
        // h(t) = ((c + a + N t)^2 + Y^2)^{-s}; center the window at the minimum
        let j0 = (-(c + a as f64) / nf).round() as i64;
        let h = |t: f64| {
            let u = c + a as f64 + nf * t;
            (u * u + big_y * big_y).powf(-s)
        };
        let dh = |t: f64| {
            let u = c + a as f64 + nf * t;
            -2.0 * s * nf * u * (u * u + big_y * big_y).powf(-s - 1.0)
        };
        for j in j0 - window..=j0 + window {
            total += h(j as f64);
        }
        // sum_{j > J} h(j) = int_{J + 1/2}^infinity h + h'(J + 1/2)/24 + ...
        let hi = (j0 + window) as f64 + 0.5;
        let lo = (j0 - window) as f64 - 0.5;
        total += tail_integral(c + a as f64 + nf * hi, big_y, s)? / nf + dh(hi) / 24.0;
        total += tail_integral(-(c + a as f64 + nf * lo), big_y, s)? / nf - dh(lo) / 24.0;
    }
    Ok(total)
}

/// int_{u0}^infinity (u^2 + Y^2)^{-s} du for u0 > 0, as Y^{1-2s} int_{atan(u0/Y)}^{pi/2} cos^{2s-2}.
fn tail_integral(u0: f64, big_y: f64, s: f64) -> Result<f64> {
    debug_assert!(u0 > 0.0);
    let th0 = (u0 / big_y).atan();
    let f = |t: f64| t.cos().powf(2.0 * s - 2.0);
    let q = integrate(&f, th0, PI / 2.0, 1e-18)?;
    Ok(big_y.powf(1.0 - 2.0 * s) * q.value)
}

/// t_0(y, s, s) = sqrt(pi) Gamma(s - 1/2) / Gamma(s) * y^{1 - 2s}.
fn t0(y: f64, s: f64) -> f64 {
    PI.sqrt() * gamma(s - 0.5) / gamma(s) * y.powf(1.0 - 2.0 * s)
}

/// E(N, z, s) from the lattice sum: rows m <= M summed directly, rows m > M replaced by their
/// constant Fourier mode through a Hurwitz zeta, with the exponentially small remainder bounded.
pub fn eisenstein_direct(level: &Level, z: Complex64, s: f64) -> Result<ScalarEval> {
    check_s(s)?;
    check_z(z)?;
    let nf = level.n as f64;
    let y = z.im;
    // nonconstant modes of a row decay like exp(-2 pi m y)
    let mrows = (36.0 / (2.0 * PI * y)).ceil().max(2.0) as i64;
    let mut rows = 0.0;
    for m in 1..=mrows {
        rows += row_sum(level, m, z, s)?;
    }
    let zmode = level.phi as f64 * nf.powf(-2.0 * s) * t0(y, s) * hurwitz_zeta(2.0 * s - 1.0, (mrows + 1) as f64)?;
    let zl = zeta_level(2.0 * s, &level.primes)?;
    let pref = y.powf(s) / zl;
    let rest_bound = pref * 4.0 * level.phi as f64 * (-2.0 * PI * (mrows + 1) as f64 * y).exp();
    Ok(ScalarEval {
        value: y.powf(s) + pref * (rows + zmode),
        tail_bound: rest_bound,
    })
}

/// Fourier coefficient a_k(z, s) of calE(N, z, s) = sum_k a_k(y, s) e(kx).
pub fn fourier_coefficient(level: &Level, k: i64, y: f64, s: f64) -> Result<f64> {
    check_s(s)?;
    let n = level.n;
    if k == 0 {
        return Ok(normalization(level, s)? * y.powf(s)
            + level.phi as f64 * y.powf(s) * PI.powf(-s) * gamma(s) * zeta(2.0 * s - 1.0)? * t0(y, s));
    }
    let ka = k.unsigned_abs();
    let mut sum = 0.0;
    for m in divisors(ka) {
        let nn = (ka / m) as i64 * k.signum();
        let t = whittaker_t(nn, m as f64 * y, s, s)?;
        sum += t.re * ramanujan_sum(n, nn) as f64;
    }
    Ok(y.powf(s) * PI.powf(-s) * gamma(s) * sum)
}

/// E(N, z, s) from its Fourier expansion.
pub fn eisenstein_fourier(level: &Level, z: Complex64, s: f64) -> Result<ScalarEval> {
    check_s(s)?;
    check_z(z)?;
    let y = z.im;
    let kmax = (36.0 / (2.0 * PI * y)).ceil() as i64 + 2;
    let mut v = fourier_coefficient(level, 0, y, s)?;
    for k in 1..=kmax {
        v += 2.0 * fourier_coefficient(level, k, y, s)? * (2.0 * PI * k as f64 * z.re).cos();
    }
    let norm = normalization(level, s)?;
    let bound = (-2.0 * PI * (kmax + 1) as f64 * y).exp() * 4.0 * level.n as f64 / norm;
    Ok(ScalarEval { value: v / norm, tail_bound: bound })
}

/// calE(N, z, s) = N^{2s} pi^{-s} Gamma(s) zeta^{(N)}(2s) E(N, z, s) via the lattice sum.
pub fn eisenstein_normalized(level: &Level, z: Complex64, s: f64) -> Result<ScalarEval> {
    let e = eisenstein_direct(level, z, s)?;
    let c = normalization(level, s)?;
    Ok(ScalarEval { value: c * e.value, tail_bound: c * e.tail_bound })
}

/// a_k(z, 1) = e^{-2 pi k y}/k * sum_{n | k} n C_N(n) for k >= 1.
pub fn fourier_coefficient_at_one(level: &Level, k: u64, y: f64) -> f64 {
    let c: i64 = divisors(k)
        .into_iter()
        .map(|n| n as i64 * ramanujan_sum(level.n, n as i64))
        .sum();
    (-2.0 * PI * k as f64 * y).exp() / k as f64 * c as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KlfPair {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Both sides of the Kronecker limit formula at z: the limit of calE(N, z, s) - phi(N) zeta*(2s-1)
/// from its Fourier expansion, and -(1/12) log(y^{6 phi(N)} |Delta_N(z)|) from the q-expansion.
pub fn kronecker_limit_pair_with(delta: &DeltaN, z: Complex64) -> Result<KlfPair> {
    check_z(z)?;
    let level = &delta.level;
    let (x, y) = (z.re, z.im);
    let phi = level.phi as f64;
    let mut lhs = phi * (-y.ln() / 2.0 + PI / 6.0 * y * level.index as f64);
    let mut k = 1u64;
    loop {
        let a = fourier_coefficient_at_one(level, k, y);
        lhs += 2.0 * a * (2.0 * PI * k as f64 * x).cos();
        if (-2.0 * PI * k as f64 * y).exp() * 24.0 * (level.n as f64) < 1e-18 {
            break;
        }
        k += 1;
    }
    let rhs = -(6.0 * phi * y.ln() + delta.log_abs(z)?) / 12.0;
    Ok(KlfPair { lhs, rhs, residual: (lhs - rhs).abs() })
}

/// Kronecker limit pair, growing the q-expansion order until its tail bound is small enough.
pub fn kronecker_limit_pair(level: &Level, z: Complex64) -> Result<KlfPair> {
    check_z(z)?;
    let mut order = 32usize;
    loop {
        let d = delta_n(level, order)?;
        match kronecker_limit_pair_with(&d, z) {
            Err(Error::Precision(msg)) if order < 2048 => {
                let _ = msg;
                order *= 2;
            }
            other => return other,
        }
    }
}

/// Phi(s) = phi(N) sqrt(pi) Gamma(s - 1/2) zeta(2s - 1) / (Gamma(s) N^{2s} zeta^{(N)}(2s)), the
/// coefficient of y^{1-s} in the constant term of E(N, z, s).
pub fn scattering_phi(level: &Level, s: f64) -> Result<f64> {
    Ok(level.phi as f64 * PI.sqrt() * gamma(s - 0.5) * zeta(2.0 * s - 1.0)?
        / (gamma(s) * (level.n as f64).powf(2.0 * s) * zeta_level(2.0 * s, &level.primes)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringLaurent {
    pub c_minus1: f64,
    pub c0: f64,
}

/// C_{-1} = 3/(pi r) and C_0 = -(6/(pi r))(log 4pi - 1 + 12 zeta'(-1) + sum p^2/(p^2 - 1) log p).
pub fn scattering_laurent(level: &Level) -> ScatteringLaurent {
    let r = level.index as f64;
    let sp: f64 = level
        .primes
        .iter()
        .map(|&p| {
            let p = p as f64;
            p * p / (p * p - 1.0) * p.ln()
        })
        .sum();
    ScatteringLaurent {
        c_minus1: 3.0 / (PI * r),
        c0: -(6.0 / (PI * r)) * (log_4pi() - 1.0 + 12.0 * ZETA_PRIME_MINUS_ONE + sp),
    }
}

/// Move z into the standard fundamental domain of SL_2(Z); returns (g z, g).
pub fn reduce_point(z: Complex64) -> (Complex64, [i64; 4]) {
    let mut w = z;
    let mut g: [i64; 4] = [1, 0, 0, 1];
    for _ in 0..10_000 {
        let k = (w.re + 0.5).floor();
        if k != 0.0 {
            w.re -= k;
            let k = k as i64;
            // T^{-k} g
            g = [g[0] - k * g[2], g[1] - k * g[3], g[2], g[3]];
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            w = -1.0 / w;
            // S g with S = [[0, -1], [1, 0]]
            g = [-g[2], -g[3], g[0], g[1]];
        } else {
            break;
        }
    }
    (w, g)
}

/// E(1, z, s) from its Bessel expansion
/// y^s + xi(2s-1)/xi(2s) y^{1-s} + 2 sqrt(y)/xi(2s) sum_{n != 0} |n|^{s-1/2} sigma_{1-2s}(|n|) K_{s-1/2}(2 pi |n| y) e(nx),
/// after reducing z into the fundamental domain.
pub fn eisenstein_level_one(z: Complex64, s: f64) -> Result<ScalarEval> {
    check_s(s)?;
    check_z(z)?;
    let (w, _) = reduce_point(z);
    let (x, y) = (w.re, w.im);
    let xi = |t: f64| -> Result<f64> { Ok(PI.powf(-t / 2.0) * gamma(t / 2.0) * zeta(t)?) };
    let xi2s = xi(2.0 * s)?;
    let mut v = y.powf(s) + xi(2.0 * s - 1.0)? / xi2s * y.powf(1.0 - s);
    let kmax = (40.0 / (2.0 * PI * y)).ceil() as u64 + 1;
    let mut osc = 0.0;
    for n in 1..=kmax {
        let sigma: f64 = divisors(n).into_iter().map(|d| (d as f64).powf(1.0 - 2.0 * s)).sum();
        let k = bessel_k(s - 0.5, 2.0 * PI * n as f64 * y)?;
        osc += 2.0 * (n as f64).powf(s - 0.5) * sigma * k * (2.0 * PI * n as f64 * x).cos();
    }
    v += 2.0 * y.sqrt() / xi2s * osc;
    let bound = 4.0 * y.sqrt() / xi2s * (-2.0 * PI * (kmax + 1) as f64 * y).exp() * (kmax as f64 + 1.0).powf(s);
    Ok(ScalarEval { value: v, tail_bound: bound })
}

/// E(N, z, s) at any point of the upper half plane through
/// E(N, z, s) = zeta(2s)/zeta^{(N)}(2s) sum_{e | N} mu(e) e^{-2s} (N/e)^{-s} E(1, (N/e) z, s),
/// which needs level-one values only and so stays accurate near every cusp.
pub fn eisenstein_at(level: &Level, z: Complex64, s: f64) -> Result<ScalarEval> {
    check_s(s)?;
    check_z(z)?;
    let ratio = zeta(2.0 * s)? / zeta_level(2.0 * s, &level.primes)?;
    let mut value = 0.0;
    let mut bound = 0.0;
    for e in divisors(level.n) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let t = (level.n / e) as f64;
        let c = ratio * mu as f64 * (e as f64).powf(-2.0 * s) * t.powf(-s);
        let ev = eisenstein_level_one(z * t, s)?;
        value += c * ev.value;
        bound += c.abs() * ev.tail_bound;
    }
    Ok(ScalarEval { value, tail_bound: bound })
}
