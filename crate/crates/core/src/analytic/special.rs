//! Special functions on the real axis: E_1, beta_s, the Whittaker integral W and t_n,
//! Riemann and Hurwitz zeta by Euler-Maclaurin, and the completed zeta.

use super::consts::EULER_GAMMA;
use super::quad::{integrate_to_infinity, QuadResult};
use crate::error::{Error, Result};
use num_complex::Complex64;
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma, gamma_ur};
use std::f64::consts::PI;

/// Exponential integral E_1(x) for x > 0: power series below 1, continued fraction above.
pub fn e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("E_1 needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() + sum)
    } else {
        // modified Lentz on E_1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-x).exp())
    }
}

/// Upper incomplete gamma Gamma(a, x) for real a and x > 0, by upward recurrence from (0, 1].
pub fn upper_gamma(a: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("Gamma(a, x) needs x > 0, got {x}")));
    }
    if a > 0.0 {
        return Ok(gamma_ur(a, x) * gamma(a));
    }
    // Gamma(b, x) = (Gamma(b + 1, x) - x^b e^{-x}) / b, from b0 = a + k in (0, 1] or b0 = 0
    let k = (-a).ceil();
    let mut b = a + k;
    let mut val = if b.abs() < 1e-15 {
        b = 0.0;
        e1(x)?
    } else {
        gamma_ur(b, x) * gamma(b)
    };
    for _ in 0..k as usize {
        b -= 1.0;
        val = (val - x.powf(b) * (-x).exp()) / b;
    }
    Ok(val)
}

/// beta_s(r) = int_1^infinity e^{-rt} t^{-s} dt = r^{s-1} Gamma(1 - s, r).
pub fn beta_s(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("beta_s needs r > 0, got {r}")));
    }
    if s == 1.0 {
        return e1(r);
    }
    if s == 1.5 {
        return Ok(beta_three_halves(r));
    }
    Ok(r.powf(s - 1.0) * upper_gamma(1.0 - s, r)?)
}

/// beta_{3/2}(r) = 2 e^{-r} - 2 sqrt(pi r) erfc(sqrt r); the value at r = 0 is 2.
///
/// sqrt(pi) erfc(sqrt r) is evaluated as Gamma(1/2, r), which is the more accurate routine.
pub fn beta_three_halves(r: f64) -> f64 {
    if r == 0.0 {
        return 2.0;
    }
    2.0 * (-r).exp() - 2.0 * r.sqrt() * gamma_ur(0.5, r) * PI.sqrt()
}

/// The same value through erfc, kept as an independent route.
pub fn beta_three_halves_erfc(r: f64) -> f64 {
    2.0 * (-r).exp() - 2.0 * (PI * r).sqrt() * erfc(r.sqrt())
}

/// beta_s(r) by direct quadrature of e^{-r} / r * int_0^infinity e^{-u} (1 + u/r)^{-s} du.
pub fn beta_s_quadrature(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("beta_s needs r > 0, got {r}")));
    }
    let f = |u: f64| (-u).exp() * (1.0 + u / r).powf(-s);
    let q = integrate_to_infinity(&f, 0.0, 1e-14)?;
    Ok((-r).exp() / r * q.value)
}

/// W(y, alpha, beta) = Gamma(beta)^{-1} int_0^infinity (1 + h)^{alpha - 1} h^{beta - 1} e^{-yh} dh.
pub fn whittaker_w(y: f64, alpha: f64, beta: f64) -> Result<QuadResult> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("W needs y > 0, got {y}")));
    }
    if !(beta > 0.0) {
        return Err(Error::Divergence(format!("W(y, alpha, beta) diverges at h = 0 for beta = {beta} <= 0")));
    }
    if alpha == 1.0 {
        return Ok(QuadResult { value: y.powf(-beta), error: 0.0 });
    }
    // h = u / y; for beta < 1 also u = t^{1/beta}, which removes the singularity at u = 0
    let q = if beta < 1.0 {
        let f = |t: f64| {
            let u = t.powf(1.0 / beta);
            (1.0 + u / y).powf(alpha - 1.0) * (-u).exp() / beta
        };
        integrate_to_infinity(&f, 0.0, 1e-15)?
    } else {
        let f = |u: f64| (1.0 + u / y).powf(alpha - 1.0) * u.powf(beta - 1.0) * (-u).exp();
        integrate_to_infinity(&f, 0.0, 1e-15)?
    };
    let c = y.powf(-beta) / gamma(beta);
    Ok(QuadResult { value: c * q.value, error: c * q.error })
}

/// t_n(y, alpha, beta): the n-th Fourier coefficient of x -> (x + iy)^{-alpha} (x - iy)^{-beta}.
pub fn whittaker_t(n: i64, y: f64, alpha: f64, beta: f64) -> Result<Complex64> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("t_n needs y > 0, got {y}")));
    }
    let phase = Complex64::new(0.0, 1.0).powf(beta - alpha);
    let c = (2.0 * PI).powf(alpha + beta);
    let v = if n > 0 {
        let nf = n as f64;
        c * nf.powf(alpha + beta - 1.0) * (-2.0 * PI * nf * y).exp() / gamma(alpha)
            * whittaker_w(4.0 * PI * nf * y, alpha, beta)?.value
    } else if n < 0 {
        let nf = -n as f64;
        c * nf.powf(alpha + beta - 1.0) * (-2.0 * PI * nf * y).exp() / gamma(beta)
            * whittaker_w(4.0 * PI * nf * y, beta, alpha)?.value
    } else {
        if !(alpha + beta > 1.0) {
            return Err(Error::Divergence("t_0 needs alpha + beta > 1".into()));
        }
        c / gamma(alpha) / gamma(beta) * gamma(alpha + beta - 1.0) * (4.0 * PI * y).powf(1.0 - alpha - beta)
    };
    Ok(phase * v)
}

/// Modified Bessel function K_nu(x) for x > 0 from K_nu(x) = int_0^infinity e^{-x cosh t} cosh(nu t) dt.
///
/// The integrand decays doubly exponentially, so the trapezoidal rule converges geometrically.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("K_nu needs x > 0, got {x}")));
    }
    let h = 0.02;
    let mut sum = 0.5 * (-x).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let term = (-x * t.cosh() + nu.abs() * t).exp() * 0.5 * (1.0 + (-2.0 * nu.abs() * t).exp());
        sum += term;
        if term < 1e-18 * sum && x * t.cosh() > x + 40.0 {
            break;
        }
        k += 1;
    }
    Ok(h * sum)
}

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Hurwitz zeta sum_{k >= 0} (k + a)^{-s} for real s != 1 and a > 0, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Divergence("zeta has a pole at s = 1".into()));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    let k = 24usize;
    let mut sum = 0.0;
    for j in 0..k {
        sum += (j as f64 + a).powf(-s);
    }
    let x = k as f64 + a;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // sum_j B_{2j}/(2j)! s (s+1) ... (s+2j-2) x^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * j + 2;
        sum += b / fact * rising * x.powf(-s - m as f64 + 1.0);
        rising *= (s + m as f64 - 1.0) * (s + m as f64);
        fact *= ((m + 1) * (m + 2)) as f64;
    }
    Ok(sum)
}

/// Riemann zeta for real s != 1.
pub fn zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// zeta^{(N)}(s) = zeta(s) prod_{p | N} (1 - p^{-s}).
pub fn zeta_level(s: f64, primes: &[u64]) -> Result<f64> {
    Ok(primes
        .iter()
        .fold(zeta(s)?, |acc, &p| acc * (1.0 - (p as f64).powf(-s))))
}

/// zeta*(s) = pi^{-s/2} Gamma(s/2) zeta(s).
pub fn zeta_star(s: f64) -> Result<f64> {
    Ok(PI.powf(-s / 2.0) * gamma(s / 2.0) * zeta(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-13);
        assert!((zeta(0.0).unwrap() + 0.5).abs() < 1e-13);
    }

    #[test]
    fn bessel_k_half_integer_orders() {
        for x in [0.05, 0.7, 3.0, 25.0] {
            let k12 = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((bessel_k(0.5, x).unwrap() - k12).abs() <= 1e-13 * k12);
            let k32 = k12 * (1.0 + 1.0 / x);
            assert!((bessel_k(1.5, x).unwrap() - k32).abs() <= 1e-13 * k32);
            assert!((bessel_k(-1.5, x).unwrap() - k32).abs() <= 1e-13 * k32);
        }
    }

    #[test]
    fn e1_branches_meet() {
        let a = e1(1.0).unwrap();
        assert!((a - 0.219_383_934_395_520_27).abs() < 1e-15);
        let b = e1(1.0 + 1e-12).unwrap();
        assert!((a - b).abs() < 1e-11);
    }
}
