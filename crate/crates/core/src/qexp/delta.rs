//! The generalized Delta functions Delta_N = prod_{t|N} Delta(tz)^{a_N(t)} and their
//! Atkin-Lehner transforms.

use super::series::{EvalResult, PowerSeries};
use crate::error::{Error, Result};
use crate::numtheory::{delta_exponents, divisors, ramanujan_sum, Level};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// prod_{n>=1} (1 - q^n) to `order` terms via the pentagonal number theorem.
pub fn euler_product(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in [k, -k] {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < order {
                any = true;
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                c[e as usize] = BigInt::from(sign);
            }
            if k == 0 {
                break;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    c
}

/// prod_{n>=1} (1 - q^n)^{e(n)} to `order` terms, by the logarithmic-derivative recurrence
/// m p_m = sum_{k=1}^m c_k p_{m-k} with c_k = -sum_{d|k} d e(d).
pub fn product_with_exponents(e: &dyn Fn(u64) -> i64, order: usize) -> PowerSeries {
    let c: Vec<BigInt> = (0..order)
        .map(|k| {
            if k == 0 {
                return BigInt::zero();
            }
            let s: i64 = divisors(k as u64).into_iter().map(|d| d as i64 * e(d)).sum();
            BigInt::from(-s)
        })
        .collect();
    let mut p: Vec<BigInt> = Vec::with_capacity(order);
    if order > 0 {
        p.push(BigInt::one());
    }
    for m in 1..order {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            if !c[k].is_zero() {
                acc += &c[k] * &p[m - k];
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(m));
        debug_assert!(r.is_zero(), "integral exponents give integral products");
        p.push(q);
    }
    PowerSeries::from_int_coeffs(0, p)
}

/// Delta(z) = q prod (1 - q^n)^24 from the Euler product.
pub fn ramanujan_delta(order: usize) -> Result<PowerSeries> {
    let eta = PowerSeries::from_int_coeffs(0, euler_product(order));
    Ok(eta.pow(24)?.shift(&BigRational::one()))
}

/// A product prod_t Delta(tz)^{e(t)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaQuotient {
    pub exponents: BTreeMap<u64, i64>,
}

impl DeltaQuotient {
    pub fn new(exponents: impl IntoIterator<Item = (u64, i64)>) -> Self {
        DeltaQuotient {
            exponents: exponents.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn weight(&self) -> i64 {
        12 * self.exponents.values().sum::<i64>()
    }

    /// Order of vanishing at infinity in q = e(z).
    pub fn leading_exponent(&self) -> i64 {
        self.exponents.iter().map(|(&t, &e)| t as i64 * e).sum()
    }

    /// Exact expansion through `order` coefficients (step 1), built factor by factor.
    pub fn series(&self, order: usize) -> Result<PowerSeries> {
        let base = PowerSeries::from_int_coeffs(0, euler_product(order)).pow(24)?;
        let mut acc = PowerSeries::one(order);
        for (&t, &e) in &self.exponents {
            let inner = order.div_ceil(t as usize);
            let f = base.truncate(inner).pow(e)?;
            let f = f.substitute(&BigRational::from_integer(t.into())).refine(t as usize);
            acc = acc.mul(&f.truncate(order))?;
        }
        Ok(acc.shift(&BigRational::from_integer(self.leading_exponent().into())))
    }

    /// Transform under the Atkin-Lehner involution W_Q of level N:
    /// Delta(tz) maps to Delta((t/t0)(Q/t0) z) with t0 = gcd(t, Q); the constant is
    /// Q^{k/2} prod_t t0^{-12 e(t)}.
    pub fn atkin_lehner(&self, n: u64, q: u64) -> Result<(BigRational, DeltaQuotient)> {
        if q == 0 || n % q != 0 || (n / q).gcd(&q) != 1 {
            return Err(Error::NotADivisor { t: q, n });
        }
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        let mut c = BigRational::from_integer(BigInt::from(q)).pow(self.weight() / 2);
        for (&t, &e) in &self.exponents {
            let t0 = t.gcd(&q);
            *out.entry((t / t0) * (q / t0)).or_insert(0) += e;
            let f = BigRational::from_integer(BigInt::from(t0)).pow(-12 * e);
            c *= f;
        }
        Ok((c, DeltaQuotient::new(out)))
    }

    /// Direct double-precision evaluation of the product at z.
    pub fn eval_product(&self, z: Complex64) -> Complex64 {
        let mut log = Complex64::zero();
        for (&t, &e) in &self.exponents {
            log += log_delta(z * t as f64) * e as f64;
        }
        log.exp()
    }
}

/// log Delta(z) from the product (principal branch per factor); needs Im z not tiny.
pub fn log_delta(z: Complex64) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let q = (two_pi_i * z).exp();
    let mut acc = two_pi_i * z;
    let mut qn = q;
    let mut n = 1;
    while qn.norm() > 1e-18 || n < 3 {
        acc += (Complex64::new(1.0, 0.0) - qn).ln() * 24.0;
        qn *= q;
        n += 1;
        if n > 100_000 {
            break;
        }
    }
    acc
}

/// Delta_N with its exponent data.
#[derive(Debug, Clone)]
pub struct DeltaN {
    pub level: Level,
    pub series: PowerSeries,
    pub weight: u64,
}

pub fn delta_quotient_of_level(level: &Level) -> DeltaQuotient {
    DeltaQuotient::new(delta_exponents(level))
}

/// Leading exponent N phi(N) prod (1 + 1/p).
pub fn delta_n_leading_exponent(level: &Level) -> i64 {
    (level.phi * level.index) as i64
}

/// Single-product route q^{N phi prod(1+1/p)} prod (1 - q^n)^{24 C_N(n)}.
pub fn delta_n_single_product(level: &Level, order: usize) -> PowerSeries {
    let n = level.n;
    let e = move |k: u64| 24 * ramanujan_sum(n, k as i64);
    product_with_exponents(&e, order)
        .shift(&BigRational::from_integer(delta_n_leading_exponent(level).into()))
}

/// Delta_N built both ways; the constructions must agree and be integral.
pub fn delta_n(level: &Level, order: usize) -> Result<DeltaN> {
    let factored = delta_quotient_of_level(level).series(order)?;
    let single = delta_n_single_product(level, order);
    if !factored.is_integral() {
        return Err(Error::Consistency(format!(
            "Delta_{} has a non-integral coefficient",
            level.n
        )));
    }
    if factored != single {
        return Err(Error::Consistency(format!(
            "the two constructions of Delta_{} disagree",
            level.n
        )));
    }
    Ok(DeltaN {
        level: level.clone(),
        series: factored,
        weight: level.weight(),
    })
}

/// C_Q in closed form: Q^{6 phi(N)} prod_{t0|Q} t0^{-12 phi(N/Q) a_Q(t0)}.
pub fn atkin_lehner_constant(level: &Level, q: u64) -> Result<BigRational> {
    level.check_divisor(q)?;
    let lq = Level::new(q)?;
    let phi_nq = crate::numtheory::euler_phi(level.n / q) as i64;
    let mut c = BigRational::from_integer(BigInt::from(q)).pow(6 * level.phi as i64);
    for (t0, a) in delta_exponents(&lq) {
        c *= BigRational::from_integer(BigInt::from(t0)).pow(-12 * phi_nq * a);
    }
    Ok(c)
}

/// (C_Q, expansion of prod Delta((t/t0)(Q/t0) z)^{a_N(t)}).
pub fn atkin_lehner(level: &Level, q: u64, order: usize) -> Result<(BigRational, PowerSeries)> {
    let dq = delta_quotient_of_level(level);
    let (c_general, image) = dq.atkin_lehner(level.n, q)?;
    let c = atkin_lehner_constant(level, q)?;
    if c != c_general {
        return Err(Error::Consistency(format!(
            "Atkin-Lehner constants disagree for N={}, Q={q}",
            level.n
        )));
    }
    for p in &level.primes {
        if q % p != 0 && padic_valuation(&c, *p) != 0 {
            return Err(Error::Consistency(format!(
                "ord_{p} C_{q} is nonzero although {p} does not divide {q}"
            )));
        }
    }
    Ok((c, image.series(order)?))
}

/// Delta_N^0 = C_N prod Delta(tz)^{a(N/t)}.
pub fn delta_n_zero(level: &Level, order: usize) -> Result<(BigRational, PowerSeries)> {
    let c = atkin_lehner_constant(level, level.n)?;
    Ok((c, delta_n_zero_quotient(level).series(order)?))
}

pub fn delta_n_zero_quotient(level: &Level) -> DeltaQuotient {
    DeltaQuotient::new(
        delta_exponents(level)
            .into_iter()
            .map(|(t, a)| (level.n / t, a)),
    )
}

/// Vanishing order of Delta_N^0 at the cusp 0, read through W_N.
pub fn delta_n_zero_order_at_zero(level: &Level) -> Result<i64> {
    let (_, img) = delta_n_zero_quotient(level).atkin_lehner(level.n, level.n)?;
    Ok(img.leading_exponent())
}

/// p-adic valuation of a nonzero rational.
pub fn padic_valuation(x: &BigRational, p: u64) -> i64 {
    let val = |mut n: BigInt| -> i64 {
        let p = BigInt::from(p);
        let mut v = 0;
        if n.is_zero() {
            return i64::MAX;
        }
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    };
    val(x.numer().clone()) - val(x.denom().clone())
}

impl DeltaN {
    /// Evaluate the q-expansion at z with a rigorous tail bound from the majorant
    /// prod (1 - x^n)^{-E}, E = 24 sigma(N) >= max |24 C_N(n)|.
    pub fn eval(&self, z: Complex64) -> Result<EvalResult> {
        let x = (-2.0 * PI * z.im).exp();
        let coeffs = self.series.coeffs();
        let k = coeffs.len();
        let big_e: f64 = 24.0 * self.level.divisors.iter().sum::<u64>() as f64;
        let rho = x.sqrt();
        let mut log_m = 0.0;
        let mut rn = rho;
        while rn > 1e-20 {
            log_m -= (1.0 - rn).ln();
            rn *= rho;
        }
        let log_tail = big_e * log_m + k as f64 * (x / rho).ln() - (1.0 - x / rho).ln();
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let q = (two_pi_i * z).exp();
        let mut acc = Complex64::zero();
        let mut pw = Complex64::new(1.0, 0.0);
        for c in coeffs {
            acc += pw * c.to_f64().unwrap();
            pw *= q;
        }
        let lead = self.series.lead().to_f64().unwrap();
        let pref = (two_pi_i * z * lead).exp();
        let tail = log_tail.exp() * pref.norm();
        let value = acc * pref;
        if !(tail <= 1e-10 * value.norm()) {
            return Err(Error::Precision(format!(
                "{} terms insufficient at Im z = {} (tail bound {tail:e})",
                k, z.im
            )));
        }
        Ok(EvalResult {
            value_re: value.re,
            value_im: value.im,
            tail_bound: tail,
        })
    }

    /// log|Delta_N(z)| from the expansion, as log|series| + lead log|q| to avoid underflow.
    pub fn log_abs(&self, z: Complex64) -> Result<f64> {
        let lead = self.series.lead().to_f64().unwrap();
        let shifted = DeltaN {
            level: self.level.clone(),
            series: self.series.shift(&-self.series.lead().clone()),
            weight: self.weight,
        };
        let v = shifted.eval(z)?;
        Ok(v.value().norm().ln() - 2.0 * PI * z.im * lead)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_coefficients() {
        let d = ramanujan_delta(5).unwrap();
        let want = [1, -24, 252, -1472, 4830];
        for (c, w) in d.coeffs().iter().zip(want) {
            assert_eq!(c, &BigRational::from_integer(w.into()));
        }
        assert_eq!(d.lead(), &BigRational::one());
    }

    #[test]
    fn level_two_constant() {
        let l = Level::new(2).unwrap();
        let c = atkin_lehner_constant(&l, 2).unwrap();
        assert_eq!(padic_valuation(&c, 2), -18);
        assert_eq!(delta_n_zero_order_at_zero(&l).unwrap(), 3);
    }
}
