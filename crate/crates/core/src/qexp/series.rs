//! Truncated power series in q with rational exponents and exact rational coefficients.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::f64::consts::PI;

/// A series sum_{i < order} c_i q^{lead + i*step}, valid up to O(q^{lead + order*step}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    lead: BigRational,
    step: BigRational,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn all_integral(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_integer())
}

fn to_ints(v: &[BigRational]) -> Vec<BigInt> {
    v.iter().map(|c| c.to_integer()).collect()
}

fn from_ints(v: Vec<BigInt>) -> Vec<BigRational> {
    v.into_iter().map(BigRational::from_integer).collect()
}

/// Truncated Cauchy product of integer sequences.
pub(crate) fn convolve_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn convolve_rat(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    if all_integral(a) && all_integral(b) {
        return from_ints(convolve_int(&to_ints(a), &to_ints(b), len));
    }
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Result of a numerical evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EvalResult {
    pub value_re: f64,
    pub value_im: f64,
    pub tail_bound: f64,
}

impl EvalResult {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }
}

impl PowerSeries {
    /// Build from raw parts; leading zero coefficients are stripped.
    pub fn new(lead: BigRational, step: BigRational, coeffs: Vec<BigRational>) -> Self {
        assert!(step.is_positive(), "step must be positive");
        let mut s = PowerSeries { lead, step, coeffs };
        s.normalize();
        s
    }

    pub fn from_int_coeffs(lead: i64, coeffs: Vec<BigInt>) -> Self {
        Self::new(rat(lead), rat(1), from_ints(coeffs))
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![BigRational::zero(); order];
        if order > 0 {
            c[0] = BigRational::one();
        }
        Self::new(rat(0), rat(1), c)
    }

    fn normalize(&mut self) {
        let nz = self.coeffs.iter().position(|c| !c.is_zero());
        match nz {
            Some(0) | None => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += &self.step * rat(k as i64);
            }
        }
    }

    pub fn lead(&self) -> &BigRational {
        &self.lead
    }
    pub fn step(&self) -> &BigRational {
        &self.step
    }
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
    /// Number of valid coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
    /// Exclusive bound on valid exponents.
    pub fn valid_below(&self) -> BigRational {
        &self.lead + &self.step * rat(self.order() as i64)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn is_integral(&self) -> bool {
        all_integral(&self.coeffs)
    }

    /// Coefficient of q^e, or None if e lies beyond the truncation.
    pub fn coeff_at(&self, e: &BigRational) -> Option<BigRational> {
        if e >= &self.valid_below() {
            return None;
        }
        if e < &self.lead {
            return Some(BigRational::zero());
        }
        let k = (e - &self.lead) / &self.step;
        if !k.is_integer() {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[k.to_integer().to_usize().unwrap()].clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order);
        Self::new(self.lead.clone(), self.step.clone(), c)
    }

    /// Rewrite with step/k by interleaving zeros.
    pub fn refine(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut c = vec![BigRational::zero(); self.order() * k];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * k] = x.clone();
        }
        PowerSeries {
            lead: self.lead.clone(),
            step: &self.step / rat(k as i64),
            coeffs: c,
        }
    }

    /// f(q) -> f(q^t), i.e. z -> t z.
    pub fn substitute(&self, t: &BigRational) -> Self {
        assert!(t.is_positive());
        PowerSeries {
            lead: &self.lead * t,
            step: &self.step * t,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(
            self.lead.clone(),
            self.step.clone(),
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: &BigRational) -> Self {
        PowerSeries {
            lead: &self.lead + e,
            step: self.step.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    fn same_step(&self, other: &Self) -> Result<()> {
        if self.step != other.step {
            return Err(Error::InvalidArgument(format!(
                "series steps differ ({} vs {}); refine first",
                self.step, other.step
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_step(other)?;
        let len = self.order().min(other.order());
        let c = convolve_rat(&self.coeffs, &other.coeffs, len);
        Ok(Self::new(&self.lead + &other.lead, self.step.clone(), c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_step(other)?;
        let (lo, hi) = if self.lead <= other.lead {
            (self, other)
        } else {
            (other, self)
        };
        let off = (&hi.lead - &lo.lead) / &lo.step;
        if !off.is_integer() {
            return Err(Error::InvalidArgument(
                "exponent grids of the summands are incompatible".into(),
            ));
        }
        let off = off.to_integer().to_usize().unwrap();
        let bound = lo.order().min(off + hi.order());
        let mut c: Vec<BigRational> = lo.coeffs[..bound].to_vec();
        for (i, x) in hi.coeffs.iter().enumerate() {
            if off + i < bound {
                c[off + i] += x;
            }
        }
        Ok(Self::new(lo.lead.clone(), lo.step.clone(), c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplicative inverse by recursive long division.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("inverse of the zero series".into()));
        }
        let n = self.order();
        let f = &self.coeffs;
        let inv0 = f[0].recip();
        let mut g: Vec<BigRational> = Vec::with_capacity(n);
        g.push(inv0.clone());
        let integral = all_integral(f) && f[0].abs().is_one();
        if integral {
            let fi = to_ints(f);
            let u = fi[0].clone();
            let mut gi = vec![u.clone()];
            for m in 1..n {
                let mut acc = BigInt::zero();
                for k in 1..=m {
                    if !fi[k].is_zero() {
                        acc += &fi[k] * &gi[m - k];
                    }
                }
                gi.push(-acc * &u);
            }
            return Ok(Self::new(-&self.lead, self.step.clone(), from_ints(gi)));
        }
        for m in 1..n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !f[k].is_zero() {
                    acc += &f[k] * &g[m - k];
                }
            }
            g.push(-acc * &inv0);
        }
        Ok(Self::new(-&self.lead, self.step.clone(), g))
    }

    /// Integer power by binary exponentiation (negative powers through `inverse`).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = Self::one(self.order()).with_step(self.step.clone());
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    fn with_step(mut self, step: BigRational) -> Self {
        self.step = step;
        self
    }

    /// Evaluate at z with a tail estimate from the decay of the last computed coefficients.
    pub fn eval_at(&self, z: Complex64) -> Result<EvalResult> {
        if z.im <= 0.0 {
            return Err(Error::InvalidArgument("Im z must be positive".into()));
        }
        let step = self.step.to_f64().unwrap();
        let lead = self.lead.to_f64().unwrap();
        let qs = (Complex64::new(0.0, 2.0 * PI * step) * z).exp();
        let mut pw = (Complex64::new(0.0, 2.0 * PI * lead) * z).exp();
        let mut acc = Complex64::zero();
        for c in &self.coeffs {
            acc += pw * c.to_f64().unwrap_or(f64::NAN);
            pw *= qs;
        }
        let x = qs.norm();
        let tail = tail_estimate(&self.coeffs, x) * pw.norm();
        if !acc.re.is_finite() || !acc.im.is_finite() {
            return Err(Error::Precision("coefficient overflow in evaluation".into()));
        }
        if tail > 1e-8 * acc.norm().max(1e-300) {
            return Err(Error::Precision(format!(
                "Im z = {} too small for {} terms (tail {tail:e})",
                z.im,
                self.order()
            )));
        }
        Ok(EvalResult {
            value_re: acc.re,
            value_im: acc.im,
            tail_bound: tail,
        })
    }

    /// Renormalised Petersson log-norm log|f(z) (4 pi e^{-C} y)^{k/2}|.
    pub fn petersson_log_norm(&self, weight: f64, z: Complex64) -> Result<f64> {
        let v = self.eval_at(z)?;
        Ok(petersson_log_norm_of(v.value(), weight, z.im))
    }
}

/// log|f| + (k/2) log(4 pi e^{-C} y).
pub fn petersson_log_norm_of(value: Complex64, weight: f64, y: f64) -> f64 {
    let c = crate::analytic::consts::PETERSSON_C;
    value.norm().ln() + 0.5 * weight * (4.0 * PI * (-c).exp() * y).ln()
}

/// Estimate of |sum_{i >= n} c_i x^i| / x^n from the growth of the last coefficients.
fn tail_estimate(c: &[BigRational], x: f64) -> f64 {
    let n = c.len();
    if n == 0 {
        return f64::INFINITY;
    }
    let w = (n / 4).max(1);
    let mags: Vec<f64> = c[n - w..]
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::INFINITY).abs())
        .collect();
    let big = mags.iter().cloned().fold(0.0, f64::max);
    // growth ratio per index over the window, at least 1
    let first = mags.iter().position(|m| *m > 0.0);
    let ratio = match first {
        Some(i) if big > 0.0 && w - i > 1 => (big / mags[i]).powf(1.0 / (w - i) as f64).max(1.0),
        _ => 1.0,
    };
    let r = ratio * x;
    if r >= 1.0 {
        return f64::INFINITY;
    }
    big * 2.0 / (1.0 - r)
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesDump {
    pub lead: String,
    pub step: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&PowerSeries> for SeriesDump {
    fn from(s: &PowerSeries) -> Self {
        SeriesDump {
            lead: s.lead.to_string(),
            step: s.step.to_string(),
            order: s.order(),
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl PowerSeries {
    /// Rows (exponent, numerator, denominator) for CSV export.
    pub fn csv_rows(&self) -> Vec<(String, String, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = &self.lead + &self.step * rat(i as i64);
                (e.to_string(), c.numer().to_string(), c.denom().to_string())
            })
            .collect()
    }
}
