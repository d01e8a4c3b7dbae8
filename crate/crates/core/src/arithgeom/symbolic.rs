//! Exact symbolic reals: finite rational combinations of products of transcendental atoms.
//!
//! The atoms are log p, zeta'(-1), the Petersson constant C, log v and named numeric
//! constants such as g(n, mu, v). Numeric rendering is a separate step through [`SymReal::eval`].

use crate::analytic::consts::{PETERSSON_C, ZETA_PRIME_MINUS_ONE};
use crate::error::{Error, Result};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A transcendental atom. `Named` carries its numeric value as raw bits so that atoms stay
/// totally ordered and hashable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    LogP(u64),
    ZetaPrimeM1,
    C,
    LogV,
    Named { label: String, bits: u64 },
}

impl Atom {
    pub fn named(label: impl Into<String>, value: f64) -> Self {
        Atom::Named { label: label.into(), bits: value.to_bits() }
    }

    /// Numeric value; log v needs the value of v.
    pub fn value(&self, v: Option<f64>) -> Result<f64> {
        Ok(match self {
            Atom::LogP(p) => (*p as f64).ln(),
            Atom::ZetaPrimeM1 => ZETA_PRIME_MINUS_ONE,
            Atom::C => PETERSSON_C,
            Atom::LogV => match v {
                Some(v) if v > 0.0 => v.ln(),
                _ => {
                    return Err(Error::InvalidArgument(
                        "evaluating log v needs a positive v".into(),
                    ))
                }
            },
            Atom::Named { bits, .. } => f64::from_bits(*bits),
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::LogP(p) => write!(f, "log {p}"),
            Atom::ZetaPrimeM1 => write!(f, "zeta'(-1)"),
            Atom::C => write!(f, "C"),
            Atom::LogV => write!(f, "log v"),
            Atom::Named { label, .. } => write!(f, "{label}"),
        }
    }
}

/// A product of atoms, kept sorted; the empty product is 1.
pub type Monomial = Vec<Atom>;

/// sum_i q_i m_i with rational q_i and distinct monomials m_i; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymReal {
    terms: BTreeMap<Monomial, Rational64>,
}

impl SymReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational64) -> Self {
        Self::monomial(Vec::new(), q)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational64::from_integer(n))
    }

    pub fn atom(a: Atom) -> Self {
        Self::monomial(vec![a], Rational64::one())
    }

    pub fn log_p(p: u64) -> Self {
        Self::atom(Atom::LogP(p))
    }

    /// log N = sum_{p | N} log p for square-free N.
    pub fn log_of_squarefree(primes: &[u64]) -> Self {
        primes.iter().fold(Self::zero(), |acc, &p| acc + Self::log_p(p))
    }

    pub fn monomial(mut m: Monomial, q: Rational64) -> Self {
        m.sort();
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        SymReal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational64)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (given in any order).
    pub fn coeff(&self, m: &[Atom]) -> Rational64 {
        let mut key = m.to_vec();
        key.sort();
        self.terms.get(&key).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn rational_part(&self) -> Rational64 {
        self.coeff(&[])
    }

    /// Some(q) when the value is a pure rational.
    pub fn as_rational(&self) -> Option<Rational64> {
        if self.terms.keys().all(|m| m.is_empty()) {
            Some(self.rational_part())
        } else {
            None
        }
    }

    /// True when every monomial has at most one atom.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.len() <= 1)
    }

    pub fn scale(&self, q: Rational64) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SymReal { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    fn add_term(&mut self, m: Monomial, q: Rational64) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational64::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Numeric value; `v` is needed only when log v occurs.
    pub fn eval(&self, v: Option<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (m, q) in &self.terms {
            let mut t = *q.numer() as f64 / *q.denom() as f64;
            for a in m {
                t *= a.value(v)?;
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for SymReal {
    type Output = SymReal;
    fn add(mut self, rhs: SymReal) -> SymReal {
        self += rhs;
        self
    }
}

impl AddAssign for SymReal {
    fn add_assign(&mut self, rhs: SymReal) {
        for (m, q) in rhs.terms {
            self.add_term(m, q);
        }
    }
}

impl Neg for SymReal {
    type Output = SymReal;
    fn neg(self) -> SymReal {
        self.scale(-Rational64::one())
    }
}

impl Sub for SymReal {
    type Output = SymReal;
    fn sub(self, rhs: SymReal) -> SymReal {
        self + (-rhs)
    }
}

impl Mul for &SymReal {
    type Output = SymReal;
    fn mul(self, rhs: &SymReal) -> SymReal {
        let mut out = SymReal::zero();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                let mut m = ma.clone();
                m.extend(mb.iter().cloned());
                m.sort();
                out.add_term(m, qa * qb);
            }
        }
        out
    }
}

impl Mul for SymReal {
    type Output = SymReal;
    fn mul(self, rhs: SymReal) -> SymReal {
        &self * &rhs
    }
}

fn fmt_rational(q: Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let neg = *q < Rational64::zero();
            let abs = if neg { -q } else { *q };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let names: Vec<String> = m.iter().map(|a| a.to_string()).collect();
            if m.is_empty() {
                write!(f, "{}", fmt_rational(abs))?;
            } else if abs.is_one() {
                write!(f, "{}", names.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(abs), names.join("*"))?;
            }
        }
        Ok(())
    }
}

/// JSON form: {rational, logp_terms, zeta_prime_coeff, C_coeff, log_v_coeff, other_terms, numeric}.
/// `numeric` is present only when the value does not involve log v.
impl Serialize for SymReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut logp = BTreeMap::new();
        let mut other = BTreeMap::new();
        for (m, q) in &self.terms {
            match m.as_slice() {
                [Atom::LogP(p)] => {
                    logp.insert(p.to_string(), fmt_rational(*q));
                }
                [] | [Atom::ZetaPrimeM1] | [Atom::C] | [Atom::LogV] => {}
                _ => {
                    let key: Vec<String> = m.iter().map(|a| a.to_string()).collect();
                    other.insert(key.join("*"), fmt_rational(*q));
                }
            }
        }
        let mut s = serializer.serialize_struct("SymReal", 7)?;
        s.serialize_field("rational", &fmt_rational(self.rational_part()))?;
        s.serialize_field("logp_terms", &logp)?;
        s.serialize_field("zeta_prime_coeff", &fmt_rational(self.coeff(&[Atom::ZetaPrimeM1])))?;
        s.serialize_field("C_coeff", &fmt_rational(self.coeff(&[Atom::C])))?;
        s.serialize_field("log_v_coeff", &fmt_rational(self.coeff(&[Atom::LogV])))?;
        s.serialize_field("other_terms", &other)?;
        s.serialize_field("numeric", &self.eval(None).ok())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let a = SymReal::log_p(2).scale(q(1, 3)) + SymReal::rational(q(1, 2));
        let b = SymReal::log_p(2).scale(q(-1, 3));
        let s = a.clone() + b;
        assert_eq!(s, SymReal::rational(q(1, 2)));
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn products_sort_atoms() {
        let x = SymReal::log_p(3) * SymReal::atom(Atom::C);
        let y = SymReal::atom(Atom::C) * SymReal::log_p(3);
        assert_eq!(x, y);
        assert_eq!(x.coeff(&[Atom::C, Atom::LogP(3)]), q(1, 1));
        assert!(!x.is_linear());
    }

    #[test]
    fn display_and_eval() {
        let x = SymReal::log_p(5).scale(q(1, 3)) - SymReal::integer(2);
        assert_eq!(x.to_string(), "-2 + 1/3*log 5");
        assert!((x.eval(None).unwrap() - (5f64.ln() / 3.0 - 2.0)).abs() < 1e-15);
        assert!(SymReal::atom(Atom::LogV).eval(None).is_err());
    }
}
