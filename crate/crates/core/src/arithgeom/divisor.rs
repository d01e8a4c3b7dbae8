//! The component basis of arithmetic divisors on the integral model of X0(N) and finitely
//! supported combinations of it.

use super::symbolic::SymReal;
use crate::error::{Error, Result};
use crate::lattice::vector::discriminant_of;
use crate::numtheory::Level;
use num_rational::Rational64;
use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// A basis component.
///
/// `CuspSection(M)` is the closure of the cusp 1/M, so `CuspSection(N)` is the cusp at infinity
/// and `CuspSection(1)` the cusp 0. `VertInf(p)` and `VertZero(p)` are the two components of the
/// fibre at p | N containing the reductions of infinity and of 0. `Hodge` is the metrized
/// Hodge bundle, `Horizontal(n, r)` the Heegner divisor Z(n, mu_r) with its Green function,
/// `Const` the class a(1) and `LogVN` the class a(log(v/N)).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    CuspSection(u64),
    VertInf(u64),
    VertZero(u64),
    Hodge,
    Horizontal { n: Rational64, r: i64 },
    Const,
    LogVN,
}

impl Component {
    /// Check that the component exists at this level and normalise r modulo 2N.
    pub fn validated(self, level: &Level) -> Result<Component> {
        match self {
            Component::CuspSection(m) => {
                level.check_divisor(m)?;
                Ok(self)
            }
            Component::VertInf(p) | Component::VertZero(p) => {
                if level.primes.contains(&p) {
                    Ok(self)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "{p} is not a prime divisor of the level {}",
                        level.n
                    )))
                }
            }
            Component::Horizontal { n, r } => {
                let big = level.n as i64;
                let d = discriminant_of(big, r, n)?;
                if d >= 0 {
                    return Err(Error::InvalidArgument(format!(
                        "Z({n}, {r}) has D = {d} >= 0 and is not a horizontal Heegner divisor"
                    )));
                }
                Ok(Component::Horizontal { n, r: r.rem_euclid(2 * big) })
            }
            Component::Hodge | Component::Const | Component::LogVN => Ok(self),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::CuspSection(m) => write!(f, "P({m})"),
            Component::VertInf(p) => write!(f, "Xinf({p})"),
            Component::VertZero(p) => write!(f, "X0({p})"),
            Component::Hodge => write!(f, "omega"),
            Component::Horizontal { n, r } => write!(f, "Z({n},{r})"),
            Component::Const => write!(f, "Const"),
            Component::LogVN => write!(f, "LogVN"),
        }
    }
}

/// A finitely supported combination of basis components with symbolic coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithDivisor {
    pub level: Level,
    coefficients: BTreeMap<Component, SymReal>,
}

impl ArithDivisor {
    pub fn zero(level: &Level) -> Self {
        ArithDivisor { level: level.clone(), coefficients: BTreeMap::new() }
    }

    /// A single component with coefficient 1.
    pub fn component(level: &Level, c: Component) -> Result<Self> {
        let mut d = Self::zero(level);
        d.add_term(c, SymReal::integer(1))?;
        Ok(d)
    }

    pub fn add_term(&mut self, c: Component, coeff: SymReal) -> Result<()> {
        let c = c.validated(&self.level)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self.coefficients.entry(c.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coefficients.remove(&c);
        }
        Ok(())
    }

    pub fn add_rational(&mut self, c: Component, q: Rational64) -> Result<()> {
        self.add_term(c, SymReal::rational(q))
    }

    pub fn with_term(mut self, c: Component, coeff: SymReal) -> Result<Self> {
        self.add_term(c, coeff)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, c: &Component) -> SymReal {
        self.coefficients.get(c).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Component, &SymReal)> {
        self.coefficients.iter()
    }

    fn check_level(&self, other: &ArithDivisor) -> Result<()> {
        if self.level.n != other.level.n {
            return Err(Error::InvalidArgument(format!(
                "divisors live on different levels {} and {}",
                self.level.n, other.level.n
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &ArithDivisor) -> Result<ArithDivisor> {
        self.check_level(other)?;
        let mut out = self.clone();
        for (c, q) in other.terms() {
            out.add_term(c.clone(), q.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &SymReal) -> ArithDivisor {
        let mut out = Self::zero(&self.level);
        for (c, q) in self.terms() {
            let v = q * s;
            if !v.is_zero() {
                out.coefficients.insert(c.clone(), v);
            }
        }
        out
    }

    pub fn minus(&self, other: &ArithDivisor) -> Result<ArithDivisor> {
        self.plus(&other.scaled(&SymReal::integer(-1)))
    }
}

impl fmt::Display for ArithDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(c, q)| format!("({q})*{c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(serde::Serialize)]
struct TermJson<'a> {
    component: String,
    coefficient: &'a SymReal,
}

impl Serialize for ArithDivisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(c, q)| TermJson { component: c.to_string(), coefficient: q })
            .collect();
        let mut s = serializer.serialize_struct("ArithDivisor", 2)?;
        s.serialize_field("level", &self.level.n)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// Parse "P/Q" or an integer.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("malformed rational literal '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(num, den))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("malformed integer '{s}'")))
}

/// Named divisors the expression language accepts besides the basis atoms.
type Builder = fn(&Level) -> Result<ArithDivisor>;

fn named_divisor(name: &str) -> Option<Builder> {
    use super::special::{delta_hat, delta_hat_zero, divisor_of_delta_n, divisor_of_delta_n_zero};
    match name {
        "DeltaHat" => Some(delta_hat),
        "DeltaHat0" => Some(delta_hat_zero),
        "DivDelta" => Some(divisor_of_delta_n),
        "DivDelta0" => Some(divisor_of_delta_n_zero),
        _ => None,
    }
}

fn parse_atom(level: &Level, s: &str) -> Result<ArithDivisor> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("unknown divisor atom '{s}'"));
    if let Some(b) = named_divisor(s) {
        return b(level);
    }
    let c = match s {
        "omega" | "Hodge" => Component::Hodge,
        "Const" | "a1" => Component::Const,
        "LogVN" => Component::LogVN,
        "Pinf" => Component::CuspSection(level.n),
        "P0" => Component::CuspSection(1),
        _ => {
            let open = s.find('(').ok_or_else(bad)?;
            if !s.ends_with(')') {
                return Err(bad());
            }
            let head = &s[..open];
            let args = &s[open + 1..s.len() - 1];
            match head {
                "P" => Component::CuspSection(parse_u64(args)?),
                "Xinf" => Component::VertInf(parse_u64(args)?),
                "X0" => Component::VertZero(parse_u64(args)?),
                "Z" => {
                    let (n, r) = args.split_once(',').ok_or_else(bad)?;
                    let r: i64 = r
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("malformed r in '{s}'")))?;
                    Component::Horizontal { n: parse_rational(n)?, r }
                }
                _ => return Err(bad()),
            }
        }
    };
    ArithDivisor::component(level, c)
}

/// Split at top-level '+' and '-' signs, keeping the sign with each term.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::InvalidArgument(format!("unbalanced ')' in '{s}'")));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((neg, cur.trim().to_string()));
                    cur.clear();
                    neg = ch == '-';
                } else if ch == '-' {
                    neg = !neg;
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::InvalidArgument(format!("unbalanced '(' in '{s}'")));
    }
    if cur.trim().is_empty() {
        return Err(Error::InvalidArgument(format!("empty term in '{s}'")));
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}

/// Parse an expression such as `2*omega - 1/2*X0(3) + P(1) + Z(3/4,1)`.
///
/// Atoms: `P(M)`, `Pinf`, `P0`, `Xinf(p)`, `X0(p)`, `omega`, `Z(n,r)`, `Const`, `LogVN`
/// and the named divisors `DeltaHat`, `DeltaHat0`, `DivDelta`, `DivDelta0`.
/// A term is an atom optionally preceded by a rational coefficient and `*`.
pub fn parse_divisor(level: &Level, s: &str) -> Result<ArithDivisor> {
    let mut out = ArithDivisor::zero(level);
    for (neg, term) in split_terms(s)? {
        let (coeff, atom) = match term.split_once('*') {
            Some((c, a)) => (parse_rational(c)?, a),
            None => (Rational64::from_integer(1), term.as_str()),
        };
        let coeff = if neg { -coeff } else { coeff };
        if coeff.is_zero() {
            continue;
        }
        let d = parse_atom(level, atom)?;
        out = out.plus(&d.scaled(&SymReal::rational(coeff)))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let l = Level::new(6).unwrap();
        let d = parse_divisor(&l, "2*omega - 1/2*X0(3) + P(1) - -Const + Z(-1/24,1)").unwrap_err();
        assert!(matches!(d, Error::InvalidArgument(_)));
        let d = parse_divisor(&l, "2*omega - 1/2*X0(3) + P(1) + Const + Z(23/24,1)").unwrap();
        let again = parse_divisor(&l, &d.terms().map(|(c, q)| format!("{}*{c}", q)).collect::<Vec<_>>().join(" + ")).unwrap();
        assert_eq!(d, again);
        assert_eq!(d.coefficient(&Component::VertZero(3)), SymReal::rational(Rational64::new(-1, 2)));
    }

    #[test]
    fn rejects_components_off_the_level() {
        let l = Level::new(6).unwrap();
        assert!(parse_divisor(&l, "X0(5)").is_err());
        assert!(parse_divisor(&l, "P(4)").is_err());
        assert!(parse_divisor(&l, "Z(1/3,1)").is_err());
        assert!(parse_divisor(&l, "omega + (").is_err());
    }
}
