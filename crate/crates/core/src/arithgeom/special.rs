//! Divisors of Delta_N and Delta_N^0, the arithmetic special divisors Z(n, mu, v), their
//! degrees and the vertical pairing identity.

use super::divisor::{ArithDivisor, Component};
use super::pairing::{degree, pair};
use super::symbolic::{Atom, SymReal};
use crate::error::{Error, Result};
use crate::lattice::vector::discriminant_of;
use crate::numtheory::{exact_sqrt, Level};
use crate::theta::green::green_cusp_constants;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

fn q(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

/// (r, k) = (index of Gamma_0(N), weight 12 phi(N)) as rationals.
fn r_and_k(level: &Level) -> (Rational64, Rational64) {
    (
        Rational64::from_integer(level.index as i64),
        Rational64::from_integer(level.weight() as i64),
    )
}

/// Div Delta_N = (rk/12) P_inf - k sum_p p/(p-1) X_p^0.
pub fn divisor_of_delta_n(level: &Level) -> Result<ArithDivisor> {
    let (r, k) = r_and_k(level);
    let mut d = ArithDivisor::zero(level);
    d.add_rational(Component::CuspSection(level.n), r * k * q(1, 12))?;
    for &p in &level.primes {
        let p = p as i64;
        d.add_rational(Component::VertZero(p as u64), -k * q(p, p - 1))?;
    }
    Ok(d)
}

/// Div Delta_N^0 = (rk/12) P_0 - (k/2) sum_p (p+1)/(p-1) X_p^inf - (k/2) sum_p X_p^0.
pub fn divisor_of_delta_n_zero(level: &Level) -> Result<ArithDivisor> {
    let (r, k) = r_and_k(level);
    let mut d = ArithDivisor::zero(level);
    d.add_rational(Component::CuspSection(1), r * k * q(1, 12))?;
    for &p in &level.primes {
        let p = p as i64;
        d.add_rational(Component::VertInf(p as u64), -k * q(p + 1, 2 * (p - 1)))?;
        d.add_rational(Component::VertZero(p as u64), -k * q(1, 2))?;
    }
    Ok(d)
}

/// The horizontal part of div(Delta_N) with the Green function -log||Delta_N||^2:
/// k omega + k sum_p p/(p-1) X_p^0.
pub fn delta_hat(level: &Level) -> Result<ArithDivisor> {
    let (_, k) = r_and_k(level);
    let mut d = ArithDivisor::zero(level);
    d.add_rational(Component::Hodge, k)?;
    for &p in &level.primes {
        let p = p as i64;
        d.add_rational(Component::VertZero(p as u64), k * q(p, p - 1))?;
    }
    Ok(d)
}

/// The same for Delta_N^0: k omega + (k/2) sum_p (p+1)/(p-1) X_p^inf + (k/2) sum_p X_p^0.
pub fn delta_hat_zero(level: &Level) -> Result<ArithDivisor> {
    let (_, k) = r_and_k(level);
    let mut d = ArithDivisor::zero(level);
    d.add_rational(Component::Hodge, k)?;
    for &p in &level.primes {
        let p = p as i64;
        d.add_rational(Component::VertInf(p as u64), k * q(p + 1, 2 * (p - 1)))?;
        d.add_rational(Component::VertZero(p as u64), k * q(1, 2))?;
    }
    Ok(d)
}

/// Which branch of the assembly a row falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// n > 0: the Heegner divisor
    Horizontal,
    /// D > 0 not a square: Green function only
    NonSquare,
    /// D > 0 a square: the cusp constant times the sum of all cusps
    SquareCusp,
    /// n = 0, mu = 0: the constant-term class
    ConstantTerm,
    /// n = 0, mu != 0: zero
    Vanishing,
}

/// The symbol g(n, mu, v) as a named atom carrying its value.
fn cusp_constant_atom(level: &Level, r: i64, n: Rational64, v: f64) -> Result<SymReal> {
    let g = green_cusp_constants(level.n as i64, r, n, v)?;
    Ok(SymReal::atom(Atom::named(format!("g({n},{r},{v})"), g.value)))
}

/// The branch of (n, r) at this level, after checking the congruence n = Q(mu_r) mod 1.
pub fn row_kind(level: &Level, r: i64, n: Rational64) -> Result<RowKind> {
    let d = discriminant_of(level.n as i64, r, n)?;
    Ok(if d < 0 {
        RowKind::Horizontal
    } else if d == 0 {
        if r.rem_euclid(2 * level.n as i64) == 0 {
            RowKind::ConstantTerm
        } else {
            RowKind::Vanishing
        }
    } else if exact_sqrt(d).is_some() {
        RowKind::SquareCusp
    } else {
        RowKind::NonSquare
    })
}

/// The arithmetic special divisor Z(n, mu_r, v).
pub fn assemble_z_hat(level: &Level, r: i64, n: Rational64, v: f64) -> Result<ArithDivisor> {
    if !(v > 0.0) {
        return Err(Error::InvalidArgument(format!("v must be positive, got {v}")));
    }
    let kind = row_kind(level, r, n)?;
    let mut d = ArithDivisor::zero(level);
    match kind {
        RowKind::Horizontal => d.add_rational(Component::Horizontal { n, r }, q(1, 1))?,
        RowKind::NonSquare | RowKind::Vanishing => {}
        RowKind::SquareCusp | RowKind::ConstantTerm => {
            let g = cusp_constant_atom(level, r, n, v)?;
            for &m in &level.divisors {
                d.add_term(Component::CuspSection(m), g.clone())?;
            }
            if kind == RowKind::ConstantTerm {
                d.add_rational(Component::Hodge, q(-2, 1))?;
                for &p in &level.primes {
                    d.add_rational(Component::VertZero(p), q(-1, 1))?;
                }
                d.add_rational(Component::LogVN, q(-1, 1))?;
            }
        }
    }
    Ok(d)
}

/// One coefficient of the generating series.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    #[serde(serialize_with = "ser_rational")]
    pub n: Rational64,
    pub r: i64,
    pub discriminant: i64,
    pub kind: RowKind,
    pub degree: SymReal,
    pub value: f64,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    q: &Rational64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// All (n, r) with r in [0, 2N) and |n| <= n_max, in order of r then n.
pub fn series_indices(level: &Level, n_max: Rational64) -> Result<Vec<(Rational64, i64)>> {
    if n_max < Rational64::zero() {
        return Err(Error::InvalidArgument(format!("n_max must be >= 0, got {n_max}")));
    }
    let four_n = 4 * level.n as i64;
    let bound = (n_max * Rational64::from_integer(four_n)).floor().to_integer();
    let mut out = Vec::new();
    for r in 0..2 * level.n as i64 {
        for m in -bound..=bound {
            // n = m / 4N and D = -m must satisfy D = r^2 mod 4N
            if (-m - r * r).rem_euclid(four_n) == 0 {
                out.push((Rational64::new(m, four_n), r));
            }
        }
    }
    Ok(out)
}

/// deg Z(n, mu_r, v) for every row with |n| <= n_max.
pub fn degree_series(level: &Level, v: f64, n_max: Rational64) -> Result<Vec<DegreeRow>> {
    let mut rows = Vec::new();
    for (n, r) in series_indices(level, n_max)? {
        let z = assemble_z_hat(level, r, n, v)?;
        let deg = degree(&z)?;
        rows.push(DegreeRow {
            n,
            r,
            discriminant: discriminant_of(level.n as i64, r, n)?,
            kind: row_kind(level, r, n)?,
            value: deg.eval(Some(v))?,
            degree: deg,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerticalRow {
    #[serde(serialize_with = "ser_rational")]
    pub n: Rational64,
    pub r: i64,
    pub kind: RowKind,
    pub with_zero: SymReal,
    pub with_inf: SymReal,
    pub half_degree_log_p: SymReal,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerticalReport {
    pub level: u64,
    pub p: u64,
    pub v: f64,
    pub rows: Vec<VerticalRow>,
    pub all_hold: bool,
}

/// <Z, X_p^0> = <Z, X_p^inf> = (1/2) deg Z log p on every row with |n| <= n_max, exactly.
pub fn vertical_pairing_identity(
    level: &Level,
    p: u64,
    v: f64,
    n_max: Rational64,
) -> Result<VerticalReport> {
    if !level.primes.contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "p = {p} is not a prime divisor of the level {}",
            level.n
        )));
    }
    let x0 = ArithDivisor::component(level, Component::VertZero(p))?;
    let xinf = ArithDivisor::component(level, Component::VertInf(p))?;
    let mut rows = Vec::new();
    for (n, r) in series_indices(level, n_max)? {
        let z = assemble_z_hat(level, r, n, v)?;
        let with_zero = pair(&z, &x0)?;
        let with_inf = pair(&z, &xinf)?;
        let half = &degree(&z)?.scale(q(1, 2)) * &SymReal::log_p(p);
        let holds = (with_zero.clone() - half.clone()).is_zero()
            && (with_inf.clone() - half.clone()).is_zero();
        rows.push(VerticalRow {
            n,
            r,
            kind: row_kind(level, r, n)?,
            with_zero,
            with_inf,
            half_degree_log_p: half,
            holds,
        });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(VerticalReport { level: level.n, p, v, rows, all_hold })
}
