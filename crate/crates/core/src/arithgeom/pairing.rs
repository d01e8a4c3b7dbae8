//! The closed intersection-pairing table on the component basis and the degree map.
//!
//! Only pairs with a known closed form are encoded. Every other request returns
//! [`Error::UndeterminedPairing`] instead of a guessed value.

use super::divisor::{ArithDivisor, Component};
use super::symbolic::{Atom, SymReal};
use crate::error::{Error, Result};
use crate::lattice::forms::heegner_degree;
use crate::numtheory::Level;
use num_rational::Rational64;
use serde::Serialize;

fn q(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

/// r = [SL_2(Z) : Gamma_0(N)] as a rational.
fn index(level: &Level) -> Rational64 {
    Rational64::from_integer(level.index as i64)
}

/// <X_p^inf, X_p^0> = r (p - 1) / (12 (p + 1)) log p.
pub fn vertical_cross_term(level: &Level, p: u64) -> SymReal {
    let p = p as i64;
    SymReal::log_p(p as u64).scale(index(level) * q(p - 1, 12 * (p + 1)))
}

/// <omega, omega> = -r/24 + r zeta'(-1) + r C / 12.
pub fn hodge_self_intersection(level: &Level) -> SymReal {
    let r = index(level);
    SymReal::rational(-r * q(1, 24))
        + SymReal::atom(Atom::ZetaPrimeM1).scale(r)
        + SymReal::atom(Atom::C).scale(r * q(1, 12))
}

/// Degree of a basis component: 1 on cusps, 0 on vertical and archimedean classes,
/// r/12 on the Hodge bundle and the Heegner degree on Z(n, mu).
pub fn component_degree(level: &Level, c: &Component) -> Result<Rational64> {
    Ok(match c.clone().validated(level)? {
        Component::CuspSection(_) => Rational64::from_integer(1),
        Component::VertInf(_) | Component::VertZero(_) => Rational64::from_integer(0),
        Component::Hodge => index(level) * q(1, 12),
        Component::Horizontal { n, r } => heegner_degree(level.n as i64, r, n)?,
        Component::Const | Component::LogVN => Rational64::from_integer(0),
    })
}

/// deg of a divisor, extended linearly.
pub fn degree(d: &ArithDivisor) -> Result<SymReal> {
    let mut acc = SymReal::zero();
    for (c, coeff) in d.terms() {
        acc += coeff.scale(component_degree(&d.level, c)?);
    }
    Ok(acc)
}

/// The encoded value of <a, b> on basis components.
pub fn pair_basis(level: &Level, a: &Component, b: &Component) -> Result<SymReal> {
    use Component::*;
    let a = a.clone().validated(level)?;
    let b = b.clone().validated(level)?;
    let undetermined = || Error::UndeterminedPairing(a.to_string(), b.to_string());
    let log_v_over_n = SymReal::atom(Atom::LogV) - SymReal::log_of_squarefree(&level.primes);
    let half_degree = |c: &Component| -> Result<Rational64> {
        Ok(component_degree(level, c)? * q(1, 2))
    };
    let out = match (&a, &b) {
        // fibre components at p | N
        (VertInf(p), VertZero(p2)) | (VertZero(p), VertInf(p2)) => {
            if p == p2 {
                vertical_cross_term(level, *p)
            } else {
                SymReal::zero()
            }
        }
        (VertInf(p), VertInf(p2)) | (VertZero(p), VertZero(p2)) => {
            if p == p2 {
                -vertical_cross_term(level, *p)
            } else {
                SymReal::zero()
            }
        }
        // a cusp section meets exactly one component of each bad fibre, transversally
        (CuspSection(m), VertInf(p)) | (VertInf(p), CuspSection(m)) => {
            if m % p == 0 {
                SymReal::log_p(*p)
            } else {
                SymReal::zero()
            }
        }
        (CuspSection(m), VertZero(p)) | (VertZero(p), CuspSection(m)) => {
            if m % p != 0 {
                SymReal::log_p(*p)
            } else {
                SymReal::zero()
            }
        }
        (CuspSection(m), CuspSection(m2)) => {
            if m == m2 {
                return Err(undetermined());
            }
            SymReal::zero()
        }
        // Hodge bundle against the fibres
        (Hodge, VertZero(p)) | (VertZero(p), Hodge) => {
            let pi = *p as i64;
            SymReal::log_p(*p).scale(index(level) * q(pi, 12 * (pi + 1)))
        }
        (Hodge, VertInf(p)) | (VertInf(p), Hodge) => {
            let pi = *p as i64;
            SymReal::log_p(*p).scale(index(level) * q(1, 12 * (pi + 1)))
        }
        (Hodge, Hodge) => hodge_self_intersection(level),
        // Heegner divisors: the fibre at p is met with multiplicity deg Z / 2 on each
        // component, since w_N swaps the two components and preserves Z
        (Horizontal { .. }, VertInf(p))
        | (Horizontal { .. }, VertZero(p))
        | (VertInf(p), Horizontal { .. })
        | (VertZero(p), Horizontal { .. }) => {
            let z = if matches!(a, Horizontal { .. }) { &a } else { &b };
            SymReal::log_p(*p).scale(half_degree(z)?)
        }
        // purely archimedean classes: <X, a(f)> = (f/2) deg X for constant f
        (Const, Const) | (Const, LogVN) | (LogVN, Const) | (LogVN, LogVN) => SymReal::zero(),
        (Const, x) | (x, Const) => SymReal::rational(half_degree(x)?),
        (LogVN, x) | (x, LogVN) => log_v_over_n.scale(half_degree(x)?),
        (Hodge, CuspSection(_))
        | (CuspSection(_), Hodge)
        | (Hodge, Horizontal { .. })
        | (Horizontal { .. }, Hodge)
        | (Horizontal { .. }, Horizontal { .. })
        | (Horizontal { .. }, CuspSection(_))
        | (CuspSection(_), Horizontal { .. }) => return Err(undetermined()),
    };
    Ok(out)
}

/// Bilinear extension of the table. Pairs whose coefficient product vanishes are skipped,
/// so an undetermined basis pair is an error only when it actually contributes.
pub fn pair(a: &ArithDivisor, b: &ArithDivisor) -> Result<SymReal> {
    if a.level.n != b.level.n {
        return Err(Error::InvalidArgument(format!(
            "cannot pair divisors on levels {} and {}",
            a.level.n, b.level.n
        )));
    }
    let mut acc = SymReal::zero();
    for (ca, qa) in a.terms() {
        for (cb, qb) in b.terms() {
            let w = qa * qb;
            if w.is_zero() {
                continue;
            }
            acc += &w * &pair_basis(&a.level, ca, cb)?;
        }
    }
    Ok(acc)
}

/// The finite part of the basis: cusps, fibre components, Hodge, Const and LogVN.
pub fn finite_basis(level: &Level) -> Vec<Component> {
    let mut out: Vec<Component> =
        level.divisors.iter().map(|&m| Component::CuspSection(m)).collect();
    for &p in &level.primes {
        out.push(Component::VertInf(p));
        out.push(Component::VertZero(p));
    }
    out.push(Component::Hodge);
    out.push(Component::Const);
    out.push(Component::LogVN);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub pair: [String; 2],
    /// None when the pair is not determined
    pub value: Option<SymReal>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingTable {
    pub level: u64,
    pub entries: Vec<TableEntry>,
}

/// Every unordered pair of the finite basis with its encoded value.
pub fn pairing_table(level: &Level) -> Result<PairingTable> {
    let basis = finite_basis(level);
    let mut entries = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let value = match pair_basis(level, a, b) {
                Ok(v) => Some(v),
                Err(Error::UndeterminedPairing(..)) => None,
                Err(e) => return Err(e),
            };
            entries.push(TableEntry { pair: [a.to_string(), b.to_string()], value });
        }
    }
    Ok(PairingTable { level: level.n, entries })
}
