//! Vectors of the lattice L and its cosets L + mu_r.
//!
//! A vector of L + mu_r is w = [[w1, w2], [w3, -w1]] with w1 = b + r/2N, w2 = -a/N, w3 = c,
//! and Q(w) = N det(w) = a c - N w1^2. Its discriminant is D = -4N Q(w) = (2Nb + r)^2 - 4Nac.

use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVector {
    pub level: i64,
    /// coset index r in Z/2N, normalised to [0, 2N)
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl LatticeVector {
    pub fn new(level: i64, r: i64, a: i64, b: i64, c: i64) -> Self {
        let m = 2 * level;
        // absorb multiples of 2N from r into b
        let rr = r.rem_euclid(m);
        let shift = (r - rr) / m;
        LatticeVector { level, r: rr, a, b: b + shift, c }
    }

    /// 2N w1 = 2Nb + r.
    pub fn w1_num(&self) -> i64 {
        2 * self.level * self.b + self.r
    }

    pub fn discriminant(&self) -> i64 {
        let t = self.w1_num();
        t * t - 4 * self.level * self.a * self.c
    }

    /// Q(w) = -D/4N.
    pub fn norm(&self) -> Rational64 {
        Rational64::new(-self.discriminant(), 4 * self.level)
    }

    /// (w1, w2, w3) as floats.
    pub fn coords(&self) -> [f64; 3] {
        let n = self.level as f64;
        [
            self.w1_num() as f64 / (2.0 * n),
            -(self.a as f64) / n,
            self.c as f64,
        ]
    }

    /// The binary form [Nc, -(2Nb + r), a] with the same discriminant.
    pub fn form(&self) -> [i64; 3] {
        [self.level * self.c, -self.w1_num(), self.a]
    }

    /// -w lies in the coset -mu_r.
    pub fn neg(&self) -> Self {
        LatticeVector::new(self.level, -self.r, -self.a, -self.b, -self.c)
    }

    /// The point of the upper half-plane fixed by w, for D < 0 and c != 0.
    pub fn cm_point(&self) -> Option<Complex64> {
        let d = self.discriminant();
        if d >= 0 || self.c == 0 {
            return None;
        }
        let n = self.level as f64;
        let x = self.w1_num() as f64 / (2.0 * n * self.c as f64);
        let y = (-(d as f64)).sqrt() / (2.0 * n * (self.c as f64).abs());
        Some(Complex64::new(x, y))
    }

    /// Conjugation gamma^{-1} w gamma for gamma in SL_2(Z), returned as exact entries scaled by
    /// 2N: (2N w1, 2N w2, 2N w3).
    pub fn conjugate_scaled(&self, g: [i64; 4]) -> [i64; 3] {
        let n2 = 2 * self.level;
        let w1 = self.w1_num();
        let w2 = -2 * self.a;
        let w3 = n2 * self.c;
        conjugate_scaled_raw([w1, w2, w3], g)
    }
}

/// gamma^{-1} [[w1, w2], [w3, -w1]] gamma on integer entries.
pub fn conjugate_scaled_raw(w: [i64; 3], g: [i64; 4]) -> [i64; 3] {
    let [a, b, c, d] = g;
    let [w1, w2, w3] = w;
    // gamma^{-1} = [[d, -b], [-c, a]]
    // M = w gamma = [[w1 a + w2 c, w1 b + w2 d], [w3 a - w1 c, w3 b - w1 d]]
    let m00 = w1 * a + w2 * c;
    let m01 = w1 * b + w2 * d;
    let m10 = w3 * a - w1 * c;
    let m11 = w3 * b - w1 * d;
    // gamma^{-1} M
    let r00 = d * m00 - b * m10;
    let r01 = d * m01 - b * m11;
    let r10 = -c * m00 + a * m10;
    [r00, r01, r10]
}

/// Whether scaled entries (2N w1, 2N w2, 2N w3) describe a vector of L + mu_r.
pub fn in_coset_scaled(level: i64, r: i64, w: [i64; 3]) -> bool {
    let m = 2 * level;
    (w[0] - r).rem_euclid(m) == 0 && w[1].rem_euclid(2) == 0 && w[2].rem_euclid(m) == 0
}

/// D = -4Nn as an integer, with the congruence D = r^2 mod 4N checked.
pub fn discriminant_of(level: i64, r: i64, n: Rational64) -> Result<i64> {
    let d = n * Rational64::from_integer(-4 * level);
    if !d.is_integer() {
        return Err(Error::Congruence(format!(
            "n = {n} is not in (1/4N)Z for N = {level}"
        )));
    }
    let d = d.to_integer();
    if (d - r * r).rem_euclid(4 * level) != 0 {
        return Err(Error::Congruence(format!(
            "D = -4Nn = {d} is not congruent to r^2 = {} mod 4N = {}; n must lie in Q(mu_r) + Z = -{}/{} + Z",
            r * r,
            4 * level,
            r * r,
            4 * level
        )));
    }
    Ok(d)
}

/// All w in L + mu_r with Q(w) = n and |a|, |b|, |c| <= bound.
pub fn enumerate_vectors(level: i64, r: i64, n: Rational64, bound: i64) -> Result<Vec<LatticeVector>> {
    if bound <= 0 {
        return Err(Error::InvalidArgument("height bound must be positive".into()));
    }
    let d = discriminant_of(level, r, n)?;
    let r = r.rem_euclid(2 * level);
    let mut out = Vec::new();
    for b in -bound..=bound {
        let t = 2 * level * b + r;
        let rem = t * t - d;
        // 4N a c = rem
        if rem.rem_euclid(4 * level) != 0 {
            continue;
        }
        let ac = rem / (4 * level);
        if ac == 0 {
            for x in -bound..=bound {
                out.push(LatticeVector::new(level, r, x, b, 0));
                if x != 0 {
                    out.push(LatticeVector::new(level, r, 0, b, x));
                }
            }
            continue;
        }
        for c in 1..=bound {
            if ac % c != 0 {
                continue;
            }
            let a = ac / c;
            if a.abs() <= bound {
                out.push(LatticeVector::new(level, r, a, b, c));
                out.push(LatticeVector::new(level, r, -a, b, -c));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Does 2 mu_r lie in L, i.e. N | r?
pub fn two_mu_in_lattice(level: i64, r: i64) -> bool {
    r.rem_euclid(level) == 0
}

/// Q(mu_r) = -r^2/4N modulo 1, normalised to [0, 1).
pub fn q_of_mu(level: i64, r: i64) -> Rational64 {
    let q = Rational64::new(-r * r, 4 * level);
    q - q.floor()
}

/// (mu_r, mu_s) = -rs/2N modulo 1.
pub fn bilinear_mu(level: i64, r: i64, s: i64) -> Rational64 {
    let q = Rational64::new(-r * s, 2 * level);
    q - q.floor()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
