//! Elementary arithmetic kernels: factorisation, Moebius, Euler phi, Ramanujan sums and the
//! exponent system a_N(t) of the generalized Delta function.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::Serialize;

/// Distinct primes of `n` with multiplicity, by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize expects n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Sorted positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut d = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = d.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            d.extend(cur.iter().map(|x| x * pk));
        }
    }
    d.sort_unstable();
    d
}

/// Ramanujan sum C_N(n) via Kluyver's formula sum_{r | gcd(N,n)} mu(N/r) r.
pub fn ramanujan_sum(big_n: u64, n: i64) -> i64 {
    let g = big_n.gcd(&n.unsigned_abs());
    // gcd(N, 0) = N
    let g = if n == 0 { big_n } else { g };
    divisors(g)
        .into_iter()
        .map(|r| moebius(big_n / r) * r as i64)
        .sum()
}

/// A square-free level with cached invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub n: u64,
    pub primes: Vec<u64>,
    pub phi: u64,
    /// Index of Gamma_0(N) in SL_2(Z): N prod (1 + 1/p).
    pub index: u64,
    pub divisors: Vec<u64>,
}

impl Level {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if !is_squarefree(n) {
            return Err(Error::NotSquareFree(n));
        }
        let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
        let index = primes.iter().fold(n, |acc, &p| acc / p * (p + 1));
        Ok(Level {
            n,
            phi: euler_phi(n),
            index,
            divisors: divisors(n),
            primes,
        })
    }

    /// Weight k = 12 phi(N) of Delta_N.
    pub fn weight(&self) -> u64 {
        12 * self.phi
    }

    pub fn num_cusps(&self) -> usize {
        self.divisors.len()
    }

    pub fn check_divisor(&self, t: u64) -> Result<()> {
        if t == 0 || self.n % t != 0 {
            Err(Error::NotADivisor { t, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// a_N(t) = sum_{r | t} mu(t/r) mu(N/r) phi(N)/phi(N/r), for square-free N and t | N.
pub fn delta_exponent(level: &Level, t: u64) -> Result<i64> {
    level.check_divisor(t)?;
    let big_n = level.n;
    let mut acc = 0i64;
    for r in divisors(t) {
        let num = level.phi;
        let den = euler_phi(big_n / r);
        if num % den != 0 {
            return Err(Error::Consistency(format!(
                "phi({big_n})/phi({}) is not integral",
                big_n / r
            )));
        }
        acc += moebius(t / r) * moebius(big_n / r) * (num / den) as i64;
    }
    Ok(acc)
}

/// All exponents a_N(t), t | N, in divisor order.
pub fn delta_exponents(level: &Level) -> Vec<(u64, i64)> {
    level
        .divisors
        .iter()
        .map(|&t| (t, delta_exponent(level, t).expect("t divides N")))
        .collect()
}

/// Solve sum_{t | r} a(t) = (phi(N)/phi(N/r)) mu(N/r) for all r | N by Moebius inversion.
/// Used as an independent route to the exponents.
pub fn delta_exponents_by_inversion(level: &Level) -> Vec<(u64, i64)> {
    let rhs = |r: u64| -> i64 {
        (level.phi / euler_phi(level.n / r)) as i64 * moebius(level.n / r)
    };
    level
        .divisors
        .iter()
        .map(|&t| {
            let a: i64 = divisors(t).into_iter().map(|r| moebius(t / r) * rhs(r)).sum();
            (t, a)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentIdentities {
    pub level: u64,
    /// sum a_N(t)
    pub sum: i64,
    /// sum t a_N(t)
    pub weighted_sum: i64,
    /// sum a_N(t)/t as an exact fraction (numerator, denominator N)
    pub reciprocal_sum_numerator: i64,
    pub expected_sum: i64,
    pub expected_weighted_sum: i64,
    pub ok: bool,
}

/// The three sums of a_N(t) and their expected values.
pub fn exponent_identities(level: &Level) -> ExponentIdentities {
    let ex = delta_exponents(level);
    let sum: i64 = ex.iter().map(|&(_, a)| a).sum();
    let weighted_sum: i64 = ex.iter().map(|&(t, a)| t as i64 * a).sum();
    // sum a(t)/t = (1/N) sum a(t) N/t
    let recip: i64 = ex.iter().map(|&(t, a)| (level.n / t) as i64 * a).sum();
    let expected_sum = level.phi as i64;
    let expected_weighted_sum = (level.phi * level.index) as i64;
    let recip_ok = if level.n == 1 { recip == 1 } else { recip == 0 };
    ExponentIdentities {
        level: level.n,
        sum,
        weighted_sum,
        reciprocal_sum_numerator: recip,
        expected_sum,
        expected_weighted_sum,
        ok: sum == expected_sum && weighted_sum == expected_weighted_sum && recip_ok,
    }
}

/// Square-free integers in [1, max].
pub fn squarefree_up_to(max: u64) -> impl Iterator<Item = u64> {
    (1..=max).filter(|&n| is_squarefree(n))
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s >= 0 && s * s == n)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: i64, p: u64) -> u32 {
    assert!(n != 0);
    let p = p as i64;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

/// Kronecker symbol (a / n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> i64 {
    assert!(n >= 1, "kronecker expects n >= 1");
    let mut out = 1i64;
    for (p, e) in factorize(n) {
        let chi: i64 = if p == 2 {
            match a.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            let r = a.rem_euclid(p as i64) as u64;
            if r == 0 {
                0
            } else if pow_mod(r, (p - 1) / 2, p) == 1 {
                1
            } else {
                -1
            }
        };
        out *= chi.pow(e);
    }
    out
}

/// Write a nonzero discriminant d (d = 0 or 1 mod 4) as d0 f^2 with d0 fundamental and f >= 1.
pub fn fundamental_discriminant(d: i64) -> Result<(i64, i64)> {
    if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidArgument(format!("{d} is not a nonzero discriminant")));
    }
    let mut core = d.signum();
    let mut f = 1i64;
    for (p, e) in factorize(d.unsigned_abs()) {
        let p = p as i64;
        if e % 2 == 1 {
            core *= p;
        }
        f *= p.pow(e / 2);
    }
    if core.rem_euclid(4) == 1 {
        Ok((core, f))
    } else {
        // d = core f^2 with core = 2, 3 mod 4 forces f even
        Ok((4 * core, f / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_and_discriminants() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(12, 9), 0);
        assert_eq!(fundamental_discriminant(-12).unwrap(), (-3, 2));
        assert_eq!(fundamental_discriminant(-16).unwrap(), (-4, 2));
        assert_eq!(fundamental_discriminant(8).unwrap(), (8, 1));
        assert_eq!(fundamental_discriminant(9).unwrap(), (1, 3));
        assert_eq!(fundamental_discriminant(-4).unwrap(), (-4, 1));
        assert!(fundamental_discriminant(6).is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(ramanujan_sum(6, 1), 1);
        assert_eq!(ramanujan_sum(6, 2), -1);
        assert_eq!(ramanujan_sum(6, 6), 2);
        assert_eq!(ramanujan_sum(6, 0), 2);
    }

    #[test]
    fn exponents_level6() {
        let l = Level::new(6).unwrap();
        assert_eq!(delta_exponents(&l), vec![(1, 1), (2, -2), (3, -3), (6, 6)]);
        assert!(delta_exponent(&l, 4).is_err());
    }

    #[test]
    fn rejects_non_squarefree() {
        assert_eq!(Level::new(12), Err(Error::NotSquareFree(12)));
    }
}
