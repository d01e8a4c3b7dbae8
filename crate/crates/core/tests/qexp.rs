use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use std::f64::consts::PI;
use x0n::numtheory::Level;
use x0n::qexp::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Naive oracle: multiply out (1 - q^n)^{e} factor by factor with i128 polynomials.
fn naive_product(e: impl Fn(u64) -> i64, order: usize) -> Vec<i128> {
    let mut p = vec![0i128; order];
    p[0] = 1;
    for n in 1..order {
        let k = e(n as u64);
        for _ in 0..k.abs() {
            if k > 0 {
                for i in (n..order).rev() {
                    p[i] -= p[i - n];
                }
            } else {
                // divide by (1 - q^n): multiply by 1 + q^n + q^{2n} + ...
                for i in n..order {
                    p[i] += p[i - n];
                }
            }
        }
    }
    p
}

#[test]
fn delta_matches_naive_oracle() {
    let d = ramanujan_delta(30).unwrap();
    let oracle = naive_product(|_| 24, 30);
    for (i, c) in d.coeffs().iter().enumerate().take(29) {
        assert_eq!(c.to_i128().unwrap(), oracle[i], "coefficient {i}");
    }
}

#[test]
fn product_engine_matches_oracle_with_negative_exponents() {
    let e = |n: u64| 24 * x0n::numtheory::ramanujan_sum(6, n as i64);
    let s = product_with_exponents(&e, 40);
    let oracle = naive_product(e, 40);
    for (i, c) in s.coeffs().iter().enumerate() {
        assert_eq!(c.to_i128().unwrap(), oracle[i]);
    }
}

#[test]
fn empty_product_is_one() {
    let s = product_with_exponents(&|_| 0, 10);
    assert_eq!(s, PowerSeries::one(10));
}

#[test]
fn dual_construction_small_levels() {
    for n in [1u64, 2, 3, 5, 6, 7, 10, 11, 14, 15] {
        let l = Level::new(n).unwrap();
        let d = delta_n(&l, 120).unwrap();
        assert!(d.series.is_integral());
        assert_eq!(d.series.lead(), &int(delta_n_leading_exponent(&l)));
    }
    let l2 = Level::new(2).unwrap();
    assert_eq!(delta_n(&l2, 10).unwrap().series.lead(), &int(3));
    let l6 = Level::new(6).unwrap();
    assert_eq!(delta_n(&l6, 10).unwrap().series.lead(), &int(24));
}

#[test]
fn level_two_is_explicit_quotient() {
    let l = Level::new(2).unwrap();
    let d = delta_n(&l, 60).unwrap().series;
    let delta = ramanujan_delta(80).unwrap();
    let delta2 = delta.substitute(&int(2)).refine(2);
    let q = delta.truncate(60).inverse().unwrap().mul(&delta2.truncate(60).pow(2).unwrap()).unwrap();
    assert_eq!(q.truncate(d.order()).coeffs()[..50], d.coeffs()[..50]);
    assert_eq!(q.lead(), d.lead());
}

/// eta(i) = Gamma(1/4) / (2 pi^{3/4}).
#[test]
fn petersson_norm_of_delta_at_i() {
    let gamma_quarter = 3.625_609_908_221_908_3_f64;
    let eta_i = gamma_quarter / (2.0 * PI.powf(0.75));
    let d = ramanujan_delta(40).unwrap();
    let z = Complex64::new(0.0, 1.0);
    let v = d.eval_at(z).unwrap();
    assert!((v.value().norm().ln() - 24.0 * eta_i.ln()).abs() < 1e-12);
    let pn = d.petersson_log_norm(12.0, z).unwrap();
    let c = x0n::analytic::consts::PETERSSON_C;
    let want = 24.0 * eta_i.ln() + 6.0 * (4.0 * PI * (-c).exp()).ln();
    assert!((pn - want).abs() < 1e-12);
}

#[test]
fn constant_series_evaluates_to_one() {
    let v = PowerSeries::one(3).eval_at(Complex64::new(0.3, 0.7)).unwrap();
    assert!((v.value() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn precision_failure_near_real_axis() {
    let d = ramanujan_delta(10).unwrap();
    assert!(matches!(
        d.eval_at(Complex64::new(0.1, 0.01)),
        Err(x0n::Error::Precision(_))
    ));
    let dn = delta_n(&Level::new(6).unwrap(), 10).unwrap();
    assert!(dn.eval(Complex64::new(0.1, 0.05)).is_err());
}

/// Numerical Atkin-Lehner check: (Delta_N |_k W_Q)(z) = C_Q prod Delta((t/t0)(Q/t0) z)^{a(t)}(z),
/// with W_Q = [[Q a, b], [N c, Q d]] of determinant Q.
#[test]
fn atkin_lehner_slash_numerically() {
    for (n, q) in [(2u64, 2u64), (3, 3), (6, 2), (6, 3), (6, 6), (10, 5), (5, 5)] {
        let l = Level::new(n).unwrap();
        let (a, b, c, d) = atkin_lehner_matrix(n as i64, q as i64);
        let det = (q as i64 * a) * (q as i64 * d) - b * (n as i64 * c);
        assert_eq!(det, q as i64);
        let dq = delta_quotient_of_level(&l);
        let (cq, img) = dq.atkin_lehner(n, q).unwrap();
        let k = dq.weight() as f64;
        for z in [Complex64::new(0.1, 0.9), Complex64::new(-0.23, 1.4)] {
            let m00 = (q as i64 * a) as f64;
            let m10 = (n as i64 * c) as f64;
            let m11 = (q as i64 * d) as f64;
            let wz = (z * m00 + b as f64) / (z * m10 + m11);
            let cz = z * m10 + m11;
            let lhs_log = dq.eval_product(wz).ln() + (q as f64).ln() * k / 2.0 - cz.ln() * k;
            let rhs_log = img.eval_product(z).ln() + cq.to_f64().unwrap().ln();
            let diff = (lhs_log - rhs_log).re;
            assert!(diff.abs() < 1e-9, "N={n} Q={q}: log-modulus differs by {diff}");
        }
    }
}

fn atkin_lehner_matrix(n: i64, q: i64) -> (i64, i64, i64, i64) {
    // Q a d - (N/Q) b c = 1
    let m = n / q;
    for a in 1..50 {
        for d in 1..50 {
            let t = q * a * d - 1;
            if t % m == 0 {
                let bc = t / m;
                if bc == 0 {
                    return (a, 0, 0, d);
                }
                return (a, bc, 1, d);
            }
        }
    }
    unreachable!()
}

#[test]
fn atkin_lehner_examples() {
    let l6 = Level::new(6).unwrap();
    let (c, s) = atkin_lehner(&l6, 1, 10).unwrap();
    assert_eq!(c, BigRational::one());
    assert_eq!(s.lead(), &int(24));
    let l2 = Level::new(2).unwrap();
    let (c2, s2) = atkin_lehner(&l2, 2, 10).unwrap();
    assert_eq!(s2.lead(), &int(0));
    assert_eq!(padic_valuation(&c2, 2), -18);
    assert!(atkin_lehner(&l6, 4, 10).is_err());
    let (c0, z) = delta_n_zero(&Level::new(1).unwrap(), 5).unwrap();
    assert!(c0.is_one());
    assert_eq!(z, ramanujan_delta(5).unwrap());
}

#[test]
fn vanishing_concentrated_at_infinity() {
    for n in [1u64, 2, 3, 5, 6, 10, 15, 30] {
        let l = Level::new(n).unwrap();
        let dq = delta_quotient_of_level(&l);
        for &q in &l.divisors {
            let (_, img) = dq.atkin_lehner(n, q).unwrap();
            let want = if q == 1 { delta_n_leading_exponent(&l) } else { 0 };
            assert_eq!(img.leading_exponent(), want);
        }
        assert_eq!(delta_n_zero_order_at_zero(&l).unwrap(), delta_n_leading_exponent(&l));
    }
}

#[test]
fn dump_is_exact() {
    let d = ramanujan_delta(3).unwrap();
    let dump = SeriesDump::from(&d);
    assert_eq!(dump.coeffs, vec!["1", "-24", "252"]);
    assert_eq!(dump.lead, "1");
    let rows = d.csv_rows();
    assert_eq!(rows[1], ("2".into(), "-24".into(), "1".into()));
}

fn small_series() -> impl Strategy<Value = PowerSeries> {
    (prop::collection::vec(-20i64..20, 12), 1i64..4).prop_map(|(mut c, c0)| {
        c[0] = c0;
        PowerSeries::new(
            BigRational::zero(),
            BigRational::one(),
            c.into_iter().map(int).collect(),
        )
    })
}

proptest! {
    #[test]
    fn ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let one = a.mul(&a.inverse().unwrap()).unwrap();
        prop_assert_eq!(one, PowerSeries::one(a.order()));
        prop_assert_eq!(a.pow(3).unwrap(), a.mul(&a).unwrap().mul(&a).unwrap());
        prop_assert_eq!(a.pow(-2).unwrap(), a.inverse().unwrap().pow(2).unwrap());
        let sum = a.add(&b).unwrap().sub(&b).unwrap();
        prop_assert_eq!(sum.coeffs(), a.coeffs());
    }
}
