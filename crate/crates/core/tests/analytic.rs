use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use x0n::analytic::consts::*;
use x0n::analytic::quad::{integrate, integrate_to_infinity};
use x0n::analytic::*;
use x0n::numtheory::Level;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn beta_special_values() {
    assert!((beta_s(1.0, 1.0).unwrap() - 0.219_383_9).abs() < 1e-7);
    let small = beta_s(1e-12, 1.5).unwrap();
    assert!((small - 2.0).abs() < 1e-5);
    for r in [0.01, 0.5, 3.0] {
        assert!(rel(beta_s(r, 1.5).unwrap(), beta_three_halves_erfc(r)) < 1e-9);
    }
    // beta_1(t) + log t -> -gamma
    for t in [1e-6, 1e-8] {
        let v = beta_s(t, 1.0).unwrap() + f64::ln(t);
        assert!((v + EULER_GAMMA).abs() < 10.0 * t);
    }
    assert!(beta_s(0.0, 1.0).is_err());
    assert!(beta_s(-1.0, 2.0).is_err());
    // decay to zero
    assert!(beta_s(50.0, 1.5).unwrap() < 1e-22);
}

#[test]
fn beta_closed_forms_match_quadrature() {
    for s in [0.5, 1.0, 1.5, 2.0, 2.7, -0.5] {
        for r in [0.1, 1.0, 5.0, 20.0] {
            let a = beta_s(r, s).unwrap();
            let b = beta_s_quadrature(r, s).unwrap();
            assert!(rel(a, b) < 1e-10, "s={s} r={r}: {a} vs {b}");
        }
    }
}

#[test]
fn beta_derivative_identity() {
    let h = 1e-5;
    for s in [1.0, 1.5, 2.0, 2.5] {
        for r in [0.3, 1.0, 3.0] {
            let d = (beta_s(r + h, s).unwrap() - beta_s(r - h, s).unwrap()) / (2.0 * h);
            assert!((d + beta_s(r, s - 1.0).unwrap()).abs() < 1e-5);
        }
    }
}

#[test]
fn whittaker_w_values() {
    for x in [0.1, 1.0, 7.5] {
        assert!((whittaker_w(x, 1.0, 1.0).unwrap().value - 1.0 / x).abs() < 1e-15);
    }
    // W(y, 2, 1) = int (1 + h) e^{-yh} dh = 1/y + 1/y^2
    let y = 1.7;
    assert!(rel(whittaker_w(y, 2.0, 1.0).unwrap().value, 1.0 / y + 1.0 / (y * y)) < 1e-12);
    assert!(whittaker_w(1.0, 1.0, 0.0).is_err());
    assert!(whittaker_w(0.0, 1.0, 1.0).is_err());
}

/// t_n(y, 2, 2) = int e(-nt) (t^2 + y^2)^{-2} dt = 2 pi^2 |n|^{3/2} y^{-3/2} K_{3/2}(2 pi |n| y),
/// K_{3/2}(x) = sqrt(pi/2x) e^{-x} (1 + 1/x).
#[test]
fn t_n_bessel_oracle() {
    for n in [1i64, 2, 5] {
        for y in [0.4, 1.0, 2.0] {
            let x = 2.0 * PI * n as f64 * y;
            let k32 = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
            let want = 2.0 * PI * PI * (n as f64).powf(1.5) * y.powf(-1.5) * k32;
            let got = whittaker_t(n, y, 2.0, 2.0).unwrap();
            assert!(rel(got.re, want) < 1e-10, "n={n} y={y}");
            assert!(got.im.abs() < 1e-15);
            let neg = whittaker_t(-n, y, 2.0, 2.0).unwrap();
            assert!((neg - got).norm() < 1e-15 * got.norm());
        }
    }
}

#[test]
fn t_0_matches_quadrature() {
    let (s, y) = (1.3, 0.8);
    let f = |t: f64| 2.0 * (t * t + y * y).powf(-s);
    let q = integrate_to_infinity(&f, 0.0, 1e-13).unwrap();
    let t0 = whittaker_t(0, y, s, s).unwrap().re;
    assert!(rel(t0, q.value) < 1e-8);
}

#[test]
fn zeta_and_constants() {
    let z6 = zeta_level(2.0, &[2, 3]).unwrap();
    assert!((z6 - PI * PI / 6.0 * 0.75 * (8.0 / 9.0)).abs() < 1e-14);
    let h = 1e-3;
    let f = |t: f64| zeta(-1.0 + t).unwrap();
    let d = (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h);
    assert!((d - ZETA_PRIME_MINUS_ONE).abs() < 1e-9);
    // zeta*(s) Laurent expansion at 1: 1/(s-1) - (log 4 pi - gamma)/2
    let e = 1e-5;
    let v = zeta_star(1.0 + e).unwrap() - 1.0 / e;
    assert!((v + (log_4pi() - EULER_GAMMA) / 2.0).abs() < 1e-4);
    assert!(zeta(1.0).is_err());
    let q = integrate(&|x: f64| x.sin(), 0.0, PI, 1e-14).unwrap();
    assert!((q.value - 2.0).abs() < 1e-13);
}

#[test]
fn lattice_sum_leading_terms() {
    let l = Level::new(3).unwrap();
    let z = Complex64::new(0.1, 2.0);
    // only (0, +-1) within radius 1.5 since N y = 6
    let one = eisenstein_lattice_sum(&l, z, 2.0, 1.5).unwrap();
    assert!(rel(one.value, z.im.powi(2)) < 1e-14);
    // a big radius approaches the accelerated sum within a few tail estimates
    let big = eisenstein_lattice_sum(&l, Complex64::new(0.1, 0.9), 2.0, 400.0).unwrap();
    let acc = eisenstein_direct(&l, Complex64::new(0.1, 0.9), 2.0).unwrap();
    assert!((big.value - acc.value).abs() < 3.0 * big.tail_bound);
    assert!(eisenstein_lattice_sum(&l, z, 1.0, 10.0).is_err());
}

#[test]
fn direct_and_fourier_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [1u64, 2, 3, 6] {
        let l = Level::new(n).unwrap();
        for s in [1.5, 2.0, 3.0] {
            for _ in 0..20 {
                let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.4..2.0));
                let a = eisenstein_direct(&l, z, s).unwrap();
                let b = eisenstein_fourier(&l, z, s).unwrap();
                assert!(rel(a.value, b.value) < 1e-7, "N={n} s={s} z={z}: {} vs {}", a.value, b.value);
            }
        }
    }
    let l1 = Level::new(1).unwrap();
    let i = Complex64::new(0.0, 1.0);
    let a = eisenstein_normalized(&l1, i, 2.0).unwrap().value;
    let b = eisenstein_fourier(&l1, i, 2.0).unwrap().value * normalization(&l1, 2.0).unwrap();
    assert!((a - b).abs() < 1e-8);
}

#[test]
fn fourier_coefficients_even() {
    let l = Level::new(6).unwrap();
    for k in 1..6 {
        let a = fourier_coefficient(&l, k, 0.7, 2.0).unwrap();
        let b = fourier_coefficient(&l, -k, 0.7, 2.0).unwrap();
        assert!((a - b).abs() <= 1e-15 * a.abs());
    }
}

#[test]
fn kronecker_limit_formula() {
    let l1 = Level::new(1).unwrap();
    let p = kronecker_limit_pair(&l1, Complex64::new(0.0, 1.0)).unwrap();
    assert!(p.residual < 1e-8, "{p:?}");
    let l6 = Level::new(6).unwrap();
    let p = kronecker_limit_pair(&l6, Complex64::new(0.3, 1.1)).unwrap();
    assert!(p.residual < 1e-6, "{p:?}");
    let q = kronecker_limit_pair(&l6, Complex64::new(1.3, 1.1)).unwrap();
    assert!((p.rhs - q.rhs).abs() < 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1u64, 2, 3, 5, 6] {
        let l = Level::new(n).unwrap();
        for _ in 0..10 {
            let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.0));
            assert!(kronecker_limit_pair(&l, z).unwrap().residual < 1e-6);
        }
    }
}

#[test]
fn kronecker_limit_precision_failure() {
    let l = Level::new(6).unwrap();
    let d = x0n::qexp::delta_n(&l, 8).unwrap();
    assert!(matches!(
        kronecker_limit_pair_with(&d, Complex64::new(0.0, 0.05)),
        Err(x0n::Error::Precision(_))
    ));
}

#[test]
fn scattering_constants() {
    let l1 = Level::new(1).unwrap();
    let c = scattering_laurent(&l1);
    assert!((c.c_minus1 - 3.0 / PI).abs() < 1e-15);
    assert!((c.c0 - 0.867_132_427_720_664_6).abs() < 1e-9);
    // values from an independent high-precision evaluation of the Laurent expansion of Phi
    let frozen = [(2u64, -0.299_317_457_833_516_06), (6, -0.271_535_137_776_787_64)];
    for (n, want) in frozen {
        assert!((scattering_laurent(&Level::new(n).unwrap()).c0 - want).abs() < 1e-9);
    }
    for n in [1u64, 2, 3, 5, 6, 10] {
        let l = Level::new(n).unwrap();
        let c = scattering_laurent(&l);
        // residue by Richardson extrapolation of h Phi(1 + h)
        let h = 1e-4;
        let r = |h: f64| h * scattering_phi(&l, 1.0 + h).unwrap();
        let res = 2.0 * r(h) - r(2.0 * h);
        assert!(rel(res, c.c_minus1) < 1e-6);
        // constant term from the symmetric average
        let h = 1e-4;
        let c0 = (scattering_phi(&l, 1.0 + h).unwrap() + scattering_phi(&l, 1.0 - h).unwrap()) / 2.0;
        assert!((c0 - c.c0).abs() < 1e-6, "N={n}: {c0} vs {}", c.c0);
    }
}

#[test]
fn eisenstein_anywhere_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [1u64, 2, 3, 6] {
        let l = Level::new(n).unwrap();
        for s in [1.5, 2.0, 3.0] {
            for _ in 0..10 {
                let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.3..2.0));
                let a = eisenstein_direct(&l, z, s).unwrap().value;
                let b = eisenstein_at(&l, z, s).unwrap().value;
                assert!(rel(a, b) < 1e-9, "N={n} s={s} z={z}: {a} vs {b}");
            }
        }
        // invariance under Gamma_0(N)
        let z = Complex64::new(0.17, 0.8);
        let g = [1i64, 0, n as i64, 1];
        let gz = (z * g[0] as f64 + g[1] as f64) / (z * g[2] as f64 + g[3] as f64);
        let a = eisenstein_at(&l, z, 2.0).unwrap().value;
        let b = eisenstein_at(&l, gz, 2.0).unwrap().value;
        assert!(rel(a, b) < 1e-11);
    }
}
