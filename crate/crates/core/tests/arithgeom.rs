use x0n::arithgeom::*;
use x0n::numtheory::Level;
use x0n::Error;
use num_rational::Rational64;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational64 {
    Rational64::new(a, b)
}

fn lv(n: u64) -> Level {
    Level::new(n).unwrap()
}

/// Hurwitz class number H(D) for D > 0 by enumerating reduced positive definite forms of
/// discriminant -D, with weight 1/2 for multiples of x^2 + y^2 and 1/3 for x^2 + xy + y^2.
fn hurwitz_oracle(big_d: i64) -> Rational64 {
    let mut h = Rational64::from_integer(0);
    let mut a = 1;
    while 3 * a * a <= big_d {
        for b in -a + 1..=a {
            let num = b * b + big_d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            let w = if a == b.abs() && b == a && c == a {
                q(1, 3)
            } else if b == 0 && a == c {
                q(1, 2)
            } else {
                q(1, 1)
            };
            h += w;
        }
        a += 1;
    }
    h
}

#[test]
fn hurwitz_oracle_values() {
    assert_eq!(hurwitz_oracle(3), q(1, 3));
    assert_eq!(hurwitz_oracle(4), q(1, 2));
    assert_eq!(hurwitz_oracle(7), q(1, 1));
    assert_eq!(hurwitz_oracle(8), q(1, 1));
    assert_eq!(hurwitz_oracle(12), q(4, 3));
    assert_eq!(hurwitz_oracle(23), q(3, 1));
}

#[test]
fn vertical_cross_term_examples() {
    let l = lv(5);
    let v = pair_basis(&l, &Component::VertInf(5), &Component::VertZero(5)).unwrap();
    assert_eq!(v, SymReal::log_p(5).scale(q(1, 3)));
    let vi = pair_basis(&l, &Component::VertInf(5), &Component::VertInf(5)).unwrap();
    assert_eq!(vi, -v.clone());
    let v0 = pair_basis(&l, &Component::VertZero(5), &Component::VertZero(5)).unwrap();
    assert_eq!(v0, vi);
    for n in [2u64, 3, 5, 6, 10, 30] {
        let l = lv(n);
        for &p in &l.primes {
            let want = SymReal::log_p(p)
                .scale(Rational64::from_integer(l.index as i64) * q(p as i64 - 1, 12 * (p as i64 + 1)));
            let got = pair_basis(&l, &Component::VertInf(p), &Component::VertZero(p)).unwrap();
            assert_eq!(got, want, "N={n} p={p}");
        }
    }
}

#[test]
fn hodge_self_intersection_at_level_one() {
    let l = lv(1);
    let w = pair_basis(&l, &Component::Hodge, &Component::Hodge).unwrap();
    assert_eq!(w.rational_part(), q(-1, 24));
    assert_eq!(w.coeff(&[Atom::ZetaPrimeM1]), q(1, 1));
    assert_eq!(w.coeff(&[Atom::C]), q(1, 12));
    assert!((w.eval(None).unwrap() - -0.077_577_8).abs() < 1e-6);
}

#[test]
fn delta_divisors() {
    let d = divisor_of_delta_n(&lv(1)).unwrap();
    assert_eq!(d.to_string(), "(1)*P(1)");
    let d = divisor_of_delta_n(&lv(2)).unwrap();
    assert_eq!(d.coefficient(&Component::CuspSection(2)), SymReal::integer(3));
    assert_eq!(d.coefficient(&Component::VertZero(2)), SymReal::integer(-24));
    assert_eq!(d.terms().count(), 2);
    // degree r k / 12 for both
    for n in [1u64, 2, 6, 30] {
        let l = lv(n);
        let want = SymReal::integer((l.index * l.weight() / 12) as i64);
        assert_eq!(degree(&divisor_of_delta_n(&l).unwrap()).unwrap(), want);
        assert_eq!(degree(&divisor_of_delta_n_zero(&l).unwrap()).unwrap(), want);
    }
}

#[test]
fn both_delta_divisors_give_the_hodge_pairing_on_fibres() {
    for n in [2u64, 3, 6, 10, 30] {
        let l = lv(n);
        let k = SymReal::integer(l.weight() as i64);
        let a = divisor_of_delta_n(&l).unwrap();
        let b = divisor_of_delta_n_zero(&l).unwrap();
        for &p in &l.primes {
            for c in [Component::VertInf(p), Component::VertZero(p)] {
                let x = ArithDivisor::component(&l, c.clone()).unwrap();
                let w = &k * &pair_basis(&l, &Component::Hodge, &c).unwrap();
                assert_eq!(pair(&a, &x).unwrap(), w, "N={n} {c}");
                assert_eq!(pair(&b, &x).unwrap(), w, "N={n} {c}");
                // the arithmetic classes differ from the horizontal parts only by finite cusps
                let dh = delta_hat(&l).unwrap();
                let dh0 = delta_hat_zero(&l).unwrap();
                let rk12 = SymReal::integer((l.index * l.weight() / 12) as i64);
                let pinf = pair_basis(&l, &Component::CuspSection(n), &c).unwrap();
                let p0 = pair_basis(&l, &Component::CuspSection(1), &c).unwrap();
                assert_eq!(pair(&dh, &x).unwrap(), &rk12 * &pinf);
                assert_eq!(pair(&dh0, &x).unwrap(), &rk12 * &p0);
            }
        }
    }
}

#[test]
fn delta_hat_self_intersection_difference() {
    for n in [1u64, 2, 3, 5, 6, 10, 30] {
        let l = lv(n);
        let k = l.weight() as i64;
        let r = l.index as i64;
        let dh = delta_hat(&l).unwrap();
        let lhs = pair(&dh, &dh).unwrap() - hodge_self_intersection(&l).scale(q(k * k, 1));
        let mut rhs = SymReal::zero();
        for &p in &l.primes {
            let p = p as i64;
            rhs += SymReal::log_p(p as u64).scale(q(k * k * r, 12) * q(p * p, p * p - 1));
        }
        assert_eq!(lhs, rhs, "N={n}");
    }
}

#[test]
fn undetermined_pairs_are_rejected() {
    let l = lv(6);
    let p = ArithDivisor::component(&l, Component::CuspSection(6)).unwrap();
    assert!(matches!(pair(&p, &p), Err(Error::UndeterminedPairing(..))));
    let w = ArithDivisor::component(&l, Component::Hodge).unwrap();
    assert!(matches!(pair(&p, &w), Err(Error::UndeterminedPairing(..))));
    let z = parse_divisor(&l, "Z(23/24,1)").unwrap();
    assert!(matches!(pair(&z, &z), Err(Error::UndeterminedPairing(..))));
    // distinct cusps are orthogonal
    let p1 = ArithDivisor::component(&l, Component::CuspSection(1)).unwrap();
    assert!(pair(&p, &p1).unwrap().is_zero());
    let t = pairing_table(&l).unwrap();
    let undetermined = t.entries.iter().filter(|e| e.value.is_none()).count();
    // 4 cusp self-pairs and 4 cusp-Hodge pairs
    assert_eq!(undetermined, 8);
}

#[test]
fn degree_is_twice_the_constant_pairing() {
    for n in [1u64, 2, 6, 30] {
        let l = lv(n);
        let one = ArithDivisor::component(&l, Component::Const).unwrap();
        let mut basis = finite_basis(&l);
        for (m, r) in series_indices(&l, q(2, 1)).unwrap() {
            if m > q(0, 1) {
                basis.push(Component::Horizontal { n: m, r });
            }
        }
        for c in basis {
            let x = ArithDivisor::component(&l, c.clone()).unwrap();
            let d = degree(&x).unwrap();
            assert_eq!(pair(&x, &one).unwrap().scale(q(2, 1)), d, "N={n} {c}");
        }
    }
}

#[test]
fn level_one_degrees_are_twice_hurwitz_numbers() {
    let l = lv(1);
    for (n, r, big_d) in [(q(3, 4), 1, 3), (q(1, 1), 0, 4), (q(7, 4), 1, 7), (q(2, 1), 0, 8)] {
        let z = assemble_z_hat(&l, r, n, 1.0).unwrap();
        let d = degree(&z).unwrap();
        assert_eq!(d.as_rational(), Some(hurwitz_oracle(big_d) * 2), "n={n}");
    }
    assert_eq!(component_degree(&l, &Component::Horizontal { n: q(3, 4), r: 1 }).unwrap(), q(2, 3));
}

#[test]
fn assembly_cases() {
    let l = lv(1);
    let z = assemble_z_hat(&l, 0, q(0, 1), 1.0).unwrap();
    let g = z.coefficient(&Component::CuspSection(1));
    assert!((g.eval(None).unwrap() - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    assert_eq!(z.coefficient(&Component::Hodge), SymReal::integer(-2));
    assert_eq!(z.coefficient(&Component::LogVN), SymReal::integer(-1));
    let z = assemble_z_hat(&l, 0, q(1, 1), 2.0).unwrap();
    assert_eq!(z.terms().count(), 1);
    assert_eq!(z.coefficient(&Component::Horizontal { n: q(1, 1), r: 0 }), SymReal::integer(1));
    let l2 = lv(2);
    assert!(matches!(assemble_z_hat(&l2, 0, q(-1, 8), 1.0), Err(Error::Congruence(_))));
    // D = 8 is not a square: Green function only
    assert_eq!(row_kind(&l2, 0, q(-1, 1)).unwrap(), RowKind::NonSquare);
    assert!(assemble_z_hat(&l2, 0, q(-1, 1), 1.0).unwrap().is_zero());
    // D = 4 is a square: g on every cusp
    let z = assemble_z_hat(&l2, 2, q(-1, 2), 1.0).unwrap();
    assert_eq!(row_kind(&l2, 2, q(-1, 2)).unwrap(), RowKind::SquareCusp);
    let g1 = z.coefficient(&Component::CuspSection(1));
    assert_eq!(g1, z.coefficient(&Component::CuspSection(2)));
    assert!(g1.eval(None).unwrap() > 0.0);
    assert_eq!(z.terms().count(), 2);
    assert!(assemble_z_hat(&l2, 2, q(-1, 2), 0.0).is_err());
}

#[test]
fn degree_series_branches() {
    let l = lv(2);
    let v = 1.7;
    let rows = degree_series(&l, v, q(2, 1)).unwrap();
    for row in &rows {
        match row.kind {
            RowKind::Horizontal => assert!(row.degree.as_rational().unwrap() > q(0, 1)),
            RowKind::NonSquare | RowKind::Vanishing => assert!(row.degree.is_zero()),
            RowKind::SquareCusp => {
                // g(n, mu, v) times the number of cusps; only these rows depend on v
                assert!(row.degree.as_rational().is_none());
                assert_eq!(row.degree.terms().count(), 1);
                let (_, c) = row.degree.terms().next().unwrap();
                assert_eq!(*c, q(2, 1));
            }
            RowKind::ConstantTerm => {
                assert_eq!(row.degree.rational_part(), q(-(l.index as i64), 6));
            }
        }
    }
    assert!(rows.iter().any(|r| r.kind == RowKind::SquareCusp));
    assert!(rows.iter().any(|r| r.kind == RowKind::ConstantTerm));
    assert!(rows.iter().any(|r| r.kind == RowKind::NonSquare));
}

#[test]
fn vertical_pairing_identity_holds() {
    for n in [2u64, 3, 5, 6, 10, 30] {
        let l = lv(n);
        for &p in &l.primes {
            let rep = vertical_pairing_identity(&l, p, 1.3, q(3, 1)).unwrap();
            assert!(rep.all_hold, "N={n} p={p}");
            assert!(rep.rows.iter().any(|r| r.kind == RowKind::ConstantTerm));
        }
    }
    assert!(vertical_pairing_identity(&lv(6), 5, 1.0, q(1, 1)).is_err());
}

#[test]
fn table_json_shape() {
    let t = pairing_table(&lv(5)).unwrap();
    let j = serde_json::to_value(&t).unwrap();
    let e = j["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["pair"][0] == "Xinf(5)" && e["pair"][1] == "X0(5)")
        .unwrap();
    assert_eq!(e["value"]["logp_terms"]["5"], "1/3");
    assert_eq!(e["value"]["rational"], "0");
    let w = j["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["pair"][0] == "omega" && e["pair"][1] == "omega")
        .unwrap();
    assert_eq!(w["value"]["zeta_prime_coeff"], "6");
    assert_eq!(w["value"]["C_coeff"], "1/2");
}

fn levels() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 14, 15, 30])
}

/// A random component of the level, including Heegner divisors with n <= 2.
fn component_of(l: &Level, pick: usize) -> Component {
    let mut basis = finite_basis(l);
    for (m, r) in series_indices(l, q(2, 1)).unwrap() {
        if m > q(0, 1) {
            basis.push(Component::Horizontal { n: m, r });
        }
    }
    basis[pick % basis.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_symmetric(n in levels(), i in 0usize..400, j in 0usize..400) {
        let l = lv(n);
        let a = component_of(&l, i);
        let b = component_of(&l, j);
        let ab = pair_basis(&l, &a, &b);
        let ba = pair_basis(&l, &b, &a);
        match (ab, ba) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(Error::UndeterminedPairing(..)), Err(Error::UndeterminedPairing(..))) => {}
            (x, y) => prop_assert!(false, "asymmetric: {:?} {:?}", x, y),
        }
    }

    #[test]
    fn principal_divisor_of_p_is_orthogonal(n in levels(), i in 0usize..400, pi in 0usize..8) {
        let l = lv(n);
        prop_assume!(!l.primes.is_empty());
        let p = l.primes[pi % l.primes.len()];
        let a = ArithDivisor::component(&l, component_of(&l, i)).unwrap();
        let div_p = parse_divisor(&l, &format!("Xinf({p}) + X0({p})")).unwrap()
            .plus(&ArithDivisor::component(&l, Component::Const).unwrap()
                .scaled(&SymReal::log_p(p).scale(q(-2, 1)))).unwrap();
        prop_assert!(pair(&a, &div_p).unwrap().is_zero());
        let fibre = parse_divisor(&l, &format!("Xinf({p}) + X0({p})")).unwrap();
        for c in [Component::VertInf(p), Component::VertZero(p)] {
            let x = ArithDivisor::component(&l, c).unwrap();
            prop_assert!(pair(&x, &fibre).unwrap().is_zero());
        }
    }

    #[test]
    fn pairing_is_bilinear(
        n in levels(),
        i in 0usize..400, j in 0usize..400, k in 0usize..400,
        a in -20i64..20, b in 1i64..7, c in -20i64..20,
    ) {
        let l = lv(n);
        let x = ArithDivisor::component(&l, component_of(&l, i)).unwrap();
        let y = ArithDivisor::component(&l, component_of(&l, j)).unwrap();
        let z = ArithDivisor::component(&l, component_of(&l, k)).unwrap();
        let (Ok(xz), Ok(yz)) = (pair(&x, &z), pair(&y, &z)) else { return Ok(()); };
        let alpha = SymReal::rational(q(a, b));
        let beta = SymReal::rational(q(c, 1)) + SymReal::log_p(2);
        let combo = x.scaled(&alpha).plus(&y.scaled(&beta)).unwrap();
        let lhs = pair(&combo, &z).unwrap();
        let rhs = &alpha * &xz + &beta * &yz;
        prop_assert_eq!(lhs, rhs);
    }
}
