//! Positive definite binary quadratic forms and Heegner degrees.

use super::cosets::{gamma0_coset_reps, in_gamma0, mat_inv, mat_mul, Mat};
use super::vector::{discriminant_of, LatticeVector};
use crate::error::{Error, Result};
use num_rational::Rational64;

/// A form [A, B, C] = A x^2 + B x y + C y^2.
pub type Form = [i64; 3];

/// (f o g)(x, y) = f(a x + b y, c x + d y).
pub fn act(f: Form, g: Mat) -> Form {
    let [a, b, c] = f;
    let [p, q, r, s] = g;
    [
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    ]
}

/// All SL_2(Z)-reduced positive definite forms of discriminant d < 0, primitive or not.
pub fn reduced_forms(d: i64) -> Vec<Form> {
    assert!(d < 0);
    let mut out = Vec::new();
    let amax = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if 3 * a * a > -d {
                continue;
            }
            out.push([a, b, c]);
        }
    }
    out
}

/// Order of the stabiliser of a reduced form in SL_2(Z), counting -I.
pub fn stabilizer_order(f: Form) -> i64 {
    let [a, b, c] = f;
    if a == b && b == c {
        6
    } else if b == 0 && a == c {
        4
    } else {
        2
    }
}

/// Right action representatives g with SL_2(Z) = union of g Gamma_0(N).
pub fn left_coset_reps(level: i64) -> Vec<Mat> {
    gamma0_coset_reps(level).into_iter().map(mat_inv).collect()
}

/// Total weight sum 2/|Aut| of Gamma_0(N)-classes of positive definite forms of discriminant d
/// with N | A and B = beta mod 2N.
pub fn weighted_class_count(level: i64, d: i64, beta: i64) -> Rational64 {
    let reps = left_coset_reps(level);
    let m = 2 * level;
    let mut total = Rational64::from_integer(0);
    for f0 in reduced_forms(d) {
        let h = stabilizer_order(f0);
        let hits = reps
            .iter()
            .filter(|&&g| {
                let f = act(f0, g);
                f[0].rem_euclid(level) == 0 && (f[1] - beta).rem_euclid(m) == 0
            })
            .count() as i64;
        total += Rational64::new(2 * hits, h);
    }
    total
}

/// deg Z(n, mu_r): Gamma_0(N)-classes of L_{mu_r}[n] weighted by 2/|Aut|, both orientations.
pub fn heegner_degree(level: i64, r: i64, n: Rational64) -> Result<Rational64> {
    let d = discriminant_of(level, r, n)?;
    if d >= 0 {
        return Err(Error::InvalidArgument(format!(
            "D = {d} >= 0: use the square-discriminant path"
        )));
    }
    Ok(weighted_class_count(level, d, r) + weighted_class_count(level, d, -r))
}

/// A canonical label of the Gamma_0(N)-orbit of a vector with D < 0.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassLabel {
    /// +1 when the associated form is positive definite (c > 0), -1 otherwise
    pub orientation: i8,
    /// the SL_2(Z)-reduced form equivalent to +-f_w
    pub reduced: Form,
    /// smallest index j with the orbit meeting the left coset gamma_j^{-1} Gamma_0(N)
    pub coset: usize,
    /// order of the stabiliser of w in Gamma_0(N), counting -I
    pub aut_order: i64,
}

impl ClassLabel {
    pub fn representative(&self) -> String {
        let [a, b, c] = self.reduced;
        let s = if self.orientation > 0 { "+" } else { "-" };
        format!("{s}[{a},{b},{c}]@{}", self.coset)
    }
}

/// Reduce a positive definite form, returning (f0, g) with f = f0 o g.
pub fn reduce_with_transform(f: Form) -> (Form, Mat) {
    // track h with f o h = current; return the inverse at the end
    let mut cur = f;
    let mut h: Mat = [1, 0, 0, 1];
    loop {
        let [a, b, c] = cur;
        if b > a || b <= -a {
            // translate x -> x + k y
            let k = (a - b).div_euclid(2 * a);
            let t: Mat = [1, k, 0, 1];
            cur = act(cur, t);
            h = mat_mul(h, t);
            continue;
        }
        if a > c || (a == c && b < 0) {
            let s: Mat = [0, -1, 1, 0];
            cur = act(cur, s);
            h = mat_mul(h, s);
            continue;
        }
        return (cur, mat_inv(h));
    }
}

/// Class label of the Gamma_0(N)-orbit of a vector with D < 0.
pub fn class_label(v: &LatticeVector) -> Option<ClassLabel> {
    if v.discriminant() >= 0 || v.c == 0 {
        return None;
    }
    let mut f = v.form();
    let orientation = if f[0] < 0 { -1 } else { 1 };
    if f[0] < 0 {
        f = [-f[0], -f[1], -f[2]];
    }
    let (f0, g) = reduce_with_transform(f);
    let level = v.level;
    let reps = left_coset_reps(level);
    // f = f0 o g; the orbit is f0 o (H g Gamma_0(N)), so label by the smallest coset over H
    let stab = stabilizer_elements(f0);
    let idx = stab
        .iter()
        .map(|&s| {
            let x = mat_mul(s, g);
            reps.iter()
                .position(|&r| in_gamma0(level, mat_mul(mat_inv(r), x)))
                .expect("coset representatives are complete")
        })
        .min()
        .unwrap();
    let ginv = mat_inv(g);
    let aut = stab
        .iter()
        .filter(|&&s| in_gamma0(level, mat_mul(mat_mul(ginv, s), g)))
        .count() as i64;
    Some(ClassLabel {
        orientation,
        reduced: f0,
        coset: idx,
        aut_order: aut,
    })
}

/// Stabiliser of f_w in Gamma_0(N) as explicit matrices; each fixes the CM point of w.
pub fn gamma0_stabilizer(v: &LatticeVector) -> Vec<Mat> {
    let mut f = v.form();
    if f[0] < 0 {
        f = [-f[0], -f[1], -f[2]];
    }
    let (f0, g) = reduce_with_transform(f);
    let ginv = mat_inv(g);
    stabilizer_elements(f0)
        .into_iter()
        .map(|s| mat_mul(mat_mul(ginv, s), g))
        .filter(|&x| in_gamma0(v.level, x))
        .collect()
}

/// One CSV row (a, b_numerator, c, D, aut_order, class_representative) per vector with D < 0.
pub fn class_csv_rows(vectors: &[LatticeVector]) -> Vec<[String; 6]> {
    vectors
        .iter()
        .filter_map(|v| {
            class_label(v).map(|l| {
                [
                    v.a.to_string(),
                    v.w1_num().to_string(),
                    v.c.to_string(),
                    v.discriminant().to_string(),
                    l.aut_order.to_string(),
                    l.representative(),
                ]
            })
        })
        .collect()
}

/// The stabiliser of a reduced form in SL_2(Z).
pub fn stabilizer_elements(f: Form) -> Vec<Mat> {
    let mut out = Vec::new();
    for p in -1..=1 {
        for q in -1..=1 {
            for r in -1..=1 {
                for s in -1..=1 {
                    let g = [p, q, r, s];
                    if p * s - q * r == 1 && act(f, g) == f {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}
