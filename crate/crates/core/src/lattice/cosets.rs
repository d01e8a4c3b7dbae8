//! Right coset representatives of Gamma_0(N) in SL_2(Z), indexed by P^1(Z/N).

use num_integer::Integer;

/// A matrix [[a, b], [c, d]] stored row-major.
pub type Mat = [i64; 4];

pub fn mat_mul(x: Mat, y: Mat) -> Mat {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

pub fn mat_inv(x: Mat) -> Mat {
    [x[3], -x[1], -x[2], x[0]]
}

pub fn in_gamma0(level: i64, g: Mat) -> bool {
    g[2].rem_euclid(level) == 0
}

/// Extended gcd: (g, x, y) with a x + b y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Complete a coprime bottom row (c, d) to an element of SL_2(Z).
pub fn complete_bottom_row(c: i64, d: i64) -> Mat {
    let (g, x, y) = ext_gcd(d, c);
    assert_eq!(g, 1, "bottom row must be coprime");
    // a d - b c = 1 with a = x, b = -y
    [x, -y, c, d]
}

/// Canonical key of (c : d) in P^1(Z/N).
fn p1_key(level: i64, c: i64, d: i64) -> (i64, i64) {
    let n = level;
    (1..=n.max(1))
        .filter(|u| u.gcd(&n) == 1)
        .map(|u| ((u * c).rem_euclid(n), (u * d).rem_euclid(n)))
        .min()
        .unwrap()
}

/// Representatives gamma_j with SL_2(Z) = disjoint union of Gamma_0(N) gamma_j.
/// The identity comes first.
pub fn gamma0_coset_reps(level: i64) -> Vec<Mat> {
    if level == 1 {
        return vec![[1, 0, 0, 1]];
    }
    let n = level;
    let mut keys = Vec::new();
    for c in 0..n {
        for d in 0..n {
            if c.gcd(&d).gcd(&n) != 1 {
                continue;
            }
            let k = p1_key(n, c, d);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    // identity class (0 : 1) first
    keys.sort_by_key(|&(c, d)| (c != 0, c, d));
    keys.into_iter()
        .map(|(c, d)| {
            let (c1, d1) = lift_coprime(n, c, d);
            complete_bottom_row(c1, d1)
        })
        .collect()
}

/// Integers congruent to (c, d) mod N that are coprime.
fn lift_coprime(n: i64, c: i64, d: i64) -> (i64, i64) {
    if c == 0 {
        return (0, 1);
    }
    for j in 0.. {
        let d1 = d + j * n;
        if c.gcd(&d1) == 1 {
            return (c, d1);
        }
    }
    unreachable!()
}

/// Index j of the right coset of Gamma_0(N) containing g.
pub fn coset_index(level: i64, reps: &[Mat], g: Mat) -> usize {
    reps.iter()
        .position(|&r| in_gamma0(level, mat_mul(g, mat_inv(r))))
        .expect("coset representatives are complete")
}
