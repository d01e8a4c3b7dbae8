//! The point w(z) of the positive-line domain, the pairing (w, w(z)), R(w, z) and the majorant,
//! together with enumeration of coset-lattice vectors inside a majorant ellipsoid.
//!
//! Vectors of V are stored as (w1, w2, w3) for the matrix [[w1, w2], [w3, -w1]], with
//! Q(w) = N det w = -N (w1^2 + w2 w3) and (a, b) = Q(a + b) - Q(a) - Q(b).

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

pub type VVec = [f64; 3];

pub fn q_form(level: i64, w: VVec) -> f64 {
    -(level as f64) * (w[0] * w[0] + w[1] * w[2])
}

pub fn bilinear(level: i64, a: VVec, b: VVec) -> f64 {
    -(level as f64) * (2.0 * a[0] * b[0] + a[1] * b[2] + a[2] * b[1])
}

/// g w g^{-1} for g = [[a, b], [c, d]] of determinant one.
pub fn conjugate(g: [f64; 4], w: VVec) -> VVec {
    let [a, b, c, d] = g;
    let [w1, w2, w3] = w;
    // (g w)(g^{-1}) with g^{-1} = [[d, -b], [-c, a]]
    let m11 = a * w1 + b * w3;
    let m12 = a * w2 - b * w1;
    let m21 = c * w1 + d * w3;
    let m22 = c * w2 - d * w1;
    [m11 * d - m12 * c, -m11 * b + m12 * a, m21 * d - m22 * c]
}

fn check_z(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) || !z.re.is_finite() {
        return Err(Error::InvalidArgument(format!("Im z must be positive, got {z}")));
    }
    Ok(())
}

/// A point z of the upper half plane with w(z) = (1 / sqrt(N) y) [[-x, z zbar], [-1, x]] cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorantContext {
    pub level: i64,
    pub x: f64,
    pub y: f64,
    pub wz: VVec,
}

impl MajorantContext {
    pub fn new(level: i64, z: Complex64) -> Result<Self> {
        check_z(z)?;
        let c = 1.0 / ((level as f64).sqrt() * z.im);
        Ok(MajorantContext {
            level,
            x: z.re,
            y: z.im,
            wz: [-z.re * c, z.norm_sqr() * c, -c],
        })
    }

    /// (w, w(z)) = -(sqrt(N)/y) (w3 z zbar - w1 (z + zbar) - w2).
    pub fn pairing(&self, w: VVec) -> f64 {
        let zz = self.x * self.x + self.y * self.y;
        -((self.level as f64).sqrt() / self.y) * (w[2] * zz - 2.0 * self.x * w[0] - w[1])
    }

    /// R(w, z) = (w, w(z))^2 / 2 - (w, w).
    pub fn r_value(&self, w: VVec) -> f64 {
        let p = self.pairing(w);
        0.5 * p * p - 2.0 * q_form(self.level, w)
    }

    /// The majorant (w, w)_z = (w, w(z))^2 - (w, w), positive definite.
    pub fn majorant(&self, w: VVec) -> f64 {
        let p = self.pairing(w);
        p * p - 2.0 * q_form(self.level, w)
    }

    fn majorant_bilinear(&self, a: VVec, b: VVec) -> f64 {
        self.pairing(a) * self.pairing(b) - bilinear(self.level, a, b)
    }
}

/// pairing (w, w(z)) as a free function.
pub fn pairing_w_wz(level: i64, w: VVec, z: Complex64) -> Result<f64> {
    Ok(MajorantContext::new(level, z)?.pairing(w))
}

/// R(w, z) from the orthogonal decomposition, computed via the projection onto w(z).
pub fn r_by_projection(level: i64, w: VVec, z: Complex64) -> Result<f64> {
    let ctx = MajorantContext::new(level, z)?;
    // w_z = (w, w(z)) / (w(z), w(z)) w(z) and (w(z), w(z)) = 2
    let p = ctx.pairing(w);
    let wz = ctx.wz;
    let perp = [w[0] - 0.5 * p * wz[0], w[1] - 0.5 * p * wz[1], w[2] - 0.5 * p * wz[2]];
    Ok(-bilinear(level, perp, perp))
}

/// Points shift + k1 b1 + k2 b2 + k3 b3 of a translated lattice in V, k in Z^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosetLattice {
    pub basis: [VVec; 3],
    pub shift: VVec,
}

impl CosetLattice {
    /// L + mu_r: w1 in r/2N + Z, w2 in (1/N) Z, w3 in Z.
    pub fn coset(level: i64, r: i64) -> Self {
        let n = level as f64;
        CosetLattice {
            basis: [[1.0, 0.0, 0.0], [0.0, -1.0 / n, 0.0], [0.0, 0.0, 1.0]],
            shift: [r.rem_euclid(2 * level) as f64 / (2.0 * n), 0.0, 0.0],
        }
    }

    /// The dual lattice L#: w1 in (1/2N) Z; the first coordinate k1 mod 2N is the coset index.
    pub fn dual(level: i64) -> Self {
        let n = level as f64;
        CosetLattice {
            basis: [[1.0 / (2.0 * n), 0.0, 0.0], [0.0, -1.0 / n, 0.0], [0.0, 0.0, 1.0]],
            shift: [0.0; 3],
        }
    }

    /// The image under w -> g w g^{-1}.
    pub fn conjugated(&self, g: [f64; 4]) -> Self {
        CosetLattice {
            basis: self.basis.map(|b| conjugate(g, b)),
            shift: conjugate(g, self.shift),
        }
    }

    pub fn point(&self, k: [i64; 3]) -> VVec {
        let mut w = self.shift;
        for (i, b) in self.basis.iter().enumerate() {
            for j in 0..3 {
                w[j] += k[i] as f64 * b[j];
            }
        }
        w
    }

    /// All k with majorant(point(k)) <= bound at the point of ctx.
    pub fn enumerate(&self, ctx: &MajorantContext, bound: f64) -> Vec<([i64; 3], VVec)> {
        // Gram matrix of the quadratic form k -> majorant(sum k_i b_i) and the shift in k-coordinates
        // obtained by solving B s = shift.
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = ctx.majorant_bilinear(self.basis[i], self.basis[j]);
            }
        }
        let s = solve3(self.basis, self.shift);
        let mut out = Vec::new();
        // search with a little slack, then decide membership by the direct evaluation so that
        // points on the boundary are classified exactly as majorant() classifies them
        let slack = bound * (1.0 + 1e-9) + 1e-12;
        fincke_pohst(&g, s, slack, &mut |k| {
            let w = self.point(k);
            if ctx.majorant(w) <= bound {
                out.push((k, w));
            }
        });
        out
    }
}

/// Solve sum_i s_i b_i = t.
fn solve3(b: [VVec; 3], t: VVec) -> [f64; 3] {
    if t == [0.0; 3] {
        return [0.0; 3];
    }
    // columns are the basis vectors
    let m = [[b[0][0], b[1][0], b[2][0]], [b[0][1], b[1][1], b[2][1]], [b[0][2], b[1][2], b[2][2]]];
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(m);
    let mut s = [0.0; 3];
    for (i, si) in s.iter_mut().enumerate() {
        let mut mi = m;
        for (row, ti) in mi.iter_mut().zip(t) {
            row[i] = ti;
        }
        *si = det(mi) / d;
    }
    s
}

/// Visit every k in Z^3 with (k + s)^T G (k + s) <= bound (G positive definite).
fn fincke_pohst(g: &[[f64; 3]; 3], s: [f64; 3], bound: f64, visit: &mut dyn FnMut([i64; 3])) {
    // q(x) = sum_i d_i (x_i + sum_{j > i} u_ij x_j)^2 from the LDL^T factorisation of G
    // taken from the last coordinate upwards
    let n = 3;
    let mut d = [0.0; 3];
    let mut u = [[0.0; 3]; 3];
    let mut a = *g;
    for i in 0..n {
        d[i] = a[i][i];
        for j in i + 1..n {
            u[i][j] = a[i][j] / d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                a[j][k] -= d[i] * u[i][j] * u[i][k];
            }
        }
    }
    let mut k = [0i64; 3];
    recurse(n - 1, &d, &u, &s, bound, 0.0, &mut k, visit);
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    i: usize,
    d: &[f64; 3],
    u: &[[f64; 3]; 3],
    s: &[f64; 3],
    bound: f64,
    used: f64,
    k: &mut [i64; 3],
    visit: &mut dyn FnMut([i64; 3]),
) {
    // centre of coordinate i given the outer coordinates
    let mut c = s[i];
    for j in i + 1..3 {
        c += u[i][j] * (k[j] as f64 + s[j]);
    }
    let rem = bound - used;
    if rem < 0.0 {
        return;
    }
    let half = (rem / d[i]).sqrt();
    let lo = (-c - half).ceil() as i64;
    let hi = (-c + half).floor() as i64;
    for ki in lo..=hi {
        let t = ki as f64 + c;
        let val = used + d[i] * t * t;
        if val > bound {
            continue;
        }
        k[i] = ki;
        if i == 0 {
            visit(*k);
        } else {
            recurse(i - 1, d, u, s, bound, val, k, visit);
        }
    }
}
