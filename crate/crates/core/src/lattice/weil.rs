//! The Weil representation of the metaplectic group on C[L#/L], L#/L = Z/2N.
//!
//! Generators act by rho(T) e_mu = e(Q(mu)) e_mu and
//! rho(S) e_mu = e(1/8)/sqrt(2N) sum_nu e(-(mu, nu)) e_nu.

use super::cosets::{mat_mul, Mat};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// e(x) = exp(2 pi i x).
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    S,
    T,
    TInv,
}

impl Letter {
    pub fn matrix(self) -> Mat {
        match self {
            Letter::S => [0, -1, 1, 0],
            Letter::T => [1, 1, 0, 1],
            Letter::TInv => [1, -1, 0, 1],
        }
    }

    /// The chosen square root of c tau + d: sqrt(tau) for S, 1 for T and T^{-1}.
    fn phi(self, tau: Complex64) -> Complex64 {
        match self {
            Letter::S => tau.sqrt(),
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

/// A word in the generators of the metaplectic group.
pub type Word = Vec<Letter>;

/// Underlying SL_2(Z) matrix of a word.
pub fn word_matrix(word: &[Letter]) -> Mat {
    word.iter().fold([1, 0, 0, 1], |acc, l| mat_mul(acc, l.matrix()))
}

/// Moebius action of a matrix.
pub fn mobius(g: Mat, tau: Complex64) -> Complex64 {
    (tau * g[0] as f64 + g[1] as f64) / (tau * g[2] as f64 + g[3] as f64)
}

/// The holomorphic square root of c tau + d carried by a word, evaluated at tau.
pub fn word_phi(word: &[Letter], tau: Complex64) -> Complex64 {
    // (g1, phi1)(g2, phi2) = (g1 g2, phi1(g2 tau) phi2(tau)), folded from the right
    let mut g: Mat = [1, 0, 0, 1];
    let mut phi = Complex64::new(1.0, 0.0);
    for &l in word.iter().rev() {
        phi *= l.phi(mobius(g, tau));
        g = mat_mul(l.matrix(), g);
    }
    phi
}

/// A word for gamma whose square root of c tau + d is the principal one.
pub fn gamma_to_word(g: Mat) -> Word {
    assert_eq!(g[0] * g[3] - g[1] * g[2], 1, "determinant must be 1");
    let mut word = Vec::new();
    let mut cur = g;
    // left-reduce: cur = T^k S^{-1} cur', i.e. cur' = S T^{-k} cur, until cur is upper triangular
    while cur[2] != 0 {
        let k = (cur[0] as f64 / cur[2] as f64).round() as i64;
        push_power(&mut word, k);
        word.extend([Letter::S, Letter::S, Letter::S]);
        let t: Mat = [1, -k, 0, 1];
        cur = mat_mul([0, -1, 1, 0], mat_mul(t, cur));
    }
    // cur = +-T^m
    if cur[0] == -1 {
        word.extend([Letter::S, Letter::S]);
        cur = [-cur[0], -cur[1], 0, -cur[3]];
    }
    push_power(&mut word, cur[1]);
    debug_assert_eq!(word_matrix(&word), g);
    // fix the metaplectic sign: compare with the principal root at tau = i
    let tau = Complex64::new(0.0, 1.0);
    let principal = (tau * g[2] as f64 + g[3] as f64).sqrt();
    if (word_phi(&word, tau) - principal).norm() > 1e-6 {
        word.extend([Letter::S; 4]);
    }
    word
}

fn push_power(word: &mut Word, k: i64) {
    let l = if k >= 0 { Letter::T } else { Letter::TInv };
    word.extend(std::iter::repeat(l).take(k.unsigned_abs() as usize));
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        CMatrix { n, data }
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        CMatrix { n, data }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        CMatrix { n, data }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// max |a_ij - b_ij|
    pub fn dist(&self, o: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// rho_L for the lattice of level N, components indexed by r in Z/2N.
#[derive(Debug, Clone)]
pub struct WeilRep {
    pub level: i64,
    pub dim: usize,
    pub t_diag: Vec<Complex64>,
    pub s: CMatrix,
}

impl WeilRep {
    pub fn new(level: i64) -> Self {
        let m = 2 * level;
        let dim = m as usize;
        // Q(mu_r) = -r^2/4N
        let t_diag = (0..m)
            .map(|r| e(-((r * r) as f64) / (4 * level) as f64))
            .collect();
        // (mu_r, mu_s) = -rs/2N
        let c = e(1.0 / 8.0) / (m as f64).sqrt();
        let mut data = Vec::with_capacity(dim * dim);
        for nu in 0..m {
            for mu in 0..m {
                data.push(c * e(((nu * mu) % m) as f64 / m as f64));
            }
        }
        WeilRep {
            level,
            dim,
            t_diag,
            s: CMatrix { n: dim, data },
        }
    }

    pub fn generator(&self, l: Letter) -> CMatrix {
        match l {
            Letter::S => self.s.clone(),
            Letter::T | Letter::TInv => {
                let mut m = CMatrix::identity(self.dim);
                for i in 0..self.dim {
                    m.data[i * self.dim + i] = if l == Letter::T {
                        self.t_diag[i]
                    } else {
                        self.t_diag[i].conj()
                    };
                }
                m
            }
        }
    }

    /// rho_L(word) as a matrix; the empty word gives the identity.
    pub fn element(&self, word: &[Letter]) -> CMatrix {
        word.iter()
            .fold(CMatrix::identity(self.dim), |acc, &l| acc.mul(&self.generator(l)))
    }

    /// rho_L(word) applied to a vector, letter by letter from the right.
    pub fn apply(&self, word: &[Letter], v: &[Complex64]) -> Vec<Complex64> {
        let mut out = v.to_vec();
        for &l in word.iter().rev() {
            out = match l {
                Letter::S => self.s.apply(&out),
                Letter::T => out.iter().zip(&self.t_diag).map(|(x, t)| x * t).collect(),
                Letter::TInv => out
                    .iter()
                    .zip(&self.t_diag)
                    .map(|(x, t)| x * t.conj())
                    .collect(),
            };
        }
        out
    }

    /// rho_L(gamma) for the principal-root lift of gamma.
    pub fn of_gamma(&self, g: Mat) -> CMatrix {
        self.element(&gamma_to_word(g))
    }

    /// rho_L(gamma)^{-1} e_0, the column used by Eisenstein series.
    pub fn inverse_applied_to_e0(&self, g: Mat) -> Vec<Complex64> {
        // rho is unitary, so rho^{-1} e_0 is the conjugated 0-th row of rho(gamma);
        // the row is accumulated from the left since rho(S) is symmetric and rho(T) diagonal
        let word = gamma_to_word(g);
        let mut row = vec![Complex64::new(0.0, 0.0); self.dim];
        row[0] = Complex64::new(1.0, 0.0);
        for &l in &word {
            row = match l {
                Letter::S => self.s.apply(&row),
                Letter::T => row.iter().zip(&self.t_diag).map(|(x, t)| x * t).collect(),
                Letter::TInv => row
                    .iter()
                    .zip(&self.t_diag)
                    .map(|(x, t)| x * t.conj())
                    .collect(),
            };
        }
        row.iter().map(|x| x.conj()).collect()
    }
}
