//! Adaptive quadrature on finite and half-infinite intervals.
//!
//! The double-exponential rule of the `quadrature` crate is applied on subintervals, which are
//! bisected until each reports an error estimate below its share of the tolerance, or below
//! the rounding floor of the whole integral.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

const MAX_DEPTH: u32 = 18;

/// Integrate f over [a, b] to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0 });
    }
    let rough = quadrature::integrate(f, a, b, tol.max(1e-10)).integral;
    let floor = if rough.is_finite() { 1e-15 * rough.abs() } else { 0.0 };
    adapt(f, a, b, tol, floor, 0)
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, floor: f64, depth: u32) -> Result<QuadResult> {
    let out = quadrature::integrate(f, a, b, tol);
    if !out.integral.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integral on [{a}, {b}]")));
    }
    // the rule's own estimate is rounding noise near 1e-13 relative; nothing below that, or below
    // a few ulps of the whole integral, is resolvable by further bisection
    if out.error_estimate <= tol.max(floor).max(1e-12 * out.integral.abs()) {
        return Ok(QuadResult {
            value: out.integral,
            error: out.error_estimate,
        });
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "error estimate {:e} above {tol:e} on [{a}, {b}] after {depth} bisections",
            out.error_estimate
        )));
    }
    let m = 0.5 * (a + b);
    let l = adapt(f, a, m, tol / 2.0, floor / 2.0, depth + 1)?;
    let r = adapt(f, m, b, tol / 2.0, floor / 2.0, depth + 1)?;
    Ok(QuadResult {
        value: l.value + r.value,
        error: l.error + r.error,
    })
}

/// Integrate f over [a, infinity) through t = a + u/(1 - u), split at u = 1/2.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> Result<QuadResult> {
    let g = |u: f64| {
        if u >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - u;
        f(a + u / w) / (w * w)
    };
    let l = integrate(&g, 0.0, 0.5, tol / 2.0)?;
    let r = integrate(&g, 0.5, 1.0, tol / 2.0)?;
    Ok(QuadResult {
        value: l.value + r.value,
        error: l.error + r.error,
    })
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let rule = gauss_quad::legendre::GaussLegendre::new(n.try_into().expect("n >= 1"));
    rule.into_node_weight_pairs().into_vec()
}
