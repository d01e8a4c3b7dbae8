//! One function per subcommand, each returning a [`Report`].

use crate::output::{Report, Table};
use anyhow::Result;
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::{json, Value};
use x0n::arithgeom;
use x0n::numtheory::{exponent_identities, squarefree_up_to, Level};
use x0n::qexp::{atkin_lehner, delta_n, delta_n_zero, PowerSeries, SeriesDump};
use x0n::theta::{self, EisensteinVariant};

fn level_of(n: u64) -> Result<Level> {
    Ok(Level::new(n)?)
}

fn series_table(s: &PowerSeries) -> Table {
    Table {
        headers: vec!["exponent".into(), "numerator".into(), "denominator".into()],
        rows: s.csv_rows().into_iter().map(|(e, a, b)| vec![e, a, b]).collect(),
    }
}

pub fn delta_expand(n: u64, order: usize, atkin_lehner_q: Option<u64>, zero: bool) -> Result<Report> {
    let level = level_of(n)?;
    if order == 0 {
        anyhow::bail!(x0n::Error::InvalidArgument("order must be at least 1".into()));
    }
    let (kind, constant, series) = match (atkin_lehner_q, zero) {
        (Some(_), true) => anyhow::bail!(x0n::Error::InvalidArgument(
            "--atkin-lehner and --zero are exclusive".into()
        )),
        (Some(q), false) => {
            let (c, s) = atkin_lehner(&level, q, order)?;
            (format!("atkin_lehner_{q}"), Some(c.to_string()), s)
        }
        (None, true) => {
            let (c, s) = delta_n_zero(&level, order)?;
            ("delta_n_zero".to_string(), Some(c.to_string()), s)
        }
        (None, false) => ("delta_n".to_string(), None, delta_n(&level, order)?.series),
    };
    let json = json!({
        "level": n,
        "weight": level.weight(),
        "kind": kind,
        "constant": constant,
        "integral": series.is_integral(),
        "series": SeriesDump::from(&series),
    });
    Ok(Report::passed(json).with_table(series_table(&series)))
}

pub fn identities(level_max: u64) -> Result<Report> {
    let mut rows = Vec::new();
    let mut table = Vec::new();
    for n in squarefree_up_to(level_max) {
        let id = exponent_identities(&level_of(n)?);
        let status = if id.ok { "ok" } else { "fail" };
        table.push(vec![
            n.to_string(),
            id.sum.to_string(),
            id.expected_sum.to_string(),
            id.weighted_sum.to_string(),
            id.expected_weighted_sum.to_string(),
            id.reciprocal_sum_numerator.to_string(),
            status.to_string(),
        ]);
        let mut v = serde_json::to_value(&id)?;
        v["status"] = json!(status);
        rows.push(v);
    }
    let failed: Vec<u64> = rows
        .iter()
        .filter(|r| r["status"] != "ok")
        .map(|r| r["level"].as_u64().unwrap_or(0))
        .collect();
    let all_ok = failed.is_empty();
    let json = json!({ "level_max": level_max, "rows": rows, "all_ok": all_ok });
    let headers = ["level", "sum", "expected_sum", "weighted_sum", "expected_weighted_sum", "reciprocal_sum_numerator", "status"];
    Ok(Report::checked(json, all_ok, || format!("identities fail at levels {failed:?}")).with_table(Table {
        headers: headers.iter().map(|s| s.to_string()).collect(),
        rows: table,
    }))
}

pub fn klf(n: u64, z: Complex64, tol: f64) -> Result<Report> {
    let level = level_of(n)?;
    let pair = x0n::analytic::kronecker_limit_pair(&level, z)?;
    let ok = pair.residual <= tol;
    let json = json!({
        "level": n,
        "z": [z.re, z.im],
        "lhs": pair.lhs,
        "rhs": pair.rhs,
        "residual": pair.residual,
        "tol": tol,
        "ok": ok,
    });
    Ok(Report::checked(json, ok, || format!("residual {} exceeds tol {tol}", pair.residual)))
}

pub fn green(n: u64, r: i64, m: Rational64, v: f64, z: Complex64) -> Result<Report> {
    level_of(n)?;
    let g = theta::kudla_green(n as i64, r, m, v, z)?;
    let c = theta::green_cusp_constants(n as i64, r, m, v)?;
    let json = json!({
        "level": n,
        "r": r,
        "n": m.to_string(),
        "v": v,
        "z": [z.re, z.im],
        "value": g.value,
        "tail_bound": g.tail_bound,
        "terms": g.terms,
        "cusp_constant": c.value,
        "square_discriminant": c.square_discriminant,
    });
    Ok(Report::passed(json))
}

#[allow(clippy::too_many_arguments)]
pub fn green_cusp_check(
    n: u64,
    r: i64,
    m: Rational64,
    v: f64,
    cusp: Option<u64>,
    x0: f64,
    y_grid: &[f64],
    tol: f64,
) -> Result<Report> {
    level_of(n)?;
    let cusp = cusp.unwrap_or(n);
    let rep = theta::cusp_asymptotic_residual(n as i64, r, m, v, cusp as i64, x0, y_grid)?;
    let last = rep.rows.last().map(|row| (row.residual - rep.limit).abs()).unwrap_or(f64::INFINITY);
    let ok = last <= tol;
    let table = Table {
        headers: vec!["y".into(), "green".into(), "residual".into(), "limit".into(), "tail_bound".into()],
        rows: rep
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.y.to_string(),
                    row.green.to_string(),
                    row.residual.to_string(),
                    rep.limit.to_string(),
                    row.tail_bound.to_string(),
                ]
            })
            .collect(),
    };
    let mut json = serde_json::to_value(&rep)?;
    json["n"] = json!(m.to_string());
    json["final_error"] = json!(last);
    json["tol"] = json!(tol);
    json["ok"] = json!(ok);
    Ok(Report::checked(json, ok, || format!("residual misses its limit by {last} > {tol}")).with_table(table))
}

pub fn thetalift(
    n: u64,
    tau: Complex64,
    s: f64,
    bound: Option<i64>,
    quad_tol: f64,
    atkin_lehner: bool,
    max_residual: f64,
) -> Result<Report> {
    level_of(n)?;
    let variant = if atkin_lehner { EisensteinVariant::AtkinLehner } else { EisensteinVariant::Standard };
    if let Some(b) = bound {
        if b < 1 {
            anyhow::bail!(x0n::Error::InvalidArgument("--bound must be at least 1".into()));
        }
    }
    let cmp = theta::lift_identity(n as i64, tau, s, variant, quad_tol, bound)?;
    let ok = cmp.componentwise_residual <= max_residual;
    let cplx = |v: &[Complex64]| -> Value { json!(v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()) };
    let json = json!({
        "level": n,
        "tau": [tau.re, tau.im],
        "s": s,
        "variant": cmp.variant,
        "lhs": cplx(&cmp.lift.values),
        "rhs": cplx(&cmp.rhs),
        "zeta_star": cmp.zeta_star,
        "residual": cmp.residual,
        "componentwise_residual": cmp.componentwise_residual,
        "max_residual": max_residual,
        "lift": cmp.lift,
        "eisenstein_fourier": cmp.eisenstein,
        "coset_sum": cmp.coset_sum,
        "ok": ok,
    });
    let table = Table {
        headers: vec!["mu".into(), "lhs_re".into(), "lhs_im".into(), "rhs_re".into(), "rhs_im".into()],
        rows: cmp
            .lift
            .values
            .iter()
            .zip(&cmp.rhs)
            .enumerate()
            .map(|(mu, (a, b))| vec![mu.to_string(), a.re.to_string(), a.im.to_string(), b.re.to_string(), b.im.to_string()])
            .collect(),
    };
    Ok(Report::checked(json, ok, || {
        format!("componentwise residual {} exceeds {max_residual}", cmp.componentwise_residual)
    })
    .with_table(table))
}

pub fn degrees(n: u64, n_max: Rational64, v: f64) -> Result<Report> {
    let level = level_of(n)?;
    let rows = arithgeom::degree_series(&level, v, n_max)?;
    let table = Table {
        headers: ["n", "r", "discriminant", "kind", "degree", "value"].iter().map(|s| s.to_string()).collect(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.r.to_string(),
                    r.discriminant.to_string(),
                    serde_json::to_value(r.kind).map(|k| scalar(&k)).unwrap_or_default(),
                    r.degree.to_string(),
                    r.value.to_string(),
                ]
            })
            .collect(),
    };
    let json = json!({ "level": n, "v": v, "n_max": n_max.to_string(), "rows": rows });
    Ok(Report::passed(json).with_table(table))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn intersect(n: u64, a: &str, b: &str, v: Option<f64>) -> Result<Report> {
    let level = level_of(n)?;
    let da = arithgeom::parse_divisor(&level, a)?;
    let db = arithgeom::parse_divisor(&level, b)?;
    let value = arithgeom::pair(&da, &db)?;
    let json = json!({
        "level": n,
        "a": da,
        "b": db,
        "value": value,
        "display": value.to_string(),
        "numeric": value.eval(v).ok(),
    });
    Ok(Report::passed(json))
}

pub fn table(n: u64) -> Result<Report> {
    let level = level_of(n)?;
    let t = arithgeom::pairing_table(&level)?;
    let rows = t
        .entries
        .iter()
        .map(|e| {
            vec![
                e.pair[0].clone(),
                e.pair[1].clone(),
                e.value.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "undetermined".into()),
            ]
        })
        .collect();
    let table = Table { headers: vec!["a".into(), "b".into(), "value".into()], rows };
    Ok(Report::passed(serde_json::to_value(&t)?).with_table(table))
}

pub fn vertical(n: u64, p: u64, v: f64, n_max: Rational64) -> Result<Report> {
    let level = level_of(n)?;
    let rep = arithgeom::vertical_pairing_identity(&level, p, v, n_max)?;
    let ok = rep.all_hold;
    let bad: Vec<String> = rep.rows.iter().filter(|r| !r.holds).map(|r| format!("({}, {})", r.n, r.r)).collect();
    Ok(Report::checked(serde_json::to_value(&rep)?, ok, || format!("identity fails on rows {}", bad.join(", "))))
}
