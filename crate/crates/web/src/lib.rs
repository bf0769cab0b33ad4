//! wasm-bindgen bindings behind `www/index.html`. Exports take `i32`
//! (plain JS numbers) and return JSON strings; errors become JS exceptions.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use wasm_bindgen::prelude::*;

use srgcheck::cliquegeom::{mg_polynomial, t_range, TRange};
use srgcheck::exactnum::{format_rational, to_f64};
use srgcheck::replay::rule_out_pipeline;
use srgcheck::srgcore::{Spectrum, SrgParams};

/// Longest clique-order span a single call will tabulate.
pub const MAX_SPAN: i64 = 2000;

#[derive(Serialize)]
struct Analysis {
    params: String,
    spectrum: Option<Spectrum>,
    spectrum_text: Option<String>,
    spectrum_error: Option<String>,
    delsarte_bound: Option<i64>,
    clique_cap: Option<i64>,
    quadrangle_forced: bool,
    coclique_max: i64,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct TRangeRow {
    c: i64,
    t_min: Option<i64>,
    t_max: Option<i64>,
}

#[derive(Serialize)]
struct Curve {
    polynomial: String,
    threshold: String,
    threshold_approx: f64,
    points: Vec<CurvePoint>,
}

#[derive(Serialize)]
struct CurvePoint {
    c: i64,
    /// Exact decimal; `approx` only feeds the plot.
    value: String,
    approx: f64,
    nonnegative: bool,
}

fn params(n: i64, k: i64, lambda: i64, mu: i64) -> Result<SrgParams, String> {
    SrgParams::new(n, k, lambda, mu).map_err(|e| e.to_string())
}

fn span(c_min: i64, c_max: i64) -> Result<(), String> {
    if c_min > c_max {
        return Err(format!("empty range {c_min}..{c_max}"));
    }
    if c_max - c_min > MAX_SPAN {
        return Err(format!("range wider than {MAX_SPAN}"));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn analyze_json(n: i64, k: i64, lambda: i64, mu: i64) -> Result<String, String> {
    let r = rule_out_pipeline(&params(n, k, lambda, mu)?);
    Ok(to_json(&Analysis {
        params: r.params.to_string(),
        spectrum: r.spectrum.as_ref().ok().copied(),
        spectrum_text: r.spectrum.as_ref().ok().map(|s| s.to_string()),
        spectrum_error: r.spectrum.as_ref().err().map(|e| e.to_string()),
        delsarte_bound: r.delsarte_bound,
        clique_cap: r.clique_cap,
        quadrangle_forced: r.terwilliger_forces_quadrangle,
        coclique_max: r.coclique_max,
        notes: r.notes,
    }))
}

pub fn trange_json(c_min: i64, c_max: i64, lmin: i64) -> Result<String, String> {
    span(c_min, c_max)?;
    let rows = (c_min..=c_max)
        .map(|c| {
            let r = t_range(c, lmin).map_err(|e| e.to_string())?;
            let (t_min, t_max) = match r {
                TRange::Restricted { t_min, t_max, .. } => (Some(t_min), Some(t_max)),
                TRange::Unrestricted { .. } => (None, None),
            };
            Ok(TRangeRow { c, t_min, t_max })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&rows))
}

pub fn mg_curve_json(
    n: i64,
    k: i64,
    lambda: i64,
    mu: i64,
    c_min: i64,
    c_max: i64,
) -> Result<String, String> {
    span(c_min, c_max)?;
    let cubic = mg_polynomial(&params(n, k, lambda, mu)?).map_err(|e| e.to_string())?;
    let points = (c_min..=c_max)
        .map(|c| {
            let v = cubic.eval(c);
            CurvePoint {
                c,
                approx: v.to_f64().unwrap_or(f64::NAN),
                nonnegative: !v.is_negative(),
                value: v.to_string(),
            }
        })
        .collect();
    Ok(to_json(&Curve {
        polynomial: cubic.polynomial.to_string(),
        threshold: format_rational(&cubic.threshold),
        threshold_approx: to_f64(&cubic.threshold),
        points,
    }))
}

/// Parameter-level analysis: spectrum, Delsarte bound, clique cap.
#[wasm_bindgen]
pub fn analyze(n: i32, k: i32, lambda: i32, mu: i32) -> Result<String, JsValue> {
    analyze_json(n.into(), k.into(), lambda.into(), mu.into()).map_err(|e| JsValue::from_str(&e))
}

/// Admissible intersection sizes of an outside vertex with a clique, per clique order.
#[wasm_bindgen]
pub fn trange_table(c_min: i32, c_max: i32, lmin: i32) -> Result<String, JsValue> {
    trange_json(c_min.into(), c_max.into(), lmin.into()).map_err(|e| JsValue::from_str(&e))
}

/// The maximal-clique cubic sampled at every integer order in `[c_min, c_max]`.
#[wasm_bindgen]
pub fn mg_curve(
    n: i32,
    k: i32,
    lambda: i32,
    mu: i32,
    c_min: i32,
    c_max: i32,
) -> Result<String, JsValue> {
    mg_curve_json(
        n.into(),
        k.into(),
        lambda.into(),
        mu.into(),
        c_min.into(),
        c_max.into(),
    )
    .map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn analyze_flagship() {
        let v: Value = serde_json::from_str(&analyze_json(1911, 270, 105, 27).unwrap()).unwrap();
        assert_eq!(v["spectrum_text"], "270, 81^65, (-3)^1845");
        assert_eq!(v["delsarte_bound"], 91);
        assert_eq!(v["clique_cap"], 32);
    }

    #[test]
    fn analyze_reports_rejections() {
        let v: Value = serde_json::from_str(&analyze_json(5, 2, 0, 1).unwrap()).unwrap();
        assert!(v["spectrum_error"].as_str().unwrap().contains("irrational"));
        assert!(analyze_json(10, 3, 0, 2).is_err());
    }

    #[test]
    fn trange_rows() {
        let v: Value = serde_json::from_str(&trange_json(29, 30, -3).unwrap()).unwrap();
        assert_eq!(v[0]["t_min"], 8);
        assert_eq!(v[1]["t_max"], 24);
        let small: Value = serde_json::from_str(&trange_json(2, 3, -3).unwrap()).unwrap();
        assert!(small[0]["t_min"].is_null());
        assert!(trange_json(5, 4, -3).is_err());
        assert!(trange_json(2, 2 + MAX_SPAN + 1, -3).is_err());
    }

    #[test]
    fn curve_signs() {
        let v: Value =
            serde_json::from_str(&mg_curve_json(1911, 270, 105, 27, 26, 97).unwrap()).unwrap();
        assert_eq!(v["threshold"], "229/7");
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts.len(), 72);
        assert_eq!(pts[0]["nonnegative"], false);
        assert_eq!(pts[71]["nonnegative"], false);
        assert_eq!(
            pts[0]["value"],
            (672i64 * 26 * 26 * 26 - 80784 * 26 * 26 + 1468512 * 26 + 3277200).to_string()
        );
    }
}
