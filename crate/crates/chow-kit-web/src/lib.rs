//! Browser demo bindings: three interactive operations over the core crate,
//! each returning a JSON envelope for a static page to render. Exact values
//! travel as strings; floating-point root approximations are provided only
//! for plotting.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use chow_kit::chow::poset_report;
use chow_kit::classical::{
    binomial_eulerian, eulerian, gamma_binomial_eulerian, gamma_eulerian, verify_decomposition,
};
use chow_kit::descent::{verify_interlacing_diagram, DEFAULT_ENUM_BOUND};
use chow_kit::format::parse_poset_json;
use chow_kit::poly::IntPoly;
use chow_kit::poset::{boolean_lattice, face_poset, uniform_flats, GradedPoset};
use chow_kit::roots::RootIsolation;
use chow_kit::sets::SmallSet;

fn err_json(message: impl ToString) -> String {
    json!({ "ok": false, "error": message.to_string() }).to_string()
}

/// Approximate real roots (with multiplicity) for plotting.
fn approx_roots(p: &IntPoly) -> Vec<f64> {
    let Ok(iso) = RootIsolation::isolate(p) else {
        return Vec::new();
    };
    let eps = BigRational::new(1.into(), 1_048_576.into());
    iso.refined(&eps)
        .intervals
        .iter()
        .flat_map(|r| {
            let mid = (&r.lo + &r.hi) / BigRational::from_integer(2.into());
            let val = mid.to_f64().unwrap_or(f64::NAN);
            std::iter::repeat_n(val, r.multiplicity as usize)
        })
        .collect()
}

fn poly_json(p: &IntPoly) -> serde_json::Value {
    json!({
        "coeffs": p.to_coeff_string(),
        "pretty": p.pretty(),
        "roots": approx_roots(p),
    })
}

fn build_poset(kind: &str, k: u32, n: u32, facets_json: &str) -> Result<GradedPoset, String> {
    match kind {
        "uniform" => uniform_flats(k, n).map_err(|e| e.to_string()),
        "boolean" => boolean_lattice(n).map_err(|e| e.to_string()),
        "facets" => {
            // Accept either a bare facet array or the full poset file format.
            if let Ok(facets) = serde_json::from_str::<Vec<Vec<u32>>>(facets_json) {
                face_poset(&facets).map_err(|e| e.to_string())
            } else {
                parse_poset_json(facets_json).map_err(|e| e.to_string())
            }
        }
        other => Err(format!("unknown poset kind {other:?}")),
    }
}

/// Chow analysis of a poset chosen by kind: "uniform" (k, n), "boolean" (n),
/// or "facets" (JSON facet list or poset file).
#[wasm_bindgen]
pub fn analyze_poset(kind: &str, k: u32, n: u32, facets_json: &str) -> String {
    let poset = match build_poset(kind, k, n, facets_json) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let violations = poset.validate();
    if !violations.is_empty() {
        return err_json(violations.join("; "));
    }
    let report = match poset_report(&poset) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    let alpha: Vec<serde_json::Value> = report
        .stats
        .alpha
        .iter()
        .map(|(t, v)| json!({ "set": t.to_string(), "value": v }))
        .collect();
    let beta: Vec<serde_json::Value> = report
        .stats
        .beta
        .iter()
        .map(|(s, v)| json!({ "set": s.to_string(), "value": v }))
        .collect();
    json!({
        "ok": true,
        "elements": report.elements,
        "n": report.result.n,
        "simplicial": report.simplicial,
        "f_vector": report.f,
        "h_vector": report.h,
        "flag_alpha": alpha,
        "flag_beta": beta,
        "chow": poly_json(&report.result.chow),
        "chow_dual": poly_json(&report.result.chow_dual),
        "aug": poly_json(&report.result.aug),
        "gamma_chow": report.result.gamma_chow.to_coeff_string(),
        "gamma_chow_dual": report.result.gamma_chow_dual.to_coeff_string(),
        "gamma_aug": report.result.gamma_aug.to_coeff_string(),
        "verdicts": serde_json::to_value(&report.verdicts).unwrap(),
        "pass": report.pass(),
    })
    .to_string()
}

fn parse_t(n: u32, spec: &str) -> Result<SmallSet, String> {
    match spec {
        "full" => Ok(SmallSet::interval(1, n)),
        "chow" => Ok(SmallSet::interval(1, n - 1)),
        list => {
            let mut t = SmallSet::empty();
            for part in list.split(',') {
                let v: u32 = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("cannot parse T element {part:?}"))?;
                if v == 0 || v > n {
                    return Err(format!("T element {v} outside 1..={n}"));
                }
                t = t.with(v);
            }
            Ok(t)
        }
    }
}

/// Builds and verifies the interlacing diagram D_n(T); T as "full", "chow",
/// or an explicit comma list containing 1.
#[wasm_bindgen]
pub fn diagram_json(n: u32, t_spec: &str) -> String {
    if !(2..=8).contains(&n) {
        return err_json("diagram demo supports 2 <= n <= 8");
    }
    let t = match parse_t(n, t_spec) {
        Ok(t) => t,
        Err(e) => return err_json(e),
    };
    let verdict = match verify_interlacing_diagram(n, t, DEFAULT_ENUM_BOUND) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let rows: Vec<Vec<serde_json::Value>> = (0..3u32)
        .map(|r| {
            (0..=n)
                .map(|c| {
                    let p = &verdict.diagram.cells[(r * (n + 1) + c) as usize].poly;
                    json!({ "coeffs": p.to_coeff_string(), "pretty": p.pretty() })
                })
                .collect()
        })
        .collect();
    json!({
        "ok": true,
        "n": n,
        "t": t.to_string(),
        "rows": rows,
        "pass": verdict.pass,
        "failures": serde_json::to_value(&verdict.failures).unwrap(),
    })
    .to_string()
}

/// Eulerian and binomial Eulerian data for rank n, with the cross-check
/// verdicts the CLI prints.
#[wasm_bindgen]
pub fn eulerian_json(n: u32) -> String {
    if !(1..=8).contains(&n) {
        return err_json("eulerian demo supports 1 <= n <= 8");
    }
    let bound = DEFAULT_ENUM_BOUND;
    let m = n + 1;
    let a = match eulerian(m, bound) {
        Ok(a) => a,
        Err(e) => return err_json(e),
    };
    let at = match binomial_eulerian(m, bound) {
        Ok(a) => a,
        Err(e) => return err_json(e),
    };
    let gamma_a = gamma_eulerian(m, bound).unwrap_or_default();
    let gamma_at = gamma_binomial_eulerian(m, bound).unwrap_or_default();
    let decomposition = if n >= 2 {
        match verify_decomposition(n, bound) {
            Ok(v) => json!({ "eulerian_ok": v.eulerian_ok, "binomial_ok": v.binomial_ok }),
            Err(e) => return err_json(e),
        }
    } else {
        serde_json::Value::Null
    };
    json!({
        "ok": true,
        "n": n,
        "eulerian": poly_json(&a),
        "binomial_eulerian": poly_json(&at),
        "gamma_eulerian": gamma_a,
        "gamma_binomial_eulerian": gamma_at,
        "decomposition": decomposition,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_uniform_golden() {
        let out = analyze_poset("uniform", 3, 4, "");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["chow"]["coeffs"], "1,7,1");
        assert_eq!(v["aug"]["coeffs"], "1,11,11,1");
        assert_eq!(v["pass"], true);
        let roots = v["aug"]["roots"].as_array().unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[1].as_f64().unwrap() + 1.0).abs() < 1e-3);
    }

    #[test]
    fn analyze_facets_and_errors() {
        let out = analyze_poset("facets", 0, 0, "[[1,2,3,4],[4,5,6,7]]");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["pass"], false);
        assert_eq!(v["chow"]["coeffs"], "1,23,43,23,1");

        let bad: serde_json::Value =
            serde_json::from_str(&analyze_poset("facets", 0, 0, "nonsense")).unwrap();
        assert_eq!(bad["ok"], false);
        let unknown: serde_json::Value =
            serde_json::from_str(&analyze_poset("nope", 0, 0, "")).unwrap();
        assert_eq!(unknown["ok"], false);
    }

    #[test]
    fn diagram_and_eulerian_outputs() {
        let v: serde_json::Value = serde_json::from_str(&diagram_json(2, "1,2")).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["pass"], true);
        assert_eq!(v["rows"][1][1]["coeffs"], "0,2");

        let e: serde_json::Value = serde_json::from_str(&eulerian_json(3)).unwrap();
        assert_eq!(e["ok"], true);
        assert_eq!(e["eulerian"]["coeffs"], "1,11,11,1");
        assert_eq!(e["decomposition"]["eulerian_ok"], true);
    }
}
