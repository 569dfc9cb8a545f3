//! wasm-bindgen exports for the static demo page. Every export returns a JSON
//! string; the plain `*_json` functions carry the logic and run natively too.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use hypalg_core::factorial::{ratio_report, ratio_term, RatioReport, RatioSpec};
use hypalg_core::geometry::{dilate, interior_lattice_points, lift_config, LatticeConfig};
use hypalg_core::json::PolytopeJson;
use hypalg_core::rational::{format_rational, int, Rational};
use hypalg_core::relations::relation_lattice;
use hypalg_core::series::{psi_mns_series, specialize, VerificationReport, Window};

const MAX_LISTED: usize = 200;

fn list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("{what}: cannot parse {s:?}")))
        .collect()
}

fn spec(alpha: &str, beta: &str) -> Result<RatioSpec, String> {
    RatioSpec::new(list(alpha, "alpha")?, list(beta, "beta")?).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RatioView {
    label: String,
    report: RatioReport,
    terms: Vec<String>,
}

pub fn classify_ratio_json(alpha: &str, beta: &str, kmax: u32) -> Result<String, String> {
    let s = spec(alpha, beta)?;
    let report = ratio_report(&s, u64::from(kmax)).map_err(|e| e.to_string())?;
    let terms = (0..8).map(|k| format_rational(&ratio_term(&s, k))).collect();
    to_json(&RatioView {
        label: s.label(),
        report,
        terms,
    })
}

#[derive(Serialize)]
struct SliceView {
    k: i64,
    polytope: PolytopeJson,
    interior_count: usize,
    interior_points: Vec<Vec<i64>>,
}

/// `points` is a JSON array of integer points.
pub fn polytope_slice_json(points: &str, k: i32) -> Result<String, String> {
    let pts: Vec<Vec<i64>> = serde_json::from_str(points).map_err(|e| format!("points: {e}"))?;
    let cfg = lift_config(&pts).map_err(|e| e.to_string())?;
    let p = cfg.polytope().map_err(|e| e.to_string())?;
    let kp = dilate(&p, i64::from(k)).map_err(|e| e.to_string())?;
    let inner = interior_lattice_points(&kp);
    to_json(&SliceView {
        k: i64::from(k),
        polytope: PolytopeJson::from(&kp),
        interior_count: inner.len(),
        interior_points: inner.into_iter().take(MAX_LISTED).collect(),
    })
}

#[derive(Serialize)]
struct SeriesView {
    label: String,
    lattice_basis: Vec<Vec<i64>>,
    v: Vec<String>,
    terms: Vec<(Vec<i64>, String)>,
    specialized: Vec<String>,
    verification: VerificationReport,
}

/// The series attached to the head of a ratio configuration, with the box
/// and Euler checks and the one-variable specialization.
pub fn hypergeometric_series_json(alpha: &str, beta: &str, radius: u32) -> Result<String, String> {
    let s = spec(alpha, beta)?;
    let cfg = LatticeConfig::alpha_beta(&s.alpha, &s.beta).map_err(|e| e.to_string())?;
    let l = relation_lattice(&cfg);
    let v: Vec<Rational> = (0..cfg.len()).map(|i| if i <= s.n() { int(-1) } else { int(0) }).collect();
    let window = Window::lattice_ball(&l, i64::from(radius), 0);
    let psi = psi_mns_series(&v, &cfg, &l, &window).map_err(|e| e.to_string())?;
    let head: Vec<i64> = (0..cfg.len()).map(|i| -i64::from(i <= s.n())).collect();
    let u = cfg.combine(&head);
    let mut verification = VerificationReport::default();
    verification.expect_boxes("", &psi, &l).map_err(|e| e.to_string())?;
    verification.expect_euler("", &psi, &cfg, &u);
    let scale = if s.alpha.iter().sum::<u64>() % 2 == 0 { int(-1) } else { int(1) };
    let y = specialize(&psi, &l.basis[0], &scale).map_err(|e| e.to_string())?;
    to_json(&SeriesView {
        label: s.label(),
        lattice_basis: l.basis.clone(),
        v: v.iter().map(format_rational).collect(),
        terms: psi.terms.iter().map(|(k, c)| (k.clone(), format_rational(c))).collect(),
        specialized: y.coeffs.iter().map(format_rational).collect(),
        verification,
    })
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify_ratio(alpha: &str, beta: &str, kmax: u32) -> Result<String, JsError> {
    js(classify_ratio_json(alpha, beta, kmax))
}

#[wasm_bindgen]
pub fn polytope_slice(points: &str, k: i32) -> Result<String, JsError> {
    js(polytope_slice_json(points, k))
}

#[wasm_bindgen]
pub fn hypergeometric_series(alpha: &str, beta: &str, radius: u32) -> Result<String, JsError> {
    js(hypergeometric_series_json(alpha, beta, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn ratio() {
        let r: Value = serde_json::from_str(&classify_ratio_json("4", "2,1,1", 60).unwrap()).unwrap();
        assert_eq!(r["report"]["integral"], true);
        assert_eq!(r["report"]["algebraic_regime"], false);
        assert_eq!(r["terms"][1], "12");
        assert!(classify_ratio_json("2", "1", 10).is_err());
        assert!(classify_ratio_json("2", "x", 10).is_err());
    }

    #[test]
    fn slice() {
        let r: Value = serde_json::from_str(&polytope_slice_json("[[0,0],[1,0],[0,1]]", 3).unwrap()).unwrap();
        assert_eq!(r["interior_points"], serde_json::json!([[1, 1]]));
        assert!(polytope_slice_json("[[0,0],[1,0]", 2).is_err());
        assert!(polytope_slice_json("[[0,0],[1,0],[0,1]]", 0).is_err());
    }

    #[test]
    fn series() {
        let r: Value = serde_json::from_str(&hypergeometric_series_json("2", "1,1", 6).unwrap()).unwrap();
        assert_eq!(r["verification"]["pass"], true);
        let central: Vec<&str> = r["specialized"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        assert_eq!(central, ["1", "2", "6", "20", "70", "252", "924"]);
    }
}
