//! wasm-bindgen surface for the static demo page. Each export takes and returns JSON
//! strings; the `*_json` functions hold the logic so they can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use g2homog::analysis::{printed_psi_metric, psi_resolved};
use g2homog::catalog::build_entry;
use g2homog::linalg::{parse_q, q_to_string};
use g2homog::liealg::{invariant_dims, irreducible_dims};
use g2homog::stable_forms::{classify_report, metric_from_4form};
use g2homog::KForm;

/// Classifies a 3-form given either as KForm JSON or as a term list like "e123 + e145 - 2 e257".
pub fn classify_json(input: &str) -> Result<String, String> {
    let form = parse_form(input)?;
    if form.dim() != 7 || form.degree() != 3 {
        return Err(format!("expected a 3-form on R^7, got degree {}", form.degree()));
    }
    let r = classify_report(&form).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

fn parse_form(input: &str) -> Result<KForm, String> {
    let s = input.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| format!("malformed form JSON: {e}"));
    }
    let mut terms = Vec::new();
    let mut degree = None;
    let normalized = s.replace('-', "+-");
    for raw in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, name) = match raw.find('e') {
            Some(pos) => (raw[..pos].trim(), raw[pos + 1..].trim()),
            None => return Err(format!("term {raw:?} has no e-index")),
        };
        let c = match coef {
            "" => parse_q("1"),
            "-" => parse_q("-1"),
            c => parse_q(&c.replace(' ', "")),
        }
        .map_err(|e| e.to_string())?;
        let idx: Vec<usize> = name.chars().map(|ch| ch.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(|| format!("bad index in {raw:?}"))?;
        if *degree.get_or_insert(idx.len()) != idx.len() {
            return Err("terms have different degrees".into());
        }
        terms.push((idx, c));
    }
    KForm::from_terms(7, degree.ok_or("empty form")?, terms).map_err(|e| e.to_string())
}

/// The 4-form ψ(a,b) = a·∗φ + b·ω⁴⁵⁶⁷: computed and printed metric diagonals and stability.
pub fn psi_family_json(a: &str, b: &str) -> Result<String, String> {
    let (a, b) = (parse_q(a).map_err(|e| e.to_string())?, parse_q(b).map_err(|e| e.to_string())?);
    let m = metric_from_4form(&psi_resolved(&a, &b)).map_err(|e| e.to_string())?;
    let printed = printed_psi_metric(&a, &b);
    let diag = |g: &g2homog::QMatrix| (0..7).map(|i| q_to_string(&g[(i, i)])).collect::<Vec<_>>();
    Ok(json!({
        "computed": diag(&m.gdual),
        "printed": diag(&printed),
        "det": q_to_string(&m.det()),
        "stable": m.is_stable(),
    })
    .to_string())
}

/// Invariant dimensions of a catalog entry, with optional comma-separated parameters.
pub fn catalog_invariants_json(id: &str, params: &str) -> Result<String, String> {
    let p: Vec<i64> = params
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|e| format!("bad parameter {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let built = build_entry(id, if p.is_empty() { None } else { Some(&p) }).map_err(|e| e.to_string())?;
    let d = invariant_dims(&built.module);
    let irr = irreducible_dims(&built.module).map_err(|e| e.to_string())?;
    Ok(json!({
        "id": built.entry.id,
        "group": built.entry.group,
        "subgroup": built.entry.subgroup,
        "params": built.entry.params,
        "d1": d.d1, "d2": d.d2, "d3": d.d3,
        "irreducible": irr,
        "expected": built.entry.expected,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn classify(input: &str) -> Result<String, JsValue> {
    classify_json(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn psi_family(a: &str, b: &str) -> Result<String, JsValue> {
    psi_family_json(a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog_invariants(id: &str, params: &str) -> Result<String, JsValue> {
    catalog_invariants_json(id, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog_ids() -> String {
    serde_json::to_string(&g2homog::catalog::catalog().entries.iter().map(|e| &e.id).collect::<Vec<_>>()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_term_lists() {
        let r = classify_json("e123 + e145 + e167 + e246 - e257 - e347 - e356").unwrap();
        assert!(r.contains("\"definite\""));
        let r = classify_json("e123").unwrap();
        assert!(r.contains("\"degenerate\""));
        assert!(classify_json("e12").is_err());
        assert!(classify_json("x").is_err());
    }

    #[test]
    fn psi_family_reports_stability() {
        let v: serde_json::Value = serde_json::from_str(&psi_family_json("1", "0").unwrap()).unwrap();
        assert_eq!(v["stable"], true);
        let v: serde_json::Value = serde_json::from_str(&psi_family_json("1", "-1").unwrap()).unwrap();
        assert_eq!(v["stable"], false);
    }

    #[test]
    fn invariants_of_case_1() {
        let v: serde_json::Value = serde_json::from_str(&catalog_invariants_json("1", "").unwrap()).unwrap();
        assert_eq!(v["d3"], 2);
        assert!(catalog_invariants_json("5ii", "1,2,3").is_err());
    }
}
