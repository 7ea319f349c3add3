//! Browser bindings for the interactive demo page.
//!
//! Three operations are exposed, each taking plain strings and returning a
//! JSON string (an error object `{"error": "..."}` on bad input), so the
//! page needs no glue types:
//!
//! * [`order_report`] — factored and evaluated generic order,
//! * [`sylow_report`] — Sylow ℓ-subgroup structure for one prime,
//! * [`sweep_report`] — reports for every prime ≤ lmax dividing the order.

use gensylow::analyzer;
use gensylow::arith::{primes_up_to, QSpec};
use gensylow::group_data::GroupSpec;
use gensylow::order;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn err(e: impl ToString) -> String {
    json!({ "error": e.to_string() }).to_string()
}

fn order_value(g: &GroupSpec, q: &QSpec) -> gensylow::Result<Value> {
    let fo = order::generic_order(g)?;
    let factors: gensylow::Result<Vec<Value>> = fo
        .factors
        .iter()
        .map(|(key, mult)| {
            let v = gensylow::arith::quad_eval(&key.id.quad_poly(), &q.pow(key.subst))?;
            Ok(json!({
                "id": key.id.to_string(),
                "subst_degree": key.subst,
                "mult": mult,
                "value": v.to_string(),
            }))
        })
        .collect();
    Ok(json!({
        "symbolic": fo.to_string(),
        "q_exponent": fo.q_exponent,
        "factors": factors?,
        "value": fo.evaluate(q)?.to_string(),
    }))
}

fn sylow_value(r: &analyzer::SylowReport) -> Value {
    json!({
        "ell": r.ell,
        "d_ell": r.d_ell,
        "D_ell": r.big_d,
        "factor": r.chosen.as_ref().map(|c| json!({
            "id": c.id.to_string(),
            "subst_degree": c.subst,
            "n_phi": c.n_phi,
            "v_phi": c.v_phi,
        })),
        "w_phi": { "degrees": r.w_phi_degrees, "order": r.w_phi_order },
        "sylow_order": r.sylow_order.to_string(),
        "abelian": r.abelian,
        "exception": r.exception.to_string(),
        "torus_part": r.torus_part.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn parse_pair(group: &str, q: &str) -> gensylow::Result<(GroupSpec, QSpec)> {
    let g = GroupSpec::parse(group)?;
    let q = QSpec::parse(q)?;
    g.validate_q(&q)?;
    Ok((g, q))
}

/// Factored and evaluated generic order of `group` at `q`.
#[wasm_bindgen]
pub fn order_report(group: &str, q: &str) -> String {
    match parse_pair(group, q).and_then(|(g, q)| {
        let v = order_value(&g, &q)?;
        Ok(json!({ "group": g.to_string(), "q": q.to_string(), "order": v }))
    }) {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}

/// Sylow `ℓ`-subgroup structure of a single-factor `group` at `q`.
#[wasm_bindgen]
pub fn sylow_report(group: &str, q: &str, ell: u64) -> String {
    let result = parse_pair(group, q).and_then(|(g, q)| {
        if g.factors.len() != 1 {
            return Err(gensylow::Error::InvalidGroup(
                "sylow analysis takes a single quasi-simple factor".into(),
            ));
        }
        let r = analyzer::analyze(&g.factors[0], &q, ell)?;
        Ok(json!({
            "group": g.to_string(),
            "q": q.to_string(),
            "order": order_value(&g, &q)?,
            "sylow": sylow_value(&r),
        }))
    });
    match result {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}

/// Sylow reports for every prime `≤ lmax` dividing the order.
#[wasm_bindgen]
pub fn sweep_report(group: &str, q: &str, lmax: u64) -> String {
    let result = parse_pair(group, q).and_then(|(g, q)| {
        if g.factors.len() != 1 {
            return Err(gensylow::Error::InvalidGroup(
                "sweep takes a single quasi-simple factor".into(),
            ));
        }
        let f = g.factors[0];
        let mut rows = Vec::new();
        for l in primes_up_to(lmax.min(1000)) {
            if l == q.p {
                continue;
            }
            let r = analyzer::analyze(&f, &q, l)?;
            if r.sylow_valuation > 0 {
                rows.push(sylow_value(&r));
            }
        }
        Ok(json!({
            "group": g.to_string(),
            "q": q.to_string(),
            "order": order_value(&g, &q)?,
            "primes": rows,
        }))
    });
    match result {
        Ok(v) => v.to_string(),
        Err(e) => err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_report_renders() {
        let s = order_report("3D4", "2");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["order"]["value"], "211341312");
        assert_eq!(
            v["order"]["symbolic"],
            "q^12 * P1^2 * P2^2 * P3^2 * P6^2 * P12"
        );
    }

    #[test]
    fn sylow_report_renders() {
        let s = sylow_report("2G2", "sqrt3", 2);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["sylow"]["abelian"], true);
        assert_eq!(v["sylow"]["torus_part"][2], "2");
        assert_eq!(v["sylow"]["exception"], "2G2-ell2");
    }

    #[test]
    fn sweep_report_renders() {
        let s = sweep_report("B2", "3", 20);
        let v: Value = serde_json::from_str(&s).unwrap();
        let primes = v["primes"].as_array().unwrap();
        // ℓ ∈ {2, 5, 13}: |Sp4(3)| = 2^7·3^4·5; 13 does not divide
        assert_eq!(primes.len(), 2);
    }

    #[test]
    fn errors_are_json() {
        let s = order_report("Z9", "2");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].is_string());
        let s = sylow_report("B2", "2", 2); // ℓ = p
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].is_string());
    }
}
