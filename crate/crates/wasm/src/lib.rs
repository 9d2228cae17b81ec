//! Browser bindings. Each export returns a JSON string; rationals travel as
//! `"num/den"` strings with a float `approx` beside them for plotting only.

use icis_core::arith::format_rational;
use icis_core::coefficients::{coeff_mean, coeff_stirling};
use icis_core::invariants::MAX_CODIMENSION;
use icis_core::verifier::{check_new_conjecture, check_strong_durfee, sharpness_sweep};
use icis_core::{DegreeVector, InvariantRecord, Rational, Verdict};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn rat(q: &Rational) -> Value {
    json!({ "exact": format_rational(q), "approx": q.to_f64() })
}

fn verdict(v: &Verdict) -> Value {
    json!({
        "claim": v.claim.id(),
        "outcome": v.outcome.as_str(),
        "lhs": format_rational(&v.lhs),
        "relation": v.relation.symbol(),
        "rhs": format_rational(&v.rhs),
        "note": v.note,
    })
}

fn parse_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|e| format!("'{s}': {e}")))
        .collect()
}

pub fn invariants_json(n: u32, degrees: &str) -> Result<String, String> {
    let d = DegreeVector::new(n, parse_list(degrees)?).map_err(|e| e.to_string())?;
    let rec = InvariantRecord::compute(&d);
    let c = coeff_stirling(n, d.r() as u32);
    Ok(json!({
        "n": n,
        "degrees": rec.degrees,
        "mu": rec.mu.to_string(),
        "pg": rec.pg.to_string(),
        "P": rec.multiplicity.to_string(),
        "ratio": rec.ratio.as_ref().map(rat),
        "coefficient": rat(&c),
        "conjecture": verdict(&check_new_conjecture(&d)),
        "strong_durfee": verdict(&check_strong_durfee(&d)),
    })
    .to_string())
}

pub fn coefficient_table_json(n_max: u32, r_max: u32) -> Result<String, String> {
    if !(1..=12).contains(&n_max) || !(1..=12).contains(&r_max) {
        return Err("table size limited to 1..12".into());
    }
    let rows: Vec<Value> = (1..=n_max)
        .map(|n| {
            let cells: Vec<Value> = (1..=r_max)
                .map(|r| {
                    let c = coeff_stirling(n, r);
                    let mut cell = rat(&c);
                    cell["agree"] = (coeff_mean(n, r) == c).into();
                    cell
                })
                .collect();
            json!({ "n": n, "cells": cells })
        })
        .collect();
    Ok(json!({ "n_max": n_max, "r_max": r_max, "rows": rows }).to_string())
}

/// Rows for `p = 2..=p_max`, skipping degrees with `p_g = 0`.
pub fn sharpness_json(n: u32, r: usize, p_max: u64) -> Result<String, String> {
    if !(1..=MAX_CODIMENSION).contains(&r) || !(2..=400).contains(&p_max) {
        return Err(format!("need 1 <= r <= {MAX_CODIMENSION} and 2 <= p_max <= 400"));
    }
    let ps: Vec<u64> = (2..=p_max)
        .filter(|&p| DegreeVector::equal(n, r, p).is_ok_and(|d| InvariantRecord::compute(&d).pg > 0.into()))
        .collect();
    if ps.is_empty() {
        return Err("p_g vanishes for every p in range".into());
    }
    let s = sharpness_sweep(n, r, &ps).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|row| json!({ "p": row.p, "ratio": rat(&row.ratio), "deviation": rat(&row.deviation) }))
        .collect();
    Ok(json!({ "n": n, "r": r, "limit": rat(&s.coefficient), "decreasing": s.decreasing, "rows": rows }).to_string())
}

#[wasm_bindgen]
pub fn invariants(n: u32, degrees: &str) -> Result<String, JsError> {
    invariants_json(n, degrees).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coefficient_table(n_max: u32, r_max: u32) -> Result<String, JsError> {
    coefficient_table_json(n_max, r_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sharpness(n: u32, r: usize, p_max: u64) -> Result<String, JsError> {
    sharpness_json(n, r, p_max).map_err(|e| JsError::new(&e))
}
