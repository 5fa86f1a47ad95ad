//! Browser bindings: Young symmetrizer vanishing, symmetric powers of free
//! types and Tor tables. Every entry point takes plain strings and returns
//! a JSON string; failures come back as `{"error": "..."}`.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use gradedhom::complex::tor;
use gradedhom::gring::{GradingSpec, MonomialRing, RingElement};
use gradedhom::io::{from_json, RingSpec};
use gradedhom::sympow::{
    operator_is_zero, quasi_idempotence, sym_type, type_of, young_symmetrizer, SuperSpace, SymBounds, SymReport,
    YoungShape,
};
use gradedhom::coeff::CoefficientRing;

/// Largest truncation and Tor degree the page will compute.
pub const MAX_W: i64 = 24;
pub const MAX_TOR: i64 = 6;

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn young_report(space: &str, shape: &str) -> Result<Value, String> {
    let space = SuperSpace::parse(space).map_err(err)?;
    let shape = YoungShape::parse(shape).map_err(err)?;
    let op = young_symmetrizer(&space, shape, &SymBounds::default()).map_err(err)?;
    let report = if operator_is_zero(&op, &space) {
        SymReport { zero: true, scalar_c: None, checked_words: space.word_count(op.length()) }
    } else {
        quasi_idempotence(&op, &space)
    };
    let mut v = serde_json::to_value(report).map_err(err)?;
    v["hook_product"] = json!(shape.hook_product());
    Ok(v)
}

pub fn sym_report(degrees: &str, power: usize) -> Result<Value, String> {
    let grading = GradingSpec::default();
    let degrees = degrees
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("bad degree `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let ty = type_of(&grading, &degrees);
    let coeff = CoefficientRing::parse("Q").map_err(err)?;
    let out = sym_type(&grading, &coeff, &ty, power).map_err(err)?;
    Ok(json!({ "type": ty, "sym_type": out, "rank": out.len() }))
}

fn ideal(r: &MonomialRing, s: &str) -> Result<Vec<RingElement>, String> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    body.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| r.parse(t).map_err(err)).collect()
}

/// Slice dimensions of `Tor_n(R/I, R/J)` for `n = 0..=max_n`.
pub fn tor_report(ring: &str, i: &str, j: &str, max_n: i64, w: i64) -> Result<Value, String> {
    if !(0..=MAX_TOR).contains(&max_n) || !(0..=MAX_W).contains(&w) {
        return Err(format!("need 0 <= n <= {MAX_TOR} and 0 <= W <= {MAX_W}"));
    }
    let spec: RingSpec = from_json(ring).map_err(err)?;
    let r = spec.build_single().map_err(err)?;
    let (i, j) = (ideal(&r, i)?, ideal(&r, j)?);
    let rows = (0..=max_n)
        .map(|n| {
            let e = tor(Arc::clone(&r), &i, &j, n, w).map_err(err)?.entry;
            Ok(json!({ "n": n, "start": e.start, "dims": e.dims }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({ "ring": r.to_string(), "truncation": w, "rows": rows }))
}

#[wasm_bindgen]
pub fn young(space: &str, shape: &str) -> String {
    wrap(young_report(space, shape))
}

#[wasm_bindgen]
pub fn sym_power(degrees: &str, power: usize) -> String {
    wrap(sym_report(degrees, power))
}

#[wasm_bindgen]
pub fn tor_table(ring: &str, i: &str, j: &str, max_n: i32, w: i32) -> String {
    wrap(tor_report(ring, i, j, max_n.into(), w.into()))
}
