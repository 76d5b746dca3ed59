//! Fibonacci anyon operations exported to JavaScript.
//!
//! Every export takes plain strings and numbers and returns a JSON string, so
//! the page needs no bindings beyond `JSON.parse`. Errors are thrown as
//! strings.

use anyon_core::{
    closure_invariant, compile_unitary, evaluate, fibonacci, parse_braid, AnyonModel, ComplexMatrix, Label,
    SearchOptions, SectorSpec, C64,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest search the page may request; length 10 on 3 strands stays well under a second.
pub const MAX_SEARCH_LEN: usize = 10;

const TAU: Label = Label(1);

fn model() -> AnyonModel {
    fibonacci()
}

fn total_label(model: &AnyonModel, total: &str) -> Result<Label, String> {
    model.ring().label_by_name(total).map_err(|e| e.to_string())
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

/// Matrix of a braid word on `strands` tau anyons with the given total charge.
pub fn braid_matrix(word: &str, strands: usize, total: &str) -> Result<String, String> {
    let m = model();
    let w = parse_braid(word, strands).map_err(|e| e.to_string())?;
    let u = evaluate(&m, &w, TAU, total_label(&m, total)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "word": w.to_string(),
        "dim": u.rows(),
        "matrix": matrix_json(&u),
        "unitarity_residual": u.unitarity_residual(),
    })
    .to_string())
}

/// Normalized closure invariant of a braid word with tau-colored strands.
pub fn knot_invariant(word: &str, strands: usize) -> Result<String, String> {
    let m = model();
    let w = parse_braid(word, strands).map_err(|e| e.to_string())?;
    let v = closure_invariant(&m, &w, TAU).map_err(|e| e.to_string())?;
    Ok(json!({
        "word": w.to_string(),
        "writhe": v.writhe,
        "re": v.normalized.re,
        "im": v.normalized.im,
    })
    .to_string())
}

/// Shortest braid word closest to a target, given as row-major `[re, im, ...]`.
pub fn compile_target(target: &[f64], strands: usize, total: &str, max_len: usize) -> Result<String, String> {
    if max_len > MAX_SEARCH_LEN {
        return Err(format!("max length is capped at {MAX_SEARCH_LEN} in the browser"));
    }
    if !target.len().is_multiple_of(2) {
        return Err("target needs re, im pairs".into());
    }
    let entries: Vec<C64> = target.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
    let dim = (entries.len() as f64).sqrt().round() as usize;
    let u = ComplexMatrix::from_vec(dim, dim, entries).map_err(|e| e.to_string())?;
    let m = model();
    let sector = SectorSpec {
        charge: TAU,
        strands,
        total: total_label(&m, total)?,
    };
    let c = compile_unitary(&m, sector, &u, max_len, SearchOptions::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "word": c.word.to_string(),
        "letters": c.word.letters(),
        "distance": c.distance,
        "explored": c.explored,
    })
    .to_string())
}

#[wasm_bindgen(js_name = braidMatrix)]
pub fn braid_matrix_js(word: &str, strands: usize, total: &str) -> Result<String, JsValue> {
    braid_matrix(word, strands, total).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = knotInvariant)]
pub fn knot_invariant_js(word: &str, strands: usize) -> Result<String, JsValue> {
    knot_invariant(word, strands).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = compileTarget)]
pub fn compile_target_js(target: &[f64], strands: usize, total: &str, max_len: usize) -> Result<String, JsValue> {
    compile_target(target, strands, total, max_len).map_err(|e| JsValue::from_str(&e))
}
