//! WebAssembly bindings for the static demo page. Every entry point returns a
//! JSON string; failures come back as `{"error": ...}`.

use garside::braid::{normal_form, x_a, x_b, BraidWord};
use garside::certify::certify;
use garside::graph::{build_graph, count_table, lift, spectral_radius, LoopReading};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest strand count the page offers; the graph at n = 6 already has 89482 edges.
const MAX_N: usize = 6;
const LIFT_CAP: usize = 200_000;

fn to_json(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_n(n: usize) -> Result<(), String> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must be between 3 and {MAX_N}"))
    }
}

pub fn normal_form_json(n: usize, word: &str) -> Result<Value, String> {
    check_n(n)?;
    let w = BraidWord::parse(n, word).map_err(|e| e.to_string())?;
    let x = normal_form(&w);
    let rigid = if x.canonical_length() == 0 { None } else { x.is_rigid().ok() };
    Ok(json!({
        "normal_form": x.to_string(),
        "inf": x.inf(),
        "sup": x.sup(),
        "len": x.canonical_length(),
        "rigid": rigid,
    }))
}

/// Counts up to `lmax`, and the growth rates with and without the chosen pattern.
pub fn counts_json(n: usize, lmax: usize, pattern: &str) -> Result<Value, String> {
    check_n(n)?;
    if lmax > 60 {
        return Err("lmax is limited to 60 here".into());
    }
    let g = build_graph(n).map_err(|e| e.to_string())?;
    let pat = match pattern {
        "xa" => Some(x_a(n)),
        "xb" => Some(x_b(n)),
        "" | "none" => None,
        other => return Err(format!("unknown pattern {other}")),
    }
    .transpose()
    .map_err(|e| e.to_string())?
    .map(|x| x.factors().to_vec());
    let pats: Vec<_> = pat.iter().cloned().collect();
    let t = count_table(&g, lmax, &pats, LoopReading::Linear, LIFT_CAP).map_err(|e| e.to_string())?;
    let gamma = spectral_radius(g.adjacency()).gamma;
    let gamma_w = match &pat {
        Some(p) => {
            let l = lift(&g, p.len().saturating_sub(1).max(1), LIFT_CAP)
                .and_then(|l| l.forbid(&g, p))
                .map_err(|e| e.to_string())?;
            Some(spectral_radius(l.adjacency()).gamma)
        }
        None => None,
    };
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "gamma": gamma,
        "gamma_w": gamma_w,
        "csv": t.to_csv(),
    }))
}

pub fn certify_json(n: usize, word: &str) -> Result<Value, String> {
    check_n(n)?;
    let w = BraidWord::parse(n, word).map_err(|e| e.to_string())?;
    let x = normal_form(&w);
    let v = certify(&x).map_err(|e| e.to_string())?;
    let mut out = serde_json::to_value(&v).map_err(|e| e.to_string())?;
    out["normal_form"] = json!(x.to_string());
    Ok(out)
}

#[wasm_bindgen(js_name = normalForm)]
pub fn normal_form_js(n: usize, word: &str) -> String {
    to_json(normal_form_json(n, word))
}

#[wasm_bindgen(js_name = counts)]
pub fn counts_js(n: usize, lmax: usize, pattern: &str) -> String {
    to_json(counts_json(n, lmax, pattern))
}

#[wasm_bindgen(js_name = certify)]
pub fn certify_js(n: usize, word: &str) -> String {
    to_json(certify_json(n, word))
}
