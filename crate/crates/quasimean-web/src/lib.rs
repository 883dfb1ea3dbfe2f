//! Browser demo bindings: a handful of JSON-in/JSON-out entry points over
//! the core crate, drawn by the static page in `index.html`. Everything
//! here also compiles and runs on the host, so the bridge logic is tested
//! with plain `cargo test`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use quasimean::catalog::Catalog;
use quasimean::expr;
use quasimean::iterate::{extend3, IterateConfig};
use quasimean::real::ExactDecimal;
use quasimean::tuple::RealTuple;

fn parse_values(csv: &str) -> Result<Vec<ExactDecimal>, String> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<ExactDecimal>().map_err(|e| e.to_string()))
        .collect()
}

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Evaluates a catalog entry at a comma-separated tuple.
#[wasm_bindgen]
pub fn eval_mean(id: &str, values_csv: &str) -> String {
    let inner = || -> Result<String, String> {
        let entry = Catalog::construct(id).map_err(|e| e.to_string())?;
        let vals = parse_values(values_csv)?;
        let t = RealTuple::from_decimals(&vals).map_err(|e| e.to_string())?;
        let v = entry.mean.eval(&t).map_err(|e| e.to_string())?;
        Ok(json!({ "id": entry.id, "value": v.render(), "approx": v.to_f64() }).to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// The whole truncation family at one tuple and scale: the values to pin
/// on a number line, in their guaranteed order.
#[wasm_bindgen]
pub fn truncation_panel(values_csv: &str, m: i32) -> String {
    let inner = || -> Result<String, String> {
        let vals = parse_values(values_csv)?;
        let t = RealTuple::from_decimals(&vals).map_err(|e| e.to_string())?;
        let mut rows = Vec::new();
        for name in [
            "shifted-ceil",
            "floor-arith",
            "arith",
            "ceil-arith",
            "shifted-floor",
            "star-arith",
        ] {
            let id = if name == "arith" {
                "arith".to_string()
            } else {
                format!("{name}?m={m}")
            };
            let entry = Catalog::construct(&id).map_err(|e| e.to_string())?;
            match entry.mean.eval(&t) {
                Ok(v) => rows.push(json!({
                    "id": id,
                    "value": v.render_plain(),
                    "approx": v.to_f64(),
                })),
                Err(e) => rows.push(json!({ "id": id, "error": e.to_string() })),
            }
        }
        let lo = t.min_value().to_f64();
        let hi = t.max_value().to_f64();
        Ok(json!({ "min": lo, "max": hi, "step": 10f64.powi(-m), "rows": rows }).to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Trace of the pairwise 3-variable extension: rows of (a, b, c) per step.
#[wasm_bindgen]
pub fn extend3_trace(id: &str, a: &str, b: &str, c: &str) -> String {
    let inner = || -> Result<String, String> {
        let entry = Catalog::construct(id).map_err(|e| e.to_string())?;
        let pa: ExactDecimal = a
            .trim()
            .parse()
            .map_err(|e: quasimean::MeanError| e.to_string())?;
        let pb: ExactDecimal = b
            .trim()
            .parse()
            .map_err(|e: quasimean::MeanError| e.to_string())?;
        let pc: ExactDecimal = c
            .trim()
            .parse()
            .map_err(|e: quasimean::MeanError| e.to_string())?;
        let cfg = IterateConfig {
            max_steps: 200,
            ..Default::default()
        };
        let tr = extend3(&entry.mean, &pa, &pb, &pc, &cfg).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<f64>> = tr
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64()).collect())
            .collect();
        let mut out = tr.verdict_json();
        out["rows"] = json!(rows);
        out["rows_exact"] = json!(tr
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.render_plain()).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        Ok(out.to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Duality rewrite of a formula, optionally simplified.
#[wasm_bindgen]
pub fn dualize_formula(text: &str, simplify: bool) -> String {
    let inner = || -> Result<String, String> {
        let e = expr::parse(text).map_err(|e| e.to_string())?;
        let mut d = expr::dualize(&e);
        if simplify {
            d = expr::simplify(&d);
        }
        Ok(json!({
            "input": expr::render(&e),
            "dual": expr::render(&d),
            "ast": expr::to_json(&d),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Cell grid over [1, 2]^2 marking where the truncated mean escapes the
/// envelope; the violation set whose volume the measures estimate.
#[wasm_bindgen]
pub fn violation_map(id: &str, cells: u32) -> String {
    let inner = || -> Result<String, String> {
        let entry = Catalog::construct(id).map_err(|e| e.to_string())?;
        let n = cells.clamp(8, 512) as usize;
        let mut grid = Vec::with_capacity(n * n);
        let mut violations = 0u32;
        for j in 0..n {
            for i in 0..n {
                let x = 1.0 + (i as f64 + 0.5) / n as f64;
                let y = 1.0 + (j as f64 + 0.5) / n as f64;
                let cell = match entry.mean.eval_f64(&[x, y]) {
                    Some(v) => {
                        let (lo, hi) = (x.min(y), x.max(y));
                        if v < lo - 1e-12 {
                            violations += 1;
                            1u8
                        } else if v > hi + 1e-12 {
                            violations += 1;
                            2u8
                        } else {
                            0u8
                        }
                    }
                    None => 3u8,
                };
                grid.push(cell);
            }
        }
        Ok(json!({
            "id": entry.id,
            "cells": n,
            "fraction": violations as f64 / (n * n) as f64,
            "grid": grid,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}
