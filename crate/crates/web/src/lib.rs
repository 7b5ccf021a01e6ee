//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<String, String>`, so the logic is testable without a browser.

use curveclass::field::prime_factors;
use curveclass::ihara::ihara_sum_exceeds;
use curveclass::io::point_line;
use curveclass::{classify, l_polynomial, parse_curve, Budget, MarkedInstance};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Enumeration caps for the page: small enough to keep the tab responsive.
fn budget() -> Budget {
    Budget {
        max_field_size: 200_000,
        ..Budget::default()
    }
}

fn ids(list: &str) -> Vec<String> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn to_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

pub fn classify_report(curve: &str, p: u64, s: &str, t: &str) -> Result<String, String> {
    let budget = budget();
    let curve = parse_curve(curve).map_err(|e| e.to_string())?;
    let inst =
        MarkedInstance::new(curve, &ids(s), &ids(t), p, &budget).map_err(|e| e.to_string())?;
    let report = classify(&inst, &budget).map_err(|e| e.to_string())?;
    Ok(to_json(
        &serde_json::to_value(&report).expect("serializable"),
    ))
}

/// Curve summary, closed points up to `max_degree` and the L-polynomial.
pub fn describe_curve(curve: &str, max_degree: u32) -> Result<String, String> {
    if !(1..=6).contains(&max_degree) {
        return Err("max degree must be between 1 and 6".into());
    }
    let budget = budget();
    let curve = parse_curve(curve).map_err(|e| e.to_string())?;
    let points = curve
        .closed_points(max_degree, &budget)
        .map_err(|e| e.to_string())?;
    let lines: Vec<String> = points
        .iter()
        .map(|pt| point_line(curve.field(), pt))
        .collect();
    let l = l_polynomial(&curve, &budget).map_err(|e| e.to_string())?;
    Ok(to_json(&json!({
        "equation": curve.to_string(),
        "q": curve.q(),
        "genus": curve.genus(),
        "l_polynomial": l,
        "class_number": l.class_number(),
        "points": lines,
    })))
}

/// Exact comparison of `sum d / (q^(d/2) - 1)` over `degrees` with max(g - 1, 0).
pub fn ihara_compare(degrees: &str, q: u64, g: u32) -> Result<String, String> {
    let degrees = ids(degrees)
        .iter()
        .map(|d| match d.parse::<u32>() {
            Ok(n) if (1..=200).contains(&n) => Ok(n),
            _ => Err(format!("degree {d:?} is not an integer in 1..=200")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if degrees.is_empty() {
        return Err("give at least one degree".into());
    }
    if q < 2 || prime_factors(q).len() != 1 {
        return Err(format!("q = {q} is not a prime power"));
    }
    let bound = ihara_sum_exceeds(&degrees, q, g);
    let float: f64 = degrees
        .iter()
        .map(|&d| d as f64 / ((q as f64).powf(d as f64 / 2.0) - 1.0))
        .sum();
    let mut v = serde_json::to_value(&bound).expect("serializable");
    v["double_precision"] = json!(float);
    Ok(to_json(&v))
}

#[wasm_bindgen]
pub fn classify_json(curve: &str, p: u64, s: &str, t: &str) -> Result<String, JsError> {
    classify_report(curve, p, s, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn describe_json(curve: &str, max_degree: u32) -> Result<String, JsError> {
    describe_curve(curve, max_degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ihara_json(degrees: &str, q: u64, g: u32) -> Result<String, JsError> {
    ihara_compare(degrees, q, g).map_err(|e| JsError::new(&e))
}
