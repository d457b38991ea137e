//! WebAssembly bindings for the browser demo. Each export takes JSON or a
//! matrix literal and returns a JSON string; errors come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

mod svg;

use num_traits::ToPrimitive;
use pwgl::circle::{PWMoebius, Smoothness};
use pwgl::pwgl::{image_tiles, validate, PWMap};
use pwgl::ratgeom::IntMatrix;
use pwgl::torusmap::{classify, fixed_set, ToralAffine};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[wasm_bindgen]
pub fn adams_json() -> String {
    PWMap::adams().to_json_string()
}

#[wasm_bindgen]
pub fn circle_example_json() -> String {
    PWMoebius::example().to_json_string()
}

/// Pieces and image tiles of a planar map as SVG, with the validation
/// report and homology.
#[wasm_bindgen]
pub fn torus_map(map_json: &str) -> String {
    respond(torus_map_value(map_json))
}

pub fn torus_map_value(map_json: &str) -> Result<Value, String> {
    let f = PWMap::from_json_str(map_json).map_err(|e| e.to_string())?;
    if f.dim() != 2 {
        return Err(format!("only planar maps can be drawn (n = {})", f.dim()));
    }
    let report = validate(&f).map_err(|e| e.to_string())?;
    let tiles = image_tiles(&f).map_err(|e| e.to_string())?;
    let palette = svg::Palette::new(f.pieces().iter().map(|p| p.map.to_string()));
    let domain: Vec<(Vec<(f64, f64)>, String)> =
        f.pieces().iter().map(|p| (svg::polygon(&p.region), p.map.to_string())).collect();
    let image: Vec<(Vec<(f64, f64)>, String)> =
        tiles.iter().map(|t| (svg::polygon(&t.region), f.pieces()[t.piece].map.to_string())).collect();
    let homology = f.homology().map(|h| h.to_string()).unwrap_or_else(|e| e.to_string());
    Ok(json!({
        "domain_svg": svg::square(&domain, &palette),
        "image_svg": svg::square(&image, &palette),
        "legend": palette.legend(),
        "valid": report.valid,
        "report": report.to_string(),
        "homology": homology,
        "lipschitz": f.lipschitz_bound().to_string(),
    }))
}

/// Dynamical type and fixed set of a matrix literal such as `[[2,1],[1,1]]`.
#[wasm_bindgen]
pub fn classify_matrix(literal: &str) -> String {
    respond(classify_value(literal))
}

pub fn classify_value(literal: &str) -> Result<Value, String> {
    let rows: Vec<Vec<Value>> = serde_json::from_str(literal).map_err(|e| format!("matrix literal: {e}"))?;
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.as_str().map(str::to_owned).unwrap_or_else(|| x.to_string())).collect())
        .collect();
    let a = IntMatrix::from_strings(&strings).map_err(|e| e.to_string())?;
    let g = ToralAffine::linear(a).map_err(|e| e.to_string())?;
    let c = classify(&g);
    let fs = fixed_set(&g);
    Ok(json!({ "classification": c, "fixed_set": fs }))
}

/// Graph of a circle map in the angle chart `x ↦ 2 atan x`, plus the
/// smoothness order at every breakpoint.
#[wasm_bindgen]
pub fn circle_map(map_json: &str) -> String {
    respond(circle_value(map_json))
}

pub fn circle_value(map_json: &str) -> Result<Value, String> {
    let f = PWMoebius::from_json_str(map_json).map_err(|e| e.to_string())?;
    let report = f.validate();
    let smooth: Vec<Value> = f
        .breakpoints()
        .iter()
        .map(|p| {
            let s = f.smoothness_order(p).map_err(|e| e.to_string())?;
            let order = match s {
                Smoothness::Order(k) => json!(k),
                other => json!(other.to_string()),
            };
            Ok(json!({ "at": p.to_string(), "order": order }))
        })
        .collect::<Result<_, String>>()?;
    let points = svg::circle_graph_points(&f);
    Ok(json!({
        "svg": svg::graph(&points, &f.breakpoints().iter().filter_map(|p| p.finite().and_then(|x| x.to_f64())).collect::<Vec<_>>()),
        "valid": report.valid,
        "report": report.to_string(),
        "smoothness": smooth,
    }))
}
