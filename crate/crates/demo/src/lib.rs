//! Browser bindings: list the tilings, count colorings, draw one as SVG.
//!
//! The plain functions return `Result<_, String>` so they can be tested on
//! the host; the `#[wasm_bindgen]` wrappers only convert errors.

use tilecolor::catalog::{load_tiling, orbit_count, TILING_NAMES};
use tilecolor::chroma::{coloring_number, enumerate_classes};
use tilecolor::document::{render_svg, ColoringDocument};
use wasm_bindgen::prelude::*;

/// One line per tiling: `name group orbits roth_bound`, tab separated.
pub fn catalog_rows() -> Vec<String> {
    TILING_NAMES
        .iter()
        .map(|name| {
            let spec = load_tiling(name).expect("built-in tilings load");
            format!("{}\t{}\t{}\t{}", spec.name, spec.group_name(), orbit_count(&spec), spec.roth_bound)
        })
        .collect()
}

pub fn least_colors(name: &str) -> Result<usize, String> {
    let spec = load_tiling(name).map_err(|e| e.to_string())?;
    coloring_number(&spec).map_err(|e| e.to_string())
}

/// Number of inequivalent colorings with `n` colors.
pub fn class_count(name: &str, n: usize) -> Result<usize, String> {
    if n < 2 {
        return Err("need at least two colors".into());
    }
    let spec = load_tiling(name).map_err(|e| e.to_string())?;
    enumerate_classes(&spec, n).map(|c| c.len()).map_err(|e| e.to_string())
}

/// SVG of class `class` (1-based) with `n` colors over `cells × cells` cells.
pub fn coloring_svg(name: &str, n: usize, class: usize, cells: usize) -> Result<String, String> {
    if n < 2 || cells == 0 || cells > 6 {
        return Err("need n ≥ 2 and 1 ≤ cells ≤ 6".into());
    }
    let spec = load_tiling(name).map_err(|e| e.to_string())?;
    let classes = enumerate_classes(&spec, n).map_err(|e| e.to_string())?;
    let c = class
        .checked_sub(1)
        .and_then(|i| classes.get(i))
        .ok_or_else(|| format!("{} has {} classes with {n} colors", spec.name, classes.len()))?;
    render_svg(&ColoringDocument::from_scheme(&c.scheme), cells).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = catalog)]
pub fn catalog_js() -> String {
    catalog_rows().join("\n")
}

#[wasm_bindgen(js_name = coloringNumber)]
pub fn coloring_number_js(name: &str) -> Result<usize, JsError> {
    least_colors(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = classCount)]
pub fn class_count_js(name: &str, n: usize) -> Result<usize, JsError> {
    class_count(name, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = renderColoring)]
pub fn render_js(name: &str, n: usize, class: usize, cells: usize) -> Result<String, JsError> {
    coloring_svg(name, n, class, cells).map_err(|e| JsError::new(&e))
}
