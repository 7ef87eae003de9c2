//! Browser front end: the same analyze, solve and portrait operations as the
//! command line, taking the system file as text.

use wasm_bindgen::prelude::*;

use pwcycle::cli::{self, portrait, CommonOpts};

fn load(src: &str) -> Result<(cli::SystemSpecFile, pwcycle::systems::PiecewiseSystem), String> {
    cli::load_str(src, "input").map_err(|e| e.to_string())
}

/// Text report of `pwcycle analyze`.
pub fn analyze_text(src: &str) -> Result<String, String> {
    let (_, ps) = load(src)?;
    cli::cmd_analyze(&ps).map_err(|e| e.to_string())
}

/// JSON report of `pwcycle solve --json`.
pub fn solve_json(src: &str, verify: bool) -> Result<String, String> {
    let (spec, ps) = load(src)?;
    let opts = CommonOpts { verify, ..Default::default() }.solve_options(&spec).map_err(|e| e.to_string())?;
    let report = cli::run_solve(&ps, &opts).map_err(|e| e.to_string())?;
    Ok(cli::report_json(&report))
}

/// SVG phase portrait over the square window [lo, hi]^2.
pub fn portrait_svg(src: &str, lo: f64, hi: f64) -> Result<String, String> {
    if !(lo < hi) {
        return Err(format!("window {lo}:{hi} is empty"));
    }
    let (_, ps) = load(src)?;
    let opts = portrait::PortraitOptions { window: (lo, hi), ..Default::default() };
    let curves = portrait::sample(&ps, &opts);
    Ok(portrait::to_svg(&ps, &curves, opts.window))
}

#[wasm_bindgen]
pub fn analyze(src: &str) -> Result<String, JsError> {
    analyze_text(src).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(src: &str, verify: bool) -> Result<String, JsError> {
    solve_json(src, verify).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn portrait(src: &str, lo: f64, hi: f64) -> Result<String, JsError> {
    portrait_svg(src, lo, hi).map_err(|e| JsError::new(&e))
}
