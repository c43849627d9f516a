//! wasm-bindgen entry points for `www/index.html`.

use wasm_bindgen::prelude::*;

use symred::cli::{builtin_source, parse_point, parse_space, run_suite, to_json, to_text, LoadedSpace, PointSpec, SuiteOptions, BUILTINS};
use symred::reduction::analyze_point;

fn load(source: &str) -> Result<LoadedSpace, String> {
    parse_space(source, "editor").map_err(|e| e.to_string())
}

/// Built-in names, one per line.
#[wasm_bindgen]
pub fn examples() -> String {
    BUILTINS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join("\n")
}

/// TOML source of a built-in example.
#[wasm_bindgen]
pub fn example_source(name: &str) -> Result<String, String> {
    builtin_source(name).map(str::to_string).ok_or_else(|| format!("unknown example `{name}`"))
}

/// Runs the suite on TOML text; `json` picks the report format.
#[wasm_bindgen]
pub fn verify(source: &str, samples: usize, seed: u64, json: bool) -> Result<String, String> {
    let space = load(source)?;
    let doc = run_suite(&space, &SuiteOptions { samples, seed, ..SuiteOptions::default() });
    Ok(if json { to_json(&doc) } else { to_text(&doc) })
}

/// Pointwise analysis at `"a/b,c/d,…"` as JSON.
#[wasm_bindgen]
pub fn analyze(source: &str, point: &str) -> Result<String, String> {
    let mut space = load(source)?;
    let coords = parse_point(point)?;
    if coords.len() != space.hamiltonian.n() {
        return Err(format!("expected {} coordinates, got {}", space.hamiltonian.n(), coords.len()));
    }
    analyze_point(&space.hamiltonian, &coords).map_err(|e| e.to_string())?;
    space.points = vec![PointSpec { label: "query".into(), coords, expect: None }];
    let doc = run_suite(&space, &SuiteOptions { checks: vec!["point.".into()], ..SuiteOptions::default() });
    serde_json::to_string_pretty(&doc.points[0]).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_builtin_text() {
        let src = example_source("s1_r2").unwrap();
        let out = verify(&src, 10, 0, false).unwrap();
        assert!(out.contains("0 fail"), "{out}");
    }

    #[test]
    fn analyze_regular_point() {
        let src = example_source("s1_r2_shifted").unwrap();
        let out = analyze(&src, "3/5, 4/5").unwrap();
        assert!(out.contains("\"regular\""), "{out}");
        assert!(analyze(&src, "1").unwrap_err().contains("expected 2"));
        assert!(analyze(&src, "1,1").is_err());
    }

    #[test]
    fn examples_listed() {
        assert_eq!(examples().lines().count(), 5);
        assert!(example_source("nope").is_err());
    }
}
