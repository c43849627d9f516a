//! Config loading, the built-in corpus, suite orchestration and report output.

mod config;
mod suite;

pub use config::{
    builtin_source, load_config, load_space, parse_space, sha256_hex, ConfigError, LieConfig, LoadedSpace, PointConfig,
    PointSpec, RationalMatrix, RationalValue, SpaceConfig, BUILTINS, BUILTIN_NAMES,
};
pub use suite::{
    emit_report, render, run_suite, to_json, to_text, Format, PointReport, ReportDocument, SuiteOptions, Summary,
    SCHEMA_VERSION, SIGN_CONVENTIONS, TOOL,
};

use crate::exactpoly::{parse_rational, Rational};

/// Parses `"a/b,c/d,…"`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| parse_rational(t.trim()).map_err(|e| format!("coordinate {}: {e}", i + 1)))
        .collect()
}
