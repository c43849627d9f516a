use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{LoadedSpace, PointSpec};
use crate::dgmanifold::SIGN_CONVENTION;
use crate::gradedcore::SHIFT_CONVENTION;
use crate::reduction::{
    analyze_point, anchors, check_anchor, check_closure, check_equivariance_finite, check_exactness, check_multiplicativity,
    check_reduced_pullback, check_total_complexes, validate_hamiltonian, verify_theorem, CheckRecord, HamiltonianSpace,
    PointAnalysis, Status, VerificationReport,
};

pub const TOOL: &str = "symred";
pub const SCHEMA_VERSION: u32 = 1;

pub const SIGN_CONVENTIONS: [&str; 7] = [
    "[E_i, E_j] = Σ_k c^k_ij E_k",
    "ad*_X = -(ad_X)ᵀ in the dual basis",
    "E_i♯ = Σ_ab (A_i)_ab x_b ∂_a",
    "ι_X ω = Σ_ab ω_ab X^a dx_b",
    "δ(E_S) = Σ_i (-1)^(i-1) μ^(s_i) E_(S∖s_i)",
    SIGN_CONVENTION,
    SHIFT_CONVENTION,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Check-id prefixes; empty runs everything.
    pub checks: Vec<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { samples: 100, seed: 0, tol: 1e-8, checks: Vec::new() }
    }
}

impl SuiteOptions {
    fn wants_group(&self, prefixes: &[&str]) -> bool {
        self.checks.is_empty()
            || self.checks.iter().any(|f| prefixes.iter().any(|p| p.starts_with(f.as_str()) || f.starts_with(p)))
    }

    fn wants(&self, id: &str) -> bool {
        self.checks.is_empty() || self.checks.iter().any(|f| id.starts_with(f.as_str()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub label: String,
    pub coords: Vec<String>,
    #[serde(flatten)]
    pub analysis: PointAnalysis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub example: String,
    pub config_sha256: String,
    pub options: SuiteOptions,
    pub summary: Summary,
    pub sign_conventions: Vec<String>,
    pub records: Vec<CheckRecord>,
    pub points: Vec<PointReport>,
    /// Seconds; omitted from JSON.
    #[serde(skip)]
    pub wall_time: f64,
}

impl ReportDocument {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

fn point_record(h: &HamiltonianSpace, p: &PointSpec) -> (CheckRecord, Option<PointAnalysis>) {
    let id = format!("point.{}", p.label);
    match analyze_point(h, &p.coords) {
        Ok(a) => {
            let witness = p
                .expect
                .filter(|e| *e != a.classification)
                .map(|e| format!("expected {e:?}, found {:?}", a.classification).to_lowercase());
            let detail = format!(
                "{:?}; jacobian rank {}; tangent complex (ker, coker) = ({}, {})",
                a.classification, a.jacobian_rank, a.tangent_complex.0, a.tangent_complex.1
            )
            .to_lowercase();
            (CheckRecord::exact(&id, anchors::POINT, witness).with_detail(detail), Some(a))
        }
        Err(e) => (CheckRecord::exact(&id, anchors::POINT, Some(e.to_string())), None),
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct Timer(std::time::Instant);

#[cfg(not(target_arch = "wasm32"))]
impl Timer {
    fn start() -> Self {
        Timer(std::time::Instant::now())
    }
    fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

#[cfg(target_arch = "wasm32")]
struct Timer;

#[cfg(target_arch = "wasm32")]
impl Timer {
    fn start() -> Self {
        Timer
    }
    fn seconds(&self) -> f64 {
        0.0
    }
}

/// Runs every check group selected by `opts` on a loaded space.
pub fn run_suite(space: &LoadedSpace, opts: &SuiteOptions) -> ReportDocument {
    let timer = Timer::start();
    let h = &space.hamiltonian;
    let mut rep = VerificationReport::new(&h.name);

    if opts.wants_group(&["lie.", "hamiltonian."]) {
        rep.extend(validate_hamiltonian(h));
    }
    if opts.wants_group(&["anchor."]) {
        rep.extend(check_anchor(h));
    }
    if opts.wants_group(&["tot", "alpha", "theorem."]) {
        let (r, tc) = check_total_complexes(h);
        rep.extend(r);
        if let Some(tc) = tc {
            if opts.wants_group(&["alpha", "theorem."]) {
                rep.extend(verify_theorem(h, &tc));
            }
        }
    }
    if opts.wants_group(&["exactness."]) {
        rep.extend(check_exactness(h, opts.seed, opts.samples));
    }
    if opts.wants_group(&["closure."]) {
        rep.extend(check_closure(h, opts.samples, opts.seed, opts.tol));
    }
    if opts.wants_group(&["multiplicativity."]) {
        rep.extend(check_multiplicativity(h, opts.samples, opts.seed, opts.tol));
    }
    if opts.wants_group(&["pullback."]) {
        rep.extend(check_reduced_pullback(h));
    }
    if opts.wants_group(&["equivariance."]) {
        rep.extend(check_equivariance_finite(h, opts.samples, opts.seed, opts.tol));
    }
    let mut points = Vec::new();
    for p in &space.points {
        if !opts.wants(&format!("point.{}", p.label)) {
            continue;
        }
        let (r, a) = point_record(h, p);
        rep.push(r);
        if let Some(analysis) = a {
            points.push(PointReport {
                label: p.label.clone(),
                coords: p.coords.iter().map(ToString::to_string).collect(),
                analysis,
            });
        }
    }

    let mut records: Vec<CheckRecord> = rep.records.into_iter().filter(|r| opts.wants(&r.check_id)).collect();
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    let count = |s| records.iter().filter(|r| r.status == s).count();
    let summary = Summary { total: records.len(), pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) };
    ReportDocument {
        tool: TOOL.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        schema_version: SCHEMA_VERSION,
        example: h.name.clone(),
        config_sha256: space.config_hash.clone(),
        options: opts.clone(),
        summary,
        sign_conventions: SIGN_CONVENTIONS.iter().map(|s| s.to_string()).collect(),
        records,
        points,
        wall_time: timer.seconds(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut out: String = s.chars().take(width - 1).collect();
        out.push('…');
        out
    }
}

pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let o = &doc.options;
    let _ = writeln!(out, "{} {}  example {}  config sha256 {}", doc.tool, doc.version, doc.example, &doc.config_sha256[..12]);
    let _ = writeln!(out, "samples {}  seed {}  tol {:e}", o.samples, o.seed, o.tol);
    let _ = writeln!(out);
    let width = doc.records.iter().map(|r| r.check_id.len()).max().unwrap_or(8).max(8);
    let _ = writeln!(out, "{:<width$}  {:<7}  {:<7}  {:>10}  note", "check", "status", "kind", "residual");
    for r in &doc.records {
        let status = format!("{:?}", r.status).to_lowercase();
        let kind = format!("{:?}", r.kind).to_lowercase();
        let residual = r.residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
        let note = r.witness.as_deref().or(r.detail.as_deref()).unwrap_or("");
        let _ = writeln!(out, "{:<width$}  {:<7}  {:<7}  {:>10}  {}", r.check_id, status, kind, residual, clip(note, 100));
    }
    for r in doc.failures() {
        let _ = writeln!(out, "\nFAIL {}\n  identity: {}", r.check_id, r.paper_anchor);
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "  witness:  {w}");
        }
    }
    let s = &doc.summary;
    let _ = writeln!(out, "\n{} checks: {} pass, {} fail, {} skipped", s.total, s.pass, s.fail, s.skipped);
    out
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => to_json(doc),
        Format::Text => to_text(doc),
    }
}

/// Writes to `path`, or stdout when `None`.
pub fn emit_report(doc: &ReportDocument, format: Format, path: Option<&Path>) -> std::io::Result<()> {
    let s = render(doc, format);
    match path {
        Some(p) => std::fs::write(p, s),
        None => std::io::stdout().lock().write_all(s.as_bytes()),
    }
}
