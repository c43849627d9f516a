use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use symred::cli::{
    emit_report, load_space, parse_point, run_suite, Format, PointSpec, SuiteOptions, BUILTINS,
};
use symred::reduction::analyze_point;

#[derive(Parser)]
#[command(name = "symred", version, about = "Verify derived symplectic reduction identities on linear Hamiltonian spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Built-in example name or path to a TOML config
    space: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated check-id prefixes
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Write the report here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite
    Verify(Common),
    /// Pointwise invariants at one point, e.g. --point "1,0"
    AnalyzePoint {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
    },
    /// List the built-in examples
    ListExamples,
}

fn options(c: &Common) -> SuiteOptions {
    SuiteOptions { samples: c.samples, seed: c.seed, tol: c.tol, checks: c.checks.clone() }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::ListExamples => {
            for (name, text) in BUILTINS {
                let about = text.lines().next().unwrap_or("").trim_start_matches('#').trim();
                println!("{name:<18} {about}");
            }
            Ok(true)
        }
        Command::Verify(c) => {
            let space = load_space(&c.space).map_err(|e| e.to_string())?;
            let doc = run_suite(&space, &options(&c));
            emit_report(&doc, c.format, c.output.as_deref()).map_err(|e| e.to_string())?;
            Ok(doc.passed())
        }
        Command::AnalyzePoint { common: c, point } => {
            let mut space = load_space(&c.space).map_err(|e| e.to_string())?;
            let coords = parse_point(&point)?;
            analyze_point(&space.hamiltonian, &coords).map_err(|e| e.to_string())?;
            space.points = vec![PointSpec { label: "query".into(), coords, expect: None }];
            let mut opts = options(&c);
            opts.checks = vec!["point.".into()];
            let doc = run_suite(&space, &opts);
            emit_report(&doc, c.format, c.output.as_deref()).map_err(|e| e.to_string())?;
            Ok(doc.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
