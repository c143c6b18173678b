//! Command-line front end. JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyppants::dataset::{enumerate_irreducible_type1, DataSet};
use hyppants::encoding::{class_members, from_pants};
use hyppants::error::{CurveError, PipelineError};
use hyppants::metric::{embed_polygon, SignPolicy};
use hyppants::pants::extract_pants;
use hyppants::pipeline::{analyze, compare, Config, QuasiIsometryParams};
use hyppants::polygon::build_polygon;
use hyppants::svg;

#[derive(Parser)]
#[command(name = "hyppants", version, about = "Pants decompositions of periodic mapping classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignPolicyArg {
    Auto,
    Plus,
    Minus,
}

impl From<SignPolicyArg> for SignPolicy {
    fn from(s: SignPolicyArg) -> SignPolicy {
        match s {
            SignPolicyArg::Auto => SignPolicy::Auto,
            SignPolicyArg::Plus => SignPolicy::Plus,
            SignPolicyArg::Minus => SignPolicy::Minus,
        }
    }
}

#[derive(Args)]
struct ConfigArgs {
    /// Admissibility cutoff; defaults to the genus-dependent Bers value.
    #[arg(long)]
    bers: Option<f64>,
    /// Multiplicative constant in the distance bound `K * D + eps`.
    #[arg(long = "K", default_value_t = 1.0)]
    k_const: f64,
    /// Additive constant in the distance bound.
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    /// Numeric tolerance (falls back to HYPPANTS_TOL, then 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    sign_policy: SignPolicyArg,
    /// Cap on tuple equivalence-class enumeration.
    #[arg(long)]
    orbit_cap: Option<usize>,
}

impl ConfigArgs {
    fn to_config(&self) -> Config {
        let mut cfg = Config {
            bers_override: self.bers,
            params: QuasiIsometryParams {
                k_const: self.k_const,
                eps: self.eps,
            },
            sign_policy: self.sign_policy.into(),
            ..Config::default()
        };
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(c) = self.orbit_cap {
            cfg.orbit_cap = c;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate and classify a data set from a JSON file.
    Validate { dataset: PathBuf },
    /// Enumerate irreducible Type 1 data sets of a given genus.
    Enumerate {
        #[arg(long)]
        genus: u64,
    },
    /// Build the side-paired polygon for a data set.
    Polygon {
        dataset: PathBuf,
        /// Write a figure of the embedded polygon.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Extract and certify the pants decomposition.
    Pants {
        dataset: PathBuf,
        /// Write a figure of the polygon with the decomposition curves.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Encode a data set as a canonical 2g-tuple.
    Encode {
        dataset: PathBuf,
        /// Also list the full equivalence class of the tuple.
        #[arg(long)]
        class: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Bound the Weil-Petersson distance between two same-genus actions.
    Distance {
        dataset_a: PathBuf,
        dataset_b: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

/// Exit-code buckets for the error taxonomy: bad user input vs. a failed
/// internal certification.
enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(1),
            CliError::Verification(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Verification(m) => m,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> CliError {
        match &e {
            PipelineError::DataSet(_) | PipelineError::Polygon(_) | PipelineError::GenusMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            PipelineError::Curve(c) => match c {
                CurveError::Polygon(_) => CliError::Input(e.to_string()),
                _ => CliError::Verification(e.to_string()),
            },
            PipelineError::Metric(_) | PipelineError::Tuple(_) => CliError::Verification(e.to_string()),
        }
    }
}

fn read_dataset(path: &PathBuf) -> Result<DataSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let d: DataSet = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    d.validate()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(d)
}

fn emit(value: &serde_json::Value) -> Result<(), CliError> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Verification(e.to_string()))?;
    // A closed pipe downstream is not our error.
    let _ = writeln!(std::io::stdout(), "{text}");
    Ok(())
}

fn write_svg(path: &PathBuf, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { dataset } => {
            let text = std::fs::read_to_string(&dataset)
                .map_err(|e| CliError::Input(format!("{}: {e}", dataset.display())))?;
            let d: DataSet = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", dataset.display())))?;
            d.validate().map_err(|e| CliError::Input(e.to_string()))?;
            let class = d.classify().map_err(|e| CliError::Input(e.to_string()))?;
            let genus = d.genus().map_err(|e| CliError::Input(e.to_string()))?;
            emit(&json!({
                "dataset": d,
                "display": d.to_string(),
                "valid": true,
                "class": class,
                "genus": genus,
                "canonical": d.canonicalized(),
            }))
        }
        Command::Enumerate { genus } => {
            let sets = enumerate_irreducible_type1(genus);
            let items: Vec<_> = sets
                .iter()
                .map(|d| {
                    json!({
                        "dataset": d,
                        "display": d.to_string(),
                        "genus": genus,
                    })
                })
                .collect();
            emit(&json!({ "genus": genus, "count": sets.len(), "datasets": items }))
        }
        Command::Polygon { dataset, svg: svg_out } => {
            let d = read_dataset(&dataset)?;
            let p = build_polygon(&d).map_err(|e| CliError::Input(e.to_string()))?;
            let glued = p
                .glued_genus()
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if let Some(out) = &svg_out {
                let emb = embed_polygon(&p).map_err(|e| CliError::Verification(e.to_string()))?;
                write_svg(out, &svg::render(&p, &emb, None))?;
                eprintln!("wrote {}", out.display());
            }
            emit(&json!({
                "dataset": d,
                "polygon": p,
                "pairing": (1..=p.k).map(|i| [i, p.paired(i)]).collect::<Vec<_>>(),
                "vertex_orbits": p.vertex_orbits().count(),
                "glued_genus": glued,
            }))
        }
        Command::Pants { dataset, svg: svg_out, config } => {
            let cfg = config.to_config();
            let d = read_dataset(&dataset)?;
            let analysis = analyze(&d, &cfg)?;
            if let Some(out) = &svg_out {
                let p = build_polygon(&d).map_err(|e| CliError::Input(e.to_string()))?;
                let emb = embed_polygon(&p).map_err(|e| CliError::Verification(e.to_string()))?;
                let dec = extract_pants(&p, &emb).map_err(|e| CliError::Verification(e.to_string()))?;
                write_svg(out, &svg::render(&p, &emb, Some(&dec)))?;
                eprintln!("wrote {}", out.display());
            }
            emit(&serde_json::to_value(&analysis).map_err(|e| CliError::Verification(e.to_string()))?)
        }
        Command::Encode { dataset, class, config } => {
            let cfg = config.to_config();
            let d = read_dataset(&dataset)?;
            let p = build_polygon(&d).map_err(|e| CliError::Input(e.to_string()))?;
            let emb = embed_polygon(&p).map_err(|e| CliError::Verification(e.to_string()))?;
            let dec = extract_pants(&p, &emb).map_err(|e| CliError::Verification(e.to_string()))?;
            let tuple = from_pants(&p, &dec).map_err(|e| CliError::Verification(e.to_string()))?;
            let members = if class {
                let set = class_members(&tuple, cfg.orbit_cap)
                    .map_err(|e| CliError::Verification(e.to_string()))?;
                Some(set.into_iter().map(|t| t.values).collect::<Vec<_>>())
            } else {
                None
            };
            emit(&json!({
                "dataset": d,
                "tuple": tuple,
                "display": tuple.to_string(),
                "class": members,
            }))
        }
        Command::Distance { dataset_a, dataset_b, config } => {
            let cfg = config.to_config();
            let a = read_dataset(&dataset_a)?;
            let b = read_dataset(&dataset_b)?;
            let report = compare(&a, &b, &cfg)?;
            emit(&serde_json::to_value(&report).map_err(|e| CliError::Verification(e.to_string()))?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
