mod commands;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quatloc::qpoly::{PcVariant, PowerVariant};
use quatloc::RegionKind;

#[derive(Parser, Debug)]
#[command(name = "quatloc", version, about = "Eigenvalue inclusion regions for quaternionic matrices and zero bounds for quaternionic polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an inclusion region for the eigenvalues of a matrix.
    Regions(RegionsArgs),
    /// Annuli containing all zeros of a polynomial.
    Bounds(BoundsArgs),
    /// Isolated zeros and spherical zero classes.
    Roots(RootsArgs),
    /// Sufficient condition for all right eigenvalues to have negative real part.
    Stability(StabilityArgs),
    /// Sufficient conditions for invertibility, plus a numerical check.
    Invertibility(InvertibilityArgs),
    /// Powers of the companion matrix.
    Power(PowerArgs),
    /// Compare the coefficient bound α with the Opfer bound T.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
pub struct Outputs {
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Write a CSV table.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RegionsArgs {
    /// Matrix JSON: {"n": .., "entries": [[[w,x,y,z], ..], ..]}.
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    pub method: RegionKind,
    #[arg(long, default_value_t = 1.0, value_parser = parse_gamma)]
    pub gamma: f64,
    /// Hölder exponent, required by the holder-* methods.
    #[arg(long, value_parser = parse_holder_p)]
    pub p: Option<f64>,
    /// Positive diagonal weights `w1,w2,..`. Repeat to intersect over a family.
    #[arg(long, value_parser = parse_weights)]
    pub weights: Vec<Vec<f64>>,
    /// Also test by sampling whether the region lies inside the region of this method.
    #[arg(long, value_parser = parse_kind, value_name = "METHOD")]
    pub subset_of: Option<RegionKind>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub out: Outputs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundChoice {
    All,
    Ostrowski,
    Co1,
    Co2,
    Scaled,
    Cs1,
    Cs2,
    Kojima,
    Power,
    Pc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantChoice {
    Direct,
    Conjugate,
    #[value(name = "1a")]
    Pc1a,
    #[value(name = "1b")]
    Pc1b,
    #[value(name = "2a")]
    Pc2a,
    #[value(name = "2b")]
    Pc2b,
}

impl VariantChoice {
    pub fn power(self) -> Option<PowerVariant> {
        match self {
            VariantChoice::Direct => Some(PowerVariant::Direct),
            VariantChoice::Conjugate => Some(PowerVariant::Conjugate),
            _ => None,
        }
    }

    pub fn pc(self) -> Option<PcVariant> {
        match self {
            VariantChoice::Pc1a => Some(PcVariant::LeftDirect),
            VariantChoice::Pc1b => Some(PcVariant::LeftConjugate),
            VariantChoice::Pc2a => Some(PcVariant::RightDirect),
            VariantChoice::Pc2b => Some(PcVariant::RightConjugate),
            _ => None,
        }
    }
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Polynomial JSON: {"side": "left"|"right", "coeffs": [[w,x,y,z], ..]}.
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub poly: PathBuf,
    #[arg(long, value_enum)]
    pub method: BoundChoice,
    #[arg(long, default_value_t = 1.0, value_parser = parse_gamma)]
    pub gamma: f64,
    #[arg(short = 't', long = "t", default_value_t = 2)]
    pub t: usize,
    #[arg(long, value_enum)]
    pub variant: Option<VariantChoice>,
    #[arg(long, value_parser = parse_weight_list)]
    pub weights: Option<Weights>,
    #[command(flatten)]
    pub out: Outputs,
}

/// One comma-separated weight vector.
#[derive(Clone, Debug)]
pub struct Weights(pub Vec<f64>);

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub poly: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub out: Outputs,
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0, value_parser = parse_gamma)]
    pub gamma: f64,
    #[arg(long, default_value_t = 2.0, value_parser = parse_holder_p)]
    pub p: f64,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvertibilityArgs {
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0, value_parser = parse_gamma)]
    pub gamma: f64,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PowerArgs {
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub poly: PathBuf,
    #[arg(short = 't', long = "t", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub t: u32,
    /// Compare with repeated multiplication.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Left polynomials to tabulate; may be repeated.
    #[arg(long, value_name = "FILE", value_parser = existing_file)]
    pub poly: Vec<PathBuf>,
    /// Also draw this many random left polynomials with |q0| >= --min-q0.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub min_q0: f64,
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
    #[command(flatten)]
    pub out: Outputs,
}

fn existing_file(s: &str) -> Result<PathBuf, String> {
    let p = PathBuf::from(s);
    if p.is_file() {
        Ok(p)
    } else {
        Err(format!("no such file: {s}"))
    }
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let g: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&g) {
        Ok(g)
    } else {
        Err(format!("gamma must lie in [0, 1], got {g}"))
    }
}

fn parse_holder_p(s: &str) -> Result<f64, String> {
    let p: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if p > 1.0 && p.is_finite() {
        Ok(p)
    } else {
        Err(format!("p must be a finite number above 1, got {p}"))
    }
}

fn parse_weights(s: &str) -> Result<Vec<f64>, String> {
    let w: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"))).collect::<Result<_, _>>()?;
    if w.iter().all(|&x| x > 0.0 && x.is_finite()) {
        Ok(w)
    } else {
        Err("weights must be positive".into())
    }
}

fn parse_weight_list(s: &str) -> Result<Weights, String> {
    parse_weights(s).map(Weights)
}

fn parse_kind(s: &str) -> Result<RegionKind, String> {
    let canonical = match s {
        "ostrowski-right" => "ostrowski-right-real-diag",
        "brauer-left" => "brauer-left-ostrowski",
        "brauer-right" => "brauer-right-real-diag",
        "holder-right" => "holder-right-real-diag",
        other => other,
    };
    serde_json::from_value(serde_json::Value::String(canonical.into())).map_err(|_| {
        let names: Vec<String> = RegionKind::ALL.iter().map(|k| serde_json::to_value(k).unwrap().as_str().unwrap().to_owned()).collect();
        format!("unknown method {s:?}; expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(output::Failure::Usage(msg)) => {
            use clap::CommandFactory;
            Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).exit()
        }
        Err(output::Failure::Domain(report)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("error report serializes"));
            ExitCode::from(1)
        }
    }
}
