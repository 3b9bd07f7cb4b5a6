//! `young`: command-line verification runs over concave Young-functions.
//!
//! Exit status is 0 when every asserted check holds, 1 when a check fails
//! or a quadrature is inconclusive, and 2 for usage and input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "young",
    version,
    about = "Verification runs for concave Young-functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = young::DEFAULT_TOL)]
    tol: f64,
    /// Report file; the terminal summary is printed regardless.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// A descriptor file, or an inline JSON document starting with `{`.
#[derive(Debug, Args)]
struct FnArg {
    #[arg(long = "fn", value_name = "DESCRIPTOR")]
    func: String,
}

#[derive(Debug, Args)]
struct LpArgs {
    #[arg(long, value_name = "SPACE")]
    space: String,
    /// Function document with one value per atom label.
    #[arg(long = "fn", value_name = "FUNCTION")]
    func: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Φ(x)
    Eval {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        x: f64,
    },
    /// Right density φ(x)
    Density {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        x: f64,
    },
    /// Structural checks on the default grid
    Validate {
        #[command(flatten)]
        f: FnArg,
    },
    /// μ-norm
    Norm {
        #[command(flatten)]
        f: FnArg,
    },
    /// μ-distance between two functions
    Dist {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, value_name = "DESCRIPTOR")]
        fn2: String,
    },
    /// Density-level integral and class membership
    Alevel {
        #[command(flatten)]
        f: FnArg,
    },
    /// Rescales a function to fix b
    ScaleB {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        b: f64,
    },
    /// Level-n composition/convex roster from b-fixed seeds
    Hierarchy {
        #[arg(long)]
        roster: String,
        #[arg(long)]
        n: usize,
        /// Convex weights, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 0.5])]
        weights: Vec<f64>,
    },
    /// Directed and Hausdorff distances between two rosters
    Setdist {
        #[arg(long)]
        roster: String,
        #[arg(long)]
        roster2: String,
    },
    /// Pairwise diameter and affine majorant of a b-fixed roster
    Diameter {
        #[arg(long)]
        roster: String,
    },
    /// Distance from a b-fixed roster to a function fixing another point
    Separation {
        #[arg(long)]
        roster: String,
        #[arg(long, value_name = "DESCRIPTOR")]
        fn2: String,
        #[arg(long)]
        b2: f64,
    },
    /// Sandwich Φ1 ≤ id ≤ Φ2 on [b, b2] and the raw pair (Φ1(b2), Φ2(b))
    Order {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, value_name = "DESCRIPTOR")]
        fn2: String,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        b2: f64,
    },
    /// Power approximants converging to b·Φ/Φ(b)
    Dense7 {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
    },
    /// Composition approximants of a b-fixed hierarchy member
    Dense8 {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 200)]
        nmax: usize,
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
    },
    /// Asymptotic slope lim Φ(t)/t
    Slope {
        #[command(flatten)]
        f: FnArg,
    },
    /// Smallest c with cΔ > id
    Cmin {
        #[command(flatten)]
        f: FnArg,
    },
    /// Decomposition cΦ = id + Δ
    Decompose {
        #[command(flatten)]
        f: FnArg,
        #[arg(long)]
        c: f64,
    },
    /// Lp sandwich over the stress roster
    LpSandwich {
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        nmax: usize,
    },
    /// Tail measure identity
    LpTail {
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Lp norm identity
    LpNorm {
        #[command(flatten)]
        lp: LpArgs,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
    },
    /// Recovers y ≥ 0 from the witness sequence
    Recover {
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        /// Also recover through the constant function on this space.
        #[arg(long)]
        space: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
    },
}

#[derive(Debug)]
pub enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Verification(String),
}

impl From<young::Error> for Failure {
    fn from(e: young::Error) -> Self {
        use young::Error as E;
        match e {
            E::QuadratureInconclusive { .. }
            | E::NonFiniteIntegrand { .. }
            | E::DensityDivergesAtOrigin
            | E::DensityFailure { .. }
            | E::ZeroSlope
            | E::SlopeInconclusive
            | E::NotAboveIdentity { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("young: --tol must be positive");
        return ExitCode::from(2);
    }
    let result = commands::run(&cli).and_then(|r| {
        r.emit(cli.out.as_deref(), cli.format)?;
        Ok(r.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("young: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("young: {msg}");
            ExitCode::from(2)
        }
    }
}
