use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "galmod", version, about = "Galois module structure of Riemann-Roch spaces and polydifferentials")]
pub struct Cli {
    /// Emit a single JSON document instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include intermediate quantities (e_{y,j}, l_{y,j}, n_j, n(a,j)).
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose H^0(X, O_X(E)) for E given by orbit coefficients `e`.
    RiemannRoch { file: PathBuf },
    /// Decompose H^0(X, Ω^{⊗m}); orbits with tame order > 1 need `ord_ky`.
    PolyDiff {
        file: PathBuf,
        /// Overrides the `m` field of the input document.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Decompose H^0(X, Ω).
    Diff { file: PathBuf },
    /// Tangent space dimension of the equivariant deformation functor.
    Tangent { file: PathBuf },
    /// The curve y^2 = t^{p^2} - t with its group of order p(2p - 2).
    Hyperelliptic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        /// Compare with the closed form (requires 3m < p).
        #[arg(long)]
        expect: bool,
    },
    /// H^0(X(ℓ), Ω^{⊗m}) over a field of characteristic 3 as a PSL(2, F_ℓ)-module.
    Modular {
        #[arg(long = "l")]
        l: u64,
        #[arg(long)]
        m: u64,
        /// Square-root convention for the labels T01 and T10.
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_sign)]
        s01: i64,
        /// Check integrality, 3^n | dim P and the total dimension.
        #[arg(long)]
        audit: bool,
    },
    /// Run a family of checks.
    Sweep {
        suite: Suite,
        /// Largest p (hyperelliptic), ℓ (modular, local) or number of cases (synthetic).
        #[arg(long)]
        max: Option<u64>,
        /// Fan out over threads; output order is unchanged.
        #[arg(long)]
        parallel: bool,
        /// Seed for the synthetic suite.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hyperelliptic,
    Modular,
    Local,
    Synthetic,
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s.trim_start_matches('+') {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got {s}")),
    }
}
