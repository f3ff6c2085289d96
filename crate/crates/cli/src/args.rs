use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use gtkit::gt::{Budget, Signature};
use gtkit::QParam;

use crate::commands::Family;
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "gtkit",
    version,
    about = "Exact links, dimensions and determinantal formulas on the Gelfand-Tsetlin graph"
)]
pub struct Cli {
    /// Flatten results to label,mode,value,tolerance rows instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Pattern budget for enumeration oracles (else GTKIT_BUDGET, else 10^7).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn budget(&self) -> Budget {
        self.budget.map(Budget).unwrap_or_else(Budget::from_env)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dim_N ν, the number of triangular patterns with top row ν.
    Dim {
        #[arg(allow_hyphen_values = true)]
        nu: Signature,
    },
    /// Dim_{K,N}(κ,ν), the number of trapezoidal patterns from κ up to ν.
    Rdim {
        #[arg(allow_hyphen_values = true)]
        kappa: Signature,
        #[arg(allow_hyphen_values = true)]
        nu: Signature,
    },
    /// The row Λ^N_K(ν, ·).
    Link {
        #[arg(allow_hyphen_values = true)]
        nu: Signature,
        #[arg(long = "level", short = 'k')]
        level: usize,
    },
    /// The q^{vol}-weighted row.
    Qlink {
        #[arg(allow_hyphen_values = true)]
        nu: Signature,
        #[arg(long = "level", short = 'k')]
        level: usize,
        #[arg(long)]
        q: QParam,
    },
    /// Run a verification sweep.
    Verify(VerifyArgs),
    /// Distance between finite and boundary links along a family ν(N).
    Uat {
        #[arg(long, allow_hyphen_values = true)]
        kappa: Signature,
        /// linear-row:a for (⌊aN⌋,0,...,0), or zero.
        #[arg(long, default_value = "linear-row:1/2")]
        family: Family,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Partial fractions instead of quadrature for φ_n.
        #[arg(long)]
        exact: bool,
    },
    /// Determinant rows against enumeration for ν(N) = (5,4,3,2,1,0,...,0,-1,-2).
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "6,10,14,20")]
        n: Vec<usize>,
        #[arg(long = "level", short = 'k', default_value_t = 2)]
        level: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest N swept (suite-specific default).
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Parts of ν range over [-b, b].
    #[arg(long, default_value_t = 2)]
    pub part_bound: i64,
    /// One or more q values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1/2,2/3")]
    pub q: Vec<QParam>,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Seed for the sampled checks (boundary points, random coefficients).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
