//! Driver for the gtkit library: one JSON report per invocation.

pub mod args;
pub mod commands;
pub mod report;
pub mod suites;

use gtkit::boundary::PhiMode;
use gtkit::Result;

use args::{Cli, Command};
use report::RunReport;
use suites::Bounds;

pub fn execute(cli: &Cli) -> Result<RunReport> {
    let budget = cli.budget();
    match &cli.command {
        Command::Dim { nu } => Ok(commands::dim(nu)),
        Command::Rdim { kappa, nu } => commands::rdim(kappa, nu),
        Command::Link { nu, level } => commands::link(nu, *level),
        Command::Qlink { nu, level, q } => commands::qlink(nu, *level, q),
        Command::Verify(v) => {
            let b = Bounds {
                max_n: v.max_n.unwrap_or_else(|| v.suite.default_max_n()),
                part_bound: v.part_bound,
                qs: v.q.clone(),
                tolerance: v.tolerance,
                seed: v.seed,
                budget,
            };
            commands::verify(v.suite, &b)
        }
        Command::Uat { kappa, family, n, tolerance, exact } => {
            let mode = if *exact { PhiMode::Exact } else { PhiMode::Numeric { tolerance: *tolerance } };
            commands::uat(kappa, family, n, mode)
        }
        Command::Bench { n, level } => commands::bench(n, *level, budget),
    }
}
