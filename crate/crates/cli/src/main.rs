mod commands;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::Suite;
use report::Format;

/// Exact verification suites for Sp(n)Sp(1) spinors and Weitzenböck matrices.
#[derive(Parser)]
#[command(name = "qkspin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for the random symmetric 4-forms.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report timing_ms as 0 so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Spinor summand ranks.
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Run exact verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Print W_H, W_E and the full Weitzenböck matrix.
    Weitzenboeck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Recover the matrix by brute force and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Eigenvalue estimate (n+r+3)/(n+2)·κ/4.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Dims { n } => commands::dims(*n),
        Command::Verify { n, suite } => commands::verify(*n, *suite, cli.seed),
        Command::Weitzenboeck { n, r, oracle } => commands::weitzenboeck(*n, *r, *oracle),
        Command::Bound { n, r, kappa } => commands::parse_kappa(kappa).and_then(|k| commands::bound(*n, *r, &k)),
    };
    let mut rep = match result {
        Ok(rep) => rep,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !cli.no_timing {
        rep.timing_ms = start.elapsed().as_millis() as u64;
    }
    let mut out = io::stdout().lock();
    if let Err(e) = rep.write(cli.format, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if rep.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
