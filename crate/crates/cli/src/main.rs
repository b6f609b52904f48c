use std::process::ExitCode;

use clap::{Parser, Subcommand};

use heightgap::commands::{self, ConstantsArgs, Method};
use heightgap::suites::SuiteName;
use heightgap::{CliError, ExitStatus, RunConfig};

#[derive(Parser)]
#[command(name = "heightgap", version, about = "Heights, formal groups and explicit height-gap constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label primes in a range as supersingular candidates or rejected.
    Scan {
        /// Curve JSON (file or inline) or a CSV batch with header label,a1,a2,a3,a4,a6.
        curve: String,
        #[arg(long, default_value_t = 5)]
        p_min: u64,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
    },
    /// Supersingular index and torsion tower of the formal group at p.
    Formal {
        curve: String,
        #[arg(long)]
        p: u64,
        #[arg(long = "level", default_value_t = 1)]
        level: u32,
    },
    /// Weil height of an algebraic number given by its minimal polynomial.
    Height { minpoly: String },
    /// Canonical height of a rational point.
    Ntheight {
        curve: String,
        point: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Explicit gap constants for (d, f, p).
    Constants {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        f: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        universal_c: Option<f64>,
        /// Local degree of the chosen prime; defaults to f.
        #[arg(long)]
        local_degree: Option<u32>,
        /// Print a table instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_env()?;
    let report = match cli.command {
        Command::Scan { curve, p_min, p_max } => commands::scan(&cfg, &curve, p_min, p_max)?,
        Command::Formal { curve, p, level } => commands::formal(&cfg, &curve, p, level)?,
        Command::Height { minpoly } => commands::height(&cfg, &minpoly)?,
        Command::Ntheight { curve, point, method } => commands::ntheight(&cfg, &curve, &point, method)?,
        Command::Constants { d, f, p, universal_c, local_degree, table } => {
            let r = commands::constants(&cfg, &ConstantsArgs { d, f, p, universal_c, local_degree })?;
            if table {
                print!("{}", commands::constants_table(&r));
                return Ok(());
            }
            r
        }
        Command::Verify { suite } => {
            let (r, results) = commands::verify(&cfg, suite)?;
            for c in &results {
                eprintln!("{}", c.line());
            }
            r
        }
    };
    println!("{}", report.to_json());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(ExitStatus::BadInput as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Inconsistent { report, .. } = &e {
                println!("{}", report.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
