mod commands;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{BridgeInput, Failure, PonceletArgs};
use report::RunReport;

/// Napier pentagons, their cone spectrum, elliptic uniformization and Poncelet closure.
#[derive(Parser)]
#[command(name = "pentagramma", version)]
struct Cli {
    /// Print the report as JSON instead of a table
    #[arg(long, global = true)]
    json: bool,
    /// Replace every check tolerance with this value
    #[arg(long, global = true, env = "PENTAGRAMMA_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a pentagram from two of its invariants and compute its cone spectrum
    Pentagram {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
    },
    /// Build the pentagon frame at modulus k and parameter u
    Napier(NapierArgs),
    /// Compare the spectrum of a pentagram invariant with the elliptic frame
    Bridge(BridgeArgs),
    /// Poncelet chords between two circles, or search for a closing configuration
    Poncelet(PonceletCli),
    /// Run every acceptance check
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inner radius (outer radius 1) for the (5, 2) closure search
        #[arg(long, default_value_t = 0.3)]
        poncelet_inner: f64,
    },
}

#[derive(Args)]
struct NapierArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    k: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    u: f64,
    /// Sweep k = 0, 0.1, .., 0.9 against equally spaced u and emit CSV
    #[arg(long)]
    grid: bool,
    /// Number of u samples per modulus in grid mode
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Write the grid CSV here instead of standard output
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Draw the projected pentagon
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BridgeArgs {
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
}

#[derive(Args)]
struct PonceletCli {
    /// Outer radius R
    #[arg(short = 'R', long, allow_hyphen_values = true, default_value_t = 1.0)]
    outer: f64,
    /// Inner radius r
    #[arg(short = 'r', long, allow_hyphen_values = true, default_value_t = 0.3)]
    inner: f64,
    /// Distance a between the centres
    #[arg(short = 'a', long, allow_hyphen_values = true, default_value_t = 0.0)]
    offset: f64,
    /// Search the offset for which n chords close after m turns
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    solve: Option<Vec<usize>>,
    /// Number of chords to draw
    #[arg(long)]
    steps: Option<usize>,
    /// Half-angle of the starting vertex
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    phi0: f64,
    /// Largest n in the closure table
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write (i, phi_i) rows here
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
}

fn finish(report: &RunReport, json: bool) -> ExitCode {
    emit(report, json);
    if report.passed() {
        return ExitCode::SUCCESS;
    }
    for (name, r) in report.failures() {
        eprintln!("failed: {name}: {:e} > {:e}", r.value, r.tol);
    }
    ExitCode::from(1)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let tol = cli.tol;
    let report = match cli.command {
        Command::Pentagram { alpha, gamma } => commands::pentagram(alpha, gamma, tol)?,
        Command::Napier(a) if a.grid => {
            let (report, csv) = commands::napier_grid(a.samples, tol)?;
            match &a.csv {
                Some(path) => {
                    std::fs::write(path, csv).map_err(|e| {
                        Failure::Io(format!("cannot write {}: {e}", path.display()))
                    })?;
                }
                None => {
                    print!("{csv}");
                    eprint!("{}", report.to_table());
                    return Ok(if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    });
                }
            }
            report
        }
        Command::Napier(a) => commands::napier(a.k, a.u, a.svg.as_deref(), tol)?,
        Command::Bridge(b) => {
            let input = match (b.omega, b.k) {
                (Some(omega), _) => BridgeInput::Omega(omega),
                (None, Some(k)) => BridgeInput::Modulus(k),
                (None, None) => unreachable!("clap requires one of --omega and --k"),
            };
            commands::bridge(input, tol)?
        }
        Command::Poncelet(p) => {
            let solve = p.solve.as_deref().map(|s| (s[0], s[1]));
            commands::poncelet(
                &PonceletArgs {
                    outer: p.outer,
                    inner: p.inner,
                    offset: p.offset,
                    solve,
                    steps: p.steps,
                    phi0: p.phi0,
                    max_n: p.max_n,
                    svg: p.svg.as_deref(),
                    csv: p.csv.as_deref(),
                },
                tol,
            )?
        }
        Command::VerifyAll {
            seed,
            poncelet_inner,
        } => commands::verify_all(seed, poncelet_inner, tol)?,
    };
    Ok(finish(&report, cli.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
