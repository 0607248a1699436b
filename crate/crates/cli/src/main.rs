//! `detrep`: exact verification of determinantal representations from the
//! command line. Exit status is 0 when every verdict matches, 1 when a
//! verdict fails, 2 on usage or input errors.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use detrep_core::random::{DEFAULT_SEED, SEED_ENV};

use commands::{CliError, MultArgs};
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "detrep",
    version,
    about = "Exact checks for determinantal representations of plane curves"
)]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Surjective,
    NotSurjective,
}

impl Expect {
    fn surjective(self) -> bool {
        matches!(self, Expect::Surjective)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Twisted tangent bundle example: the cubic x²y − 2xz² + y²z.
    VerifyExample1 {
        #[arg(long, default_value = "T(0)")]
        bundle: String,
    },
    /// Rank-2 bundle N(0) example: the conic x² + y² − z².
    VerifyExample2 {
        #[arg(long, default_value = "N(0)")]
        bundle: String,
    },
    /// Tangent map of the degeneracy-curve map at two sections.
    Tangent {
        /// Family: N, T, or E_2.
        #[arg(long)]
        bundle: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Ambient components separated by `;`.
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
        #[arg(long, value_enum, default_value = "surjective")]
        expect: Expect,
    },
    /// Multiplication map attached to a pair of triples on T(n).
    Mult {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, requires = "g")]
        f: Option<String>,
        #[arg(long, requires = "f")]
        g: Option<String>,
        /// Use the special pair (z^{n+1}, x^{n+1}, 0), (0, z^{n+1}, y^{n+1}).
        #[arg(long, conflicts_with_all = ["f", "g"])]
        remark: bool,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// The 2×2 determinant map on ℙ¹×ℙ¹ at the monomial witness.
    P1p1 {
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Dimension-count inequality table for a bundle family.
    Audit {
        /// N, T, M, E (or M_k, E_r).
        #[arg(long)]
        family: String,
        /// k for M, r for E.
        #[arg(long)]
        params: Option<u32>,
        #[arg(long, default_value = "0..10", allow_hyphen_values = true)]
        m_range: String,
        #[arg(long, allow_negative_numbers = true)]
        g: Option<i64>,
        /// Also echo the rank-2 bundle selected for curves of this degree.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Smallest k with every form of degree k in the ideal.
    Containment {
        /// One polynomial per line.
        #[arg(long)]
        gens_file: PathBuf,
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Determinant of a polynomial matrix file.
    Det {
        #[arg(long)]
        matrix_file: PathBuf,
        /// Also bring a 3×3 matrix with last row (l, m, Q) to (x, y, z²).
        #[arg(long)]
        normalize: bool,
    },
}

fn run(command: Command) -> Result<RunReport, CliError> {
    match command {
        Command::VerifyExample1 { bundle } => commands::verify_example1(&bundle),
        Command::VerifyExample2 { bundle } => commands::verify_example2(&bundle),
        Command::Tangent {
            bundle,
            n,
            v1,
            v2,
            expect,
        } => commands::tangent(&bundle, n, &v1, &v2, expect.surjective()),
        Command::Mult {
            n,
            seed,
            trials,
            f,
            g,
            remark,
            expect,
        } => commands::mult(MultArgs {
            n,
            seed,
            trials,
            f: f.as_deref(),
            g: g.as_deref(),
            remark,
            expect: expect.map(Expect::surjective),
        }),
        Command::P1p1 { a, b, m } => commands::p1p1(a, b, m),
        Command::Audit {
            family,
            params,
            m_range,
            g,
            degree,
        } => commands::audit(&family, params, &m_range, g, degree),
        Command::Containment { gens_file, k_max } => commands::containment(&gens_file, k_max),
        Command::Det {
            matrix_file,
            normalize,
        } => commands::det(&matrix_file, normalize),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_table()
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
