use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use aqg::compact::{coamenability_gap_report, decompose_corepresentations, gap_table_csv, gap_table_pretty, suq2_data, suq2_report};
use aqg::dual::dual_aqg;
use aqg::generator::{generator_of_rep, generator_report, random_representation, Representation};
use aqg::gns::{multiplicative_unitary, GnsSpace};
use aqg::io::{document_of, load_quantum_group};
use aqg::quantum::QuantumGroup;
use aqg::random::Rng;
use aqg::report::Report;
use aqg::tensor::{identity, residual};
use aqg::verify::{run_suite, Derived, Suite};
use aqg::{AqgError, Result, DEFAULT_TOL};

const USAGE_EXIT: u8 = 64;

#[derive(Parser)]
#[command(name = "aqg", version, about = "Finite-dimensional algebraic quantum group toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin quantum group as JSON
    Builtin {
        /// z2, z3, z4, s3-group, s3-function, kac-paljutkin, trivial or tensor:<a>,<b>
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Load a document and run verification suites
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Write the dual quantum group as JSON
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Build the generator of a representation and report its residuals
    Generator {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RepKind::Regular)]
        rep: RepKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Derived tables
    Report {
        #[command(subcommand)]
        what: ReportKind,
    },
    /// Quantum dimensions and gaps of SU_q(2)
    Suq2 {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        max_spin: f64,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum ReportKind {
    /// Quantum dimensions and co-amenability gaps of the irreducible corepresentations
    Qdim {
        file: PathBuf,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    Regular,
    Counit,
    Random,
}

fn write_or_print(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn report_exit(report: &Report) -> u8 {
    if report.passed() {
        0
    } else {
        2
    }
}

fn print_failures(report: &Report) {
    for c in report.failures() {
        eprintln!("failed: {}/{} = {:.3e} (tol {:.1e})", c.suite, c.name, c.value, c.tol);
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Builtin { name, output } => {
            let q = QuantumGroup::from_builtin(&name, DEFAULT_TOL)?;
            write_or_print(&document_of(&q).to_json(), output.as_deref())?;
            Ok(0)
        }
        Command::Verify { file, tol, suite, seed, json } => {
            let suite: Suite = suite.parse()?;
            let q = load_quantum_group(&file, tol)?;
            let report = run_suite(&q, suite, seed)?;
            let derived = Derived::compute(&q, seed)?;
            if json {
                let out = serde_json::json!({ "report": report, "derived": derived });
                println!("{}", serde_json::to_string_pretty(&out).expect("report serializes"));
            } else {
                print!("{report}");
                println!("-- derived --");
                print!("{derived}");
                println!(
                    "{} checks, {} failed, max residual {:.3e}",
                    report.checks.len(),
                    report.failures().count(),
                    report.max_residual()
                );
            }
            print_failures(&report);
            Ok(report_exit(&report))
        }
        Command::Dualize { file, output, tol } => {
            let q = load_quantum_group(&file, tol)?;
            let dual = dual_aqg(&q)?;
            write_or_print(&document_of(&dual).to_json(), output.as_deref())?;
            Ok(0)
        }
        Command::Generator { file, rep, seed, tol } => {
            let q = load_quantum_group(&file, tol)?;
            let dual = dual_aqg(&q)?;
            let gns = GnsSpace::new(&q)?;
            let representation = match rep {
                RepKind::Regular => Representation::regular(q.algebra(), &gns),
                RepKind::Counit => Representation::counit(&q.hopf),
                RepKind::Random => random_representation(&q, &mut Rng::seeded(seed), 3)?,
            };
            let gen = generator_of_rep(&q, &gns, &representation)?;
            let mut report = generator_report(&q, &gns, &dual.hopf, &representation, &gen, tol)?;
            match rep {
                RepKind::Regular => {
                    let mu = multiplicative_unitary(&q, &gns)?;
                    report.residual("generator", "equals_w_hat", residual(&gen.u, &mu.w_hat)?, tol);
                }
                RepKind::Counit => {
                    report.residual("generator", "equals_identity", residual(&gen.u, &identity(q.dim()))?, tol);
                }
                RepKind::Random => {}
            }
            println!("representation dimension {}", gen.k);
            print!("{report}");
            print_failures(&report);
            Ok(report_exit(&report))
        }
        Command::Report { what: ReportKind::Qdim { file, csv, seed, tol } } => {
            let q = load_quantum_group(&file, tol)?;
            let dual = dual_aqg(&q)?;
            let rows = coamenability_gap_report(&decompose_corepresentations(&q, &dual, seed)?);
            print!("{}", if csv { gap_table_csv(&rows) } else { gap_table_pretty(&rows) });
            Ok(0)
        }
        Command::Suq2 { q, max_spin, csv } => {
            let data = suq2_data(q, max_spin)?;
            let rows = coamenability_gap_report(&data);
            if csv {
                print!("{}", gap_table_csv(&rows));
                return Ok(0);
            }
            print!("{}", gap_table_pretty(&rows));
            let report = suq2_report(&data, 1e-10)?;
            print!("{report}");
            print_failures(&report);
            Ok(report_exit(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_EXIT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let AqgError::AxiomFailure { name, .. } = &e {
                eprintln!("violated check: {name}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
