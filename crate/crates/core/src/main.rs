//! Command-line surface. Data goes to stdout, diagnostics to stderr.
//! Exit codes: 0 success, 1 validation or law failure, 2 usage error,
//! 3 guard exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ybg::brace::{BraceView, SamplePlan, DEFAULT_SEED};
use ybg::group::{Germ, DEFAULT_GERM_GUARD};
use ybg::oracle::{self, DEFAULT_BALL_GUARD};
use ybg::rep::{self, decompose, psi, spanning_set};
use ybg::solution::SolutionTable;
use ybg::Error;

#[derive(Parser)]
#[command(name = "ybg", version, about = "Garside invariants of involutive Yang-Baxter solutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a solution file and check all axioms
    Validate { file: PathBuf },
    /// Print the solution profile: D, class, condition (C), frozen words,
    /// retraction tower
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the germ of simples
    Germ {
        file: PathBuf,
        /// Print one line per simple: vector, permutation, witness word
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
        /// Cap on m^n before germ construction
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
    /// Verify the left-brace laws; nonzero exit on any failure
    BraceCheck {
        file: PathBuf,
        /// Seed for sampled triples
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of sampled triples when not exhaustive
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
    /// Write the spanning matrices, basis indices and dimension as JSON
    Rep {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
    /// Dimension of the image of the matrix-algebra homomorphism
    Dim {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
    /// Brute-force cross-checks: injectivity, counts, span stabilization
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
    /// Inspect one element given by a positive word, e.g. --word "1 2"
    Element {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_GERM_GUARD)]
        max_germ: usize,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::GermGuardExceeded { .. }
        | Error::BallGuardExceeded { .. }
        | Error::ClassSearchExceeded { .. } => 3,
        Error::IndexOutOfRange { .. } => 2,
        _ => 1,
    }
}

fn load(file: &PathBuf) -> Result<SolutionTable, Error> {
    let raw = std::fs::read_to_string(file)
        .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    SolutionTable::load(&raw)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate { file } => {
            load(&file)?;
            println!("ok");
        }
        Command::Info { file, json } => {
            let profile = load(&file)?.profile()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&profile).unwrap());
            } else {
                println!("n = {}", profile.n);
                println!("class m = {}", profile.class_m);
                println!("D = {:?}", profile.d_table);
                for (i, w) in profile.frozen_words.iter().enumerate() {
                    println!("theta_{} = {:?}", i + 1, w);
                }
                println!("condition (C): {}", profile.satisfies_c);
                println!("square-free: {}", profile.square_free);
                println!("retraction sizes: {:?}", profile.retraction_levels);
                let level = serde_json::to_value(profile.multipermutation_level).unwrap();
                println!("multipermutation level: {level}");
            }
        }
        Command::Germ { file, list, json, max_germ } => {
            let germ = Germ::build(&load(&file)?, max_germ)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&germ.entries()).unwrap());
            } else if list {
                for e in germ.entries() {
                    println!("{:?} phi={:?} word={:?}", e.vector, e.phi, e.witness);
                }
            } else {
                println!("germ size = {} ({}^{})", germ.size(), germ.class(), germ.n());
            }
        }
        Command::BraceCheck { file, seed, samples, json, max_germ } => {
            let germ = Germ::build(&load(&file)?, max_germ)?;
            // exhaustive when the triple count stays desk-sized
            let plan = if germ.size().pow(3) <= 1_000_000 {
                SamplePlan::Exhaustive
            } else {
                SamplePlan::Sampled { count: samples, seed }
            };
            let report = BraceView::new(&germ).verify_laws(plan);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "{} over {} triples ({} mode)",
                    if report.passed { "pass" } else { "FAIL" },
                    report.triples_checked,
                    report.mode
                );
                if let Some(c) = &report.counterexample {
                    println!("first failure: {} at a={:?} b={:?} c={:?}", c.law, c.a, c.b, c.c);
                }
            }
            if !report.passed {
                return Err(Error::Parse("brace law failure".into()));
            }
        }
        Command::Rep { file, out, max_germ } => {
            let solution = load(&file)?;
            let germ = Germ::build(&solution, max_germ)?;
            let cosets = germ.coset_tables();
            let spanning = spanning_set(&germ, &cosets);
            let mats: Vec<_> = spanning.iter().map(|s| s.matrix.clone()).collect();
            let (dimension, basis) = rep::rank_and_basis(&mats)?;
            let payload = serde_json::json!({
                "spanning": spanning,
                "basis_indices": basis,
                "dimension": dimension,
            });
            std::fs::write(&out, serde_json::to_string_pretty(&payload).unwrap())
                .map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
        }
        Command::Dim { file, json, max_germ } => {
            let report = rep::dimension_report_with_guard(&load(&file)?, max_germ)?;
            if json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                println!("dimension = {} (bound {})", report.dimension, report.bound);
                println!("basis: {}", report.basis_labels.join(", "));
                println!(
                    "simples-only rank = {} ({})",
                    report.simples_only_rank,
                    if report.simples_span { "simples span" } else { "simples do not span" }
                );
            }
        }
        Command::Oracle { file, radius, json, max_germ } => {
            let solution = load(&file)?;
            let inj = oracle::check_pi_injectivity(&solution, radius);
            let counts = oracle::check_counts(&solution)?;
            let span = oracle::check_span_stabilization(&solution, radius, DEFAULT_BALL_GUARD)?;
            let dim = rep::dimension_report_with_guard(&solution, max_germ)?;
            let agree = span.stabilized_rank == Some(dim.dimension);
            if json {
                let payload = serde_json::json!({
                    "injectivity": inj,
                    "counts": counts,
                    "span": span,
                    "dimension": dim.dimension,
                    "span_agrees_with_dimension": agree,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("pi injectivity (radius {radius}): {}", if inj.passed { "pass" } else { "FAIL" });
                println!("counts: {}", if counts.passed { "pass" } else { "FAIL" });
                println!("span ranks: {:?}", span.ranks);
                println!(
                    "span vs dimension {}: {}",
                    dim.dimension,
                    if agree { "pass" } else { "not stabilized" }
                );
            }
            if !inj.passed || !counts.passed || !agree {
                return Err(Error::Parse("oracle disagreement".into()));
            }
        }
        Command::Element { file, word, max_germ } => {
            let solution = load(&file)?;
            let germ = Germ::build(&solution, max_germ)?;
            let letters: Vec<usize> = word
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .and_then(|v| v.checked_sub(1))
                        .ok_or(Error::IndexOutOfRange { index: 0, n: solution.n() })
                })
                .collect::<Result<_, _>>()?;
            let g = germ.from_word(&letters)?;
            println!("pi = {:?}", g.vector());
            println!("phi = {:?}", germ.phi(g.vector()).one_line_1based());
            println!("psi =");
            for row in &psi(&germ, &g).rows {
                println!("  {row:?}");
            }
            let (s, alphas) = decompose(&germ, &g);
            println!("simple part = {:?}, exponents = {:?}", s.vector(), alphas);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
