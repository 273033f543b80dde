//! Command-line front end: parse a JSON problem file, dispatch to the
//! library, print a machine-readable JSON report on stdout and a short
//! human summary on stderr. Exit code 0 iff every requested verification
//! passed.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use miura_core::bethe::{is_bethe, is_fertile, is_generic};
use miura_core::doper;
use miura_core::gauge;
use miura_core::population::{self, Param};
use miura_core::problemfile::ProblemFile;
use miura_core::ratpoly::rat_string;
use miura_core::rf::{MatrixRF, RationalFunction};
use miura_core::{BetheProblem, Tuple};
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "miura", about = "Exact constructions around Bethe ansatz solutions", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Genericity, per-direction fertility, and the solution predicate.
    Check { file: PathBuf },
    /// Solve the Wronskian equation in one direction.
    Wronskian {
        file: PathBuf,
        /// Direction index (overrides the file's `direction`).
        #[arg(long)]
        direction: Option<usize>,
    },
    /// Reproduce along a direction sequence with explicit parameters.
    Populate {
        file: PathBuf,
        /// Comma-separated direction sequence (overrides the file's `word`).
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        /// Comma-separated parameters, one per step; "inf" allowed.
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
    },
    /// Explore cells for the file's Weyl words.
    Cells {
        file: PathBuf,
        /// Samples per word (overrides the file's `samples`).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Connection-matrix operations (type A only).
    Doper {
        file: PathBuf,
        #[arg(long, value_enum)]
        action: DoperAction,
        /// Direction for `deform`.
        #[arg(long)]
        direction: Option<usize>,
        /// Perturb one entry before `verify` (demonstrates failure).
        #[arg(long)]
        perturb: bool,
    },
    /// Classify parameters and transport to the canonical set.
    Gauge { file: PathBuf },
    /// Vector solution along the file's direction sequence.
    Solve { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum DoperAction {
    Build,
    Deform,
    Solve,
    Verify,
}

fn rf_json(f: &RationalFunction) -> serde_json::Value {
    json!({"num": f.num().to_strings(), "den": f.den().to_strings()})
}

fn matrix_json(m: &MatrixRF) -> serde_json::Value {
    let rows: Vec<Vec<serde_json::Value>> = (0..m.n)
        .map(|i| (0..m.n).map(|j| rf_json(m.get(i, j))).collect())
        .collect();
    serde_json::Value::Array(rows.into_iter().map(serde_json::Value::from).collect())
}

fn tuple_json(t: &Tuple) -> serde_json::Value {
    json!(t.polys().iter().map(|p| p.to_strings()).collect::<Vec<_>>())
}

fn load(file: &PathBuf) -> Result<(ProblemFile, BetheProblem, Tuple)> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))?;
    let pf = ProblemFile::from_json(&text)?;
    let (problem, tuple) = pf.to_problem()?;
    Ok((pf, problem, tuple))
}

fn emit(report: &impl Serialize, summary: &str, quiet: bool, ok: bool) -> Result<bool> {
    println!("{}", serde_json::to_string_pretty(report)?);
    if !quiet {
        eprintln!("{summary}");
    }
    Ok(ok)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Check { file } => {
            let (_, problem, tuple) = load(file)?;
            let generic = is_generic(&problem, &tuple);
            let fertile: Vec<bool> = (1..=problem.rank())
                .map(|i| is_fertile(&problem, &tuple, i).map(|o| o.is_some()))
                .collect::<miura_core::Result<_>>()?;
            let bethe = is_bethe(&problem, &tuple)?;
            let report = json!({
                "generic": generic,
                "fertile": fertile,
                "bethe": bethe,
            });
            emit(
                &report,
                &format!("generic: {}, bethe: {}", generic.generic, bethe),
                cli.quiet,
                bethe,
            )
        }
        Command::Wronskian { file, direction } => {
            let (pf, problem, tuple) = load(file)?;
            let i = direction
                .or(pf.direction)
                .ok_or_else(|| anyhow!("no direction given (flag --direction or file field)"))?;
            let ytilde = is_fertile(&problem, &tuple, i)?
                .ok_or_else(|| anyhow!("not fertile in direction {i}"))?;
            let report = json!({
                "direction": i,
                "ytilde_raw": ytilde.to_strings(),
                "ytilde_monic": ytilde.monic().to_strings(),
                "family": "ytilde + c*y",
            });
            emit(
                &report,
                &format!("direction {i}: solution of degree {}", ytilde.deg()),
                cli.quiet,
                true,
            )
        }
        Command::Populate { file, word, params } => {
            let (pf, problem, tuple) = load(file)?;
            let word = word
                .clone()
                .or(pf.word.clone())
                .ok_or_else(|| anyhow!("no direction sequence given"))?;
            let raw_params = params.clone().or(pf.params.clone()).unwrap_or_default();
            let params = raw_params
                .iter()
                .map(|s| Param::parse(s))
                .collect::<miura_core::Result<Vec<_>>>()?;
            let rep = population::reproduce_word(&problem, &tuple, &word, &params)?;
            let report = json!({
                "word": word,
                "steps": rep.steps,
                "member": tuple_json(&rep.result),
                "degrees": rep.result.degrees(),
            });
            emit(
                &report,
                &format!("member degrees {:?}", rep.result.degrees()),
                cli.quiet,
                true,
            )
        }
        Command::Cells { file, samples } => {
            let (pf, problem, tuple) = load(file)?;
            let words = pf.weyl_words()?;
            if words.is_empty() {
                bail!("no words in the problem file");
            }
            let n = samples.or(pf.samples).unwrap_or(3);
            let report = population::explore_cells(&problem, &tuple, &words, n)?;
            let ok = report.cells.iter().all(|c| !c.resampling_exhausted);
            let summary = report
                .cells
                .iter()
                .map(|c| format!("{:?} -> {:?} (dim {})", c.word, c.predicted_degrees, c.dimension))
                .collect::<Vec<_>>()
                .join("; ");
            emit(&report, &summary, cli.quiet, ok)
        }
        Command::Doper {
            file,
            action,
            direction,
            perturb,
        } => {
            let (pf, problem, tuple) = load(file)?;
            match action {
                DoperAction::Build => {
                    let d = doper::build_v(&problem, &tuple)?;
                    let det_one = d.v.det().is_one();
                    let report = json!({"V": matrix_json(&d.v), "det_one": det_one});
                    emit(&report, &format!("det V = 1: {det_one}"), cli.quiet, det_one)
                }
                DoperAction::Deform => {
                    let i = direction
                        .or(pf.direction)
                        .ok_or_else(|| anyhow!("deform needs --direction"))?;
                    // identity and Ricatti checks run inside deform
                    let d = doper::deform(&problem, &tuple, i)?;
                    let report = json!({
                        "direction": i,
                        "g": rf_json(&d.g),
                        "ytilde": d.ytilde.to_strings(),
                        "new_tuple": tuple_json(&d.new_tuple),
                        "V_new": matrix_json(&d.doper.v),
                        "gauge_identity": true,
                        "ricatti": true,
                    });
                    emit(&report, &format!("deformation in direction {i} verified"), cli.quiet, true)
                }
                DoperAction::Solve | DoperAction::Verify => {
                    let mut y = doper::fundamental_solution_a(&problem, &tuple)?;
                    if *perturb {
                        let e = &y.get(0, 0).clone() + &RationalFunction::one();
                        y.set(0, 0, e);
                    }
                    let v = doper::build_v(&problem, &tuple)?;
                    let verified = doper::verify_solution(&v.v, &y, &problem.h);
                    let report = json!({
                        "Y": matrix_json(&y),
                        "verified": verified,
                        "det_one": y.det().is_one(),
                    });
                    emit(&report, &format!("solution verified: {verified}"), cli.quiet, verified)
                }
            }
        }
        Command::Gauge { file } => {
            let (_, problem, tuple) = load(file)?;
            let class = gauge::classify(&problem.params, &problem.h);
            if !class.symmetric {
                bail!("parameter set is not symmetric; no canonical transport exists");
            }
            let shift = gauge::tree_shifts(&problem.cartan, &problem.params, &problem.h)?;
            let (p2, t2) = gauge::transform(&problem, &tuple, &shift)?;
            let mut fertility_match = true;
            let mut verdicts = Vec::new();
            for i in 1..=problem.rank() {
                let before = is_fertile(&problem, &tuple, i)?.is_some();
                let after = is_fertile(&p2, &t2, i)?.is_some();
                fertility_match &= before == after;
                verdicts.push(json!({"direction": i, "before": before, "after": after}));
            }
            let report = json!({
                "classification": class,
                "shift": shift.d.iter().map(rat_string).collect::<Vec<_>>(),
                "target_parameters": shift
                    .target
                    .table()
                    .iter()
                    .map(|row| row.iter().map(rat_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "transformed_tuple": tuple_json(&t2),
                "transformed_t": (1..=p2.rank())
                    .map(|i| p2.build_t(i).to_strings())
                    .collect::<Vec<_>>(),
                "fertility": verdicts,
                "fertility_match": fertility_match,
            });
            emit(
                &report,
                &format!("fertility preserved: {fertility_match}"),
                cli.quiet,
                fertility_match,
            )
        }
        Command::Solve { file } => {
            let (pf, problem, tuple) = load(file)?;
            let word = pf.word.clone().unwrap_or_default();
            let seq = population::diagonal_sequence(&problem, &tuple, &word)?;
            // the difference equation is asserted inside the constructor
            let y = doper::general_solution_vector(&problem, &tuple, &seq)?;
            let report = json!({
                "word": word,
                "vector": y.iter().map(rf_json).collect::<Vec<_>>(),
                "verified": true,
            });
            emit(&report, "vector solution verified", cli.quiet, true)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
