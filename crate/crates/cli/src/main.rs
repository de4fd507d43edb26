mod dot;
mod file;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gendiag::diag::is_generically_diagonalizable;
use gendiag::fixtures::{self, FixtureMeta};
use gendiag::grank::grank;
use gendiag::model::{Pattern, SystemPattern};
use gendiag::oracle::{diagonalizable_votes, majority, numeric_grank, sfo_votes, soc_votes, OracleConfig};
use gendiag::placement::{min_actuators_diag, min_sensors_diag, min_sensors_iterative, min_sensors_matching};
use gendiag::sfo::{is_sfo, is_sfo_diag, DiagCondition};
use gendiag::soc::{is_soc, SocVerdict};
use serde::Serialize;

use crate::file::SystemFile;
use crate::report::{GrankReport, OracleReport};

/// Structural analysis of linear systems given by sparsity patterns.
///
/// System files are JSON with 1-based [row, col] positions.
#[derive(Parser)]
#[command(name = "gendiag", version, about)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic rank of one matrix or stack.
    Grank {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Generic diagonalizability of A.
    Diag { file: PathBuf },
    /// Structural functional observability of (A, C, F).
    Sfo {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SfoMethodArg::General)]
        method: SfoMethodArg,
    },
    /// Structural output controllability of (A, B, C).
    Soc { file: PathBuf },
    /// Sensors making (A, C, F) SFO; C in the file is ignored.
    PlaceSensors {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: SensorMethodArg,
        /// Drop redundant entries of matched states (alg1 only).
        #[arg(long)]
        minimize_links: bool,
    },
    /// Actuators making (A, B, C) SOC; B in the file is ignored.
    PlaceActuators { file: PathBuf },
    /// Compare a structural verdict with random numeric realizations.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz rendering of one of the system's graphs.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum)]
        graph: GraphKind,
    },
    /// Write the built-in regression instances and a manifest to a directory.
    WriteFixtures { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    #[value(name = "A")]
    A,
    #[value(name = "AC")]
    Ac,
    #[value(name = "ACF")]
    Acf,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "F")]
    F,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SfoMethodArg {
    General,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SensorMethodArg {
    Alg1,
    Alg2,
    Alg3,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Diag,
    Sfo,
    Soc,
    Grank,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphKind {
    System,
    Linking,
    Flow,
}

fn selected(sys: &SystemPattern, which: Which) -> Result<Pattern> {
    Ok(match which {
        Which::A => sys.a().clone(),
        Which::Ac => sys.a().stack(sys.c())?,
        Which::Acf => sys.a().stack(sys.c())?.stack(sys.f())?,
        Which::B => sys.b().clone(),
        Which::C => sys.c().clone(),
        Which::F => sys.f().clone(),
    })
}

fn emit<T: Serialize>(json: bool, title: &str, report: &T) -> Result<()> {
    let value = serde_json::to_value(report)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print!("{}", report::text(title, &value));
    }
    Ok(())
}

fn oracle(sys: &SystemPattern, check: Check, trials: u64, seed: u64) -> Result<OracleReport> {
    let cfg = OracleConfig {
        trials,
        ..OracleConfig::with_seed(seed)
    };
    let mut out = OracleReport {
        check: format!("{check:?}").to_lowercase(),
        seed,
        trials,
        structural_verdict: None,
        numeric_verdict: None,
        votes_true: 0,
        structural_value: None,
        numeric_value: None,
        agree: None,
    };
    let votes = match check {
        Check::Grank => {
            let (s, v) = (grank(sys.a()), numeric_grank(sys.a(), &cfg)?);
            out.structural_value = Some(s);
            out.numeric_value = Some(v);
            out.agree = Some(s == v);
            return Ok(out);
        }
        Check::Diag => {
            out.structural_verdict = Some(is_generically_diagonalizable(sys.a())?.verdict);
            diagonalizable_votes(sys.a(), &cfg)?
        }
        Check::Sfo => {
            out.structural_verdict = Some(is_sfo(sys.a(), sys.c(), sys.f())?.verdict);
            sfo_votes(sys.a(), sys.c(), sys.f(), &cfg)?
        }
        Check::Soc => {
            out.structural_verdict = match is_soc(sys.a(), sys.b(), sys.c())?.verdict {
                SocVerdict::Soc => Some(true),
                SocVerdict::NotSoc => Some(false),
                SocVerdict::Undecidable => None,
            };
            soc_votes(sys.a(), sys.b(), sys.c(), &cfg)?
        }
    };
    let numeric = majority(&votes);
    out.votes_true = votes.iter().filter(|&&v| v).count() as u64;
    out.numeric_verdict = Some(numeric);
    out.agree = out.structural_verdict.map(|s| s == numeric);
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    let load = |path: &PathBuf| SystemFile::load(path)?.to_system();
    match cli.command {
        Command::Grank { file, which } => {
            let m = selected(&load(&file)?, which)?;
            let r = GrankReport {
                which: format!("{which:?}").to_uppercase(),
                rows: m.rows(),
                cols: m.cols(),
                grank: grank(&m),
            };
            emit(json, "generic rank", &r)
        }
        Command::Diag { file } => {
            let sys = load(&file)?;
            emit(
                json,
                "generic diagonalizability",
                &is_generically_diagonalizable(sys.a())?,
            )
        }
        Command::Sfo { file, method } => {
            let sys = load(&file)?;
            let (a, c, f) = (sys.a(), sys.c(), sys.f());
            let r = match method {
                SfoMethodArg::General => is_sfo(a, c, f)?,
                SfoMethodArg::B => is_sfo_diag(a, c, f, DiagCondition::B)?,
                SfoMethodArg::C => is_sfo_diag(a, c, f, DiagCondition::C)?,
                SfoMethodArg::D => is_sfo_diag(a, c, f, DiagCondition::D)?,
            };
            emit(json, "structural functional observability", &r)
        }
        Command::Soc { file } => {
            let sys = load(&file)?;
            emit(
                json,
                "structural output controllability",
                &is_soc(sys.a(), sys.b(), sys.c())?,
            )
        }
        Command::PlaceSensors {
            file,
            method,
            minimize_links,
        } => {
            let sys = load(&file)?;
            let (a, f) = (sys.a(), sys.f());
            let r = match method {
                SensorMethodArg::Alg1 => min_sensors_diag(a, f, minimize_links)?,
                SensorMethodArg::Alg2 => min_sensors_iterative(a, f)?,
                SensorMethodArg::Alg3 => min_sensors_matching(a, f)?,
            };
            emit(json, "sensor placement", &r)
        }
        Command::PlaceActuators { file } => {
            let sys = load(&file)?;
            emit(json, "actuator placement", &min_actuators_diag(sys.a(), sys.c())?)
        }
        Command::Oracle {
            file,
            check,
            trials,
            seed,
        } => {
            let sys = load(&file)?;
            emit(json, "oracle", &oracle(&sys, check, trials, seed)?)
        }
        Command::ExportDot { file, graph } => {
            let sys = load(&file)?;
            let text = match graph {
                GraphKind::System => dot::system(&sys)?,
                GraphKind::Linking => dot::linking_graph(&sys)?,
                GraphKind::Flow => dot::flow_graph(&sys)?,
            };
            print!("{text}");
            Ok(())
        }
        Command::WriteFixtures { dir } => write_fixtures(&dir),
    }
}

#[derive(Serialize)]
struct ManifestEntry {
    file: String,
    #[serde(flatten)]
    meta: FixtureMeta,
}

fn write_fixtures(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut manifest = Vec::new();
    for fx in fixtures::all() {
        let file = format!("{}.json", fx.meta.name.replace('-', "_"));
        let body = serde_json::to_string_pretty(&SystemFile::from_system(&fx.system))?;
        let path = dir.join(&file);
        std::fs::write(&path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
        manifest.push(ManifestEntry { file, meta: fx.meta });
    }
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {} fixtures to {}", manifest.len(), dir.display());
    Ok(())
}

/// 0: the analysis ran. 1: bad usage, I/O or malformed input.
/// 2: a precondition of the requested analysis does not hold.
fn exit_code(err: &anyhow::Error) -> u8 {
    let precondition = err
        .chain()
        .filter_map(|e| e.downcast_ref::<gendiag::Error>())
        .any(gendiag::Error::is_precondition);
    if precondition {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
