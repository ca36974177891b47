//! Command-line interface: argument parsing, dispatch and the report file.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, Budget};
use crate::error::CliError;
use crate::explorer::{random_ln_subalgebra_search, verify_record, SearchRecord};
use crate::input::{export_spec, parse_spec, AlgebraSpecFile};
use crate::linalg::Subspace;
use crate::report::{Report, Status};
use crate::structure::radical;
use crate::theorems::{run_full_suite, SuiteConfig, VerifyConfig, ZooEntry};

pub const TOOL: &str = "lienil";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "lienil", version, about = "Lie nilpotency checks and identity verification for finite-dimensional algebras")]
pub struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the algebra satisfies L_n.
    Check {
        /// Algebra spec file (`-` for stdin).
        spec: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// The n-th Lie center.
    Center {
        spec: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// The radical and its nilpotency index.
    Radical { spec: PathBuf },
    /// Run the identity verifiers on one algebra or on the built-in zoo.
    Verify {
        #[arg(required_unless_present = "zoo", conflicts_with = "zoo")]
        spec: Option<PathBuf>,
        #[arg(long)]
        zoo: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Search for large unital subalgebras of M_m(F_p) with L_n.
    Explore {
        #[arg(long, required_unless_present = "load")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "load")]
        n: Option<usize>,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Re-verify a stored search record instead of searching.
        #[arg(long, conflicts_with_all = ["m", "n"])]
        load: Option<PathBuf>,
    },
    /// Print the algebra as a structure_constants spec.
    Export { spec: PathBuf },
}

/// JSON document written by every command except `export`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub reports: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    /// Wall-clock time; not covered by the determinism guarantee.
    pub timing_ms: u64,
}

/// What a command produced: the JSON document, human-readable lines, and
/// whether any verification failed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub summary: Vec<String>,
    pub failed: bool,
}

fn read_spec(path: &Path) -> Result<(AlgebraSpecFile, Algebra), CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    let spec = parse_spec(&text)?;
    let alg = spec.build()?;
    Ok((spec, alg))
}

fn labelled_basis(alg: &Algebra, s: &Subspace) -> Vec<String> {
    s.basis_vectors().iter().map(|v| alg.format(&alg.element(v.clone()).expect("basis vector"))).collect()
}

fn report_file(command: String, digest: String, seed: Option<u64>, reports: Vec<Report>, result: Option<Value>, start: Instant) -> Value {
    let file = ReportFile {
        tool: TOOL.into(),
        version: VERSION.into(),
        command,
        input_digest: digest,
        seed,
        reports,
        result,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    serde_json::to_value(file).expect("report files serialize")
}

fn report_line(r: &Report) -> String {
    let tag = match r.status {
        Status::Pass => "PASS",
        Status::VacuousPass => "PASS (vacuous)",
        Status::Fail => "FAIL",
        Status::NotApplicable => "N/A",
    };
    let mut line = format!("{tag:<15} {:<28} {}  [{} cases]", r.statement_id, r.algebra, r.cases_checked);
    if let Some(cx) = &r.counterexample {
        line.push_str(&format!("  counterexample: {} -> {}", cx.inputs.join(", "), cx.value));
    }
    line
}

/// Runs one command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let budget = Budget::from_env();
    match &cli.command {
        Command::Check { spec, n } => {
            let (file, alg) = read_spec(spec)?;
            let verdict = alg.satisfies_ln(*n, &budget)?;
            let line = match &verdict.witness {
                None => format!("L_{n}: yes"),
                Some(w) => format!("L_{n}: no; witness {}", alg.format_witness(w)),
            };
            let witness = verdict.witness.as_ref().map(|w| {
                json!({
                    "indices": w.indices,
                    "labels": w.indices.iter().map(|&i| alg.label(i)).collect::<Vec<_>>(),
                    "value": alg.format(&w.value),
                })
            });
            let result = json!({ "algebra": alg.name(), "dim": alg.dim(), "n": n, "holds": verdict.holds, "witness": witness });
            let json = report_file(format!("check n={n}"), file.digest(), None, Vec::new(), Some(result), start);
            Ok(Outcome { json, summary: vec![line], failed: false })
        }
        Command::Center { spec, n } => {
            let (file, alg) = read_spec(spec)?;
            let z = crate::structure::lie_center(&alg, *n, &budget)?;
            let basis = labelled_basis(&alg, &z);
            let line = format!("Z_{n}({}): dim {}, basis {{{}}}", alg.name(), z.dim(), basis.join(", "));
            let result = json!({ "algebra": alg.name(), "n": n, "dim": z.dim(), "basis": basis });
            let json = report_file(format!("center n={n}"), file.digest(), None, Vec::new(), Some(result), start);
            Ok(Outcome { json, summary: vec![line], failed: false })
        }
        Command::Radical { spec } => {
            let (file, alg) = read_spec(spec)?;
            let rad = radical(&alg)?;
            let basis = labelled_basis(&alg, &rad.subspace);
            let line = format!(
                "rad({}): dim {}, nilpotency index {}, basis {{{}}}",
                alg.name(),
                rad.subspace.dim(),
                rad.nilpotency_index,
                basis.join(", ")
            );
            let result = json!({
                "algebra": alg.name(),
                "dim": rad.subspace.dim(),
                "nilpotency_index": rad.nilpotency_index,
                "basis": basis,
            });
            let json = report_file("radical".into(), file.digest(), None, Vec::new(), Some(result), start);
            Ok(Outcome { json, summary: vec![line], failed: false })
        }
        Command::Verify { spec, zoo, seed } => {
            let verify = VerifyConfig { budget, ..VerifyConfig::default() }.with_seed(*seed);
            let (config, digest, command) = if *zoo {
                let config = SuiteConfig::new(verify)?;
                let mut h = Sha256::new();
                for e in &config.zoo {
                    h.update(export_spec(&e.algebra).digest().as_bytes());
                }
                (config, hex::encode(h.finalize()), "verify --zoo".to_string())
            } else {
                let path = spec.as_ref().expect("clap requires a spec without --zoo");
                let (file, alg) = read_spec(path)?;
                let mut config = SuiteConfig::empty(verify);
                config.zoo.push(ZooEntry::classify(alg, &verify)?);
                (config, file.digest(), "verify".to_string())
            };
            let reports = run_full_suite(&config);
            let failed = reports.iter().any(|r| r.status == Status::Fail);
            let mut summary: Vec<String> = reports.iter().map(report_line).collect();
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            summary.push(format!(
                "{} reports: {} pass, {} vacuous, {} not applicable, {} fail",
                reports.len(),
                count(Status::Pass),
                count(Status::VacuousPass),
                count(Status::NotApplicable),
                count(Status::Fail)
            ));
            let json = report_file(command, digest, Some(*seed), reports, None, start);
            Ok(Outcome { json, summary, failed })
        }
        Command::Explore { m, n, p, trials, seed, load } => {
            if let Some(path) = load {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
                // accept a bare record or a report file wrapping one
                let record_value = value.get("result").cloned().unwrap_or(value);
                let record: SearchRecord =
                    serde_json::from_value(record_value).map_err(|e| CliError::Input(format!("search record: {e}")))?;
                verify_record(&record, &budget)?;
                let line = format!(
                    "record m={} n={} p={}: best_dim {} re-verified (bound {}, violation {})",
                    record.m, record.n, record.p, record.best_dim, record.bound.value, record.violation
                );
                let digest = hex::encode(Sha256::digest(serde_json::to_string(&record).expect("serializes").as_bytes()));
                let json = report_file("explore --load".into(), digest, Some(record.seed), Vec::new(), Some(serde_json::to_value(&record).expect("serializes")), start);
                return Ok(Outcome { json, summary: vec![line], failed: false });
            }
            let (m, n) = (m.expect("clap requires --m"), n.expect("clap requires --n"));
            let record = random_ln_subalgebra_search(m, n, *p, *trials, *seed, &budget)?;
            let mut summary = vec![format!(
                "m={m} n={n} p={p}: best_dim {} ({:?}), bound {} at ks {:?}, violation {}",
                record.best_dim, record.best_kind, record.bound.value, record.bound.best_ks, record.violation
            )];
            if record.violation {
                summary.push("WARNING: candidate exceeds the bound; record kept for inspection".into());
            }
            summary.push(record.note.clone());
            let command = format!("explore m={m} n={n} p={p} trials={trials}");
            let digest = hex::encode(Sha256::digest(command.as_bytes()));
            let json = report_file(command, digest, Some(*seed), Vec::new(), Some(serde_json::to_value(&record).expect("serializes")), start);
            Ok(Outcome { json, summary, failed: false })
        }
        Command::Export { spec } => {
            let (_, alg) = read_spec(spec)?;
            let exported = export_spec(&alg);
            let line = format!("exported {} (dim {})", alg.name(), alg.dim());
            Ok(Outcome { json: serde_json::to_value(exported).expect("serializes"), summary: vec![line], failed: false })
        }
    }
}

/// Runs a command on a pool of `jobs` workers (all cores when `None`).
pub fn execute_with_jobs(cli: &Cli) -> Result<Outcome, CliError> {
    match cli.jobs {
        None => execute(cli),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
            pool.install(|| execute(cli))
        }
    }
}

/// Parses, runs, writes output and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { crate::error::EXIT_INPUT } else { crate::error::EXIT_OK };
        }
    };
    match execute_with_jobs(&cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("json") + "\n";
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return crate::error::EXIT_INPUT;
            }
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            if outcome.failed {
                crate::error::EXIT_VERIFICATION
            } else {
                crate::error::EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
