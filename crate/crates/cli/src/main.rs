//! Command-line driver: runs experiments, transformations, attacks, the
//! relation matrix, and describes program indices.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use climit::adversaries::{self, AttackBounds, AttackKind};
use climit::harness::config::{self, ExperimentConfig};
use climit::harness::describe::describe;
use climit::harness::matrix::MatrixSpec;
use climit::learners::OperatorKind;
use climit::numbering::Nat;
use climit::transforms::{self, TransformKind};

#[derive(Parser)]
#[command(name = "climit", version, about = "Bounded simulation of learning in the limit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a learner on the texts of a JSON experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's learner (builtin:NAME, idx:N or file:PATH).
        #[arg(long)]
        learner: Option<String>,
        #[arg(long)]
        kind: Option<OperatorKind>,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving trace.jsonl and verdict.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a learner transformation and print its report.
    Transform {
        #[arg(long)]
        kind: TransformKind,
        #[arg(long)]
        learner: String,
        #[arg(long, default_value_t = transforms::DEFAULT_T_CAP)]
        t_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a diagonal adversary against one opponent or the shipped suite.
    Attack {
        #[arg(long)]
        theorem: AttackKind,
        #[arg(long)]
        opponent: Option<String>,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the relation matrix.
    Matrix {
        /// A JSON matrix spec: {"edges": [...], "bounds": {...}}.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Restrict to these edge ids.
        #[arg(long = "edge")]
        edges: Vec<String>,
        #[arg(long)]
        horizon: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Print JSON instead of the table.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode an index and probe it as a characteristic function.
    Describe {
        /// A decimal index; alternatively use --learner.
        index: Option<Nat>,
        #[arg(long)]
        learner: Option<String>,
        #[arg(long, default_value_t = 16)]
        m: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// Something that should pass did not.
    Falsified(String),
    Usage(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Run { config: path, learner, kind, horizon, budget, m, seed, out } => {
            let mut c = ExperimentConfig::load(&path).map_err(usage)?;
            if let Some(l) = learner {
                c.learner = l;
            }
            c.kind = kind.or(c.kind);
            c.horizon = horizon.unwrap_or(c.horizon);
            c.budget = budget.unwrap_or(c.budget);
            c.m = m.unwrap_or(c.m);
            c.seed = seed.unwrap_or(c.seed);
            let r = config::run(&c).map_err(usage)?;
            match &out {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(usage)?;
                    write(&dir.join("trace.jsonl"), &r.trace_jsonl())?;
                    write(&dir.join("verdict.json"), &(r.verdict_json() + "\n"))?;
                }
                None => {
                    print!("{}", r.trace_jsonl());
                    println!("{}", r.verdict_json());
                }
            }
            if r.falsified() {
                return Err(Failure::Falsified("a verdict is falsified".into()));
            }
            Ok(())
        }
        Command::Transform { kind, learner, t_cap, out } => {
            let h = config::resolve_learner(&learner, Some(kind.input_kind())).map_err(usage)?;
            let (_, report) = transforms::apply_with(kind, &h, t_cap).map_err(usage)?;
            emit(&out, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))
        }
        Command::Attack { theorem, opponent, horizon, budget, out } => {
            let mut bounds = AttackBounds::default();
            bounds.horizon = horizon.unwrap_or(bounds.horizon);
            bounds.budget = budget.unwrap_or(bounds.budget);
            let suite = match opponent {
                Some(spec) => {
                    vec![(spec.clone(), config::resolve_learner(&spec, Some(theorem.opponent_kind())).map_err(usage)?)]
                }
                None => adversaries::opponents(theorem)
                    .into_iter()
                    .map(|(n, h)| (n.to_string(), h))
                    .collect(),
            };
            let mut witnesses = Vec::new();
            let mut failed = Vec::new();
            for (name, h) in &suite {
                let w = adversaries::attack(theorem, h, bounds).map_err(usage)?;
                if !w.is_witness() || w.validate().is_err() {
                    failed.push(name.clone());
                }
                witnesses.push(serde_json::json!({ "opponent": name, "witness": w }));
            }
            emit(&out, &(serde_json::to_string_pretty(&witnesses).expect("witnesses serialize") + "\n"))?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Falsified(format!("no validated witness against {}", failed.join(", "))))
            }
        }
        Command::Matrix { config: path, edges, horizon, budget, m, seed, json, out } => {
            let mut spec = match path {
                Some(p) => {
                    let src = fs::read_to_string(&p).map_err(usage)?;
                    serde_json::from_str::<MatrixSpec>(&src).map_err(|e| usage(format!("invalid matrix spec: {e}")))?
                }
                None => MatrixSpec::default(),
            };
            if !edges.is_empty() {
                spec.edges = Some(edges);
            }
            let b = &mut spec.bounds;
            b.horizon = horizon.unwrap_or(b.horizon);
            b.budget = budget.unwrap_or(b.budget);
            b.m = m.unwrap_or(b.m);
            b.seed = seed.unwrap_or(b.seed);
            let unknown = spec.unknown_edges();
            if !unknown.is_empty() {
                return Err(usage(format!("unknown edge ids: {}", unknown.join(", "))));
            }
            let report = spec.run();
            let js = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            if let Some(p) = &out {
                write(p, &js)?;
            }
            if json {
                print!("{js}");
            } else {
                print!("{}", report.table());
            }
            if report.all_in_scope_pass() {
                Ok(())
            } else {
                Err(Failure::Falsified("an in-scope edge did not pass".into()))
            }
        }
        Command::Describe { index, learner, m, budget, json } => {
            let index = match (index, learner) {
                (Some(i), None) => i,
                (None, Some(spec)) => config::resolve_learner(&spec, Some(OperatorKind::G)).map_err(usage)?.program,
                _ => return Err(usage("give exactly one of INDEX or --learner")),
            };
            let d = describe(&index, m, budget);
            if json {
                println!("{}", serde_json::to_string_pretty(&d).expect("description serializes"));
            } else {
                print!("{}", d.text());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified(msg)) => {
            eprintln!("climit: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("climit: {msg}");
            ExitCode::from(2)
        }
    }
}
