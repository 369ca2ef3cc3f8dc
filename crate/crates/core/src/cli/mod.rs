//! Command-line front end. [`run`] returns the exit code and both output
//! streams so the binary stays a thin shell and tests can drive it directly.
//!
//! Exit codes: 0 success, 1 unreadable or invalid input, 2 budget exceeded,
//! 3 internal invariant violated (or, for `check` and `oracle`, a failed
//! comparison).

pub mod analysis;
pub mod check;
pub mod document;
pub mod graph;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::Extension;
use crate::canonical::classify_edges;
use crate::error::Error;
use crate::gen::{random_extension, GenSpec, Shape};
use crate::lattice::{brute_force_interval, enumerate_interval, Budget};
use crate::nagata::nagata_report;

use analysis::{Analysis, NagataDocument, Timing};
use check::{check_extension, CheckReport};
use document::InstanceDocument;
use graph::Graph;

#[derive(Debug, Parser)]
#[command(
    name = "ringext",
    version,
    about = "Intermediate-ring lattices of finite algebra extensions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// DOT output (lattice and analyze).
    #[arg(long, global = true, conflicts_with = "json")]
    pub dot: bool,
    /// Worker threads for the parallel steps; output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 20_000)]
    pub budget_nodes: usize,
    /// Maximum (b, r) pairs in the t-closedness scan.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub budget_scan: u64,
    /// Maximum subspaces visited by the brute-force oracle.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub budget_oracle: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timing in reports (breaks byte-stability).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalArgs {
    fn budget(&self) -> Budget {
        Budget {
            nodes: self.budget_nodes,
            scan_pairs: self.budget_scan,
            oracle_subspaces: self.budget_oracle,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: interval, canonical decomposition, predicates, Nagata invariants.
    Analyze { path: PathBuf },
    /// Hasse diagram of [R, S] with edges labeled I/D/R and crucial-ideal index.
    Lattice {
        path: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
    /// Predicted invariants of R(X) ⊆ S(X) only.
    Nagata { path: PathBuf },
    /// Invariant suite on an instance file or on a generated campaign.
    Check {
        #[arg(required_unless_present = "gen", conflicts_with = "gen")]
        path: Option<PathBuf>,
        /// Generator spec, e.g. `shape=local-subintegral,q=2,max-dim=4,count=100`.
        #[arg(long)]
        gen: Option<String>,
    },
    /// Compare closure enumeration with the brute-force subspace oracle.
    Oracle { path: PathBuf },
    /// Emit generated instances (one JSON document per line, or files in --out).
    Gen {
        #[arg(long, default_value = "mixed", value_parser = parse_shape)]
        shape: Shape,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `shape=..,q=..,max-dim=..,count=..`; omitted keys take the `gen` defaults.
pub fn parse_gen_spec(text: &str, seed: u64) -> Result<GenSpec, String> {
    let mut spec = GenSpec {
        seed,
        q: 2,
        max_dim: 4,
        shape: Shape::Mixed,
        count: 10,
    };
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let num = |v: &str| v.parse::<u64>().map_err(|e| format!("{k}: {e}"));
        match k {
            "shape" => spec.shape = parse_shape(v)?,
            "q" => spec.q = num(v)? as u32,
            "max-dim" | "max_dim" => spec.max_dim = num(v)? as usize,
            "count" => spec.count = num(v)? as usize,
            "seed" => spec.seed = num(v)?,
            _ => return Err(format!("unknown key {k:?}")),
        }
    }
    Ok(spec)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::Rejection { .. } => 2,
        Error::Invariant { .. } => 3,
        _ => 1,
    }
}

fn from_error(e: Error) -> Outcome {
    let msg = match &e {
        Error::Invariant { tag, .. } => format!("invariant violation [{tag}]: {e}\n"),
        _ => format!("error: {e}\n"),
    };
    Outcome::fail(exit_code(&e), msg)
}

fn load(path: &Path) -> Result<Extension, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(1, format!("error: cannot read {}: {e}\n", path.display())))?;
    let doc = InstanceDocument::parse(&text)
        .map_err(|e| Outcome::fail(1, format!("parse error in {}: {e}\n", path.display())))?;
    doc.build()
        .map_err(|e| Outcome::fail(1, format!("invalid instance {}: {e}\n", path.display())))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::fail(1, text),
            };
        }
    };
    match cli.global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Outcome::fail(1, format!("error: thread pool: {e}\n")),
        },
        None => dispatch(&cli),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let budget = g.budget();
    let started = Instant::now();
    let result = match &cli.command {
        Command::Analyze { path } => load(path).and_then(|ext| {
            let analysis = Analysis::run(&ext, &budget).map_err(from_error)?;
            if g.dot {
                return Ok(Graph::new(&analysis.lattice, &analysis.kinds).to_dot());
            }
            let mut doc = analysis.document().map_err(from_error)?;
            if g.timing {
                doc.timing = Some(Timing {
                    elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
                });
            }
            Ok(if g.json { doc.to_json() } else { doc.render() })
        }),
        Command::Lattice { path, format } => load(path).and_then(|ext| {
            let lat = enumerate_interval(&ext, budget.nodes).map_err(from_error)?;
            let kinds = classify_edges(&lat).map_err(from_error)?;
            let graph = Graph::new(&lat, &kinds);
            let fmt = format.unwrap_or(if g.json {
                GraphFormat::Json
            } else {
                GraphFormat::Dot
            });
            Ok(match fmt {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => graph.to_json(),
            })
        }),
        Command::Nagata { path } => load(path).and_then(|ext| {
            reject_dot(g)?;
            let lat = enumerate_interval(&ext, budget.nodes).map_err(from_error)?;
            let report = nagata_report(&lat, budget.nodes).map_err(from_error)?;
            let doc = NagataDocument::of(&report);
            Ok(if g.json {
                serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
            } else {
                doc.render()
            })
        }),
        Command::Check { path, gen } => {
            return reject_dot(g)
                .and_then(|_| cmd_check(path.as_deref(), gen.as_deref(), g, &budget))
                .unwrap_or_else(|o| o)
        }
        Command::Oracle { path } => {
            return reject_dot(g)
                .and_then(|_| load(path))
                .and_then(|ext| cmd_oracle(&ext, g, &budget))
                .unwrap_or_else(|o| o)
        }
        Command::Gen {
            shape,
            q,
            max_dim,
            count,
            out,
        } => {
            let spec = GenSpec {
                seed: g.seed,
                q: *q,
                max_dim: *max_dim,
                shape: *shape,
                count: *count,
            };
            return reject_dot(g)
                .and_then(|_| cmd_gen(spec, out.as_deref()))
                .unwrap_or_else(|o| o);
        }
    };
    match result {
        Ok(text) => Outcome::ok(text),
        Err(o) => o,
    }
}

fn reject_dot(g: &GlobalArgs) -> Result<(), Outcome> {
    if g.dot {
        Err(Outcome::fail(
            1,
            "error: --dot applies to analyze and lattice only\n".into(),
        ))
    } else {
        Ok(())
    }
}

fn cmd_check(
    path: Option<&Path>,
    gen: Option<&str>,
    g: &GlobalArgs,
    budget: &Budget,
) -> Result<Outcome, Outcome> {
    let mut instances = Vec::new();
    let mut stderr = String::new();
    if let Some(path) = path {
        let ext = load(path)?;
        instances.push((ext, path.display().to_string()));
    }
    if let Some(text) = gen {
        let spec = parse_gen_spec(text, g.seed)
            .map_err(|e| Outcome::fail(1, format!("error: --gen: {e}\n")))?;
        let stream = random_extension(spec).map_err(from_error)?;
        stderr.push_str(&format!(
            "generated {} instances in {} attempts (acceptance {:.3})\n",
            stream.instances.len(),
            stream.attempts,
            stream.acceptance_ratio()
        ));
        instances.extend(
            stream
                .instances
                .into_iter()
                .enumerate()
                .map(|(i, x)| (x.extension, format!("gen #{i} {}", x.description))),
        );
    }
    let checks = instances
        .iter()
        .map(|(ext, desc)| check_extension(ext, desc.clone(), budget))
        .collect::<Result<Vec<_>, Error>>()
        .map_err(from_error)?;
    let report = CheckReport::new(checks);
    Ok(Outcome {
        code: if report.passed() { 0 } else { 3 },
        stdout: if g.json {
            report.to_json()
        } else {
            report.render()
        },
        stderr,
    })
}

fn cmd_oracle(ext: &Extension, g: &GlobalArgs, budget: &Budget) -> Result<Outcome, Outcome> {
    let lat = enumerate_interval(ext, budget.nodes).map_err(from_error)?;
    let brute = brute_force_interval(ext, budget.oracle_subspaces).map_err(from_error)?;
    let equal = brute.as_slice() == lat.nodes();
    let only_enum = lat
        .nodes()
        .iter()
        .filter(|n| brute.binary_search(n).is_err())
        .count();
    let only_oracle = brute.iter().filter(|n| lat.index_of(n).is_none()).count();
    let stdout = if g.json {
        serde_json::to_string_pretty(&serde_json::json!({
            "equal": equal,
            "enumerated": lat.len(),
            "oracle": brute.len(),
            "only_enumerated": only_enum,
            "only_oracle": only_oracle,
        }))
        .expect("serializes")
            + "\n"
    } else {
        format!(
            "{}: enumerated {} nodes, oracle {} nodes ({} only enumerated, {} only oracle)\n",
            if equal { "equal" } else { "DIFFERENT" },
            lat.len(),
            brute.len(),
            only_enum,
            only_oracle
        )
    };
    Ok(Outcome {
        code: if equal { 0 } else { 3 },
        stdout,
        stderr: String::new(),
    })
}

fn cmd_gen(spec: GenSpec, out: Option<&Path>) -> Result<Outcome, Outcome> {
    let stream = random_extension(spec).map_err(from_error)?;
    let stderr = format!(
        "generated {} instances in {} attempts (acceptance {:.3})\n",
        stream.instances.len(),
        stream.attempts,
        stream.acceptance_ratio()
    );
    let docs: Vec<InstanceDocument> = stream
        .instances
        .iter()
        .map(|x| InstanceDocument::from_extension(&x.extension))
        .collect();
    let mut stdout = String::new();
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| Outcome::fail(1, format!("error: {}: {e}\n", dir.display())))?;
            for (i, d) in docs.iter().enumerate() {
                let file = dir.join(format!("{}-{:04}.json", spec.shape, i));
                std::fs::write(&file, d.to_json() + "\n")
                    .map_err(|e| Outcome::fail(1, format!("error: {}: {e}\n", file.display())))?;
                stdout.push_str(&format!("{}\n", file.display()));
            }
        }
        None => {
            for d in &docs {
                stdout.push_str(&serde_json::to_string(d).expect("serializes"));
                stdout.push('\n');
            }
        }
    }
    Ok(Outcome {
        code: 0,
        stdout,
        stderr,
    })
}
