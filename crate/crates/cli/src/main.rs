//! `hlg`: dimensions, GL tables, verification runs and template tools.

mod cache;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hlg_cokernel_lab::dashed::DashedTemplate;
use hlg_cokernel_lab::gl_table::{two_loop_row, TableRow};
use hlg_cokernel_lab::report::Inputs;
use hlg_cokernel_lab::suites::Claim;
use hlg_cokernel_lab::LabError;
use hlg_core::graph::{parse_graph_vector, set_block_limit, vanishes_mod_ihx, BlockSpace, GraphError, GraphVector, SpaceSpec};
use hlg_core::lie::{dominant_contents, h_dim, orbit_size, LieError};
use hlg_core::tableaux::format_decomposition;
use hlg_core::trace::cokernel::cokernel_dim;
use hlg_core::trace::quotient::omega_tilde_block;
use hlg_core::trace::{beta, beta_power, trace, trace_r};

use cache::{cache_key, Cache};

const DEFAULT_BLOCK_LIMIT: usize = 2_000_000;
const MAX_TABLE_DEGREE: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Lab(#[from] LabError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let resource = match self {
            CliError::Graph(e) => matches!(e, GraphError::Resource(_)),
            CliError::Lab(e) => e.is_resource(),
            _ => false,
        };
        match self {
            _ if resource => 3,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Graph(GraphError::Parse { .. }) | CliError::Lab(LabError::UnknownClaim(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hlg", version, about = "Hairy Lie graph computations over the rationals")]
struct Cli {
    /// Directory for cached results.
    #[arg(long, global = true, env = "HLG_CACHE", default_value = cache::DEFAULT_DIR)]
    cache_dir: PathBuf,
    /// Recompute even when a cached result exists, and do not store the result.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest spanning set of a single weight block.
    #[arg(long, global = true, default_value_t = DEFAULT_BLOCK_LIMIT)]
    max_block: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// One-tree graphs with `r` dotted edges modulo AS and IHX.
    C1rh,
    /// The same graphs modulo fully merged tripod unions.
    #[value(alias = "omega2")]
    Quotient,
    /// Symplectic derivations of the free Lie algebra.
    H,
    /// Cokernel of the bracket map from tripods.
    Cokernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operation {
    /// Sum over all ways of closing two leaves into a dotted edge.
    Trace,
    /// Terms of the trace with exactly `r` dotted edges.
    TraceR,
    /// Merge the first two trees of an ordered union.
    Beta,
    /// Merge an ordered union into a single tree.
    BetaPower,
    /// Whether the vector lies in the IHX span.
    Vanishes,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of a graded piece, with its dominant weight blocks.
    Dim {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long)]
        g: usize,
        /// A single weight block, as comma separated letter counts.
        #[arg(long, value_delimiter = ',')]
        weight: Option<Vec<usize>>,
    },
    /// Runs a named verification and prints its JSON report.
    Verify {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// GL decompositions of the two-loop graph space and quotient.
    Table {
        #[arg(long, default_value_t = MAX_TABLE_DEGREE)]
        max_n: usize,
        /// Allow degrees beyond the default range.
        #[arg(long)]
        stretch: bool,
        #[arg(long)]
        json: bool,
    },
    /// Applies a map to the graph vector in a template file.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Operation,
        #[arg(long)]
        r: Option<usize>,
        /// Genus used when the file has no `genus` line.
        #[arg(long, default_value_t = 2)]
        g: usize,
    },
    /// Parses template files and reports the first error in each.
    EncodeCheck {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 6)]
        g: usize,
    },
    /// Lists the verification names.
    List,
}

/// Command output with the exit code it implies.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn pretty(v: &Value) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn dim(space: Space, n: usize, r: usize, g: usize, weight: Option<Vec<usize>>) -> Result<Outcome, CliError> {
    let mut out = json!({ "space": format!("{space:?}").to_lowercase(), "n": n, "r": r, "g": g });
    match space {
        Space::H => out["total"] = json!(h_dim(n, g)?),
        Space::Cokernel => out["total"] = json!(cokernel_dim(n, g)?),
        Space::C1rh | Space::Quotient => {
            let Some(m) = (n + 2).checked_sub(2 * r) else {
                out["total"] = json!(0);
                return Ok(Outcome::ok(pretty(&out)?));
            };
            let block_dim = |content: &[usize]| -> Result<usize, CliError> {
                Ok(match space {
                    Space::C1rh => BlockSpace::cached(&SpaceSpec::one_tree(n, r, g).with_weight(content.to_vec()))?.dim(),
                    _ if r == 0 => 0,
                    _ => omega_tilde_block(r, content, g)?.dim(),
                })
            };
            let contents = match weight {
                Some(mut w) => {
                    if w.len() > 2 * g || w.iter().sum::<usize>() != m {
                        return Err(CliError::Usage(format!("weight must have at most {} entries summing to {m}", 2 * g)));
                    }
                    w.resize(2 * g, 0);
                    vec![w]
                }
                None => dominant_contents(m, 2 * g),
            };
            let mut total = 0;
            let mut blocks = Vec::new();
            for c in contents {
                let d = block_dim(&c)?;
                let orbit = orbit_size(&c);
                total += d * orbit;
                blocks.push(json!({ "weight": c, "dim": d, "orbit": orbit }));
            }
            out["total"] = json!(total);
            out["blocks"] = json!(blocks);
        }
    }
    Ok(Outcome::ok(pretty(&out)?))
}

fn verify(name: &str, n: Option<usize>, g: Option<usize>, seed: Option<u64>) -> Result<Outcome, CliError> {
    let claim: Claim = name.parse()?;
    let mut inputs = Inputs::new(n, g);
    if let Some(s) = seed {
        inputs = inputs.with_param("seed", s);
    }
    let report = claim.run(&inputs)?;
    Ok(Outcome {
        text: pretty(&serde_json::to_value(&report)?)?,
        pass: report.pass,
    })
}

fn table(max_n: usize, stretch: bool, as_json: bool) -> Result<Outcome, CliError> {
    if max_n > MAX_TABLE_DEGREE && !stretch {
        return Err(CliError::Usage(format!("--max-n above {MAX_TABLE_DEGREE} needs --stretch")));
    }
    let rows: Vec<TableRow> = (3..=max_n).map(two_loop_row).collect::<Result<_, _>>()?;
    if as_json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "n": row.n,
                    "genus": row.genus,
                    "graphs": format_decomposition(&row.graphs),
                    "quotient": format_decomposition(&row.quotient),
                })
            })
            .collect();
        return Ok(Outcome::ok(pretty(&json!({ "rows": rows }))?));
    }
    let mut text = String::from("n  genus  graphs | quotient\n");
    for row in &rows {
        text.push_str(&format!("{:<2} {:<6} {row}\n", row.n, row.genus));
    }
    Ok(Outcome::ok(text))
}

fn reduce(file: &PathBuf, op: Operation, r: Option<usize>, g: usize) -> Result<Outcome, CliError> {
    let x = parse_graph_vector(&fs::read_to_string(file)?, g)?;
    let mut out = json!({ "op": format!("{op:?}").to_lowercase(), "input_terms": x.terms().len() });
    let result: GraphVector = match op {
        Operation::Vanishes => {
            out["vanishes"] = json!(vanishes_mod_ihx(&x)?);
            return Ok(Outcome::ok(pretty(&out)?));
        }
        Operation::Trace => trace(&x)?,
        Operation::TraceR => {
            let r = r.ok_or_else(|| CliError::Usage("trace-r needs --r".into()))?;
            trace_r(&x, r)?
        }
        Operation::Beta => beta(&x)?,
        Operation::BetaPower => beta_power(&x)?,
    };
    out["output_terms"] = json!(result.terms().len());
    out["output"] = json!(result.to_string().trim_end());
    Ok(Outcome::ok(pretty(&out)?))
}

fn encode_check(files: &[PathBuf], g: usize) -> Result<Outcome, CliError> {
    let mut results = Vec::new();
    let mut pass = true;
    for file in files {
        let text = fs::read_to_string(file)?;
        let checked: Result<Value, String> = if text.contains("x:") {
            DashedTemplate::parse(&text, g)
                .map(|t| json!({ "kind": "dashed", "lines": t.lines(), "lie_degree": t.graph.lie_degree() }))
                .map_err(|e| e.to_string())
        } else {
            parse_graph_vector(&text, g)
                .map(|v| json!({ "kind": "vector", "terms": v.terms().len() }))
                .map_err(|e| e.to_string())
        };
        let mut entry = json!({ "file": file.display().to_string(), "ok": checked.is_ok() });
        match checked {
            Ok(info) => entry["info"] = info,
            Err(e) => {
                pass = false;
                entry["error"] = json!(e);
            }
        }
        results.push(entry);
    }
    Ok(Outcome {
        text: pretty(&json!({ "files": results }))?,
        pass,
    })
}

fn list() -> Outcome {
    let names: BTreeMap<usize, String> = Claim::ALL
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, format!("{:<24} {}", c.id(), c.summary())))
        .collect();
    Outcome::ok(names.into_values().map(|l| l + "\n").collect())
}

/// Arguments that determine the output of a cacheable command.
fn cache_args(command: &Command) -> Option<(&'static str, Value)> {
    match command {
        Command::Dim { space, n, r, g, weight } => {
            Some(("dim", json!({ "space": format!("{space:?}"), "n": n, "r": r, "g": g, "weight": weight })))
        }
        Command::Verify { name, n, g, seed } => Some(("verify", json!({ "name": name, "n": n, "g": g, "seed": seed }))),
        Command::Table { max_n, stretch, json } => {
            Some(("table", json!({ "max_n": max_n, "stretch": stretch, "json": json })))
        }
        _ => None,
    }
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Dim { space, n, r, g, weight } => dim(*space, *n, *r, *g, weight.clone()),
        Command::Verify { name, n, g, seed } => verify(name, *n, *g, *seed),
        Command::Table { max_n, stretch, json } => table(*max_n, *stretch, *json),
        Command::Reduce { file, op, r, g } => reduce(file, *op, *r, *g),
        Command::EncodeCheck { files, g } => encode_check(files, *g),
        Command::List => Ok(list()),
    }
}

/// Cached entries hold the printed text followed by a final `pass` or `fail` line.
fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let keyed = cache_args(&cli.command).map(|(verb, args)| cache_key(verb, &args));
    let cache = Cache::new(&cli.cache_dir);
    if let (Some(key), false) = (&keyed, cli.no_cache) {
        if let Some(stored) = cache.get(key) {
            if let Some((text, status)) = stored.rsplit_once('\n').filter(|(_, s)| *s == "pass" || *s == "fail") {
                return Ok(Outcome {
                    text: format!("{text}\n"),
                    pass: status == "pass",
                });
            }
        }
    }
    let outcome = execute(&cli.command)?;
    if let (Some(key), false) = (&keyed, cli.no_cache) {
        let status = if outcome.pass { "pass" } else { "fail" };
        cache.put(key, &format!("{}{status}", outcome.text))?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_block_limit(cli.max_block);
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("hlg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
