//! Command-line front end. Every command prints deterministic JSON (or SVG
//! for `render`). Exit codes: 0 success or SAT, 1 UNSAT or a negative
//! verdict, 2 malformed input or failed preconditions.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::decomposition::DecompositionTree;
use crate::embedding::{canonical_form, embedding_to_drawing, LevelDrawing, RotationSystem};
use crate::generate::layered_instance;
use crate::levelgraph::{add_super_sink, properize, validate, LevelGraph};
use crate::lptree::{build_lp_tree, build_lp_tree_with_embedding, reference_embedding, LpError};
use crate::oracle::{brute_force_embeddings_guarded, DEFAULT_GUARD};
use crate::solvers::{
    solve_constrained, solve_partial, solve_simultaneous, ClgInstance, Outcome, PegInstance, SefeInstance,
    SolverError,
};

#[derive(Parser, Debug)]
#[command(name = "levelplan", version, about = "Level-planar embeddings via LP-trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for `bench` and anything else randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest instance `bench` generates.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_n: usize,
    /// Vertex limit of the brute-force oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    guard: usize,
    /// Add a super-sink above every demand before processing the graph.
    #[arg(long, global = true)]
    super_sink: bool,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the precondition flags of a graph.
    Validate { input: PathBuf },
    /// Find one level-planar embedding and a drawing of it.
    Embed { input: PathBuf },
    /// Build the LP-tree and summarize it.
    BuildTree { input: PathBuf },
    /// Dump the LP-tree (or the SPQR-tree) with skeletons.
    DumpTree {
        input: PathBuf,
        #[arg(long)]
        spqr: bool,
    },
    /// List the embeddings represented by the LP-tree.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Number of level-planar embeddings.
    Count { input: PathBuf },
    /// Level-planar embeddings by brute force over drawings.
    Oracle { input: PathBuf },
    /// Partially embedded graph: `{"graph", "subgraph", "rotation"}`.
    SolvePartial { input: PathBuf },
    /// Constrained level graph: `{"graph", "constraints"}`.
    SolveConstrained { input: PathBuf },
    /// Simultaneous embedding: `{"graph", "exclusive1", "exclusive2"}`.
    SolveSefe { input: PathBuf },
    /// SVG of a level drawing (of a found embedding unless `--drawing` is given).
    Render {
        input: PathBuf,
        #[arg(long)]
        drawing: Option<PathBuf>,
    },
    /// Time the LP-tree construction on generated graphs.
    Bench {
        /// Instance sizes; defaults to 25000, 50000, 100000 capped by `--max-n`.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

/// Failure that maps to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

enum Output {
    Json(Value),
    Text(String),
}

/// Runs the command line `args` (program name first), writing the primary
/// output to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
            } else {
                let _ = write!(stderr, "{}", e.render());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, out)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).unwrap() + "\n",
                Output::Text(s) => s,
            };
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text).map_err(|e| e.to_string()),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            code
        }
        Err(InputError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn read_input(p: &PathBuf) -> Result<String, InputError> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))
}

fn read_graph(cli: &Cli, p: &PathBuf) -> Result<LevelGraph, InputError> {
    let g = LevelGraph::from_json(&read_input(p)?)?;
    if cli.super_sink {
        return Ok(add_super_sink(&g)?);
    }
    Ok(g)
}

pub fn rotation_json(g: &LevelGraph, e: &RotationSystem) -> Value {
    let mut m = BTreeMap::new();
    for v in 0..g.n() {
        let list: Vec<Value> = e
            .rotation(v)
            .iter()
            .map(|&x| {
                let (a, b) = g.edge(x);
                json!([g.id(a), g.id(b)])
            })
            .collect();
        m.insert(g.id(v).to_string(), Value::Array(list));
    }
    json!(m)
}

fn levels_json(g: &LevelGraph, d: &LevelDrawing) -> Value {
    let rows: Vec<Vec<&str>> =
        d.levels.iter().map(|r| r.iter().filter(|&&v| v < g.n()).map(|&v| g.id(v)).collect()).collect();
    json!(rows)
}

fn embedding_json(g: &LevelGraph, e: &RotationSystem) -> Result<Value, InputError> {
    let d = embedding_to_drawing(g, e)?;
    Ok(json!({"key": canonical_form(g, e), "rotation": rotation_json(g, e), "levels": levels_json(g, &d)}))
}

/// LP-tree failures: non-level-planar graphs are a negative verdict, the
/// rest are input errors.
fn lp_or_verdict<T>(r: Result<T, LpError>) -> Result<Result<T, Value>, InputError> {
    match r {
        Ok(t) => Ok(Ok(t)),
        Err(LpError::NotLevelPlanar) => Ok(Err(json!({"level_planar": false}))),
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn verdict<T>(r: Result<Outcome<T>, SolverError>, witness: impl FnOnce(T) -> Result<Value, InputError>) -> Result<(i32, Output), InputError> {
    match r.map_err(|e| InputError(e.to_string()))? {
        Outcome::Sat(w) => Ok((0, Output::Json(json!({"status": "SAT", "witness": witness(w)?})))),
        Outcome::Unsat(reason) => Ok((1, Output::Json(json!({"status": "UNSAT", "reason": reason})))),
    }
}

fn execute(cli: &Cli) -> Result<(i32, Output), InputError> {
    match &cli.command {
        Command::Validate { input } => {
            let g = LevelGraph::from_json(&read_input(input)?)?;
            let g = if cli.super_sink { add_super_sink(&g)? } else { g };
            let d = validate(&g);
            let code = if d.lp_ready() { 0 } else { 2 };
            Ok((code, Output::Json(serde_json::to_value(&d)?)))
        }
        Command::Embed { input } => {
            let g = read_graph(cli, input)?;
            match lp_or_verdict(reference_embedding(&g))? {
                Ok(e) => Ok((0, Output::Json(embedding_json(&g, &e)?))),
                Err(v) => Ok((1, Output::Json(v))),
            }
        }
        Command::BuildTree { input } => {
            let g = read_graph(cli, input)?;
            match lp_or_verdict(build_lp_tree(&g))? {
                Ok(lp) => {
                    let kinds: BTreeMap<&str, usize> =
                        lp.tree().kind_counts().into_iter().map(|(k, c)| (k.as_str(), c)).collect();
                    let space = lp.choice_space();
                    Ok((
                        0,
                        Output::Json(json!({
                            "vertices": g.n(),
                            "edges": g.m(),
                            "nodes": kinds,
                            "p_nodes": space.p_nodes.len(),
                            "flexible_r_nodes": space.r_nodes.len(),
                            "count": lp.count().to_string(),
                            "stats": serde_json::to_value(lp.stats())?,
                        })),
                    ))
                }
                Err(v) => Ok((1, Output::Json(v))),
            }
        }
        Command::DumpTree { input, spqr } => {
            let g = read_graph(cli, input)?;
            if *spqr {
                let t = DecompositionTree::build(&g)?;
                return Ok((0, Output::Json(t.dump(&g))));
            }
            match lp_or_verdict(build_lp_tree(&g))? {
                Ok(lp) => Ok((0, Output::Json(lp.dump()))),
                Err(v) => Ok((1, Output::Json(v))),
            }
        }
        Command::Enumerate { input, limit } => {
            let g = read_graph(cli, input)?;
            match lp_or_verdict(build_lp_tree(&g))? {
                Ok(lp) => {
                    let mut list = Vec::new();
                    for e in lp.enumerate().take(limit.unwrap_or(usize::MAX)) {
                        list.push(embedding_json(&g, &e)?);
                    }
                    list.sort_by(|a, b| a["key"].as_str().cmp(&b["key"].as_str()));
                    Ok((0, Output::Json(json!({"count": lp.count().to_string(), "embeddings": list}))))
                }
                Err(v) => Ok((1, Output::Json(v))),
            }
        }
        Command::Count { input } => {
            let g = read_graph(cli, input)?;
            match lp_or_verdict(build_lp_tree(&g))? {
                Ok(lp) => Ok((0, Output::Text(format!("{}\n", lp.count())))),
                Err(_) => Ok((1, Output::Text("0\n".into()))),
            }
        }
        Command::Oracle { input } => {
            let g = read_graph(cli, input)?;
            let set = brute_force_embeddings_guarded(&g, cli.guard)?;
            let keys: Vec<&String> = set.keys().collect();
            let code = if set.count() > 0 { 0 } else { 1 };
            Ok((code, Output::Json(json!({"count": set.count(), "embeddings": keys}))))
        }
        Command::SolvePartial { input } => {
            let p = PegInstance::from_json(&read_input(input)?)?;
            verdict(solve_partial(&p), |e| embedding_json(&p.graph, &e))
        }
        Command::SolveConstrained { input } => {
            let c = ClgInstance::from_json(&read_input(input)?)?;
            verdict(solve_constrained(&c), |d| Ok(json!({"levels": levels_json(&c.graph, &d)})))
        }
        Command::SolveSefe { input } => {
            let s = SefeInstance::from_json(&read_input(input)?)?;
            verdict(solve_simultaneous(&s), |w| {
                Ok(json!({
                    "embedding1": embedding_json(&w.graph1, &w.embedding1)?,
                    "embedding2": embedding_json(&w.graph2, &w.embedding2)?,
                }))
            })
        }
        Command::Render { input, drawing } => {
            let g = read_graph(cli, input)?;
            let (proper, _) = properize(&g);
            let d = match drawing {
                Some(p) => {
                    let raw = serde_json::from_str(&read_input(p)?)?;
                    LevelDrawing::from_json(&proper, &raw)?
                }
                None => match lp_or_verdict(reference_embedding(&g))? {
                    Ok(e) => embedding_to_drawing(&g, &e)?,
                    Err(v) => return Ok((1, Output::Json(v))),
                },
            };
            Ok((0, Output::Text(render_svg(&g, &d))))
        }
        Command::Bench { sizes, repeats } => {
            let sizes = if sizes.is_empty() {
                [25_000, 50_000, 100_000].into_iter().filter(|&n| n <= cli.max_n).collect()
            } else if let Some(n) = sizes.iter().find(|&&n| n > cli.max_n) {
                return Err(InputError(format!("size {n} is above --max-n {}", cli.max_n)));
            } else {
                sizes.clone()
            };
            let rows = bench(&sizes, (*repeats).max(1), cli.seed)?;
            Ok((0, Output::Json(rows)))
        }
    }
}

/// Median build time of the LP-tree from a known embedding per size, and
/// the growth factor between consecutive sizes.
pub fn bench_times(sizes: &[usize], repeats: usize, seed: u64) -> Result<Vec<(usize, f64)>, String> {
    let mut out = Vec::new();
    for &n in sizes {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let (g, gamma) = layered_instance(&mut rng, n);
        let mut times = Vec::new();
        for _ in 0..repeats {
            let t0 = Instant::now();
            build_lp_tree_with_embedding(&g, &gamma).map_err(|e| e.to_string())?;
            times.push(t0.elapsed().as_secs_f64());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.push((g.n(), times[times.len() / 2]));
    }
    Ok(out)
}

fn bench(sizes: &[usize], repeats: usize, seed: u64) -> Result<Value, InputError> {
    let times = bench_times(sizes, repeats, seed).map_err(InputError)?;
    let mut rows = Vec::new();
    for (i, &(n, t)) in times.iter().enumerate() {
        let mut row = json!({"n": n, "seconds": (t * 1e4).round() / 1e4});
        if i > 0 {
            row["growth"] = json!(((t / times[i - 1].1) * 100.0).round() / 100.0);
        }
        rows.push(row);
    }
    Ok(json!({"seed": seed, "repeats": repeats, "runs": rows}))
}

/// SVG with `x` = index on the level and `y` = minus the level; long edges
/// run as polylines through their dummy vertices.
pub fn render_svg(g: &LevelGraph, d: &LevelDrawing) -> String {
    const STEP: f64 = 60.0;
    const MARGIN: f64 = 30.0;
    let (proper, map) = properize(g);
    let k = g.max_level() as f64;
    let mut xy = vec![(0.0, 0.0); proper.n()];
    let mut width = 1;
    for (i, row) in d.levels.iter().enumerate() {
        width = width.max(row.len());
        for (j, &v) in row.iter().enumerate() {
            xy[v] = (MARGIN + j as f64 * STEP, MARGIN + (k - (i + 1) as f64) * STEP);
        }
    }
    let w = 2.0 * MARGIN + (width - 1) as f64 * STEP;
    let h = 2.0 * MARGIN + (k - 1.0).max(0.0) * STEP;
    let mut s = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    for chain in &map.chains {
        let mut pts = vec![xy[proper.edge(chain[0]).0]];
        pts.extend(chain.iter().map(|&x| xy[proper.edge(x).1]));
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
        if pts.len() == 2 {
            let ((x1, y1), (x2, y2)) = (pts[0], pts[1]);
            s += &format!("  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\"/>\n");
        } else {
            s += &format!("  <polyline points=\"{}\" fill=\"none\" stroke=\"black\"/>\n", p.join(" "));
        }
    }
    for v in 0..g.n() {
        let (x, y) = xy[v];
        s += &format!("  <circle cx=\"{x}\" cy=\"{y}\" r=\"10\" fill=\"white\" stroke=\"black\"/>\n");
        s += &format!(
            "  <text x=\"{x}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
            y + 3.5,
            escape(g.id(v))
        );
    }
    s += "</svg>\n";
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
