//! The `mlist` command line: parses instance files, runs the solvers and
//! prints one JSON result document per call.
//!
//! Exit status is 0 on success, 1 when nothing was found within the budget,
//! and 2 for bad input.

use std::collections::BTreeMap;
use std::io::Read;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use masterlist::format::{format_master_list, parse_edge, parse_weights, serialize_instance};
use masterlist::generators::{self, HittingSetInstance, RawDigraph};
use masterlist::matching::{enum_with_modulator, find_modulator};
use masterlist::{
    admits_master_list, blocking_edges, build_digraph, delta_edge_2approx, delta_edge_exact, delta_swap,
    delta_vert_exact, find_strict_cycle, instance_swap_distance, is_consistent, is_popular, oracle, parse_instance,
    solve_mupmic, DistanceValue, Edge, Matching, Modulator, MupmicInstance, PreferenceSystem, VertexId,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "mlist", version, about = "Distance from master-list preferences, stable and popular matchings")]
pub struct Cli {
    /// Worker threads for parallel solver steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a master list, or NONE.
    Check { file: String },
    /// Distance from the master-list family.
    Dist(DistArgs),
    /// Enumerate matchings with a given blocking set (stable by default).
    EnumStable(EnumArgs),
    /// Max-utility popular matching with instability costs.
    Mupmic(MupmicArgs),
    /// Emit a generated instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Brute-force reference solvers.
    Oracle {
        solver: OracleSolver,
        file: String,
    },
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[arg(long)]
    pub measure: Measure,
    #[arg(long, default_value = "exact")]
    pub mode: Mode,
    #[arg(long)]
    pub budget: u64,
    pub file: String,
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    /// Edges `a--b` whose deletion leaves a master-list instance.
    #[arg(long, num_args = 0.., conflicts_with_all = ["vertex_modulator", "auto"])]
    pub edge_modulator: Option<Vec<String>>,
    /// Vertices whose deletion leaves a master-list instance.
    #[arg(long, num_args = 0.., conflicts_with = "auto")]
    pub vertex_modulator: Option<Vec<String>>,
    /// Find a modulator automatically (the default).
    #[arg(long)]
    pub auto: bool,
    /// Required blocking edges `a--b`.
    #[arg(long, num_args = 0..)]
    pub blocking: Vec<String>,
    pub file: String,
}

#[derive(Args, Debug)]
pub struct MupmicArgs {
    /// File with lines `a -- b : utility cost`.
    #[arg(long)]
    pub weights: String,
    #[arg(long)]
    pub target: u64,
    #[arg(long)]
    pub budget: u64,
    /// Edges `a--b` or vertices; found automatically when omitted.
    #[arg(long, num_args = 0..)]
    pub modulator: Option<Vec<String>>,
    pub file: String,
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    /// k disjoint 4-cycles with cyclic preferences.
    FourCycles { k: usize },
    /// The A/B/S family with C(n,k) stable matchings.
    Jkn { k: usize, n: usize },
    /// Subdivision instance of a digraph file (lines `a -> b`).
    FasReduction { file: String },
    /// Vertex-deletion instance of a hitting-set file (first line the
    /// universe, then one set per line).
    HittingSet { file: String },
    /// Random instance.
    Random {
        n: usize,
        edge_prob: f64,
        tie_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Swap,
    Edge,
    Vert,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleSolver {
    Check,
    Swap,
    Edge,
    Vert,
    Stable,
}

#[derive(Serialize, Debug)]
pub struct ResultDocument {
    pub command: String,
    pub value: Value,
    pub witness: Value,
    pub verified: bool,
    pub elapsed_ms: u64,
}

/// What a command produced: exit status plus text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    value: Value,
    witness: Value,
    verified: bool,
    found: bool,
}

impl Report {
    fn none(witness: Value, verified: bool) -> Self {
        Report { value: json!("NONE"), witness, verified, found: false }
    }
}

enum Output {
    Doc(Report),
    Text(String),
}

/// Oracle commands refuse instances above this many vertices.
const ORACLE_VERTEX_LIMIT: usize = 8;

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn load(path: &str) -> anyhow::Result<PreferenceSystem> {
    parse_instance(&read_input(path)?).with_context(|| format!("in {path}"))
}

fn edge_json(i: &PreferenceSystem, e: Edge) -> Value {
    let (a, b) = i.edge_names(e);
    json!([a, b])
}

fn matching_json(i: &PreferenceSystem, m: &Matching) -> Value {
    Value::Array(m.edges().iter().map(|&e| edge_json(i, e)).collect())
}

fn names_json(i: &PreferenceSystem, vs: &[VertexId]) -> Value {
    json!(vs.iter().map(|&v| i.name(v)).collect::<Vec<_>>())
}

fn parse_edges(i: &PreferenceSystem, tokens: &[String]) -> anyhow::Result<Vec<Edge>> {
    tokens.iter().map(|t| Ok(parse_edge(i, t)?)).collect()
}

fn parse_vertices(i: &PreferenceSystem, tokens: &[String]) -> anyhow::Result<Vec<VertexId>> {
    tokens.iter().map(|t| Ok(i.require(t)?)).collect()
}

fn in_ml_family(i: &PreferenceSystem) -> bool {
    admits_master_list(i).is_some_and(|ml| is_consistent(i, &ml))
}

fn check(file: &str) -> anyhow::Result<Output> {
    let i = load(file)?;
    Ok(Output::Doc(match admits_master_list(&i) {
        Some(ml) => {
            let text = format_master_list(&i, &ml);
            Report {
                value: json!(text),
                witness: json!(text),
                verified: is_consistent(&i, &ml),
                found: true,
            }
        }
        None => {
            let d = build_digraph(&i);
            let cycle = find_strict_cycle(&d);
            let arcs: Vec<Value> = cycle
                .iter()
                .flatten()
                .map(|&id| {
                    let a = d.arc(id);
                    json!({"from": i.name(a.from), "to": i.name(a.to), "label": i.name(a.label)})
                })
                .collect();
            Report::none(json!({ "strict_cycle": arcs }), cycle.is_some())
        }
    }))
}

fn dist(args: &DistArgs) -> anyhow::Result<Output> {
    let i = load(&args.file)?;
    let budget = usize::try_from(args.budget).unwrap_or(usize::MAX);
    if args.mode == Mode::Approx && args.measure != Measure::Edge {
        bail!("approximation is only available for --measure edge");
    }
    let report = match args.measure {
        Measure::Swap => match delta_swap(&i, args.budget) {
            None => Report::none(Value::Null, true),
            Some(w) => {
                let swaps = w.strict_swaps.as_ref().map(|list| {
                    list.iter()
                        .map(|s| json!([i.name(s.a), i.name(s.b), i.name(s.v)]))
                        .collect::<Vec<_>>()
                });
                let replay_ok = match &w.strict_swaps {
                    Some(list) => i.apply_swaps(list).is_ok_and(|j| j == w.witness_instance),
                    None => true,
                };
                let dist = instance_swap_distance(&i, &w.witness_instance);
                let verified = replay_ok
                    && in_ml_family(&w.witness_instance)
                    && dist == w.witness_distance
                    && dist <= DistanceValue::Finite(w.value);
                let witness_distance = match w.witness_distance {
                    DistanceValue::Finite(x) => json!(x),
                    DistanceValue::Infinity => json!("inf"),
                };
                Report {
                    value: json!(w.value),
                    witness: json!({
                        "swaps": swaps,
                        "instance": serialize_instance(&w.witness_instance),
                        "witness_distance": witness_distance,
                    }),
                    verified,
                    found: true,
                }
            }
        },
        Measure::Edge => {
            let found = match args.mode {
                Mode::Exact => delta_edge_exact(&i, budget),
                Mode::Approx => delta_edge_2approx(&i, budget),
            };
            match found {
                None => Report::none(Value::Null, true),
                Some(w) => Report {
                    value: json!(w.edges.len()),
                    witness: Value::Array(w.edges.iter().map(|&e| edge_json(&i, e)).collect()),
                    verified: in_ml_family(&i.delete_edges(&w.edges)?),
                    found: true,
                },
            }
        }
        Measure::Vert => match delta_vert_exact(&i, budget) {
            None => Report::none(Value::Null, true),
            Some(w) => Report {
                value: json!(w.vertices.len()),
                witness: names_json(&i, &w.vertices),
                verified: in_ml_family(&i.delete_vertices(&w.vertices)?),
                found: true,
            },
        },
    };
    Ok(Output::Doc(report))
}

fn enum_stable(args: &EnumArgs) -> anyhow::Result<Output> {
    let i = load(&args.file)?;
    if !i.is_strict() {
        bail!("enumeration needs strict preferences");
    }
    let modulator = match (&args.edge_modulator, &args.vertex_modulator) {
        (Some(e), _) => Modulator::Edges(parse_edges(&i, e)?),
        (_, Some(v)) => Modulator::Vertices(parse_vertices(&i, v)?),
        _ => find_modulator(&i),
    };
    let b = parse_edges(&i, &args.blocking)?;
    let found = enum_with_modulator(&i, &b, &modulator)?;
    let mut want = b.clone();
    want.sort_unstable();
    want.dedup();
    let verified = found.iter().all(|m| m.is_valid_in(&i) && blocking_edges(&i, m) == want);
    let modulator_json = match &modulator {
        Modulator::Edges(s) => json!({"edges": s.iter().map(|&e| edge_json(&i, e)).collect::<Vec<_>>()}),
        Modulator::Vertices(s) => json!({"vertices": names_json(&i, s)}),
    };
    Ok(Output::Doc(Report {
        value: json!(found.len()),
        witness: json!({
            "modulator": modulator_json,
            "matchings": found.iter().map(|m| matching_json(&i, m)).collect::<Vec<_>>(),
        }),
        verified,
        found: true,
    }))
}

fn mupmic(args: &MupmicArgs) -> anyhow::Result<Output> {
    let i = load(&args.file)?;
    let w = parse_weights(&i, &read_input(&args.weights)?).with_context(|| format!("in {}", args.weights))?;
    let inst = MupmicInstance::new(i.clone(), w.utility, w.cost, args.target, args.budget)?;
    let modulator = match &args.modulator {
        None => find_modulator(&i),
        Some(tokens) => {
            let (edges, vertices): (Vec<&String>, Vec<&String>) = tokens.iter().partition(|t| t.contains("--"));
            match (edges.is_empty(), vertices.is_empty()) {
                (_, true) => Modulator::Edges(edges.iter().map(|t| parse_edge(&i, t)).collect::<Result<_, _>>()?),
                (true, false) => Modulator::Vertices(vertices.iter().map(|t| i.require(t)).collect::<Result<_, _>>()?),
                (false, false) => bail!("a modulator is either all edges or all vertices"),
            }
        }
    };
    Ok(Output::Doc(match solve_mupmic(&inst, &modulator)? {
        None => Report::none(Value::Null, true),
        Some(sol) => {
            let bp = blocking_edges(&i, &sol.matching);
            let verified = is_popular(&i, &sol.matching)?
                && inst.cost_of(&bp) == sol.cost
                && sol.cost <= inst.budget()
                && inst.utility_of(&sol.matching) == sol.utility
                && sol.utility >= inst.target();
            Report {
                value: json!(sol.utility),
                witness: json!({
                    "matching": matching_json(&i, &sol.matching),
                    "utility": sol.utility,
                    "cost": sol.cost,
                    "blocking": bp.iter().map(|&e| edge_json(&i, e)).collect::<Vec<_>>(),
                }),
                verified,
                found: true,
            }
        }
    }))
}

/// Digraph file: one arc `a -> b` per line; vertices numbered by first
/// appearance.
pub fn parse_digraph(text: &str) -> anyhow::Result<RawDigraph> {
    let mut names: Vec<String> = Vec::new();
    let mut arcs = Vec::new();
    let id = |n: &str, names: &mut Vec<String>| match names.iter().position(|x| x == n) {
        Some(k) => k,
        None => {
            names.push(n.to_string());
            names.len() - 1
        }
    };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once("->")
            .ok_or_else(|| anyhow!("line {}: expected `a -> b`", lineno + 1))?;
        let (a, b) = (a.trim(), b.trim());
        if a.is_empty() || b.is_empty() {
            bail!("line {}: expected `a -> b`", lineno + 1);
        }
        let (x, y) = (id(a, &mut names), id(b, &mut names));
        arcs.push((x, y));
    }
    Ok(RawDigraph::new(names.len(), arcs)?)
}

/// Hitting-set file: the first line lists the universe, every further line
/// one set.
pub fn parse_hitting_set(text: &str) -> anyhow::Result<HittingSetInstance> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let universe: Vec<String> = match lines.next() {
        Some(l) => l.split_whitespace().map(str::to_string).collect(),
        None => bail!("missing universe line"),
    };
    let index: BTreeMap<&str, usize> = universe.iter().enumerate().map(|(k, u)| (u.as_str(), k)).collect();
    let sets = lines
        .map(|l| {
            l.split_whitespace()
                .map(|u| index.get(u).copied().ok_or_else(|| anyhow!("`{u}` is not in the universe")))
                .collect::<anyhow::Result<Vec<usize>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(HittingSetInstance::new(universe.clone(), sets)?)
}

fn gen(family: &GenFamily) -> anyhow::Result<Output> {
    let i = match family {
        GenFamily::FourCycles { k } => generators::gen_four_cycles(*k),
        GenFamily::Jkn { k, n } => generators::gen_jkn(*k, *n)?,
        GenFamily::FasReduction { file } => generators::reduce_fas_to_ml(&parse_digraph(&read_input(file)?)?),
        GenFamily::HittingSet { file } => {
            generators::reduce_hitting_set_to_mlvd(&parse_hitting_set(&read_input(file)?)?)
        }
        GenFamily::Random { n, edge_prob, tie_prob, seed } => generators::gen_random(*n, *edge_prob, *tie_prob, *seed)?,
    };
    Ok(Output::Text(serialize_instance(&i)))
}

fn run_oracle(solver: OracleSolver, file: &str) -> anyhow::Result<Output> {
    let i = load(file)?;
    // the stable oracle is bounded by edge count instead
    if i.len() > ORACLE_VERTEX_LIMIT && !matches!(solver, OracleSolver::Stable) {
        bail!("oracle solvers accept at most {ORACLE_VERTEX_LIMIT} vertices");
    }
    let report = match solver {
        OracleSolver::Check => match oracle::brute_force_master_list(&i) {
            Some(ml) => {
                let text = masterlist::format::format_order(&i, &ml);
                Report { value: json!(text), witness: json!(text), verified: oracle::consistent_with(&i, &ml), found: true }
            }
            None => Report::none(Value::Null, admits_master_list(&i).is_none()),
        },
        OracleSolver::Swap => {
            let v = oracle::brute_force_swap_distance(&i);
            Report { value: json!(v), witness: Value::Null, verified: true, found: true }
        }
        OracleSolver::Edge => {
            let v = oracle::brute_force_edge_distance(&i);
            Report { value: json!(v), witness: Value::Null, verified: true, found: true }
        }
        OracleSolver::Vert => {
            let v = oracle::brute_force_vertex_distance(&i);
            Report { value: json!(v), witness: Value::Null, verified: true, found: true }
        }
        OracleSolver::Stable => {
            let all = masterlist::brute_force_stable(&i)?;
            Report {
                value: json!(all.len()),
                witness: Value::Array(all.iter().map(|m| matching_json(&i, m)).collect()),
                verified: all.iter().all(|m| blocking_edges(&i, m).is_empty()),
                found: true,
            }
        }
    };
    Ok(Output::Doc(report))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Dist(_) => "dist",
        Command::EnumStable(_) => "enum-stable",
        Command::Mupmic(_) => "mupmic",
        Command::Gen { .. } => "gen",
        Command::Oracle { .. } => "oracle",
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Dist(a) => dist(a),
        Command::EnumStable(a) => enum_stable(a),
        Command::Mupmic(a) => mupmic(a),
        Command::Gen { family } => gen(family),
        Command::Oracle { solver, file } => run_oracle(*solver, file),
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let start = Instant::now();
    let result = pool.install(|| dispatch(&cli));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e:#}\n") },
        Ok(Output::Text(text)) => Outcome { code: 0, stdout: text, stderr: String::new() },
        Ok(Output::Doc(r)) => {
            let doc = ResultDocument {
                command: command_name(&cli.command).to_string(),
                value: r.value,
                witness: r.witness,
                verified: r.verified,
                elapsed_ms,
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
            text.push('\n');
            Outcome { code: if r.found { 0 } else { 1 }, stdout: text, stderr: String::new() }
        }
    }
}
