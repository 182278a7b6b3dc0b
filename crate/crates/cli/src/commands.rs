use crate::{Command, Family, Io, Solve};
use kdom_core::bounds::{self, BoundsError, Verdict};
use kdom_core::constructions::{self, ConstructionError, WitnessMode};
use kdom_core::edgelist;
use kdom_core::fuzz::{self, FuzzConfig};
use kdom_core::graph::Graph;
use kdom_core::solver::{self, Budget, Certificate};
use kdom_core::SCHEMA;
use serde_json::{json, Map, Value};
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Budget(msg) => write!(f, "budget exhausted: {msg}"),
            CliError::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

fn input_err(err: impl fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

pub fn run(command: Command) -> Result<u8, CliError> {
    let started = Instant::now();
    match command {
        Command::Gamma { io, solve } => gamma(&io, &solve, started),
        Command::Metrics { io } => metrics(&io, started),
        Command::Bounds {
            io,
            solve,
            no_exact,
        } => bounds_cmd(&io, &solve, no_exact, started),
        Command::Product { io, solve } => product(&io, &solve, started),
        Command::SpanningTree { io, solve } => spanning_tree(&io, &solve, started),
        Command::Witness {
            io,
            vertex,
            k,
            cycle,
            adjacent,
        } => witness(&io, vertex, &k, cycle, adjacent, started),
        Command::Construct {
            family,
            n,
            delta,
            inputs,
            out,
            strict,
        } => construct(family, n, delta, &inputs, out.as_deref(), strict),
        Command::Fuzz {
            seed,
            trials,
            n_min,
            n_max,
            p_min,
            p_max,
            k,
            product_n_max,
            budget_nodes,
            budget_seconds,
            out,
        } => {
            if n_min == 0 || n_min > n_max {
                return Err(CliError::Input("need 1 <= --n-min <= --n-max".into()));
            }
            if !(0.0..=1.0).contains(&p_min) || !(0.0..=1.0).contains(&p_max) || p_min > p_max {
                return Err(CliError::Input("need 0 <= --p-min <= --p-max <= 1".into()));
            }
            let cfg = FuzzConfig {
                seed,
                trials,
                n_min,
                n_max,
                p_min,
                p_max,
                ks: k,
                budget: budget(budget_nodes, budget_seconds)?,
                product_n_max,
                threads: threads_from_env()?,
                ..FuzzConfig::default()
            };
            let report = fuzz::fuzz(&cfg);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            let body = serde_json::to_value(&report).expect("report serializes");
            emit(out.as_deref(), "fuzz", body, started)?;
            Ok(code)
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(|t| Some(t.max(1)))
            .map_err(|_| CliError::Input(format!("THREADS={v:?} is not a positive integer"))),
        _ => Ok(None),
    }
}

fn budget(nodes: u64, seconds: f64) -> Result<Budget, CliError> {
    if !(seconds.is_finite() && seconds > 0.0) {
        return Err(CliError::Input("--budget-seconds must be positive".into()));
    }
    Ok(Budget {
        max_nodes: nodes,
        max_time: Duration::from_secs_f64(seconds),
    })
}

struct Loaded {
    graph: Graph,
    dropped: usize,
}

fn load_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn parse(text: &str, strict: bool, origin: &str) -> Result<Loaded, CliError> {
    let result = if strict {
        edgelist::parse_edge_list(text).map(|graph| Loaded { graph, dropped: 0 })
    } else {
        edgelist::parse_edge_list_lenient(text).map(|(graph, dropped)| Loaded { graph, dropped })
    };
    result.map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

fn load_one(io: &Io) -> Result<Loaded, CliError> {
    match io.inputs.as_slice() {
        [] => parse(&load_text(None)?, io.strict, "<stdin>"),
        [path] => parse(
            &load_text(Some(path))?,
            io.strict,
            &path.display().to_string(),
        ),
        _ => Err(CliError::Input("expected at most one --in".into())),
    }
}

fn load_two(inputs: &[PathBuf], strict: bool) -> Result<(Loaded, Loaded), CliError> {
    match inputs {
        [a, b] => Ok((
            parse(&load_text(Some(a))?, strict, &a.display().to_string())?,
            parse(&load_text(Some(b))?, strict, &b.display().to_string())?,
        )),
        _ => Err(CliError::Input("expected exactly two --in files".into())),
    }
}

/// Writes `{schema, command, ...body, timing}` as pretty JSON.
fn emit(out: Option<&Path>, command: &str, body: Value, started: Instant) -> Result<(), CliError> {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    match body {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    doc.insert(
        "timing".into(),
        json!({ "wall_seconds": started.elapsed().as_secs_f64() }),
    );
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
    text.push('\n');
    write_out(out, &text)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn graph_header(loaded: &Loaded) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(loaded.graph.n()));
    m.insert("m".into(), json!(loaded.graph.m()));
    if loaded.dropped > 0 {
        m.insert(
            "input_warnings".into(),
            json!({ "dropped_edges": loaded.dropped }),
        );
    }
    m
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "k": c.k,
        "gamma_k": c.value,
        "status": c.status,
        "set": c.set,
        "lower_bound": c.lower_bound_used,
        "nodes_explored": c.nodes_explored,
        "method": c.method,
        "components": c.components,
    })
}

/// A single k flattens into the document; several go under `results`.
fn per_k(mut header: Map<String, Value>, mut results: Vec<Value>) -> Value {
    if results.len() == 1 {
        if let Value::Object(fields) = results.pop().expect("one result") {
            header.extend(fields);
        }
    } else {
        header.insert("results".into(), Value::Array(results));
    }
    Value::Object(header)
}

fn check_ks(ks: &[usize]) -> Result<(), CliError> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(CliError::Input("--k values must be >= 1".into()));
    }
    Ok(())
}

fn gamma(io: &Io, solve: &Solve, started: Instant) -> Result<u8, CliError> {
    check_ks(&solve.k)?;
    let loaded = load_one(io)?;
    let budget = budget(solve.budget_nodes, solve.budget_seconds)?;
    let certs: Vec<Certificate> = solve
        .k
        .iter()
        .map(|&k| solver::gamma_k_exact(&loaded.graph, k, budget))
        .collect();
    let all_exact = certs.iter().all(Certificate::is_exact);
    let body = per_k(
        graph_header(&loaded),
        certs.iter().map(certificate_json).collect(),
    );
    emit(io.out.as_deref(), "gamma", body, started)?;
    Ok(if solve.require_exact && !all_exact {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn metrics(io: &Io, started: Instant) -> Result<u8, CliError> {
    let loaded = load_one(io)?;
    let g = &loaded.graph;
    let m = g.metrics();
    let mut body = graph_header(&loaded);
    if let Value::Object(fields) = serde_json::to_value(&m).expect("metrics serialize") {
        body.extend(fields);
    }
    body.insert("min_degree".into(), json!(g.min_degree()));
    body.insert("max_degree".into(), json!(g.max_degree()));
    body.insert("peripheral_vertex".into(), json!(m.peripheral_vertex()));
    body.insert("shortest_cycle".into(), json!(g.shortest_cycle()));
    emit(io.out.as_deref(), "metrics", Value::Object(body), started)?;
    Ok(EXIT_OK)
}

fn bounds_cmd(io: &Io, solve: &Solve, no_exact: bool, started: Instant) -> Result<u8, CliError> {
    check_ks(&solve.k)?;
    let loaded = load_one(io)?;
    let budget = budget(solve.budget_nodes, solve.budget_seconds)?;
    let reports: Vec<_> = solve
        .k
        .iter()
        .map(|&k| bounds::bounds_report(&loaded.graph, k, budget, !no_exact))
        .collect();
    let violated = reports
        .iter()
        .any(|r| r.verdict == Verdict::ViolationDetected);
    let inexact = !no_exact
        && reports
            .iter()
            .any(|r| r.exact.as_ref().is_some_and(|c| !c.is_exact()));
    let results = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("report serializes"))
        .collect();
    emit(
        io.out.as_deref(),
        "bounds",
        per_k(graph_header(&loaded), results),
        started,
    )?;
    Ok(if violated {
        EXIT_VIOLATION
    } else if solve.require_exact && inexact {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn product(io: &Io, solve: &Solve, started: Instant) -> Result<u8, CliError> {
    check_ks(&solve.k)?;
    let (left, right) = load_two(&io.inputs, io.strict)?;
    let budget = budget(solve.budget_nodes, solve.budget_seconds)?;
    let mut results = Vec::new();
    let mut violated = false;
    for &k in &solve.k {
        let report = bounds::product_bound_check(&left.graph, &right.graph, k, budget).map_err(
            |e| match e {
                BoundsError::BudgetExceeded => CliError::Budget(e.to_string()),
                other => input_err(other),
            },
        )?;
        violated |= report.bound_holds == Some(false) || !report.projections_dominating;
        results.push(serde_json::to_value(&report).expect("report serializes"));
    }
    let mut header = Map::new();
    header.insert("left".into(), Value::Object(graph_header(&left)));
    header.insert("right".into(), Value::Object(graph_header(&right)));
    emit(
        io.out.as_deref(),
        "product",
        per_k(header, results),
        started,
    )?;
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

fn construction_err(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::BudgetExceeded => CliError::Budget(e.to_string()),
        other => input_err(other),
    }
}

fn spanning_tree(io: &Io, solve: &Solve, started: Instant) -> Result<u8, CliError> {
    check_ks(&solve.k)?;
    let loaded = load_one(io)?;
    let budget = budget(solve.budget_nodes, solve.budget_seconds)?;
    let mut results = Vec::new();
    for &k in &solve.k {
        let res = constructions::preserving_spanning_tree(&loaded.graph, k, budget)
            .map_err(construction_err)?;
        results.push(json!({
            "k": k,
            "gamma_k": res.dominating_set.len(),
            "dominating_set": res.dominating_set,
            "partition": res.partition,
            "connectors": res.connectors,
            "tree_edges": res.tree.edges(),
            "tree": edgelist::serialize(&res.tree),
        }));
    }
    emit(
        io.out.as_deref(),
        "spanning-tree",
        per_k(graph_header(&loaded), results),
        started,
    )?;
    Ok(EXIT_OK)
}

fn witness(
    io: &Io,
    vertex: usize,
    ks: &[usize],
    cycle: Option<Vec<usize>>,
    adjacent: bool,
    started: Instant,
) -> Result<u8, CliError> {
    check_ks(ks)?;
    let loaded = load_one(io)?;
    let g = &loaded.graph;
    let cycle = match cycle {
        Some(c) => c,
        None => g
            .shortest_cycle()
            .ok_or_else(|| CliError::Input("graph is acyclic".into()))?,
    };
    let mode = if adjacent {
        WitnessMode::Adjacent
    } else {
        WitnessMode::Basic
    };
    let mut results = Vec::new();
    for &k in ks {
        let w =
            constructions::cycle_outsider_witness(g, &cycle, vertex, k, mode).map_err(input_err)?;
        results.push(json!({
            "k": k,
            "u": w.u,
            "w": w.w,
            "path_u": w.path_u,
            "path_w": w.path_w,
        }));
    }
    let mut header = graph_header(&loaded);
    header.insert("vertex".into(), json!(vertex));
    header.insert("cycle".into(), json!(cycle));
    header.insert("adjacent".into(), json!(adjacent));
    emit(
        io.out.as_deref(),
        "witness",
        per_k(header, results),
        started,
    )?;
    Ok(EXIT_OK)
}

fn construct(
    family: Family,
    n: Option<usize>,
    delta: usize,
    inputs: &[PathBuf],
    out: Option<&Path>,
    strict: bool,
) -> Result<u8, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Input("--n is required for this family".into()));
    let graph = match family {
        Family::Path => constructions::path(need_n()?),
        Family::Cycle => constructions::cycle(need_n()?),
        Family::CliqueExpanded => constructions::clique_expanded_path(need_n()?, delta),
        Family::Product => {
            let (a, b) = load_two(inputs, strict)?;
            constructions::direct_product(&a.graph, &b.graph).map(|p| p.graph)
        }
    }
    .map_err(input_err)?;
    write_out(out, &edgelist::serialize(&graph))?;
    Ok(EXIT_OK)
}
