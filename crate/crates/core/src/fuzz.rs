//! Randomized checking of every theorem invariant against exact values.
//!
//! Each trial owns its random stream: a `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)` and switched to stream `trial_index`. Trials are
//! therefore independent of scheduling and can run in parallel; the report
//! is assembled in trial order. Changing the generator or the order of
//! draws changes every report and requires a schema bump.

use crate::bounds;
use crate::constructions::{self, Side};
use crate::edgelist;
use crate::graph::{Graph, Vertex, INFINITY};
use crate::solver::{self, Budget, Certificate};
use crate::SCHEMA;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Tries of plain `G(n, p)` before falling back to tree-plus-edges.
pub const REJECTION_RETRIES: usize = 1000;

pub const RNG_NAME: &str = "ChaCha8Rng/seed_from_u64/stream=trial";

/// Names of the checked invariants, in report order.
pub const CHECKS: &[&str] = &[
    "certificate",
    "oracle_equivalence",
    "sandwich",
    "diameter_bound",
    "radius_bound",
    "girth_bound",
    "upper_bounds",
    "spanning_tree",
    "edge_deletion",
    "projections_dominate",
    "product_bound",
];

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub ks: Vec<usize>,
    pub budget: Budget,
    pub oracle_max_n: usize,
    /// Largest factor order for the product checks.
    pub product_n_max: usize,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            n_min: 4,
            n_max: 12,
            p_min: 0.2,
            p_max: 0.6,
            ks: vec![1, 2],
            budget: Budget::default(),
            oracle_max_n: solver::DEFAULT_ORACLE_MAX_N,
            product_n_max: 5,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorParams {
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub k_set: Vec<usize>,
    pub product_n_max: usize,
    pub oracle_max_n: usize,
    pub budget_nodes: u64,
    pub rng: &'static str,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

impl CheckCounts {
    pub fn total(&self) -> u64 {
        self.pass + self.fail + self.skip
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub invariant: String,
    pub k: usize,
    /// The counterexample in edge-list format.
    pub graph: String,
    /// Product factors, for the product checks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SkipCounts {
    pub budget_exhausted: u64,
    pub disconnected_products: u64,
    pub no_removable_edge: u64,
    pub acyclic: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub schema: &'static str,
    pub seed: u64,
    pub trials_requested: u64,
    /// Trials actually evaluated; less than requested when a failure
    /// stopped the run.
    pub trials: u64,
    pub generator_params: GeneratorParams,
    pub checks_run: BTreeMap<String, CheckCounts>,
    pub failures: Vec<Failure>,
    pub skipped: SkipCounts,
    pub aborted: bool,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of one check for one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Disposition {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Default)]
struct TrialResult {
    /// Per check, dispositions across all k.
    outcomes: BTreeMap<&'static str, Vec<Disposition>>,
    failures: Vec<Failure>,
    skipped: SkipCounts,
}

struct TrialInput {
    index: u64,
    graph: Graph,
    deletion: Option<(Vertex, Vertex)>,
    left: Graph,
    right: Graph,
}

/// Uniform `G(n, p)` over pairs `u < v` in lexicographic order.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

/// A connected graph on `n >= 1` vertices: rejection-sampled `G(n, p)`,
/// falling back to a random recursive tree plus `G(n, p)` extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    assert!(n >= 1);
    for _ in 0..REJECTION_RETRIES {
        let g = gnp(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let tree: std::collections::HashSet<_> = edges.iter().copied().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

/// Edges whose removal keeps `g` connected, in lexicographic order.
pub fn removable_edges(g: &Graph) -> Vec<(Vertex, Vertex)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| g.without_edge(u, v).is_connected())
        .collect()
}

/// RNG for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn draw_trial(cfg: &FuzzConfig, index: u64) -> TrialInput {
    let mut rng = trial_rng(cfg.seed, index);
    let n = rng.gen_range(cfg.n_min..=cfg.n_max);
    let p = draw_probability(&mut rng, cfg.p_min, cfg.p_max);
    let graph = random_connected_graph(&mut rng, n, p);
    let removable = removable_edges(&graph);
    let deletion = (!removable.is_empty()).then(|| removable[rng.gen_range(0..removable.len())]);
    let factor_max = cfg.product_n_max.max(2);
    let factor = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(2..=factor_max);
        let p = draw_probability(rng, cfg.p_min, cfg.p_max);
        random_connected_graph(rng, n, p)
    };
    let left = factor(&mut rng);
    let right = factor(&mut rng);
    TrialInput {
        index,
        graph,
        deletion,
        left,
        right,
    }
}

fn draw_probability(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        lo
    }
}

/// Runs the harness. Trials are evaluated in batches; after the first batch
/// containing a failure the run stops and the report is cut after the
/// lowest failing trial.
pub fn fuzz(cfg: &FuzzConfig) -> FuzzReport {
    assert!(cfg.n_min >= 1 && cfg.n_min <= cfg.n_max, "invalid n range");
    assert!(
        (0.0..=1.0).contains(&cfg.p_min)
            && (0.0..=1.0).contains(&cfg.p_max)
            && cfg.p_min <= cfg.p_max,
        "invalid p range"
    );
    let run = || {
        let batch = (rayon::current_num_threads() as u64 * 4).max(1);
        let mut results: Vec<TrialResult> = Vec::new();
        let mut start = 0;
        while start < cfg.trials {
            let end = (start + batch).min(cfg.trials);
            let chunk: Vec<TrialResult> = (start..end)
                .into_par_iter()
                .map(|i| run_trial(cfg, &draw_trial(cfg, i)))
                .collect();
            let failed_at = chunk.iter().position(|r| !r.failures.is_empty());
            match failed_at {
                Some(pos) => {
                    results.extend(chunk.into_iter().take(pos + 1));
                    break;
                }
                None => results.extend(chunk),
            }
            start = end;
        }
        results
    };
    let results = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    assemble(cfg, results)
}

fn assemble(cfg: &FuzzConfig, results: Vec<TrialResult>) -> FuzzReport {
    let mut checks_run: BTreeMap<String, CheckCounts> = CHECKS
        .iter()
        .map(|c| (c.to_string(), CheckCounts::default()))
        .collect();
    let mut failures = Vec::new();
    let mut skipped = SkipCounts::default();
    let trials = results.len() as u64;
    for r in results {
        for name in CHECKS {
            let per_k = r.outcomes.get(name).map(Vec::as_slice).unwrap_or(&[]);
            let counts = checks_run.get_mut(*name).expect("known check");
            if per_k.contains(&Disposition::Fail) {
                counts.fail += 1;
            } else if per_k.contains(&Disposition::Pass) {
                counts.pass += 1;
            } else {
                counts.skip += 1;
            }
        }
        failures.extend(r.failures);
        skipped.budget_exhausted += r.skipped.budget_exhausted;
        skipped.disconnected_products += r.skipped.disconnected_products;
        skipped.no_removable_edge += r.skipped.no_removable_edge;
        skipped.acyclic += r.skipped.acyclic;
    }
    FuzzReport {
        schema: SCHEMA,
        seed: cfg.seed,
        trials_requested: cfg.trials,
        trials,
        generator_params: GeneratorParams {
            n_min: cfg.n_min,
            n_max: cfg.n_max,
            p_min: cfg.p_min,
            p_max: cfg.p_max,
            k_set: cfg.ks.clone(),
            product_n_max: cfg.product_n_max,
            oracle_max_n: cfg.oracle_max_n,
            budget_nodes: cfg.budget.max_nodes,
            rng: RNG_NAME,
        },
        aborted: trials < cfg.trials,
        checks_run,
        failures,
        skipped,
    }
}

struct Recorder<'a> {
    trial: u64,
    k: usize,
    graph: &'a Graph,
    result: TrialResult,
}

impl Recorder<'_> {
    fn record(&mut self, check: &'static str, disposition: Disposition) {
        self.result
            .outcomes
            .entry(check)
            .or_default()
            .push(disposition);
    }

    fn skip(&mut self, check: &'static str) {
        self.record(check, Disposition::Skip);
    }

    fn check(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.check_with(check, ok, Vec::new(), detail);
    }

    fn check_with(
        &mut self,
        check: &'static str,
        ok: bool,
        factors: Vec<String>,
        detail: impl FnOnce() -> String,
    ) {
        if ok {
            self.record(check, Disposition::Pass);
        } else {
            self.record(check, Disposition::Fail);
            self.result.failures.push(Failure {
                trial: self.trial,
                invariant: check.to_string(),
                k: self.k,
                graph: edgelist::serialize(self.graph),
                factors,
                detail: detail(),
            });
        }
    }
}

/// Exact `γ_k` by oracle when small enough, else by branch and bound.
fn ground_truth(g: &Graph, k: usize, cfg: &FuzzConfig) -> Option<Certificate> {
    if g.n() <= cfg.oracle_max_n {
        return solver::gamma_k_oracle(g, k, cfg.oracle_max_n).ok();
    }
    Some(solver::gamma_k_exact(g, k, cfg.budget)).filter(Certificate::is_exact)
}

fn run_trial(cfg: &FuzzConfig, input: &TrialInput) -> TrialResult {
    let g = &input.graph;
    let metrics = g.metrics();
    let mut rec = Recorder {
        trial: input.index,
        k: 0,
        graph: g,
        result: TrialResult::default(),
    };
    for &k in &cfg.ks {
        rec.k = k;
        check_single_graph(cfg, input, &metrics, &mut rec);
        check_product(cfg, input, &mut rec);
    }
    rec.result
}

fn check_single_graph(
    cfg: &FuzzConfig,
    input: &TrialInput,
    metrics: &crate::graph::Metrics,
    rec: &mut Recorder<'_>,
) {
    let g = &input.graph;
    let k = rec.k;
    let exact = solver::gamma_k_exact(g, k, cfg.budget);
    rec.check("certificate", exact.verify(g), || {
        format!(
            "branch-and-bound set {:?} is not {k}-dominating",
            exact.vertices()
        )
    });
    let oracle = (g.n() <= cfg.oracle_max_n)
        .then(|| solver::gamma_k_oracle(g, k, cfg.oracle_max_n).ok())
        .flatten();
    match (&oracle, exact.is_exact()) {
        (Some(o), true) => rec.check("oracle_equivalence", o.value == exact.value, || {
            format!("branch and bound {} vs oracle {}", exact.value, o.value)
        }),
        _ => rec.skip("oracle_equivalence"),
    }
    let truth = match (&oracle, exact.is_exact()) {
        (Some(o), _) => o.value,
        (None, true) => exact.value,
        (None, false) => {
            rec.result.skipped.budget_exhausted += 1;
            for name in &CHECKS[2..9] {
                rec.skip(name);
            }
            return;
        }
    };

    let packing = solver::packing_size(g, k);
    let greedy = solver::greedy_upper(g, k).value;
    rec.check("sandwich", packing <= truth && truth <= greedy, || {
        format!("packing {packing} <= gamma {truth} <= greedy {greedy} fails")
    });

    let lb_d = bounds::lb_diameter(metrics.diameter, k).expect("connected");
    rec.check("diameter_bound", truth >= lb_d, || {
        format!(
            "gamma {truth} < diameter bound {lb_d} (diameter {})",
            metrics.diameter
        )
    });
    let lb_r = bounds::lb_radius(metrics.radius, k).expect("connected");
    rec.check("radius_bound", truth >= lb_r, || {
        format!(
            "gamma {truth} < radius bound {lb_r} (radius {})",
            metrics.radius
        )
    });
    if metrics.girth == INFINITY {
        rec.result.skipped.acyclic += 1;
        rec.skip("girth_bound");
    } else {
        let lb_g = bounds::lb_girth(metrics.girth, k);
        rec.check("girth_bound", truth >= lb_g, || {
            format!(
                "gamma {truth} < girth bound {lb_g} (girth {})",
                metrics.girth
            )
        });
    }

    let uppers = [
        ("meir_moon", bounds::ub_meir_moon(g.n(), k)),
        ("tian_xu", bounds::ub_tian_xu(g.n(), g.max_degree(), k)),
        (
            "henning_lichiardopol",
            bounds::ub_hl(g.n(), g.min_degree(), g.max_degree(), k),
        ),
    ];
    let broken: Vec<String> = uppers
        .iter()
        .filter_map(|(name, ub)| {
            ub.value()
                .filter(|&v| truth > v)
                .map(|v| format!("{name} = {v}"))
        })
        .collect();
    if uppers.iter().all(|(_, ub)| ub.value().is_none()) {
        rec.skip("upper_bounds");
    } else {
        rec.check("upper_bounds", broken.is_empty(), || {
            format!("gamma {truth} exceeds {}", broken.join(", "))
        });
    }

    if exact.is_exact() {
        let outcome = check_spanning_tree(g, k, &exact, truth, cfg);
        rec.check("spanning_tree", outcome.is_ok(), || outcome.unwrap_err());
    } else {
        rec.skip("spanning_tree");
    }

    match input.deletion {
        Some((u, v)) => {
            let smaller = g.without_edge(u, v);
            match ground_truth(&smaller, k, cfg) {
                Some(c) => rec.check("edge_deletion", truth <= c.value, || {
                    format!("removing {u} {v} lowered gamma from {truth} to {}", c.value)
                }),
                None => {
                    rec.result.skipped.budget_exhausted += 1;
                    rec.skip("edge_deletion");
                }
            }
        }
        None => {
            rec.result.skipped.no_removable_edge += 1;
            rec.skip("edge_deletion");
        }
    }
}

fn check_spanning_tree(
    g: &Graph,
    k: usize,
    exact: &Certificate,
    truth: usize,
    cfg: &FuzzConfig,
) -> Result<(), String> {
    let res = constructions::spanning_tree_from_dominating_set(g, &exact.vertices());
    let t = &res.tree;
    if !t.is_tree() || t.n() != g.n() {
        return Err("construction is not a spanning tree".into());
    }
    if let Some(&(u, v)) = t.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(format!("tree edge {u} {v} is not in the graph"));
    }
    for (i, &root) in res.dominating_set.iter().enumerate() {
        let in_tree = t.bfs_distances(root).expect("in range");
        let in_graph = g.bfs_distances(root).expect("in range");
        for v in (0..g.n()).filter(|&v| res.partition[v] == i) {
            if in_tree[v] as usize > k || in_tree[v] != in_graph[v] {
                return Err(format!(
                    "vertex {v}: tree distance {} to its root {root}, graph distance {}",
                    in_tree[v], in_graph[v]
                ));
            }
        }
    }
    let tree_gamma = ground_truth(t, k, cfg).ok_or("tree solve exhausted budget")?;
    if tree_gamma.value != truth {
        return Err(format!(
            "gamma(tree) = {} but gamma(G) = {truth}",
            tree_gamma.value
        ));
    }
    Ok(())
}

fn check_product(cfg: &FuzzConfig, input: &TrialInput, rec: &mut Recorder<'_>) {
    let k = rec.k;
    let factors = || {
        vec![
            edgelist::serialize(&input.left),
            edgelist::serialize(&input.right),
        ]
    };
    let product = constructions::direct_product(&input.left, &input.right).expect("non-empty");
    let cert = solver::gamma_k_exact(&product.graph, k, cfg.budget);
    if !cert.is_exact() {
        rec.result.skipped.budget_exhausted += 1;
        rec.skip("projections_dominate");
        rec.skip("product_bound");
        return;
    }
    let set = cert.vertices();
    let left_proj = constructions::project(&product, &set, Side::Left);
    let right_proj = constructions::project(&product, &set, Side::Right);
    let ok = solver::is_k_dominating(&input.left, &left_proj, k).unwrap_or(false)
        && solver::is_k_dominating(&input.right, &right_proj, k).unwrap_or(false);
    rec.check_with("projections_dominate", ok, factors(), || {
        format!("projections {left_proj:?} / {right_proj:?} of {set:?} are not {k}-dominating")
    });

    if cert.components != 1 {
        rec.result.skipped.disconnected_products += 1;
        rec.skip("product_bound");
        return;
    }
    let (Some(gl), Some(gr)) = (
        ground_truth(&input.left, k, cfg),
        ground_truth(&input.right, k, cfg),
    ) else {
        rec.result.skipped.budget_exhausted += 1;
        rec.skip("product_bound");
        return;
    };
    let bound = gl.value + gr.value - 1;
    rec.check_with("product_bound", cert.value >= bound, factors(), || {
        format!(
            "gamma(GxH) = {} < {} + {} - 1",
            cert.value, gl.value, gr.value
        )
    });
}
