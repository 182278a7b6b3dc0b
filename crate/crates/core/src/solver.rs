//! Exact and heuristic computation of the k-domination number.
//!
//! `γ_k(G)` is a set-cover problem with universe `V(G)` and one set `N_k[v]`
//! per vertex. The exact solver is a depth-first branch and bound over that
//! formulation; [`gamma_k_oracle`] is an independent brute-force enumerator
//! used as ground truth on small graphs.

use crate::bitset::VertexSet;
use crate::graph::{Graph, GraphError, Vertex, INFINITY};
use serde::Serialize;
use std::time::{Duration, Instant};
use thiserror::Error;

pub const DEFAULT_ORACLE_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n} vertices, oracle cap is {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("graph is disconnected")]
    DisconnectedInput,
    #[error("invalid order {n} for a {shape}")]
    InvalidOrder { n: usize, shape: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Exact,
    UpperBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Oracle,
    BranchAndBound,
    Greedy,
    ClosedForm,
}

/// A k-dominating set together with how much is known about its optimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub set: VertexSet,
    pub value: usize,
    pub status: Status,
    pub lower_bound_used: usize,
    pub nodes_explored: u64,
    pub method: Method,
    /// Number of connected components solved independently.
    pub components: usize,
}

impl Certificate {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.set.to_vec()
    }

    /// Re-checks the set against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        self.set.universe() == g.n()
            && self.set.len() == self.value
            && self.lower_bound_used <= self.value
            && is_k_dominating(g, &self.vertices(), self.k).unwrap_or(false)
    }
}

/// Search limits for [`gamma_k_exact`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            max_time: Duration::from_secs(30),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

/// Whether every vertex is within distance `k` of `set`.
///
/// Runs a multi-source BFS truncated at depth `k`, so a vertex whose
/// component contains no member of `set` is never reached.
pub fn is_k_dominating(g: &Graph, set: &[Vertex], k: usize) -> Result<bool, GraphError> {
    let mut dist = vec![INFINITY; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &s in set {
        if s >= g.n() {
            return Err(GraphError::IndexOutOfRange { index: s, n: g.n() });
        }
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] as usize >= k {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == INFINITY {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist.iter().all(|&d| d != INFINITY))
}

/// Brute force: tries every vertex subset by increasing size, in
/// lexicographic order within a size, and returns the first that
/// k-dominates.
///
/// Coverage is read off the all-pairs distance matrix rather than the
/// k-balls used by the branch and bound.
pub fn gamma_k_oracle(g: &Graph, k: usize, max_n: usize) -> Result<Certificate, SolverError> {
    let n = g.n();
    // single-word masks
    let max_n = max_n.min(64);
    if n > max_n {
        return Err(SolverError::TooLarge { n, max_n });
    }
    let metrics = g.metrics();
    // reach[v] = vertices within k of v
    let reach: Vec<u64> = metrics
        .dist
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &d)| d != INFINITY && (d as usize) <= k)
                .fold(0u64, |acc, (u, _)| acc | (1 << u))
        })
        .collect();
    let everything: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut nodes = 0u64;
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            nodes += 1;
            let covered = combo.iter().fold(0u64, |acc, &v| acc | reach[v]);
            if covered == everything {
                return Ok(Certificate {
                    k,
                    set: VertexSet::from_vertices(n, combo.iter().copied()),
                    value: size,
                    status: Status::Exact,
                    lower_bound_used: size,
                    nodes_explored: nodes,
                    method: Method::Oracle,
                    components: g.components().len(),
                });
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always k-dominates")
}

/// Advances `combo` to the next `combo.len()`-subset of `0..n` in
/// lexicographic order. Returns false once exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let size = combo.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if combo[i] < n - size + i {
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Greedy set cover over the k-balls: repeatedly take the vertex covering
/// the most uncovered vertices, lowest index on ties.
pub fn greedy_upper(g: &Graph, k: usize) -> Certificate {
    let balls = g.k_balls(k);
    let set = greedy_cover(g.n(), &balls);
    let lower = lower_bound(g, k);
    let value = set.len();
    Certificate {
        k,
        set,
        value,
        status: if value == lower {
            Status::Exact
        } else {
            Status::UpperBoundOnly
        },
        lower_bound_used: lower,
        nodes_explored: 0,
        method: Method::Greedy,
        components: g.components().len(),
    }
}

fn greedy_cover(n: usize, balls: &[VertexSet]) -> VertexSet {
    let mut uncovered = VertexSet::full(n);
    let mut chosen = VertexSet::new(n);
    while !uncovered.is_empty() {
        let (best, _) = balls
            .iter()
            .enumerate()
            .map(|(v, ball)| (v, ball.intersection_len(&uncovered)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        chosen.insert(best);
        uncovered.difference_with(&balls[best]);
    }
    chosen
}

/// Greedy packing: vertices taken in index order whenever they are at
/// distance at least `2k + 1` from everything already taken. No vertex
/// k-dominates two of them, so the packing size bounds `γ_k` from below.
pub fn packing_lower(g: &Graph, k: usize) -> Result<usize, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::DisconnectedInput);
    }
    Ok(packing_size(g, k))
}

/// Packing size without the connectivity check; vertices in different
/// components count as far apart.
pub(crate) fn packing_size(g: &Graph, k: usize) -> usize {
    let mut blocked = VertexSet::new(g.n());
    let mut size = 0;
    while let Some(v) = blocked.first_absent() {
        size += 1;
        let near = g.closed_k_neighborhood(v, 2 * k).expect("index in range");
        blocked.union_with(&near);
    }
    size
}

/// Best cheap lower bound: summed per component, each the larger of the
/// packing bound and the diameter bound.
fn lower_bound(g: &Graph, k: usize) -> usize {
    g.components()
        .iter()
        .map(|comp| {
            let sub = g.induced(comp);
            component_lower_bound(&sub, k)
        })
        .sum()
}

fn component_lower_bound(g: &Graph, k: usize) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let diameter = g.metrics().diameter as usize;
    let by_diameter = (diameter + 1).div_ceil(2 * k + 1);
    packing_size(g, k).max(by_diameter).max(1)
}

/// Exact `γ_k(G)` by branch and bound, within `budget`.
///
/// Disconnected graphs are solved one component at a time and the results
/// summed. If the budget runs out the best set found so far is returned
/// with [`Status::UpperBoundOnly`].
pub fn gamma_k_exact(g: &Graph, k: usize, budget: Budget) -> Certificate {
    let started = Instant::now();
    let components = g.components();
    let mut set = VertexSet::new(g.n());
    let mut exact = true;
    let mut nodes = 0;
    let mut lower = 0;
    for comp in &components {
        let sub = g.induced(comp);
        let remaining = Budget {
            max_nodes: budget.max_nodes.saturating_sub(nodes),
            max_time: budget.max_time.saturating_sub(started.elapsed()),
        };
        let outcome = BranchAndBound::new(&sub, k, remaining).run();
        nodes += outcome.nodes;
        lower += outcome.lower_bound;
        exact &= outcome.exact;
        for v in outcome.best.iter() {
            set.insert(comp[v]);
        }
    }
    let value = set.len();
    Certificate {
        k,
        set,
        value,
        status: if exact {
            Status::Exact
        } else {
            Status::UpperBoundOnly
        },
        lower_bound_used: lower,
        nodes_explored: nodes,
        method: Method::BranchAndBound,
        components: components.len(),
    }
}

struct Outcome {
    best: VertexSet,
    exact: bool,
    nodes: u64,
    lower_bound: usize,
}

/// Search state for one connected component.
struct BranchAndBound {
    n: usize,
    balls: Vec<VertexSet>,
    root_lower: usize,
    best: VertexSet,
    budget: Budget,
    started: Instant,
    nodes: u64,
    aborted: bool,
}

impl BranchAndBound {
    fn new(g: &Graph, k: usize, budget: Budget) -> Self {
        let balls = g.k_balls(k);
        let best = greedy_cover(g.n(), &balls);
        Self {
            n: g.n(),
            root_lower: component_lower_bound(g, k),
            balls,
            best,
            budget,
            started: Instant::now(),
            nodes: 0,
            aborted: false,
        }
    }

    fn run(mut self) -> Outcome {
        if self.n > 0 && self.best.len() > self.root_lower {
            let mut chosen = Vec::new();
            self.search(&VertexSet::full(self.n), &mut chosen);
        }
        Outcome {
            exact: !self.aborted,
            nodes: self.nodes,
            lower_bound: self.root_lower.min(self.best.len()),
            best: self.best,
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024) && self.started.elapsed() >= self.budget.max_time)
        {
            self.aborted = true;
        }
        self.aborted
    }

    /// Returns true when the search can stop because the incumbent meets
    /// the root lower bound.
    fn search(&mut self, uncovered: &VertexSet, chosen: &mut Vec<Vertex>) -> bool {
        self.nodes += 1;
        if self.out_of_budget() {
            return true;
        }
        let Some(pivot) = uncovered.first() else {
            if chosen.len() < self.best.len() {
                self.best = VertexSet::from_vertices(self.n, chosen.iter().copied());
            }
            return self.best.len() <= self.root_lower;
        };

        // Every remaining pick covers at most `widest` new vertices.
        let widest = self
            .balls
            .iter()
            .map(|b| b.intersection_len(uncovered))
            .max()
            .unwrap_or(0);
        let needed = uncovered.len().div_ceil(widest.max(1));
        if chosen.len() + needed >= self.best.len() {
            return false;
        }

        // Dominators of the pivot are exactly the members of its own ball.
        let mut candidates: Vec<(usize, Vertex)> = self.balls[pivot]
            .iter()
            .map(|v| (self.balls[v].intersection_len(uncovered), v))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        for (_, v) in candidates {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.balls[v]);
            chosen.push(v);
            let done = self.search(&rest, chosen);
            chosen.pop();
            if done {
                return true;
            }
            if chosen.len() + 1 >= self.best.len() {
                break;
            }
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Path,
    Cycle,
}

/// `γ_k(P_n) = γ_k(C_n) = ⌈n / (2k + 1)⌉`.
pub fn gamma_path_cycle(n: usize, k: usize, shape: Shape) -> Result<usize, SolverError> {
    match shape {
        Shape::Path if n == 0 => Err(SolverError::InvalidOrder { n, shape: "path" }),
        Shape::Cycle if n < 3 => Err(SolverError::InvalidOrder { n, shape: "cycle" }),
        _ => Ok(n.div_ceil(2 * k + 1)),
    }
}

/// Closed-form certificate for `P_n` / `C_n` in the canonical labelling,
/// using the centers `k, 3k+1, 5k+2, ...` clamped to the last vertex.
pub fn path_cycle_certificate(
    n: usize,
    k: usize,
    shape: Shape,
) -> Result<Certificate, SolverError> {
    let value = gamma_path_cycle(n, k, shape)?;
    let set = VertexSet::from_vertices(n, (0..value).map(|i| (k + i * (2 * k + 1)).min(n - 1)));
    Ok(Certificate {
        k,
        value: set.len(),
        set,
        status: Status::Exact,
        lower_bound_used: value,
        nodes_explored: 0,
        method: Method::ClosedForm,
        components: 1,
    })
}
