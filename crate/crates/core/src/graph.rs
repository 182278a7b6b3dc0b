//! Immutable simple undirected graphs and their breadth-first metrics.

use crate::bitset::VertexSet;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

pub type Vertex = usize;

/// Hop distance. Unreachable pairs hold [`INFINITY`].
pub type Distance = u32;

/// Sentinel for "no path"; strictly larger than any realizable hop distance.
pub const INFINITY: Distance = Distance::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("graph is not simple: {0}")]
    SimplenessViolation(String),
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbors are kept twice: as sorted lists for traversal and as bitsets
/// for set-cover style intersections.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
    adjacency_bits: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops and repeated edges.
    pub fn from_edges(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut seen = std::collections::HashSet::with_capacity(pairs.len());
        for &(u, v) in pairs {
            check_index(u, n)?;
            check_index(v, n)?;
            if u == v {
                return Err(GraphError::SimplenessViolation(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::SimplenessViolation(format!(
                    "repeated edge {} {}",
                    u.min(v),
                    u.max(v)
                )));
            }
        }
        Ok(Self::from_canonical(n, seen.into_iter().collect()))
    }

    /// Builds a graph, silently dropping self-loops and repeated edges.
    /// Returns the graph and how many input pairs were discarded.
    pub fn from_edges_lenient(
        n: usize,
        pairs: &[(Vertex, Vertex)],
    ) -> Result<(Self, usize), GraphError> {
        let mut kept = std::collections::BTreeSet::new();
        let mut dropped = 0;
        for &(u, v) in pairs {
            check_index(u, n)?;
            check_index(v, n)?;
            if u == v || !kept.insert((u.min(v), u.max(v))) {
                dropped += 1;
            }
        }
        Ok((Self::from_canonical(n, kept.into_iter().collect()), dropped))
    }

    /// `edges` must already be loop-free and duplicate-free with `u < v`.
    fn from_canonical(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Self {
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        let mut adjacency_bits = vec![VertexSet::new(n); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
            adjacency_bits[u].insert(v);
            adjacency_bits[v].insert(u);
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
            adjacency_bits,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn neighbor_bits(&self, v: Vertex) -> &VertexSet {
        &self.adjacency_bits[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adjacency_bits[u].contains(v)
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Copy of the graph with the edge `{u, v}` removed (no-op if absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let key = (u.min(v), u.max(v));
        let edges = self.edges.iter().copied().filter(|&e| e != key).collect();
        Self::from_canonical(self.n, edges)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// order given.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u].min(index[v]), index[u].max(index[v])))
            .collect();
        Self::from_canonical(vertices.len(), edges)
    }

    pub fn bfs_distances(&self, source: Vertex) -> Result<Vec<Distance>, GraphError> {
        check_index(source, self.n)?;
        Ok(self.bfs_bounded(source, INFINITY))
    }

    /// BFS that stops expanding past `limit`; vertices beyond it stay at
    /// [`INFINITY`].
    fn bfs_bounded(&self, source: Vertex, limit: Distance) -> Vec<Distance> {
        let mut dist = vec![INFINITY; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            if du >= limit {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w] == INFINITY {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `N_k[v]`: every vertex within `k` hops of `v`, including `v`.
    pub fn closed_k_neighborhood(&self, v: Vertex, k: usize) -> Result<VertexSet, GraphError> {
        check_index(v, self.n)?;
        let limit = Distance::try_from(k).unwrap_or(INFINITY - 1);
        let dist = self.bfs_bounded(v, limit);
        Ok(VertexSet::from_vertices(
            self.n,
            (0..self.n).filter(|&u| dist[u] <= limit),
        ))
    }

    /// Closed k-balls of every vertex.
    pub fn k_balls(&self, k: usize) -> Vec<VertexSet> {
        (0..self.n)
            .map(|v| self.closed_k_neighborhood(v, k).expect("index in range"))
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            label[root] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs_bounded(0, INFINITY).iter().all(|&d| d != INFINITY)
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m() == self.n - 1 && self.is_connected()
    }

    pub fn metrics(&self) -> Metrics {
        Metrics::compute(self)
    }

    /// Length of a shortest cycle, or [`INFINITY`] for forests.
    pub fn girth(&self) -> Distance {
        self.shortest_cycle()
            .map_or(INFINITY, |c| c.len() as Distance)
    }

    /// One shortest cycle as an ordered vertex list, or `None` if acyclic.
    ///
    /// Roots are scanned in increasing order and the first root attaining
    /// the girth wins; within a root the first closing edge in BFS order is
    /// used. The list starts at that root.
    pub fn shortest_cycle(&self) -> Option<Vec<Vertex>> {
        let mut best: Option<(u32, Vertex, Vertex, Vertex, Vec<Vertex>)> = None;
        let mut dist = vec![INFINITY; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = INFINITY);
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push_back(root);
            let mut local: Option<(u32, Vertex, Vertex)> = None;
            'bfs: while let Some(u) = queue.pop_front() {
                // a cycle closed at depth du has length >= 2*du + 1
                let bound = local
                    .map(|l| l.0)
                    .into_iter()
                    .chain(best.as_ref().map(|b| b.0))
                    .min();
                if let Some(bound) = bound {
                    if 2 * dist[u] + 1 >= bound {
                        break 'bfs;
                    }
                }
                for &w in &self.adjacency[u] {
                    if dist[w] == INFINITY {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if local.is_none_or(|l| len < l.0) {
                            local = Some((len, u, w));
                        }
                    }
                }
            }
            if let Some((len, u, w)) = local {
                if best.as_ref().is_none_or(|b| len < b.0) {
                    best = Some((len, root, u, w, parent.clone()));
                    if len == 3 {
                        break;
                    }
                }
            }
        }
        let (_, root, u, w, parent) = best?;
        let climb = |mut x: Vertex| {
            let mut path = vec![x];
            while x != root {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let mut down = climb(u);
        down.reverse(); // root .. u
        let up = climb(w); // w .. root
        down.extend_from_slice(&up[..up.len() - 1]);
        Some(down)
    }
}

#[inline]
fn check_index(index: usize, n: usize) -> Result<(), GraphError> {
    if index < n {
        Ok(())
    } else {
        Err(GraphError::IndexOutOfRange { index, n })
    }
}

/// All-pairs distances and the invariants derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metrics {
    #[serde(skip)]
    pub dist: Vec<Vec<Distance>>,
    #[serde(serialize_with = "serialize_distances")]
    pub ecc: Vec<Distance>,
    #[serde(serialize_with = "serialize_distance")]
    pub diameter: Distance,
    #[serde(serialize_with = "serialize_distance")]
    pub radius: Distance,
    #[serde(serialize_with = "serialize_distance")]
    pub girth: Distance,
    pub connected: bool,
}

impl Metrics {
    pub fn compute(g: &Graph) -> Self {
        let dist: Vec<Vec<Distance>> = (0..g.n())
            .into_par_iter()
            .map(|v| g.bfs_bounded(v, INFINITY))
            .collect();
        let ecc: Vec<Distance> = dist
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .collect();
        let connected = g.n() > 0 && ecc.iter().all(|&e| e != INFINITY);
        let (diameter, radius) = if connected {
            (
                ecc.iter().copied().max().unwrap_or(0),
                ecc.iter().copied().min().unwrap_or(0),
            )
        } else {
            (INFINITY, INFINITY)
        };
        Self {
            dist,
            ecc,
            diameter,
            radius,
            girth: g.girth(),
            connected,
        }
    }

    /// Lowest-index vertex of maximum eccentricity.
    pub fn peripheral_vertex(&self) -> Option<Vertex> {
        let max = *self.ecc.iter().max()?;
        self.ecc.iter().position(|&e| e == max)
    }
}

pub(crate) fn distance_to_json(d: Distance) -> Option<u32> {
    (d != INFINITY).then_some(d)
}

fn serialize_distance<S: serde::Serializer>(d: &Distance, s: S) -> Result<S::Ok, S::Error> {
    distance_to_json(*d).serialize(s)
}

fn serialize_distances<S: serde::Serializer>(ds: &[Distance], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ds.iter().map(|&d| distance_to_json(d)))
}
