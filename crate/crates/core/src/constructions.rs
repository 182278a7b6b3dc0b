//! Graph generators and the constructive procedures behind the lower bounds:
//! direct products and projections, the γ_k-preserving spanning tree and the
//! shortest-cycle outsider witness.

use crate::bitset::VertexSet;
use crate::graph::{Distance, Graph, GraphError, Vertex, INFINITY};
use crate::solver::{self, Budget};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("direct product factor has no vertices")]
    EmptyFactor,
    #[error("graph is disconnected")]
    DisconnectedInput,
    #[error("exact k-domination solve did not finish within budget")]
    BudgetExceeded,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits simple graphs")
}

/// `P_n` labelled `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidOrder("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(build(n, &edges))
}

/// `C_n` labelled in cyclic order.
pub fn cycle(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidOrder("cycle needs n >= 3".into()));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Ok(build(n, &edges))
}

pub fn complete(n: usize) -> Result<Graph, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidOrder(
            "complete graph needs n >= 1".into(),
        ));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(build(n, &edges))
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Result<Graph, ConstructionError> {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Ok(build(leaves + 1, &edges))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, &edges)
}

/// Path `v_1 .. v_{n_base}` whose internal vertices are blown up into
/// cliques of size `delta`, with complete joins between consecutive cells.
///
/// Vertex 0 is `v_1`, the last vertex is `v_{n_base}`, and clique `V_i`
/// (for `2 <= i <= n_base - 1`) occupies `1 + (i-2)*delta .. 1 + (i-1)*delta`.
pub fn clique_expanded_path(n_base: usize, delta: usize) -> Result<Graph, ConstructionError> {
    if n_base < 3 {
        return Err(ConstructionError::InvalidOrder(
            "clique-expanded path needs n_base >= 3".into(),
        ));
    }
    if delta == 0 {
        return Err(ConstructionError::InvalidOrder(
            "clique size must be >= 1".into(),
        ));
    }
    let inner = n_base - 2;
    let n = 2 + inner * delta;
    let last = n - 1;
    let cell = |i: usize| (1 + i * delta)..(1 + (i + 1) * delta);
    let mut edges = Vec::new();
    for i in 0..inner {
        for a in cell(i) {
            for b in a + 1..cell(i).end {
                edges.push((a, b));
            }
            if i + 1 < inner {
                for b in cell(i + 1) {
                    edges.push((a, b));
                }
            }
        }
    }
    for v in cell(0) {
        edges.push((0, v));
    }
    for v in cell(inner - 1) {
        edges.push((v, last));
    }
    Ok(build(n, &edges))
}

/// A vertex `(g, h)` of a direct product and its flat index `g * n(H) + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProductVertex {
    pub g: Vertex,
    pub h: Vertex,
    pub flat: Vertex,
}

/// `G × H` on flat indices plus the factor orders needed to decode them.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub graph: Graph,
    pub left_n: usize,
    pub right_n: usize,
}

impl DirectProduct {
    pub fn encode(&self, g: Vertex, h: Vertex) -> ProductVertex {
        assert!(g < self.left_n && h < self.right_n);
        ProductVertex {
            g,
            h,
            flat: g * self.right_n + h,
        }
    }

    pub fn decode(&self, flat: Vertex) -> ProductVertex {
        assert!(flat < self.graph.n());
        ProductVertex {
            g: flat / self.right_n,
            h: flat % self.right_n,
            flat,
        }
    }

    /// Decode table indexed by flat index.
    pub fn decode_table(&self) -> Vec<ProductVertex> {
        (0..self.graph.n()).map(|f| self.decode(f)).collect()
    }
}

/// Direct (tensor) product: `(g1,h1) ~ (g2,h2)` iff `g1 ~ g2` and `h1 ~ h2`.
pub fn direct_product(left: &Graph, right: &Graph) -> Result<DirectProduct, ConstructionError> {
    if left.n() == 0 || right.n() == 0 {
        return Err(ConstructionError::EmptyFactor);
    }
    let rn = right.n();
    let flat = |g: Vertex, h: Vertex| g * rn + h;
    let mut edges = Vec::with_capacity(2 * left.m() * right.m());
    for &(g1, g2) in left.edges() {
        for &(h1, h2) in right.edges() {
            edges.push((flat(g1, h1), flat(g2, h2)));
            edges.push((flat(g1, h2), flat(g2, h1)));
        }
    }
    Ok(DirectProduct {
        graph: build(left.n() * rn, &edges),
        left_n: left.n(),
        right_n: rn,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Projection of a set of product vertices onto one factor, sorted.
pub fn project(product: &DirectProduct, set: &[Vertex], side: Side) -> Vec<Vertex> {
    let size = match side {
        Side::Left => product.left_n,
        Side::Right => product.right_n,
    };
    let image = VertexSet::from_vertices(
        size,
        set.iter().map(|&f| {
            let pv = product.decode(f);
            match side {
                Side::Left => pv.g,
                Side::Right => pv.h,
            }
        }),
    );
    image.to_vec()
}

/// Output of [`preserving_spanning_tree`].
#[derive(Debug, Clone, Serialize)]
pub struct SpanningTreeResult {
    #[serde(skip)]
    pub tree: Graph,
    /// Minimum k-dominating set `v_1 .. v_l`, ascending.
    pub dominating_set: Vec<Vertex>,
    /// `partition[v]` is the index into `dominating_set` of v's cell.
    pub partition: Vec<usize>,
    /// The `l - 1` edges joining the cell trees.
    pub connectors: Vec<(Vertex, Vertex)>,
}

impl SpanningTreeResult {
    pub fn root_of(&self, v: Vertex) -> Vertex {
        self.dominating_set[self.partition[v]]
    }
}

/// Spanning tree `T` of a connected `G` with `γ_k(T) = γ_k(G)`.
///
/// Takes a minimum k-dominating set `S`, puts every vertex in the cell of its
/// nearest dominator (lowest index on ties), grows a BFS tree from each
/// dominator inside its own cell, then links the cell trees with the
/// lexicographically smallest available edges of `G` (Kruskal over the
/// cell quotient).
pub fn preserving_spanning_tree(
    g: &Graph,
    k: usize,
    budget: Budget,
) -> Result<SpanningTreeResult, ConstructionError> {
    if !g.is_connected() {
        return Err(ConstructionError::DisconnectedInput);
    }
    let cert = solver::gamma_k_exact(g, k, budget);
    if !cert.is_exact() {
        return Err(ConstructionError::BudgetExceeded);
    }
    Ok(spanning_tree_from_dominating_set(g, &cert.vertices()))
}

/// The tree construction for a given dominating set `dominators`
/// (ascending). Each vertex's tree distance to its cell root equals its
/// graph distance to the whole set.
pub fn spanning_tree_from_dominating_set(g: &Graph, dominators: &[Vertex]) -> SpanningTreeResult {
    let n = g.n();
    let mut dist = vec![INFINITY; n];
    let mut cell = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for (i, &s) in dominators.iter().enumerate() {
        dist[s] = 0;
        cell[s] = i;
        order.push(s);
    }
    // Multi-source BFS by layers. A vertex at distance t takes the smallest
    // cell index among its neighbours at distance t-1; by induction that is
    // the lowest-index nearest dominator, and the chosen neighbour lies in
    // the same cell, so every cell is connected through shortest paths.
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if dist[w] == INFINITY {
                dist[w] = dist[u] + 1;
                order.push(w);
            }
        }
    }
    for &v in &order {
        if dist[v] == 0 {
            continue;
        }
        let (best_cell, best_parent) = g
            .neighbors(v)
            .iter()
            .filter(|&&p| dist[p] + 1 == dist[v])
            .map(|&p| (cell[p], p))
            .min()
            .expect("BFS parent exists");
        cell[v] = best_cell;
        parent[v] = best_parent;
    }

    let mut edges: Vec<(Vertex, Vertex)> = (0..n)
        .filter(|&v| parent[v] != usize::MAX)
        .map(|v| (v.min(parent[v]), v.max(parent[v])))
        .collect();

    let mut uf = UnionFind::new(dominators.len());
    let mut connectors = Vec::new();
    for &(u, v) in g.edges() {
        if cell[u] != cell[v] && uf.union(cell[u], cell[v]) {
            connectors.push((u, v));
        }
    }
    edges.extend_from_slice(&connectors);

    SpanningTreeResult {
        tree: Graph::from_edges(n, &edges).expect("tree edges are distinct edges of G"),
        dominating_set: dominators.to_vec(),
        partition: cell,
        connectors,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Two k-dominated cycle vertices `u`, `w` of an outsider `v`, with the
/// shortest paths that certify the separation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutsiderWitness {
    pub u: Vertex,
    pub w: Vertex,
    /// Shortest path `v .. u`.
    pub path_u: Vec<Vertex>,
    /// Shortest path `v .. w`.
    pub path_w: Vec<Vertex>,
}

/// Which pair [`cycle_outsider_witness`] should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// `u` nearest to `v` on the cycle, `w` the dominated vertex farthest
    /// from `u` along the cycle.
    #[default]
    Basic,
    /// `u` and `w` adjacent on the cycle. Requires `v` to k-dominate the
    /// whole cycle.
    Adjacent,
}

/// For a vertex `v` off a shortest cycle `C` that k-dominates at least `2k`
/// vertices of `C`, finds `u, w ∈ V(C)` both within `k` of `v` such that no
/// shortest `(v,u)`-path meets `w` and no shortest `(v,w)`-path meets `u`.
pub fn cycle_outsider_witness(
    g: &Graph,
    cycle: &[Vertex],
    v: Vertex,
    k: usize,
    mode: WitnessMode,
) -> Result<OutsiderWitness, ConstructionError> {
    let violated = |msg: String| Err(ConstructionError::PreconditionViolated(msg));
    let n = g.n();
    if v >= n {
        return Err(GraphError::IndexOutOfRange { index: v, n }.into());
    }
    if let Some(&bad) = cycle.iter().find(|&&c| c >= n) {
        return Err(GraphError::IndexOutOfRange { index: bad, n }.into());
    }
    if let Err(msg) = check_is_cycle(g, cycle) {
        return violated(msg);
    }
    if (cycle.len() as Distance) != g.girth() {
        return violated(format!(
            "cycle has length {} but the girth is {}",
            cycle.len(),
            g.girth()
        ));
    }
    if cycle.contains(&v) {
        return violated(format!("vertex {v} lies on the cycle"));
    }
    let from_v = g.bfs_distances(v)?;
    let kd = k as Distance;
    let dominated: Vec<Vertex> = cycle.iter().copied().filter(|&c| from_v[c] <= kd).collect();

    let position = |x: Vertex| cycle.iter().position(|&c| c == x).expect("on cycle");
    let along_cycle = |a: Vertex, b: Vertex| {
        let (pa, pb) = (position(a), position(b));
        let diff = pa.abs_diff(pb);
        diff.min(cycle.len() - diff)
    };

    let (u, w) = match mode {
        WitnessMode::Basic => {
            if dominated.len() < 2 * k {
                return violated(format!(
                    "vertex {v} k-dominates {} cycle vertices, needs at least {}",
                    dominated.len(),
                    2 * k
                ));
            }
            let u = *cycle
                .iter()
                .min_by_key(|&&c| (from_v[c], c))
                .expect("cycle is non-empty");
            let w = *dominated
                .iter()
                .min_by_key(|&&c| (std::cmp::Reverse(along_cycle(u, c)), c))
                .expect("dominated set is non-empty");
            (u, w)
        }
        WitnessMode::Adjacent => {
            if dominated.len() != cycle.len() {
                return violated(format!("vertex {v} does not k-dominate the whole cycle"));
            }
            let w = *cycle
                .iter()
                .min_by_key(|&&c| (std::cmp::Reverse(from_v[c]), c))
                .expect("cycle is non-empty");
            let pw = position(w);
            let l = cycle.len();
            let mut nbrs = [cycle[(pw + 1) % l], cycle[(pw + l - 1) % l]];
            nbrs.sort_unstable();
            let path_w = shortest_path(g, v, w);
            let u = nbrs
                .iter()
                .copied()
                .find(|&x| from_v[x] == from_v[w])
                .or_else(|| nbrs.iter().copied().find(|x| !path_w.contains(x)))
                .expect("a shortest path meets at most one cycle neighbour of its end");
            (u, w)
        }
    };

    let witness = OutsiderWitness {
        u,
        w,
        path_u: shortest_path(g, v, u),
        path_w: shortest_path(g, v, w),
    };
    verify_witness(g, v, k, &witness, mode).map_err(ConstructionError::PreconditionViolated)?;
    Ok(witness)
}

/// Checks the returned paths literally. In [`WitnessMode::Basic`] also
/// checks that the separation holds for every shortest path (a shortest
/// `(v,u)`-path can meet `w` only if `d(v,w) + d(w,u) = d(v,u)`).
pub fn verify_witness(
    g: &Graph,
    v: Vertex,
    k: usize,
    wit: &OutsiderWitness,
    mode: WitnessMode,
) -> Result<(), String> {
    let from_v = g.bfs_distances(v).map_err(|e| e.to_string())?;
    let from_u = g.bfs_distances(wit.u).map_err(|e| e.to_string())?;
    let kd = k as Distance;
    let is_shortest = |p: &[Vertex], end: Vertex| {
        p.first() == Some(&v)
            && p.last() == Some(&end)
            && p.len() as Distance == from_v[end] + 1
            && p.windows(2).all(|e| g.has_edge(e[0], e[1]))
    };
    if from_v[wit.u] > kd || from_v[wit.w] > kd {
        return Err("witness vertex not k-dominated".into());
    }
    if wit.u == wit.w {
        return Err("witness vertices coincide".into());
    }
    if !is_shortest(&wit.path_u, wit.u) || !is_shortest(&wit.path_w, wit.w) {
        return Err("witness path is not a shortest path".into());
    }
    if wit.path_u.contains(&wit.w) || wit.path_w.contains(&wit.u) {
        return Err("witness paths are not separated".into());
    }
    let uw = from_u[wit.w];
    if mode == WitnessMode::Basic
        && (from_v[wit.w] + uw == from_v[wit.u] || from_v[wit.u] + uw == from_v[wit.w])
    {
        return Err("some shortest path passes through the other witness".into());
    }
    Ok(())
}

fn check_is_cycle(g: &Graph, cycle: &[Vertex]) -> Result<(), String> {
    if cycle.len() < 3 {
        return Err("a cycle needs at least 3 vertices".into());
    }
    let mut seen = VertexSet::new(g.n());
    for &c in cycle {
        if seen.contains(c) {
            return Err(format!("vertex {c} repeats on the cycle"));
        }
        seen.insert(c);
    }
    let l = cycle.len();
    for i in 0..l {
        let (a, b) = (cycle[i], cycle[(i + 1) % l]);
        if !g.has_edge(a, b) {
            return Err(format!("{a} {b} is not an edge"));
        }
    }
    Ok(())
}

/// Shortest path `from .. to` following lowest-index BFS parents.
pub fn shortest_path(g: &Graph, from: Vertex, to: Vertex) -> Vec<Vertex> {
    let dist = g.bfs_distances(to).expect("index in range");
    assert!(dist[from] != INFINITY, "no path from {from} to {to}");
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&x| dist[x] + 1 == dist[cur])
            .expect("distance decreases along a neighbour");
        path.push(cur);
    }
    path
}
