use kdom_core::constructions::{self, cycle, path, petersen, Side};
use kdom_core::graph::{Graph, INFINITY};
use kdom_core::solver::{self, Budget, Shape};
use proptest::prelude::*;

/// Random simple graph on `1..=max_n` vertices from an edge mask.
fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(mask)
                .filter_map(|(e, keep)| keep.then_some(e))
                .collect();
            Graph::from_edges(n, &pairs).unwrap()
        })
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    any_graph(max_n).prop_filter("connected", Graph::is_connected)
}

/// Length of a shortest cycle by enumerating simple cycles with DFS from
/// their smallest vertex.
fn brute_force_girth(g: &Graph) -> u32 {
    fn extend(
        g: &Graph,
        start: usize,
        cur: usize,
        len: u32,
        on_path: &mut Vec<bool>,
        best: &mut u32,
    ) {
        for &w in g.neighbors(cur) {
            if w == start && len >= 3 {
                *best = (*best).min(len);
            } else if w > start && !on_path[w] && len + 1 < *best {
                on_path[w] = true;
                extend(g, start, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = INFINITY;
    for s in 0..g.n() {
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        extend(g, s, s, 1, &mut on_path, &mut best);
    }
    best
}

#[test]
fn brute_force_girth_of_known_graphs() {
    assert_eq!(brute_force_girth(&petersen()), 5);
    assert_eq!(brute_force_girth(&constructions::complete(4).unwrap()), 3);
    assert_eq!(brute_force_girth(&path(6).unwrap()), INFINITY);
    assert_eq!(petersen().shortest_cycle().unwrap().len(), 5);
    assert_eq!(
        constructions::complete(4)
            .unwrap()
            .shortest_cycle()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn closed_form_matches_oracle_up_to_16() {
    for k in 1..=3 {
        for n in 1..=16 {
            let p = solver::gamma_k_oracle(&path(n).unwrap(), k, 16)
                .unwrap()
                .value;
            assert_eq!(
                p,
                solver::gamma_path_cycle(n, k, Shape::Path).unwrap(),
                "P_{n} k={k}"
            );
            if n >= 3 {
                let c = solver::gamma_k_oracle(&cycle(n).unwrap(), k, 16)
                    .unwrap()
                    .value;
                assert_eq!(
                    c,
                    solver::gamma_path_cycle(n, k, Shape::Cycle).unwrap(),
                    "C_{n} k={k}"
                );
            }
        }
    }
}

#[test]
fn clique_expanded_path_meets_diameter_bound() {
    let g = constructions::clique_expanded_path(6, 2).unwrap();
    let m = g.metrics();
    let gamma = solver::gamma_k_oracle(&g, 1, 16).unwrap().value;
    assert_eq!(gamma, 2);
    assert_eq!(
        gamma,
        kdom_core::bounds::lb_diameter(m.diameter, 1).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distances_symmetric_and_triangle(g in any_graph(12)) {
        let m = g.metrics();
        let n = g.n();
        for u in 0..n {
            prop_assert_eq!(m.dist[u][u], 0);
            prop_assert_eq!(&m.dist[u], &g.bfs_distances(u).unwrap());
            for v in 0..n {
                prop_assert_eq!(m.dist[u][v], m.dist[v][u]);
                for w in 0..n {
                    if m.dist[u][w] != INFINITY && m.dist[w][v] != INFINITY {
                        prop_assert!(m.dist[u][v] <= m.dist[u][w] + m.dist[w][v]);
                    }
                }
            }
        }
        let no_inf = m.dist.iter().flatten().all(|&d| d != INFINITY);
        prop_assert_eq!(m.connected, no_inf);
        if m.connected {
            prop_assert!(m.radius <= m.diameter && m.diameter <= 2 * m.radius);
        }
    }

    #[test]
    fn balls_match_distance_rows(g in any_graph(12), k in 0usize..13) {
        let m = g.metrics();
        for v in 0..g.n() {
            let ball = g.closed_k_neighborhood(v, k).unwrap();
            let expected: Vec<_> = (0..g.n()).filter(|&u| (m.dist[v][u] as usize) <= k && m.dist[v][u] != INFINITY).collect();
            prop_assert_eq!(ball.to_vec(), expected);
            prop_assert!(ball.contains(v));
        }
    }

    #[test]
    fn girth_matches_exhaustive_scan(g in any_graph(9)) {
        let expected = brute_force_girth(&g);
        prop_assert_eq!(g.metrics().girth, expected);
        match g.shortest_cycle() {
            None => prop_assert_eq!(expected, INFINITY),
            Some(c) => {
                prop_assert_eq!(c.len() as u32, expected);
                let l = c.len();
                for i in 0..l {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % l]));
                }
                let mut distinct = c.clone();
                distinct.sort();
                distinct.dedup();
                prop_assert_eq!(distinct.len(), l);
                // a shortest cycle is isometric
                let m = g.metrics();
                for i in 0..l {
                    for j in 0..l {
                        let along = i.abs_diff(j).min(l - i.abs_diff(j)) as u32;
                        prop_assert_eq!(m.dist[c[i]][c[j]], along);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_matches_oracle(g in any_graph(11), k in 1usize..=3) {
        let oracle = solver::gamma_k_oracle(&g, k, 16).unwrap();
        let exact = solver::gamma_k_exact(&g, k, Budget::default());
        prop_assert!(exact.is_exact());
        prop_assert_eq!(exact.value, oracle.value);
        prop_assert!(exact.verify(&g));
        prop_assert!(oracle.verify(&g));
        let greedy = solver::greedy_upper(&g, k);
        prop_assert!(greedy.verify(&g));
        prop_assert!(greedy.value >= oracle.value);
        if g.is_connected() {
            prop_assert!(solver::packing_lower(&g, k).unwrap() <= oracle.value);
        }
    }

    #[test]
    fn monotone_in_k_and_radius_criterion(g in connected_graph(10), k in 1usize..=3) {
        let gk = solver::gamma_k_oracle(&g, k, 16).unwrap().value;
        let gk1 = solver::gamma_k_oracle(&g, k + 1, 16).unwrap().value;
        prop_assert!(gk1 <= gk);
        let radius = g.metrics().radius as usize;
        prop_assert_eq!(gk == 1, radius <= k);
    }

    #[test]
    fn edge_deletion_never_lowers_gamma(g in connected_graph(10), k in 1usize..=2, pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() > 0);
        let (u, v) = g.edges()[pick.index(g.m())];
        let h = g.without_edge(u, v);
        let before = solver::gamma_k_oracle(&g, k, 16).unwrap().value;
        let after = solver::gamma_k_oracle(&h, k, 16).unwrap().value;
        prop_assert!(before <= after);
    }

    #[test]
    fn spanning_tree_preserves_gamma(g in connected_graph(10), k in 1usize..=2) {
        let res = constructions::preserving_spanning_tree(&g, k, Budget::default()).unwrap();
        prop_assert!(res.tree.is_tree());
        prop_assert!(res.tree.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
        prop_assert_eq!(res.connectors.len() + 1, res.dominating_set.len());
        let gamma_g = solver::gamma_k_oracle(&g, k, 16).unwrap().value;
        let gamma_t = solver::gamma_k_oracle(&res.tree, k, 16).unwrap().value;
        prop_assert_eq!(gamma_g, gamma_t);
        let m = g.metrics();
        for v in 0..g.n() {
            let root = res.root_of(v);
            let d_tree = res.tree.bfs_distances(root).unwrap()[v];
            let nearest = res.dominating_set.iter().map(|&s| m.dist[v][s]).min().unwrap();
            prop_assert_eq!(d_tree, m.dist[v][root]);
            prop_assert_eq!(d_tree, nearest);
            prop_assert!(d_tree as usize <= k);
        }
    }

    #[test]
    fn product_swap_symmetry(a in connected_graph(5), b in connected_graph(5)) {
        let ab = constructions::direct_product(&a, &b).unwrap();
        let ba = constructions::direct_product(&b, &a).unwrap();
        prop_assert_eq!(ab.graph.m(), 2 * a.m() * b.m());
        let swap = |f: usize| { let pv = ab.decode(f); ba.encode(pv.h, pv.g).flat };
        let mut relabelled: Vec<_> = ab.graph.edges().iter().map(|&(u, v)| {
            let (x, y) = (swap(u), swap(v));
            (x.min(y), x.max(y))
        }).collect();
        relabelled.sort();
        prop_assert_eq!(relabelled, ba.graph.edges().to_vec());
    }

    #[test]
    fn projections_of_dominating_sets_dominate(a in connected_graph(4), b in connected_graph(4), k in 1usize..=2) {
        let p = constructions::direct_product(&a, &b).unwrap();
        let cert = solver::gamma_k_exact(&p.graph, k, Budget::default());
        prop_assert!(cert.is_exact());
        let set = cert.vertices();
        let left = constructions::project(&p, &set, Side::Left);
        let right = constructions::project(&p, &set, Side::Right);
        prop_assert!(solver::is_k_dominating(&a, &left, k).unwrap());
        prop_assert!(solver::is_k_dominating(&b, &right, k).unwrap());
        if cert.components == 1 {
            let ga = solver::gamma_k_oracle(&a, k, 16).unwrap().value;
            let gb = solver::gamma_k_oracle(&b, k, 16).unwrap().value;
            prop_assert!(cert.value + 1 >= ga + gb);
        }
    }
}
