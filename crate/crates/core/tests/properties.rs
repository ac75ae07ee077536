//! Property tests for the graph layer, the oracles and the referee.

use std::sync::Arc;

use proptest::prelude::*;

use fastmaker::breakers::{BreakerKind, Hypergraph};
use fastmaker::engine::{play, GameConfig, NoObjective, Scripted};
use fastmaker::experiment::make_breaker;
use fastmaker::graph::{
    build_gk, gen_gnp, long_directed_path, read_graph, write_graph, Digraph, GkPairing, GnpParams, Graph,
};
use fastmaker::oracles::{
    check_hamilton_path, is_matching, max_matching, posa_ham_path, vertex_connectivity, PosaConfig,
};

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len)
            .prop_map(move |keep| Graph::from_edges(n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e)).unwrap())
    })
}

/// Largest matching by trying every edge subset, for tiny graphs.
fn brute_matching(g: &Graph) -> usize {
    fn go(edges: &[(u32, u32)], used: u32, size: usize) -> usize {
        match edges.split_first() {
            None => size,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used, size);
                let mask = (1 << u) | (1 << v);
                if used & mask == 0 {
                    skip.max(go(rest, used | mask, size + 1))
                } else {
                    skip
                }
            }
        }
    }
    go(g.edges(), 0, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gnp_is_reproducible(n in 1usize..300, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = gen_gnp(GnpParams::new(n, p, seed).unwrap()).unwrap();
        let b = gen_gnp(GnpParams::new(n, p, seed).unwrap()).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
        prop_assert!(a.edges().iter().all(|&(u, v)| u < v && (v as usize) < n));
    }

    #[test]
    fn graph_file_round_trip(g in small_graph()) {
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let back = read_graph(buf.as_slice()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn matching_is_maximum(g in small_graph()) {
        let m = max_matching(&g);
        prop_assert!(is_matching(&g, &m));
        prop_assert_eq!(m.len(), brute_matching(&g));
    }

    #[test]
    fn connectivity_bounded_by_min_degree(g in small_graph()) {
        let k = vertex_connectivity(&g);
        prop_assert!(k <= g.min_degree());
        prop_assert_eq!(k > 0, g.is_connected() && g.n() > 1);
    }

    #[test]
    fn posa_paths_are_hamilton_paths(n in 3usize..40, seed in any::<u64>()) {
        let g = gen_gnp(GnpParams::new(n, 0.6, seed).unwrap()).unwrap();
        if let Some(p) = posa_ham_path(&g, 0, n - 1, &PosaConfig { seed, ..PosaConfig::default() }) {
            prop_assert!(check_hamilton_path(&g, &p, 0, n - 1).pass);
        }
    }

    #[test]
    fn dfs_path_is_simple(n in 1usize..60, arcs in proptest::collection::vec((0usize..60, 0usize..60), 0..400)) {
        let d = Digraph::from_arcs(n, arcs.into_iter().filter(|&(u, v)| u < n && v < n && u != v)).unwrap();
        let path = long_directed_path(&d, 1);
        let mut seen = vec![false; n];
        for &v in &path {
            prop_assert!(!seen[v]);
            seen[v] = true;
        }
        prop_assert!(path.windows(2).all(|w| d.has_arc(w[0], w[1])));
        prop_assert!(!path.is_empty() || n == 0);
    }

    #[test]
    fn gk_is_k_regular(k in 2usize..6, mult in 3usize..8, seed in any::<u64>()) {
        let n = (k - 1) * mult;
        let g = build_gk(k, n, GkPairing::Random(seed)).unwrap();
        prop_assert!((0..n).all(|v| g.degree(v) == k));
    }

    #[test]
    fn criterion_matches_its_formula(sizes in proptest::collection::vec(1usize..8, 1..6), a in 1usize..3, b in 1usize..4) {
        let sets: Vec<Vec<u32>> = sizes.iter().map(|&s| (0..s as u32).collect()).collect();
        let h = Hypergraph::new(8, sets).unwrap();
        let sum: f64 = sizes.iter().map(|&s| (1.0 + b as f64).powf(-(s as f64) / a as f64)).sum();
        prop_assert!((h.es_sum(a, b) - sum).abs() < 1e-12);
        prop_assert_eq!(h.satisfies_criterion(a, b), sum < 1.0 / (1.0 + b as f64));
    }

    #[test]
    fn games_replay_to_the_same_board(n in 4usize..14, b in 1usize..3, seed in any::<u64>()) {
        let host = Arc::new(Graph::complete(n));
        let script: Vec<u32> = (0..host.edge_count() as u32).rev().collect();
        let mut maker = Scripted::new(script);
        let mut breaker = make_breaker(BreakerKind::Random, &host);
        let (t, board) = play(host.edge_count(), &GameConfig::new(1, b), &mut maker, &mut breaker, &mut NoObjective, seed).unwrap();
        prop_assert_eq!(t.rebuild_board().unwrap(), board);
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        let back = fastmaker::engine::Transcript::read_jsonl(buf.as_slice()).unwrap();
        prop_assert_eq!(back.first_difference(&t), None);
    }
}
