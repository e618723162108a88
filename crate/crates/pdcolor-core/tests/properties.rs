//! Randomized structural checks over generated scenes and graphs.

use pdcolor_core::coloring::{
    degeneracy, exact_graph_coloring, greedy_degeneracy_coloring, greedy_hypergraph_coloring,
    product_coloring, ColorSearch,
};
use pdcolor_core::constructions::{gen_random_disks, gen_random_points};
use pdcolor_core::geom::{boundary_intersection_count, regions_intersect, FamilyDesc};
use pdcolor_core::hypergraph::{
    build_intersection_hypergraph, delaunay_graph, hyperedge_census, point_closure,
    restricted_delaunay_graph, supports, witnesses_reverify, ClosureSampling, HyperedgeSource,
};
use pdcolor_core::verify::{check_conflict_free, check_proper, vc_subset_first, vc_trace_first};
use pdcolor_core::{Graph, Scene};
use proptest::prelude::*;

fn disk_scene(seed: u64, nb: usize, nf: usize) -> Scene {
    let b = gen_random_disks(nb, seed, (1.0, 3.0), (0.0, 0.0, 10.0, 10.0), 0);
    let f = gen_random_disks(nf, seed ^ 0x9e3779b97f4a7c15, (1.0, 3.0), (0.0, 0.0, 10.0, 10.0), 1000);
    Scene::new(b, FamilyDesc::Explicit(f)).unwrap()
}

fn random_graph(seed: u64, n: usize) -> Graph {
    let mut g = Graph::new(n);
    let mut s = seed.wrapping_mul(0x2545f4914f6cdd1d) | 1;
    for i in 0..n {
        for j in i + 1..n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            if s >> 62 == 0 {
                continue;
            }
            if s >> 63 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, .. ProptestConfig::default() })]

    #[test]
    fn intersection_predicates_are_symmetric(seed in 0u64..1000) {
        let rs = gen_random_disks(4, seed, (1.0, 3.0), (0.0, 0.0, 8.0, 8.0), 0);
        for a in &rs {
            for b in &rs {
                prop_assert_eq!(regions_intersect(a, b), regions_intersect(b, a));
                let ab = boundary_intersection_count(a, b, 64).unwrap();
                let ba = boundary_intersection_count(b, a, 64).unwrap();
                prop_assert_eq!(ab.count, ba.count);
                prop_assert_eq!(ab.exact, ba.exact);
            }
        }
    }

    #[test]
    fn hyperedges_are_sorted_deduplicated_and_reverify(seed in 0u64..1000, nb in 2usize..7, nf in 1usize..6) {
        let scene = disk_scene(seed, nb, nf);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        for h in hg.hyperedges() {
            prop_assert!(h.len() >= 2);
            prop_assert!(h.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(h.iter().all(|&i| i < nb));
        }
        prop_assert!(witnesses_reverify(&scene, &hg).is_ok());
    }

    #[test]
    fn point_closure_contains_its_input(seed in 0u64..1000, nb in 2usize..6) {
        let scene = disk_scene(seed, nb, 3);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let closed = point_closure(&scene, &hg, &ClosureSampling::Grid { step: pdcolor_core::geom::rat(1, 2) }).unwrap();
        for h in hg.hyperedges() {
            prop_assert!(closed.contains(h));
        }
        prop_assert!(supports(&HyperedgeSource::Hypergraph(&closed), &hg));
    }

    #[test]
    fn restricted_delaunay_is_a_subgraph(seed in 0u64..1000, nb in 2usize..6, nf in 1usize..5) {
        let scene = disk_scene(seed, nb, nf);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let d = delaunay_graph(&hg);
        let r = restricted_delaunay_graph(&scene, &hg).unwrap();
        prop_assert!(r.graph.is_subgraph_of(&d));
        for (u, v) in d.edges() {
            prop_assert!(hg.contains(&[u, v]));
        }
    }

    #[test]
    fn census_totals_match_hyperedge_count(seed in 0u64..1000, nb in 2usize..7) {
        let scene = disk_scene(seed, nb, 5);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let census = hyperedge_census(&hg, nb);
        prop_assert_eq!(census.values().sum::<usize>(), hg.len());
        prop_assert_eq!(census.keys().copied().collect::<Vec<_>>(), (2..=nb).collect::<Vec<_>>());
    }

    #[test]
    fn greedy_graph_coloring_is_proper_and_bounded(seed in 0u64..4000, n in 1usize..10) {
        let g = random_graph(seed, n);
        let c = greedy_degeneracy_coloring(&g);
        for (u, v) in g.edges() {
            prop_assert_ne!(c.colors[u], c.colors[v]);
        }
        let (d, _) = degeneracy(&g);
        prop_assert!(c.palette_size <= d + 1);
        prop_assert_eq!(
            c.palette_size,
            c.colors.iter().collect::<std::collections::BTreeSet<_>>().len()
        );
    }

    #[test]
    fn exact_coloring_never_beats_infeasibility(seed in 0u64..2000, n in 2usize..8) {
        let g = random_graph(seed, n);
        let greedy = greedy_degeneracy_coloring(&g);
        // A k-coloring must exist at the greedy palette size.
        match exact_graph_coloring(&g, greedy.palette_size, 1_000_000) {
            ColorSearch::Colored(c) => {
                for (u, v) in g.edges() {
                    prop_assert_ne!(c.colors[u], c.colors[v]);
                }
                prop_assert!(c.palette_size <= greedy.palette_size);
            }
            ColorSearch::BudgetExceeded => {}
            ColorSearch::Unsat => prop_assert!(false, "greedy found a coloring the exact search rejects"),
        }
    }

    #[test]
    fn greedy_hypergraph_coloring_passes_the_checker(seed in 0u64..1000, nb in 2usize..7) {
        let scene = disk_scene(seed, nb, 6);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let c = greedy_hypergraph_coloring(&hg);
        prop_assert!(check_proper(&hg, &c).passed);
    }

    #[test]
    fn product_coloring_separates_both_factors(seed in 0u64..2000, n in 2usize..9) {
        let g = random_graph(seed, n);
        let h = random_graph(seed ^ 0xabcdef, n);
        let cg = greedy_degeneracy_coloring(&g);
        let ch = greedy_degeneracy_coloring(&h);
        let p = product_coloring(&cg, &ch).unwrap();
        prop_assert!(p.palette_size <= cg.palette_size * ch.palette_size);
        for (u, v) in g.edges().chain(h.edges()) {
            prop_assert_ne!(p.colors[u], p.colors[v]);
        }
    }

    #[test]
    fn vc_dimension_methods_agree(seed in 0u64..4000, n in 1usize..7, m in 0usize..10) {
        let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        let mut traces: Vec<u32> = vec![0];
        for _ in 0..m {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            traces.push((s >> 32) as u32 & ((1u32 << n) - 1));
        }
        prop_assert_eq!(vc_subset_first(n, &traces), vc_trace_first(n, &traces));
    }

    #[test]
    fn generators_are_seed_deterministic(seed in 0u64..1000, n in 1usize..6) {
        let a = gen_random_disks(n, seed, (0.5, 2.0), (0.0, 0.0, 9.0, 9.0), 0);
        let b = gen_random_disks(n, seed, (0.5, 2.0), (0.0, 0.0, 9.0, 9.0), 0);
        prop_assert_eq!(a, b);
        let p = gen_random_points(n, seed, (0.0, 0.0, 9.0, 9.0), 100);
        let q = gen_random_points(n, seed, (0.0, 0.0, 9.0, 9.0), 100);
        prop_assert_eq!(p, q);
    }

    #[test]
    fn conflict_free_checker_accepts_all_distinct(seed in 0u64..1000, nb in 2usize..7) {
        let scene = disk_scene(seed, nb, 6);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let all_distinct = pdcolor_core::coloring::Coloring {
            colors: (0..nb).collect(),
            palette_size: nb,
            method: "distinct".into(),
            optimal: false,
        };
        prop_assert!(check_conflict_free(&hg, &all_distinct).passed);
        prop_assert!(check_proper(&hg, &all_distinct).passed);
    }
}
