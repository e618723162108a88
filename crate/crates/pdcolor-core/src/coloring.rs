//! Proper and conflict-free colorings.
//!
//! The pipeline for coloring a point-closed hypergraph with 4 colors: color
//! its Delaunay graph exactly when the graph supports the hypergraph, fall
//! back to an exact branch-and-bound over the hyperedges, and as a last
//! resort to a greedy pass that never leaves a hyperedge monochromatic.
//! Conflict-free colorings come from the iterative biggest-class framework.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::build_arrangement;
use crate::geom::{common_point, point_in_region, GeomError, Scene};
use crate::hypergraph::{
    delaunay_graph, supports, Graph, HyperedgeSource, IntersectionHypergraph,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
    /// Which algorithm produced the coloring.
    pub method: String,
    /// False when a budget-exhausted fallback produced the palette.
    pub optimal: bool,
}

impl Coloring {
    /// Remaps colors to `0..palette_size` in order of first appearance.
    pub fn normalized(mut colors: Vec<usize>, method: &str, optimal: bool) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &mut colors {
            let next = remap.len();
            *c = *remap.entry(*c).or_insert(next);
        }
        Coloring {
            colors,
            palette_size: remap.len().max(1).min(usize::MAX),
            method: String::from(method),
            optimal,
        }
    }
}

/// Degeneracy and a removal order realizing it (minimum-degree peeling,
/// ties by lowest index).
pub fn degeneracy(g: &Graph) -> (usize, Vec<usize>) {
    let adj = g.adjacency();
    let n = g.n;
    let mut deg: Vec<usize> = adj.iter().map(|ns| ns.len()).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    (degeneracy, order)
}

/// Greedy coloring along the reverse of the degeneracy order; the palette
/// never exceeds degeneracy + 1.
pub fn greedy_degeneracy_coloring(g: &Graph) -> Coloring {
    let adj = g.adjacency();
    let (_, order) = degeneracy(g);
    let mut colors = vec![usize::MAX; g.n];
    for &v in order.iter().rev() {
        let taken: BTreeSet<usize> = adj[v]
            .iter()
            .filter(|&&w| colors[w] != usize::MAX)
            .map(|&w| colors[w])
            .collect();
        colors[v] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    if g.n == 0 {
        return Coloring {
            colors,
            palette_size: 0,
            method: String::from("greedy-degeneracy"),
            optimal: true,
        };
    }
    Coloring::normalized(colors, "greedy-degeneracy", true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorSearch {
    Colored(Coloring),
    /// Exhaustive proof that no proper coloring with the given palette exists.
    Unsat,
    BudgetExceeded,
}

/// Exact proper graph coloring with at most `k` colors by branch-and-bound:
/// branch on the uncolored vertex of maximum saturation (ties by index),
/// introduce at most one new color per node. Deterministic.
pub fn exact_graph_coloring(g: &Graph, k: usize, budget: u64) -> ColorSearch {
    assert!(k >= 1);
    let adj = g.adjacency();
    let mut colors: Vec<usize> = vec![usize::MAX; g.n];
    let mut expansions: u64 = 0;
    fn rec(
        adj: &[Vec<usize>],
        colors: &mut Vec<usize>,
        k: usize,
        used: usize,
        expansions: &mut u64,
        budget: u64,
    ) -> Result<bool, ()> {
        *expansions += 1;
        if *expansions > budget {
            return Err(());
        }
        // Max saturation = most distinct colors among neighbors.
        let mut pick: Option<(usize, usize)> = None; // (saturation, vertex)
        for v in 0..colors.len() {
            if colors[v] != usize::MAX {
                continue;
            }
            let sat = adj[v]
                .iter()
                .filter(|&&w| colors[w] != usize::MAX)
                .map(|&w| colors[w])
                .collect::<BTreeSet<_>>()
                .len();
            if pick.map_or(true, |(s, _)| sat > s) {
                pick = Some((sat, v));
            }
        }
        let Some((_, v)) = pick else {
            return Ok(true);
        };
        let taken: BTreeSet<usize> = adj[v]
            .iter()
            .filter(|&&w| colors[w] != usize::MAX)
            .map(|&w| colors[w])
            .collect();
        // Symmetry breaking: at most one fresh color.
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if taken.contains(&c) {
                continue;
            }
            colors[v] = c;
            let new_used = used.max(c + 1);
            if rec(adj, colors, k, new_used, expansions, budget)? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
        Ok(false)
    }
    match rec(&adj, &mut colors, k, 0, &mut expansions, budget) {
        Err(()) => ColorSearch::BudgetExceeded,
        Ok(true) => ColorSearch::Colored(Coloring::normalized(colors, "dsatur-exact", true)),
        Ok(false) => ColorSearch::Unsat,
    }
}

/// Exact hypergraph coloring with at most `k` colors: assign vertices in
/// index order, pruning any branch that completes a monochromatic hyperedge.
pub fn exact_hypergraph_coloring(
    hg: &IntersectionHypergraph,
    k: usize,
    budget: u64,
) -> ColorSearch {
    assert!(k >= 1);
    let n = hg.n;
    // Hyperedges keyed by their largest member: completed exactly there.
    let mut by_last: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n.max(1)];
    for he in hg.hyperedges() {
        by_last[*he.last().unwrap()].push(he);
    }
    let mut colors: Vec<usize> = vec![usize::MAX; n];
    let mut expansions: u64 = 0;
    fn rec(
        n: usize,
        by_last: &[Vec<&Vec<usize>>],
        colors: &mut Vec<usize>,
        k: usize,
        v: usize,
        used: usize,
        expansions: &mut u64,
        budget: u64,
    ) -> Result<bool, ()> {
        *expansions += 1;
        if *expansions > budget {
            return Err(());
        }
        if v == n {
            return Ok(true);
        }
        let limit = (used + 1).min(k);
        'colors: for c in 0..limit {
            for he in &by_last[v] {
                if he[..he.len() - 1].iter().all(|&w| colors[w] == c) {
                    continue 'colors;
                }
            }
            colors[v] = c;
            if rec(n, by_last, colors, k, v + 1, used.max(c + 1), expansions, budget)? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
        Ok(false)
    }
    match rec(n, &by_last, &mut colors, k, 0, 0, &mut expansions, budget) {
        Err(()) => ColorSearch::BudgetExceeded,
        Ok(true) => {
            ColorSearch::Colored(Coloring::normalized(colors, "hypergraph-exact", true))
        }
        Ok(false) => ColorSearch::Unsat,
    }
}

/// Greedy hypergraph coloring: vertices in index order, smallest color that
/// does not complete a monochromatic hyperedge. Always succeeds; the palette
/// is whatever results.
pub fn greedy_hypergraph_coloring(hg: &IntersectionHypergraph) -> Coloring {
    let n = hg.n;
    let mut by_last: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n.max(1)];
    for he in hg.hyperedges() {
        by_last[*he.last().unwrap()].push(he);
    }
    let mut colors: Vec<usize> = vec![usize::MAX; n];
    for v in 0..n {
        colors[v] = (0..)
            .find(|&c| {
                by_last[v]
                    .iter()
                    .all(|he| !he[..he.len() - 1].iter().all(|&w| colors[w] == c))
            })
            .unwrap();
    }
    if n == 0 {
        return Coloring {
            colors,
            palette_size: 0,
            method: String::from("hypergraph-greedy"),
            optimal: false,
        };
    }
    Coloring::normalized(colors, "hypergraph-greedy", false)
}

/// Proper coloring of a point-closed hypergraph, aiming for 4 colors.
///
/// Pipeline: (1) the Delaunay graph; (2) when it supports the hypergraph,
/// exact 4-coloring of the graph (a proper coloring of a supporting
/// structure is proper for the supported one); (3) otherwise exact search
/// over the hyperedges; (4) on budget exhaustion the greedy pass, flagged
/// non-optimal. The result is always proper for the hypergraph.
pub fn proper_color_hypergraph(
    scene: &Scene,
    hg: &IntersectionHypergraph,
    budget: u64,
) -> Coloring {
    debug_assert_eq!(scene.b.len(), hg.n);
    let d = delaunay_graph(hg);
    if supports(&HyperedgeSource::Graph(&d), hg) {
        if let ColorSearch::Colored(mut c) = exact_graph_coloring(&d, 4, budget) {
            c.method = String::from("delaunay-exact");
            return c;
        }
    }
    match exact_hypergraph_coloring(hg, 4, budget) {
        ColorSearch::Colored(c) => c,
        _ => greedy_hypergraph_coloring(hg),
    }
}

/// Coloring of a polygonal family with respect to all points of the plane.
///
/// The hypergraph is `{H_p}` over depth-2+ face representatives. The
/// algorithm peels a minimum-degree vertex of the point-Delaunay graph of
/// the remaining subfamily, then colors in reverse, each vertex differing
/// from its point-Delaunay neighbors at removal time.
pub fn color_wrt_points(scene: &Scene) -> Result<Coloring, GeomError> {
    let n = scene.b.len();
    // All membership sets that any point of the plane realizes, from face
    // representatives plus one common point per intersecting pair.
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let arr = build_arrangement(&scene.b)?;
    let mut points = arr.face_representatives(2);
    for i in 0..n {
        for j in i + 1..n {
            if let Some(p) = common_point(&scene.b[i], &scene.b[j]) {
                points.push(p);
            }
        }
    }
    for p in points {
        let members: Vec<usize> = (0..n)
            .filter(|&i| point_in_region(&p, &scene.b[i]))
            .collect();
        if members.len() >= 2 {
            sets.insert(members);
        }
    }

    // Peel by minimum point-Delaunay degree within the remaining set.
    let mut remaining: BTreeSet<usize> = (0..n).collect();
    let mut order: Vec<(usize, Vec<usize>)> = Vec::new(); // (vertex, neighbors then)
    while !remaining.is_empty() {
        let mut degree: BTreeMap<usize, BTreeSet<usize>> =
            remaining.iter().map(|&v| (v, BTreeSet::new())).collect();
        for s in &sets {
            let trace: Vec<usize> = s.iter().filter(|v| remaining.contains(v)).copied().collect();
            if trace.len() == 2 {
                degree.get_mut(&trace[0]).unwrap().insert(trace[1]);
                degree.get_mut(&trace[1]).unwrap().insert(trace[0]);
            }
        }
        let (&v, ns) = degree
            .iter()
            .min_by_key(|(&v, ns)| (ns.len(), v))
            .unwrap();
        order.push((v, ns.iter().copied().collect()));
        remaining.remove(&v);
    }
    let mut colors = vec![usize::MAX; n];
    for (v, ns) in order.iter().rev() {
        let taken: BTreeSet<usize> = ns.iter().map(|&w| colors[w]).collect();
        colors[*v] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    if n == 0 {
        return Ok(Coloring {
            colors,
            palette_size: 0,
            method: String::from("wrt-points"),
            optimal: true,
        });
    }
    Ok(Coloring::normalized(colors, "wrt-points", true))
}

/// Pointwise pair coloring: color `i` maps to the pair `(a[i], b[i])`,
/// reindexed. The palette never exceeds the product of the two palettes.
pub fn product_coloring(a: &Coloring, b: &Coloring) -> Result<Coloring, GeomError> {
    if a.colors.len() != b.colors.len() {
        return Err(GeomError::InvalidRegion(String::from(
            "product of colorings of different lengths",
        )));
    }
    let mut remap: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let colors: Vec<usize> = a
        .colors
        .iter()
        .zip(&b.colors)
        .map(|(&x, &y)| {
            let next = remap.len();
            *remap.entry((x, y)).or_insert(next)
        })
        .collect();
    Ok(Coloring {
        palette_size: remap.len().max(usize::from(!colors.is_empty())),
        colors,
        method: String::from("product"),
        optimal: a.optimal && b.optimal,
    })
}

/// Conflict-free coloring by the iterative biggest-class framework.
///
/// Each round properly colors the remaining subfamily (the sub-scene is
/// rebuilt geometrically, so its hyperedges are the traces of the original
/// ones), assigns the round's final color to the biggest class (ties by
/// lowest color), and removes it. Every hyperedge then holds its maximum
/// final color exactly once. With a c-color proper colorer the number of
/// rounds is at most ceil(log_{c/(c-1)} n) + 1.
pub fn conflict_free_coloring(
    scene: &Scene,
    hg: &IntersectionHypergraph,
    proper_colorer: &mut dyn FnMut(&Scene) -> Result<Coloring, GeomError>,
) -> Result<Coloring, GeomError> {
    let n = hg.n;
    debug_assert_eq!(scene.b.len(), n);
    let mut final_color = vec![usize::MAX; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut round = 0usize;
    while !remaining.is_empty() {
        let sub = scene.restrict_b(&remaining);
        let col = proper_colorer(&sub)?;
        debug_assert_eq!(col.colors.len(), remaining.len());
        let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &col.colors {
            *class_size.entry(c).or_insert(0) += 1;
        }
        let (&biggest, _) = class_size
            .iter()
            .max_by_key(|(&c, &s)| (s, core::cmp::Reverse(c)))
            .unwrap();
        let mut kept = Vec::new();
        for (k, &v) in remaining.iter().enumerate() {
            if col.colors[k] == biggest {
                final_color[v] = round;
            } else {
                kept.push(v);
            }
        }
        remaining = kept;
        round += 1;
    }
    if n == 0 {
        return Ok(Coloring {
            colors: final_color,
            palette_size: 0,
            method: String::from("conflict-free"),
            optimal: true,
        });
    }
    Ok(Coloring {
        colors: final_color,
        palette_size: round,
        method: String::from("conflict-free"),
        optimal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat_int, FamilyDesc, Point2, Region};
    use crate::hypergraph::{build_intersection_hypergraph, point_closure, ClosureSampling, Witness};
    use crate::verify::{check_conflict_free, check_proper};

    #[test]
    fn empty_graph_one_color() {
        let c = greedy_degeneracy_coloring(&Graph::new(5));
        assert_eq!(c.palette_size, 1);
        assert!(c.colors.iter().all(|&x| x == 0));
    }

    #[test]
    fn k4_needs_four() {
        let k4 = Graph::complete(4);
        let c = greedy_degeneracy_coloring(&k4);
        assert_eq!(c.palette_size, 4);
        assert!(matches!(exact_graph_coloring(&k4, 3, 1 << 20), ColorSearch::Unsat));
        match exact_graph_coloring(&k4, 4, 1 << 20) {
            ColorSearch::Colored(c) => {
                assert_eq!(c.palette_size, 4);
                let set: BTreeSet<usize> = c.colors.iter().copied().collect();
                assert_eq!(set.len(), 4);
            }
            other => panic!("expected coloring, got {:?}", other),
        }
    }

    #[test]
    fn degeneracy_bound_holds() {
        // A wheel: degeneracy 3.
        let mut g = Graph::new(6);
        for k in 1..6usize {
            g.add_edge(0, k);
            g.add_edge(k, if k == 5 { 1 } else { k + 1 });
        }
        let (d, order) = degeneracy(&g);
        assert_eq!(d, 3);
        assert_eq!(order.len(), 6);
        let c = greedy_degeneracy_coloring(&g);
        assert!(c.palette_size <= d + 1);
    }

    #[test]
    fn exact_matches_brute_force_chromatic() {
        // Chromatic number by increment agrees with direct enumeration.
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..10 {
            let n = 4 + next() % 4;
            let mut g = Graph::new(n);
            for _ in 0..(n + next() % (2 * n)) {
                g.add_edge(next() % n, next() % n);
            }
            let exact = (1..=n)
                .find(|&k| matches!(exact_graph_coloring(&g, k, 1 << 24), ColorSearch::Colored(_)))
                .unwrap();
            let brute = (1..=n)
                .find(|&k| brute_force_colorable(&g, k))
                .unwrap();
            assert_eq!(exact, brute);
        }
    }

    fn brute_force_colorable(g: &Graph, k: usize) -> bool {
        let n = g.n;
        let total = k.pow(n as u32);
        'outer: for code in 0..total {
            let mut cols = Vec::with_capacity(n);
            let mut x = code;
            for _ in 0..n {
                cols.push(x % k);
                x /= k;
            }
            for (a, b) in g.edges() {
                if cols[a] == cols[b] {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn budget_exhaustion_reported() {
        let g = Graph::complete(9);
        assert!(matches!(exact_graph_coloring(&g, 8, 5), ColorSearch::BudgetExceeded));
    }

    #[test]
    fn hypergraph_pipeline_small() {
        let mut hg = IntersectionHypergraph::new(2);
        hg.insert(vec![0, 1], Witness::Region(7));
        let b = vec![
            Region::disk(0, Point2::from_ints(0, 0), rat_int(1)).unwrap(),
            Region::disk(1, Point2::from_ints(1, 0), rat_int(1)).unwrap(),
        ];
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let c = proper_color_hypergraph(&scene, &hg, 1 << 20);
        assert_eq!(c.palette_size, 2);
        assert!(check_proper(&hg, &c).passed);
    }

    #[test]
    fn greedy_hypergraph_never_monochromatic() {
        let mut hg = IntersectionHypergraph::new(5);
        hg.insert(vec![0, 1, 2], Witness::Region(1));
        hg.insert(vec![2, 3, 4], Witness::Region(2));
        hg.insert(vec![0, 4], Witness::Region(3));
        let c = greedy_hypergraph_coloring(&hg);
        assert!(check_proper(&hg, &c).passed);
    }

    fn squares(coords: &[(i64, i64, i64)]) -> Vec<Region> {
        coords
            .iter()
            .enumerate()
            .map(|(k, &(x, y, s))| {
                Region::polygon(
                    k as u32,
                    vec![
                        Point2::from_ints(x, y),
                        Point2::from_ints(x + s, y),
                        Point2::from_ints(x + s, y + s),
                        Point2::from_ints(x, y + s),
                    ],
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn wrt_points_basics() {
        // Disjoint family: one color.
        let b = squares(&[(0, 0, 2), (10, 0, 2), (20, 0, 2)]);
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let c = color_wrt_points(&scene).unwrap();
        assert_eq!(c.palette_size, 1);
        // Two overlapping squares: two colors.
        let b = squares(&[(0, 0, 4), (3, 1, 4)]);
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let c = color_wrt_points(&scene).unwrap();
        assert_eq!(c.palette_size, 2);
        assert_ne!(c.colors[0], c.colors[1]);
    }

    #[test]
    fn wrt_points_no_monochromatic_face() {
        // Coordinates chosen so no two squares share an edge line.
        let b = squares(&[
            (0, 0, 10),
            (1, 3, 11),
            (2, 5, 13),
            (3, 1, 14),
            (4, 2, 9),
            (5, 4, 9),
        ]);
        let scene = Scene::new(b.clone(), FamilyDesc::AllPoints).unwrap();
        let c = color_wrt_points(&scene).unwrap();
        // Oracle: every depth-2+ face representative sees two colors.
        let arr = build_arrangement(&scene.b).unwrap();
        for p in arr.face_representatives(2) {
            let members: Vec<usize> = (0..b.len())
                .filter(|&i| point_in_region(&p, &scene.b[i]))
                .collect();
            let cols: BTreeSet<usize> = members.iter().map(|&i| c.colors[i]).collect();
            assert!(cols.len() >= 2, "monochromatic face at {:?}", p);
        }
    }

    #[test]
    fn product_coloring_basics() {
        let a = Coloring::normalized(vec![0, 0, 0], "a", true);
        let b = Coloring::normalized(vec![0, 1, 0], "b", true);
        let p = product_coloring(&a, &b).unwrap();
        assert_eq!(p.colors, b.colors);
        assert_eq!(p.palette_size, 2);
        let a = Coloring::normalized(vec![0, 1], "a", true);
        let b = Coloring::normalized(vec![0, 0], "b", true);
        let p = product_coloring(&a, &b).unwrap();
        assert_eq!(p.palette_size, 2);
        assert_ne!(p.colors[0], p.colors[1]);
        assert!(product_coloring(&a, &Coloring::normalized(vec![0], "c", true)).is_err());
    }

    #[test]
    fn conflict_free_small() {
        let b = vec![
            Region::disk(0, Point2::from_ints(0, 0), rat_int(2)).unwrap(),
            Region::disk(1, Point2::from_ints(3, 0), rat_int(2)).unwrap(),
            Region::disk(2, Point2::from_ints(6, 0), rat_int(2)).unwrap(),
        ];
        let f = vec![
            Region::disk(10, Point2::from_ints(1, 0), rat_int(1)).unwrap(),
            Region::disk(11, Point2::from_ints(5, 0), rat_int(1)).unwrap(),
            Region::disk(12, Point2::from_ints(3, 0), rat_int(4)).unwrap(),
        ];
        let scene = Scene::new(b, FamilyDesc::Explicit(f)).unwrap();
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let hg = point_closure(&scene, &hg, &ClosureSampling::Grid { step: crate::geom::rat(1, 2) })
            .unwrap();
        let mut colorer = |sub: &Scene| -> Result<Coloring, GeomError> {
            let sh = build_intersection_hypergraph(sub)?;
            let sh = point_closure(sub, &sh, &ClosureSampling::Grid { step: crate::geom::rat(1, 2) })?;
            Ok(proper_color_hypergraph(sub, &sh, 1 << 20))
        };
        let cf = conflict_free_coloring(&scene, &hg, &mut colorer).unwrap();
        assert!(check_conflict_free(&hg, &cf).passed);
        // Disjoint family: a single round.
        let b = vec![
            Region::disk(0, Point2::from_ints(0, 0), rat_int(1)).unwrap(),
            Region::disk(1, Point2::from_ints(5, 0), rat_int(1)).unwrap(),
        ];
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let hg = IntersectionHypergraph::new(2);
        let mut colorer = |sub: &Scene| -> Result<Coloring, GeomError> {
            Ok(Coloring::normalized(vec![0; sub.b.len()], "one", true))
        };
        let cf = conflict_free_coloring(&scene, &hg, &mut colorer).unwrap();
        assert_eq!(cf.palette_size, 1);
    }
}
