//! Intersection hypergraphs, Delaunay-type graphs and support checking.
//!
//! The hypergraph of a scene has one vertex per member of `B`; every region
//! `F` contributes the set of members it meets, kept when the set has size at
//! least 2 and deduplicated. Each stored hyperedge carries a witness (the
//! contributing region id, or a sample point) that re-verifies independently.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::build_arrangement;
use crate::geom::{
    common_point, point_in_region, rat_approx, rat_to_f64, regions_intersect, FamilyDesc,
    GeomError, Point2, Rat, Region, RegionKind, Scene,
};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Self-loops are ignored; duplicates collapse.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a < self.n && b < self.n);
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Subgraph check: every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Id of the region of `F` that generated the hyperedge.
    Region(u32),
    /// A sample point whose membership set is the hyperedge.
    Point(Point2),
}

/// Deduplicated hyperedges of size >= 2 with witnesses, over vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionHypergraph {
    pub n: usize,
    hyperedges: BTreeMap<Vec<usize>, Witness>,
}

impl IntersectionHypergraph {
    pub fn new(n: usize) -> Self {
        IntersectionHypergraph {
            n,
            hyperedges: BTreeMap::new(),
        }
    }

    /// Inserts a hyperedge, keeping the first witness seen for it.
    /// Members smaller than 2 or out of range are rejected silently by
    /// callers; this asserts in debug builds.
    pub fn insert(&mut self, mut members: Vec<usize>, witness: Witness) {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.len() >= 2);
        debug_assert!(members.iter().all(|&v| v < self.n));
        self.hyperedges.entry(members).or_insert(witness);
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    pub fn contains(&self, members: &[usize]) -> bool {
        self.hyperedges.contains_key(members)
    }

    /// Hyperedges in lexicographic order.
    pub fn hyperedges(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.hyperedges.keys()
    }

    pub fn witness(&self, members: &[usize]) -> Option<&Witness> {
        self.hyperedges.get(members)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Witness)> + '_ {
        self.hyperedges.iter()
    }
}

/// One hyperedge per region of the explicit family `F` meeting at least two
/// members of `B`.
pub fn build_intersection_hypergraph(
    scene: &Scene,
) -> Result<IntersectionHypergraph, GeomError> {
    let fs = scene.explicit_f().ok_or_else(|| {
        GeomError::InvalidRegion(String::from(
            "hypergraph of the all-points family: use point_closure on an empty hypergraph",
        ))
    })?;
    let mut hg = IntersectionHypergraph::new(scene.b.len());
    for f in fs {
        let members: Vec<usize> = scene
            .b
            .iter()
            .enumerate()
            .filter(|(_, b)| regions_intersect(b, f))
            .map(|(i, _)| i)
            .collect();
        if members.len() >= 2 {
            hg.insert(members, Witness::Region(f.id));
        }
    }
    Ok(hg)
}

#[derive(Clone, Debug)]
pub enum ClosureSampling {
    /// Face representatives of the arrangement of `B` (polygonal `B` only).
    Arrangement,
    /// Lattice points at the given step over the bounding box of `B`.
    Grid { step: Rat },
}

/// Adds the hyperedge `H_p = {i : p in B[i]}` for sampled points `p` of depth
/// at least 2 that lie in the family `F` (every point qualifies when `F` is
/// all points). The result is a superset of the input, so it supports it.
///
/// Both sampling modes are augmented with one exact common point per
/// intersecting pair of `B`, so every pairwise intersection is witnessed
/// regardless of sampling density.
pub fn point_closure(
    scene: &Scene,
    hg: &IntersectionHypergraph,
    sampling: &ClosureSampling,
) -> Result<IntersectionHypergraph, GeomError> {
    let mut out = hg.clone();
    out.n = scene.b.len();
    let mut candidates: Vec<Point2> = Vec::new();

    match sampling {
        ClosureSampling::Arrangement => {
            let arr = build_arrangement(&scene.b)?;
            candidates.extend(arr.face_representatives(2));
        }
        ClosureSampling::Grid { step } => {
            candidates.extend(grid_points(&scene.b, step));
        }
    }
    for i in 0..scene.b.len() {
        for j in i + 1..scene.b.len() {
            if let Some(p) = common_point(&scene.b[i], &scene.b[j]) {
                candidates.push(p);
            }
        }
    }

    for p in candidates {
        let members: Vec<usize> = scene
            .b
            .iter()
            .enumerate()
            .filter(|(_, b)| point_in_region(&p, b))
            .map(|(i, _)| i)
            .collect();
        if members.len() < 2 {
            continue;
        }
        let in_family = match &scene.f {
            FamilyDesc::AllPoints => true,
            FamilyDesc::Explicit(fs) => fs.iter().any(|f| point_in_region(&p, f)),
        };
        if in_family {
            out.insert(members, Witness::Point(p));
        }
    }
    Ok(out)
}

fn grid_points(regions: &[Region], step: &Rat) -> Vec<Point2> {
    if regions.is_empty() {
        return Vec::new();
    }
    let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for r in regions {
        let rb = r.bbox_f64();
        bb.0 = bb.0.min(rb.0);
        bb.1 = bb.1.min(rb.1);
        bb.2 = bb.2.max(rb.2);
        bb.3 = bb.3.max(rb.3);
    }
    let sf = rat_to_f64(step);
    // Cell centers: an offset of step/2 keeps lattice-aligned boundaries
    // from being sampled exactly.
    let half = step / crate::geom::rat_int(2);
    let x0 = rat_approx(bb.0, 1 << 20) + &half;
    let y0 = rat_approx(bb.1, 1 << 20) + &half;
    let nx = (((bb.2 - bb.0) / sf).max(0.0) as usize).min(4096) + 1;
    let ny = (((bb.3 - bb.1) / sf).max(0.0) as usize).min(4096) + 1;
    let mut pts = Vec::with_capacity(nx * ny);
    let mut x = x0;
    for _ in 0..nx {
        let mut y = y0.clone();
        for _ in 0..ny {
            pts.push(Point2::new(x.clone(), y.clone()));
            y += step;
        }
        x += step;
    }
    pts
}

/// The size-2 hyperedges, as a graph.
pub fn delaunay_graph(hg: &IntersectionHypergraph) -> Graph {
    let mut g = Graph::new(hg.n);
    for he in hg.hyperedges() {
        if he.len() == 2 {
            g.add_edge(he[0], he[1]);
        }
    }
    g
}

#[derive(Clone, Debug)]
pub struct RestrictedDelaunay {
    pub graph: Graph,
    /// False when any triple-intersection emptiness test fell back to
    /// sampling (curved region kinds).
    pub all_exact: bool,
}

/// Edges `{i,j}` witnessed by a region of `F` meeting exactly `B[i]` and
/// `B[j]`, in disjoint pieces (empty triple intersection).
pub fn restricted_delaunay_graph(
    scene: &Scene,
    _hg: &IntersectionHypergraph,
) -> Result<RestrictedDelaunay, GeomError> {
    let fs = scene.explicit_f().ok_or_else(|| {
        GeomError::InvalidRegion(String::from(
            "restricted Delaunay-graph needs an explicit family F",
        ))
    })?;
    let mut graph = Graph::new(scene.b.len());
    let mut all_exact = true;
    for f in fs {
        let members: Vec<usize> = scene
            .b
            .iter()
            .enumerate()
            .filter(|(_, b)| regions_intersect(b, f))
            .map(|(i, _)| i)
            .collect();
        if members.len() != 2 {
            continue;
        }
        let (i, j) = (members[0], members[1]);
        let (nonempty, exact) = triple_intersection_nonempty(f, &scene.b[i], &scene.b[j]);
        all_exact &= exact;
        if !nonempty {
            graph.add_edge(i, j);
        }
    }
    Ok(RestrictedDelaunay { graph, all_exact })
}

/// Does `f`, `a` and `b` have a common point? Second component reports
/// whether the answer is exact.
///
/// Point masses and families with at most one disk are decided exactly (a
/// convex pairwise intersection meets the third region iff a vertex of it
/// does, or a boundary crossing or containment occurs). With two or more
/// disks a negative answer rests on sampled candidates.
pub fn triple_intersection_nonempty(f: &Region, a: &Region, b: &Region) -> (bool, bool) {
    let regs = [f, a, b];
    // A point mass reduces the triple to two membership tests.
    for (k, r) in regs.iter().enumerate() {
        if let RegionKind::PointMass(p) = &r.kind {
            let others: Vec<&Region> = regs
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, r)| *r)
                .collect();
            return (
                others.iter().all(|o| point_in_region(p, o)),
                true,
            );
        }
    }
    // If some pair is disjoint the triple is exactly empty.
    if !regions_intersect(f, a) || !regions_intersect(f, b) || !regions_intersect(a, b) {
        return (false, true);
    }
    let polys: Vec<usize> = regs
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.kind, RegionKind::ConvexPolygon(_)))
        .map(|(k, _)| k)
        .collect();
    if polys.len() >= 2 {
        // Clip the two polygons against each other, then test the clip
        // against the remaining region exactly.
        let (pa, pb) = (regs[polys[0]], regs[polys[1]]);
        let third = regs[3 - polys[0] - polys[1]];
        let (va, vb) = match (&pa.kind, &pb.kind) {
            (RegionKind::ConvexPolygon(va), RegionKind::ConvexPolygon(vb)) => (va, vb),
            _ => unreachable!(),
        };
        let clip = convex_clip(va, vb);
        if clip.is_empty() {
            return (false, true);
        }
        return (point_set_hull_intersects(&clip, third), true);
    }
    // Two or three curved regions: exact positive witnesses first, then a
    // sampled search; a miss is reported as approximate emptiness.
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    for &(x, y) in &pairs {
        if let Some(p) = common_point(regs[x], regs[y]) {
            if point_in_region(&p, regs[3 - x - y]) {
                return (true, true);
            }
        }
    }
    for (k, r) in regs.iter().enumerate() {
        for p in crate::geom::boundary_polyline(r, 16) {
            if regs
                .iter()
                .enumerate()
                .all(|(m, o)| m == k || point_in_region(&p, o))
                && point_in_region(&p, r)
            {
                return (true, true);
            }
        }
    }
    (false, false)
}

/// Sutherland-Hodgman clip of a convex subject polygon by a convex clip
/// polygon (both counterclockwise). Exact; the result may be degenerate
/// (a segment or a point) and is returned as its vertex list.
pub fn convex_clip(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    use crate::geom::cross;
    use core::cmp::Ordering;
    use num_traits::Zero;
    let mut out: Vec<Point2> = subject.to_vec();
    let m = clip.len();
    for e in 0..m {
        if out.is_empty() {
            break;
        }
        let ca = &clip[e];
        let cb = &clip[(e + 1) % m];
        let input = core::mem::take(&mut out);
        let side = |p: &Point2| cross(ca, cb, p).cmp(&Rat::zero());
        for k in 0..input.len() {
            let cur = &input[k];
            let nxt = &input[(k + 1) % input.len()];
            let (sc, sn) = (side(cur), side(nxt));
            if sc != Ordering::Less {
                out.push(cur.clone());
            }
            if (sc == Ordering::Less) != (sn == Ordering::Less) && sc != sn {
                // Crossing of the edge cur..nxt with the clip line.
                let denom = cross(ca, cb, nxt) - cross(ca, cb, cur);
                if !denom.is_zero() {
                    let t = -cross(ca, cb, cur) / denom;
                    out.push(Point2::new(
                        &cur.x + (&nxt.x - &cur.x) * &t,
                        &cur.y + (&nxt.y - &cur.y) * &t,
                    ));
                }
            }
        }
        // Dedup consecutive repeats introduced by touching cases.
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
    }
    out
}

/// Does the convex hull of `pts` (a clipped polygon, possibly degenerate)
/// intersect the region? Exact for polygon and disk kinds.
fn point_set_hull_intersects(pts: &[Point2], r: &Region) -> bool {
    use crate::geom::{point_polygon_dist2, seg_point_dist2};
    if pts.iter().any(|p| point_in_region(p, r)) {
        return true;
    }
    match &r.kind {
        RegionKind::Disk { center, radius } => {
            let rr = radius * radius;
            if pts.len() >= 3 && crate::arrangement::point_in_loop(center, pts) {
                return true;
            }
            let m = pts.len();
            (0..m).any(|k| seg_point_dist2(&pts[k], &pts[(k + 1) % m], center) <= rr)
        }
        RegionKind::ConvexPolygon(vs) => {
            if pts.len() >= 3 && vs.iter().any(|v| crate::arrangement::point_in_loop(v, pts)) {
                return true;
            }
            let m = pts.len();
            (0..m).any(|k| {
                let (a, b) = (&pts[k], &pts[(k + 1) % m]);
                let mv = vs.len();
                (0..mv).any(|e| {
                    crate::geom::segments_intersect(a, b, &vs[e], &vs[(e + 1) % mv])
                })
            })
        }
        RegionKind::PointMass(_) => false, // membership handled above
        RegionKind::Ear { .. } => {
            // Conservative: vertex membership only (callers treat Ear as
            // curved and never reach here with exactness claims).
            let _ = point_polygon_dist2;
            false
        }
    }
}

pub enum HyperedgeSource<'a> {
    Graph(&'a Graph),
    Hypergraph(&'a IntersectionHypergraph),
}

/// True iff every hyperedge of `target` contains some hyperedge of
/// `candidate` as a subset. Proper colorings then transfer from the
/// candidate to the target.
pub fn supports(candidate: &HyperedgeSource, target: &IntersectionHypergraph) -> bool {
    let same_n = match candidate {
        HyperedgeSource::Graph(g) => g.n == target.n,
        HyperedgeSource::Hypergraph(h) => h.n == target.n,
    };
    if !same_n {
        return false;
    }
    target.hyperedges().all(|he| match candidate {
        HyperedgeSource::Graph(g) => {
            // An edge is contained iff both endpoints are members.
            he.iter().enumerate().any(|(x, &a)| {
                he[x + 1..].iter().any(|&b| g.has_edge(a, b))
            })
        }
        HyperedgeSource::Hypergraph(h) => h
            .hyperedges()
            .any(|cand| is_sorted_subset(cand, he)),
    })
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Count of distinct hyperedges of each size `2..=k_max`.
pub fn hyperedge_census(hg: &IntersectionHypergraph, k_max: usize) -> BTreeMap<usize, usize> {
    let mut census: BTreeMap<usize, usize> = (2..=k_max).map(|k| (k, 0)).collect();
    for he in hg.hyperedges() {
        if let Some(c) = census.get_mut(&he.len()) {
            *c += 1;
        }
    }
    census
}

/// Re-verifies every witness: a region witness must meet exactly the
/// hyperedge's members among `B`; a point witness must lie in exactly them.
/// Returns the first failing hyperedge.
pub fn witnesses_reverify(scene: &Scene, hg: &IntersectionHypergraph) -> Result<(), Vec<usize>> {
    for (he, w) in hg.iter() {
        let members: Vec<usize> = match w {
            Witness::Region(fid) => {
                let f = scene
                    .explicit_f()
                    .and_then(|fs| fs.iter().find(|f| f.id == *fid));
                let Some(f) = f else {
                    return Err(he.clone());
                };
                scene
                    .b
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| regions_intersect(b, f))
                    .map(|(i, _)| i)
                    .collect()
            }
            Witness::Point(p) => scene
                .b
                .iter()
                .enumerate()
                .filter(|(_, b)| point_in_region(p, b))
                .map(|(i, _)| i)
                .collect(),
        };
        if &members != he {
            return Err(he.clone());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, rat_int};

    fn disk(id: u32, x: i64, y: i64, r: i64) -> Region {
        Region::disk(id, Point2::from_ints(x, y), rat_int(r)).unwrap()
    }

    fn scene_bf(b: Vec<Region>, f: Vec<Region>) -> Scene {
        Scene::new(b, FamilyDesc::Explicit(f)).unwrap()
    }

    #[test]
    fn covering_disk_yields_one_hyperedge() {
        let scene = scene_bf(
            vec![disk(0, 0, 0, 1), disk(1, 6, 0, 1)],
            vec![disk(10, 3, 0, 4)],
        );
        let hg = build_intersection_hypergraph(&scene).unwrap();
        assert_eq!(hg.len(), 1);
        assert!(hg.contains(&[0, 1]));
        assert!(witnesses_reverify(&scene, &hg).is_ok());
    }

    #[test]
    fn size_one_hyperedges_dropped() {
        let scene = scene_bf(
            vec![disk(0, 0, 0, 1), disk(1, 10, 0, 1)],
            vec![disk(10, 0, 0, 2)],
        );
        let hg = build_intersection_hypergraph(&scene).unwrap();
        assert!(hg.is_empty());
    }

    #[test]
    fn matches_double_loop_oracle() {
        // Points of a triangle against a deterministic spread of disks.
        let b = vec![
            Region::point_mass(0, Point2::from_ints(0, 0)),
            Region::point_mass(1, Point2::from_ints(8, 0)),
            Region::point_mass(2, Point2::from_ints(4, 7)),
        ];
        let mut f = Vec::new();
        for k in 0i64..20 {
            f.push(
                Region::disk(
                    10 + k as u32,
                    Point2::new(rat(3 * k % 11, 1), rat(2 * k % 7, 1)),
                    rat(3 + k % 5, 1),
                )
                .unwrap(),
            );
        }
        let scene = scene_bf(b.clone(), f.clone());
        let hg = build_intersection_hypergraph(&scene).unwrap();
        // Oracle: direct membership double loop.
        let mut expected = IntersectionHypergraph::new(3);
        for fr in &f {
            let members: Vec<usize> = b
                .iter()
                .enumerate()
                .filter(|(_, p)| regions_intersect(p, fr))
                .map(|(i, _)| i)
                .collect();
            if members.len() >= 2 {
                expected.insert(members, Witness::Region(fr.id));
            }
        }
        let a: Vec<_> = hg.hyperedges().collect();
        let e: Vec<_> = expected.hyperedges().collect();
        assert_eq!(a, e);
    }

    #[test]
    fn closure_adds_overlap_edge() {
        let b = vec![
            Region::polygon(
                0,
                vec![
                    Point2::from_ints(0, 0),
                    Point2::from_ints(4, 0),
                    Point2::from_ints(4, 4),
                    Point2::from_ints(0, 4),
                ],
            )
            .unwrap(),
            Region::polygon(
                1,
                vec![
                    Point2::from_ints(3, 1),
                    Point2::from_ints(7, 1),
                    Point2::from_ints(7, 5),
                    Point2::from_ints(3, 5),
                ],
            )
            .unwrap(),
        ];
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let empty = IntersectionHypergraph::new(2);
        let closed = point_closure(&scene, &empty, &ClosureSampling::Arrangement).unwrap();
        assert!(closed.contains(&[0, 1]));
        assert!(witnesses_reverify(&scene, &closed).is_ok());
        // Disjoint family stays unchanged.
        let b2 = vec![disk(0, 0, 0, 1), disk(1, 10, 0, 1)];
        let scene2 = Scene::new(b2, FamilyDesc::AllPoints).unwrap();
        let closed2 =
            point_closure(&scene2, &empty, &ClosureSampling::Grid { step: rat_int(1) }).unwrap();
        assert!(closed2.is_empty());
    }

    #[test]
    fn closure_modes_agree_on_squares() {
        let mut b = Vec::new();
        // Deterministic overlapping squares; x-spans pairwise distinct so no
        // boundary segments overlap.
        for k in 0i64..6 {
            let x = 3 * k;
            let y = (3 * k) % 5;
            let side = 4 + k % 2;
            b.push(
                Region::polygon(
                    k as u32,
                    vec![
                        Point2::from_ints(x, y),
                        Point2::from_ints(x + side, y),
                        Point2::from_ints(x + side, y + side),
                        Point2::from_ints(x, y + side),
                    ],
                )
                .unwrap(),
            );
        }
        let scene = Scene::new(b, FamilyDesc::AllPoints).unwrap();
        let empty = IntersectionHypergraph::new(6);
        let via_arr = point_closure(&scene, &empty, &ClosureSampling::Arrangement).unwrap();
        let via_grid =
            point_closure(&scene, &empty, &ClosureSampling::Grid { step: rat(1, 4) }).unwrap();
        let a: Vec<_> = via_arr.hyperedges().collect();
        let g: Vec<_> = via_grid.hyperedges().collect();
        assert_eq!(a, g);
    }

    #[test]
    fn delaunay_keeps_only_pairs() {
        let mut hg = IntersectionHypergraph::new(3);
        hg.insert(vec![0, 1], Witness::Region(99));
        hg.insert(vec![0, 1, 2], Witness::Region(98));
        let g = delaunay_graph(&hg);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
        assert!(delaunay_graph(&IntersectionHypergraph::new(3)).edge_count() == 0);
    }

    #[test]
    fn restricted_delaunay_cases() {
        // Thin polygon touching two disjoint disks: edge.
        let b = vec![disk(0, 0, 0, 2), disk(1, 10, 0, 2)];
        let bridge = Region::polygon(
            10,
            vec![
                Point2::from_ints(1, 0),
                Point2::from_ints(9, 0),
                Point2::from_ints(9, 1),
                Point2::from_ints(1, 1),
            ],
        )
        .unwrap();
        let scene = scene_bf(b, vec![bridge]);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let rd = restricted_delaunay_graph(&scene, &hg).unwrap();
        assert!(rd.graph.has_edge(0, 1));
        assert!(rd.all_exact);

        // F inside the lens of two overlapping disks: no edge.
        let b = vec![disk(0, 0, 0, 3), disk(1, 4, 0, 3)];
        let f = disk(10, 2, 0, 1);
        let scene = scene_bf(b, vec![f]);
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let rd = restricted_delaunay_graph(&scene, &hg).unwrap();
        assert_eq!(rd.graph.edge_count(), 0);

        // Restricted graph is always a subgraph of the Delaunay graph.
        let scene = scene_bf(
            vec![disk(0, 0, 0, 2), disk(1, 3, 0, 2), disk(2, 6, 0, 2)],
            vec![disk(10, 1, 1, 1), disk(11, 4, 1, 1), disk(12, 3, -2, 1)],
        );
        let hg = build_intersection_hypergraph(&scene).unwrap();
        let rd = restricted_delaunay_graph(&scene, &hg).unwrap();
        assert!(rd.graph.is_subgraph_of(&delaunay_graph(&hg)));
    }

    #[test]
    fn supports_basics() {
        let mut target = IntersectionHypergraph::new(4);
        target.insert(vec![0, 1, 2], Witness::Region(1));
        let mut cand = IntersectionHypergraph::new(4);
        cand.insert(vec![0, 1], Witness::Region(2));
        assert!(supports(&HyperedgeSource::Hypergraph(&cand), &target));
        let mut cand2 = IntersectionHypergraph::new(4);
        cand2.insert(vec![1, 3], Witness::Region(2));
        assert!(!supports(&HyperedgeSource::Hypergraph(&cand2), &target));
        let mut g = Graph::new(4);
        g.add_edge(1, 2);
        assert!(supports(&HyperedgeSource::Graph(&g), &target));
    }

    #[test]
    fn census_counts_sizes() {
        let mut hg = IntersectionHypergraph::new(4);
        hg.insert(vec![0, 1], Witness::Region(1));
        hg.insert(vec![0, 1, 2], Witness::Region(2));
        let census = hyperedge_census(&hg, 4);
        assert_eq!(census[&2], 1);
        assert_eq!(census[&3], 1);
        assert_eq!(census[&4], 0);
        let empty = hyperedge_census(&IntersectionHypergraph::new(4), 3);
        assert!(empty.values().all(|&c| c == 0));
    }

    #[test]
    fn convex_clip_of_overlapping_squares() {
        let a = vec![
            Point2::from_ints(0, 0),
            Point2::from_ints(4, 0),
            Point2::from_ints(4, 4),
            Point2::from_ints(0, 4),
        ];
        let b = vec![
            Point2::from_ints(2, 2),
            Point2::from_ints(6, 2),
            Point2::from_ints(6, 6),
            Point2::from_ints(2, 6),
        ];
        let clip = convex_clip(&a, &b);
        assert_eq!(clip.len(), 4);
        for p in &clip {
            assert!(p.x >= rat_int(2) && p.x <= rat_int(4));
            assert!(p.y >= rat_int(2) && p.y <= rat_int(4));
        }
        // Disjoint squares clip to nothing.
        let c = vec![
            Point2::from_ints(10, 10),
            Point2::from_ints(12, 10),
            Point2::from_ints(12, 12),
            Point2::from_ints(10, 12),
        ];
        assert!(convex_clip(&a, &c).is_empty());
    }
}
