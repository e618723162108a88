//! Planar arrangement of polygonal region boundaries.
//!
//! Vertices are pairwise boundary crossings, edges are maximal boundary
//! pieces between consecutive crossings (a boundary with no crossings counts
//! as a single closed edge) and faces are enumerated through a vertical slab
//! decomposition, which yields an exact rational interior representative for
//! every face. Depth is computed by one membership pass per representative.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::geom::{
    orient, rat_int, segments_collinear_overlap, segments_intersect,
    segments_properly_cross, crossing_point, GeomError, Point2, Rat, Region, RegionKind,
};

/// A simple closed polygonal boundary owned by one region of the family.
#[derive(Clone, Debug)]
pub struct BoundaryLoop {
    /// Index of the owning region within the family.
    pub owner: usize,
    /// Polygon corners in order (closing edge implied).
    pub points: Vec<Point2>,
}

#[derive(Clone, Debug)]
pub struct ArrangementEdge {
    pub owner: usize,
    /// Endpoint vertex indices; `None` for a crossing-free closed boundary.
    pub endpoints: Option<(usize, usize)>,
    /// Polyline of the edge including its endpoints (full cycle when closed).
    pub chain: Vec<Point2>,
    /// The two incident faces.
    pub faces: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Number of family members containing the representative.
    pub depth: usize,
    /// Exact interior point of the face.
    pub representative: Point2,
    /// Family member indices containing the representative, sorted.
    pub members: Vec<usize>,
    pub boundary_edges: Vec<usize>,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub n_regions: usize,
    pub vertices: Vec<Point2>,
    pub edges: Vec<ArrangementEdge>,
    pub faces: Vec<Face>,
    pub outer_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionComplexity {
    pub edge_count: usize,
    pub vertex_count: usize,
}

impl Arrangement {
    pub fn count_k_deep_faces(&self, k: usize) -> usize {
        self.faces.iter().filter(|f| f.depth == k).count()
    }

    pub fn face_representatives(&self, min_depth: usize) -> Vec<Point2> {
        self.faces
            .iter()
            .filter(|f| f.depth >= min_depth)
            .map(|f| f.representative.clone())
            .collect()
    }

    /// Edges and vertices on the boundary of the union of the family.
    pub fn union_complexity(&self) -> UnionComplexity {
        let mut edge_count = 0;
        let mut verts = BTreeSet::new();
        for e in &self.edges {
            if e.faces.iter().any(|&f| self.faces[f].depth == 0) {
                edge_count += 1;
                if let Some((s, t)) = e.endpoints {
                    verts.insert(s);
                    verts.insert(t);
                }
            }
        }
        UnionComplexity {
            edge_count,
            vertex_count: verts.len(),
        }
    }

    /// Checks the Euler relation v - e + f = 1 + c, counting one phantom
    /// vertex for every crossing-free closed boundary.
    pub fn euler_check(&self) -> bool {
        let closed = self
            .edges
            .iter()
            .filter(|e| e.endpoints.is_none())
            .count();
        let v = self.vertices.len() + closed;
        let e = self.edges.len();
        let f = self.faces.len();
        // Connected components of the boundary graph: loops joined by shared
        // crossings; each crossing-free loop is its own component.
        let owners: BTreeSet<usize> = self.edges.iter().map(|e| e.owner).collect();
        let mut uf = UnionFind::new(self.n_regions);
        let mut vertex_owner: BTreeMap<usize, usize> = BTreeMap::new();
        for edge in &self.edges {
            if let Some((s, t)) = edge.endpoints {
                for vtx in [s, t] {
                    match vertex_owner.get(&vtx) {
                        Some(&o) => uf.union(o, edge.owner),
                        None => {
                            vertex_owner.insert(vtx, edge.owner);
                        }
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = owners.iter().map(|&o| uf.find(o)).collect();
        let c = roots.len();
        (v as i64) - (e as i64) + (f as i64) == 1 + c as i64
    }
}

/// Extracts boundary loops from a polygonal family.
pub fn loops_from_regions(regions: &[Region]) -> Result<Vec<BoundaryLoop>, GeomError> {
    regions
        .iter()
        .enumerate()
        .map(|(i, r)| match &r.kind {
            RegionKind::ConvexPolygon(vs) => Ok(BoundaryLoop {
                owner: i,
                points: vs.clone(),
            }),
            _ => Err(GeomError::InvalidRegion(format!(
                "arrangement requires polygonal regions, region {} is not",
                r.id
            ))),
        })
        .collect()
}

pub fn build_arrangement(regions: &[Region]) -> Result<Arrangement, GeomError> {
    build_from_loops(&loops_from_regions(regions)?)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Parity (ray casting) membership test for a simple polygon, exact.
pub fn point_in_loop(p: &Point2, points: &[Point2]) -> bool {
    let n = points.len();
    let mut inside = false;
    for i in 0..n {
        let a = &points[i];
        let b = &points[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            // x coordinate of the edge at height p.y
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x = &a.x + (&b.x - &a.x) * &t;
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Membership in a polygon that is star-shaped about `center` with vertices
/// in counterclockwise angular order: binary-search the angular sector, then
/// one orientation test. Exact.
pub fn point_in_star_polygon(center: &Point2, vs: &[Point2], p: &Point2) -> bool {
    let n = vs.len();
    debug_assert!(n >= 3);
    let d = (&p.x - &center.x, &p.y - &center.y);
    if d.0.is_zero() && d.1.is_zero() {
        return true;
    }
    let dir = |v: &Point2| (&v.x - &center.x, &v.y - &center.y);
    // Half-plane class and cross product give an exact angular order
    // relative to the direction of vs[0].
    let u0 = dir(&vs[0]);
    let half = |a: &(Rat, Rat)| -> u8 {
        let c = &u0.0 * &a.1 - &u0.1 * &a.0;
        match c.cmp(&Rat::zero()) {
            Ordering::Greater => 0,
            Ordering::Less => 1,
            Ordering::Equal => {
                let dot = &u0.0 * &a.0 + &u0.1 * &a.1;
                if dot > Rat::zero() {
                    0
                } else {
                    1
                }
            }
        }
    };
    let angle_lt = |a: &(Rat, Rat), b: &(Rat, Rat)| -> bool {
        let (ha, hb) = (half(a), half(b));
        if ha != hb {
            return ha < hb;
        }
        (&a.0 * &b.1 - &a.1 * &b.0) > Rat::zero()
    };
    // Largest k with angle(u_k) <= angle(d).
    let (mut lo, mut hi) = (0usize, n);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let um = dir(&vs[mid]);
        if angle_lt(&d, &um) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let a = &vs[lo];
    let b = &vs[(lo + 1) % n];
    orient(a, b, p) != Ordering::Less
}

// ---------------------------------------------------------------------------
// Build

#[derive(Clone)]
struct SubSeg {
    a: Point2,
    b: Point2,
    edge: usize,
}

pub fn build_from_loops(loops: &[BoundaryLoop]) -> Result<Arrangement, GeomError> {
    let n_regions = loops.iter().map(|l| l.owner + 1).max().unwrap_or(0);

    // 1. Pairwise crossings, with degeneracy detection.
    let mut vertex_index: BTreeMap<Point2, usize> = BTreeMap::new();
    let mut vertices: Vec<Point2> = Vec::new();
    let mut vertex_pairs: Vec<(usize, usize)> = Vec::new();
    // crossings[l] = (segment index, parameter, vertex id)
    let mut crossings: Vec<Vec<(usize, Rat, usize)>> = vec![Vec::new(); loops.len()];

    let candidates = candidate_segment_pairs(loops);
    for (li, si, lj, sj) in candidates {
        let (a, b) = loop_segment(&loops[li], si);
        let (c, d) = loop_segment(&loops[lj], sj);
        if segments_collinear_overlap(a, b, c, d) {
            return Err(GeomError::Degenerate(format!(
                "overlapping collinear boundary segments of regions {} and {}",
                loops[li].owner, loops[lj].owner
            )));
        }
        if segments_properly_cross(a, b, c, d) {
            let (p, t) = crossing_point(a, b, c, d);
            let (_, u) = crossing_point(c, d, a, b);
            let vid = match vertex_index.get(&p) {
                Some(&existing) => {
                    if vertex_pairs[existing] != (li, lj) {
                        return Err(GeomError::Degenerate(
                            "three boundaries meet at a point".into(),
                        ));
                    }
                    existing
                }
                None => {
                    let vid = vertices.len();
                    vertices.push(p.clone());
                    vertex_pairs.push((li, lj));
                    vertex_index.insert(p, vid);
                    vid
                }
            };
            crossings[li].push((si, t, vid));
            crossings[lj].push((sj, u, vid));
        } else if segments_intersect(a, b, c, d) {
            return Err(GeomError::Degenerate(format!(
                "boundary corner of region {} touches the boundary of region {}",
                loops[li].owner, loops[lj].owner
            )));
        }
    }

    // 2. Walk every loop: emit maximal edges between crossings and the
    //    subsegments the slab sweep works on.
    let mut edges: Vec<(usize, Option<(usize, usize)>, Vec<Point2>)> = Vec::new();
    let mut subsegs: Vec<SubSeg> = Vec::new();
    for (li, lp) in loops.iter().enumerate() {
        crossings[li].sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        // Full cyclic node sequence: corners plus crossing points in order.
        let mut seq: Vec<(Point2, Option<usize>)> = Vec::new();
        let m = lp.points.len();
        let mut cross_iter = crossings[li].iter().peekable();
        for si in 0..m {
            seq.push((lp.points[si].clone(), None));
            while let Some(&(cs, _, vid)) = cross_iter.peek().copied() {
                if cs == si {
                    let (_, t, _) = cross_iter.next().unwrap();
                    let (a, b) = loop_segment(lp, si);
                    let p = Point2::new(&a.x + (&b.x - &a.x) * t, &a.y + (&b.y - &a.y) * t);
                    seq.push((p, Some(vid)));
                } else {
                    break;
                }
            }
        }
        let first_edge = edges.len();
        if crossings[li].is_empty() {
            let mut chain: Vec<Point2> = seq.iter().map(|(p, _)| p.clone()).collect();
            chain.push(chain[0].clone());
            edges.push((lp.owner, None, chain));
        } else {
            // Rotate so the sequence starts at a crossing.
            let start = seq.iter().position(|(_, v)| v.is_some()).unwrap();
            seq.rotate_left(start);
            seq.push(seq[0].clone());
            let mut chain: Vec<Point2> = vec![seq[0].0.clone()];
            let mut from_vid = seq[0].1.unwrap();
            for (p, v) in seq.iter().skip(1) {
                chain.push(p.clone());
                if let Some(vid) = v {
                    edges.push((lp.owner, Some((from_vid, *vid)), core::mem::take(&mut chain)));
                    chain = vec![p.clone()];
                    from_vid = *vid;
                }
            }
        }
        // Subsegments tagged with their edge.
        for (ei, (_, _, chain)) in edges.iter().enumerate().skip(first_edge) {
            for w in chain.windows(2) {
                if w[0] != w[1] {
                    subsegs.push(SubSeg {
                        a: w[0].clone(),
                        b: w[1].clone(),
                        edge: ei,
                    });
                }
            }
        }
    }

    // 3. Vertical slab decomposition.
    let mut xs: Vec<Rat> = subsegs
        .iter()
        .flat_map(|s| [s.a.x.clone(), s.b.x.clone()])
        .collect();
    xs.sort();
    xs.dedup();
    let faces_data = slab_faces(&xs, &subsegs, loops)?;

    let SlabFaces {
        face_of_edge_side,
        face_reps,
        outer_face,
    } = faces_data;

    // 4. Assemble.
    let mut faces: Vec<Face> = face_reps
        .into_iter()
        .map(|(representative, bounded)| {
            let members: Vec<usize> = loops
                .iter()
                .filter(|l| point_in_loop(&representative, &l.points))
                .map(|l| l.owner)
                .collect();
            let members: Vec<usize> = {
                let set: BTreeSet<usize> = members.into_iter().collect();
                set.into_iter().collect()
            };
            Face {
                depth: members.len(),
                representative,
                members,
                boundary_edges: Vec::new(),
                bounded,
            }
        })
        .collect();

    let mut out_edges: Vec<ArrangementEdge> = Vec::with_capacity(edges.len());
    for (ei, (owner, endpoints, chain)) in edges.into_iter().enumerate() {
        let fs = face_of_edge_side[ei];
        let (f0, f1) = (fs[0].unwrap_or(outer_face), fs[1].unwrap_or(outer_face));
        faces[f0].boundary_edges.push(ei);
        if f1 != f0 {
            faces[f1].boundary_edges.push(ei);
        }
        out_edges.push(ArrangementEdge {
            owner,
            endpoints,
            chain,
            faces: [f0, f1],
        });
    }

    Ok(Arrangement {
        n_regions,
        vertices,
        edges: out_edges,
        faces,
        outer_face,
    })
}

fn loop_segment<'a>(lp: &'a BoundaryLoop, si: usize) -> (&'a Point2, &'a Point2) {
    let n = lp.points.len();
    (&lp.points[si], &lp.points[(si + 1) % n])
}

/// Candidate crossing pairs with an f64 bounding-box prefilter on a bucket
/// grid; exact predicates run only on the survivors.
fn candidate_segment_pairs(loops: &[BoundaryLoop]) -> Vec<(usize, usize, usize, usize)> {
    struct SegBox {
        li: usize,
        si: usize,
        bb: (f64, f64, f64, f64),
    }
    let mut boxes: Vec<SegBox> = Vec::new();
    let mut max_len: f64 = 1e-9;
    let mut global = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (li, lp) in loops.iter().enumerate() {
        for si in 0..lp.points.len() {
            let (a, b) = loop_segment(lp, si);
            let (ax, ay) = a.to_f64();
            let (bx, by) = b.to_f64();
            let bb = (ax.min(bx), ay.min(by), ax.max(bx), ay.max(by));
            max_len = max_len.max((bb.2 - bb.0).max(bb.3 - bb.1));
            global.0 = global.0.min(bb.0);
            global.1 = global.1.min(bb.1);
            global.2 = global.2.max(bb.2);
            global.3 = global.3.max(bb.3);
            boxes.push(SegBox { li, si, bb });
        }
    }
    if boxes.is_empty() {
        return Vec::new();
    }
    let cell = (max_len * 1.5).max(1e-9);
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (idx, sb) in boxes.iter().enumerate() {
        let pad = 1e-9 * (1.0 + sb.bb.2.abs().max(sb.bb.3.abs()));
        let x0 = libm::floor((sb.bb.0 - global.0 - pad) / cell) as i64;
        let x1 = libm::floor((sb.bb.2 - global.0 + pad) / cell) as i64;
        let y0 = libm::floor((sb.bb.1 - global.1 - pad) / cell) as i64;
        let y1 = libm::floor((sb.bb.3 - global.1 + pad) / cell) as i64;
        for cx in x0..=x1 {
            for cy in y0..=y1 {
                grid.entry((cx, cy)).or_default().push(idx);
            }
        }
    }
    let mut pairs: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
    for bucket in grid.values() {
        for (k, &p) in bucket.iter().enumerate() {
            for &q in &bucket[k + 1..] {
                let (sp, sq) = (&boxes[p], &boxes[q]);
                if sp.li == sq.li {
                    continue;
                }
                if sp.bb.0 > sq.bb.2 + 1e-9
                    || sq.bb.0 > sp.bb.2 + 1e-9
                    || sp.bb.1 > sq.bb.3 + 1e-9
                    || sq.bb.1 > sp.bb.3 + 1e-9
                {
                    continue;
                }
                let key = if sp.li < sq.li {
                    (sp.li, sp.si, sq.li, sq.si)
                } else {
                    (sq.li, sq.si, sp.li, sp.si)
                };
                pairs.insert(key);
            }
        }
    }
    pairs.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Slab sweep

struct SlabFaces {
    /// For each edge: faces below and above (never `None` after resolution,
    /// except for edges only seen from the outer face).
    face_of_edge_side: Vec<[Option<usize>; 2]>,
    /// Representative and boundedness per face.
    face_reps: Vec<(Point2, bool)>,
    outer_face: usize,
}

fn y_at(seg: &SubSeg, x: &Rat) -> Rat {
    if seg.a.x == seg.b.x {
        // Vertical; callers only ask at the shared x.
        seg.a.y.clone().min(seg.b.y.clone())
    } else {
        let t = (x - &seg.a.x) / (&seg.b.x - &seg.a.x);
        &seg.a.y + (&seg.b.y - &seg.a.y) * &t
    }
}

fn slab_faces(
    xs: &[Rat],
    subsegs: &[SubSeg],
    _loops: &[BoundaryLoop],
) -> Result<SlabFaces, GeomError> {
    let n_edges = subsegs
        .iter()
        .map(|s| s.edge + 1)
        .max()
        .unwrap_or(0);
    // Trivial case: no boundaries at all.
    if xs.is_empty() {
        return Ok(SlabFaces {
            face_of_edge_side: vec![[None, None]; n_edges],
            face_reps: vec![(Point2::from_ints(0, 0), false)],
            outer_face: 0,
        });
    }

    let n_slabs = xs.len() + 1; // outer-left, between consecutive xs, outer-right
    let slab_mid = |s: usize| -> Rat {
        if s == 0 {
            &xs[0] - rat_int(1)
        } else if s == xs.len() {
            xs.last().unwrap() + rat_int(1)
        } else {
            (&xs[s - 1] + &xs[s]) / rat_int(2)
        }
    };

    let mut verticals_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new(); // x index -> subseg ids
    let mut spanning: Vec<Vec<usize>> = vec![Vec::new(); n_slabs];
    for (i, s) in subsegs.iter().enumerate() {
        if s.a.x == s.b.x {
            let xi = xs.binary_search(&s.a.x).expect("vertical at node x");
            verticals_at.entry(xi).or_default().push(i);
            continue;
        }
        let (xlo, xhi) = if s.a.x < s.b.x {
            (&s.a.x, &s.b.x)
        } else {
            (&s.b.x, &s.a.x)
        };
        let lo = xs.binary_search(xlo).expect("subseg endpoint at node x");
        let hi = xs.binary_search(xhi).expect("subseg endpoint at node x");
        for slab in (lo + 1)..=hi {
            spanning[slab].push(i);
        }
    }

    // Sort each slab's segments by y at the slab midpoint and assign pieces.
    let mut piece_base: Vec<usize> = Vec::with_capacity(n_slabs);
    let mut slab_order: Vec<Vec<usize>> = Vec::with_capacity(n_slabs);
    let mut n_pieces = 0usize;
    for s in 0..n_slabs {
        let xm = slab_mid(s);
        let mut order = spanning[s].clone();
        order.sort_by(|&a, &b| y_at(&subsegs[a], &xm).cmp(&y_at(&subsegs[b], &xm)));
        piece_base.push(n_pieces);
        n_pieces += order.len() + 1;
        slab_order.push(order);
    }

    let mut uf = UnionFind::new(n_pieces);

    // Merge pieces across every slab boundary through uncovered gaps.
    for b in 0..xs.len() {
        let xb = &xs[b];
        let left = b;
        let right = b + 1;
        let mut vert_ivals: Vec<(Rat, Rat)> = verticals_at
            .get(&b)
            .map(|ids| {
                ids.iter()
                    .map(|&i| {
                        let s = &subsegs[i];
                        let (lo, hi) = if s.a.y <= s.b.y {
                            (s.a.y.clone(), s.b.y.clone())
                        } else {
                            (s.b.y.clone(), s.a.y.clone())
                        };
                        (lo, hi)
                    })
                    .collect()
            })
            .unwrap_or_default();
        vert_ivals.sort();

        let bounds = |slab: usize, order: &[usize]| -> Vec<Option<Rat>> {
            // Piece i spans (bound[i], bound[i+1]) with None = +/- infinity.
            let _ = slab;
            let mut v: Vec<Option<Rat>> = Vec::with_capacity(order.len() + 2);
            v.push(None);
            for &si in order {
                v.push(Some(y_at(&subsegs[si], xb)));
            }
            v.push(None);
            v
        };
        let lb = bounds(left, &slab_order[left]);
        let rb = bounds(right, &slab_order[right]);

        for pi in 0..slab_order[left].len() + 1 {
            for qi in 0..slab_order[right].len() + 1 {
                let lo = max_bound(&lb[pi], &rb[qi]);
                let hi = min_bound(&lb[pi + 1], &rb[qi + 1]);
                if !open_interval_nonempty(&lo, &hi) {
                    continue;
                }
                if gap_uncovered(&lo, &hi, &vert_ivals) {
                    uf.union(piece_base[left] + pi, piece_base[right] + qi);
                }
            }
        }
    }

    // The far-outside pieces of the two outer slabs and the extremal pieces of
    // every slab all belong to the unbounded face; they are already connected
    // through the merge step above (no vertical segment reaches infinity).

    // Edge-side incidence from slab adjacency.
    let record = |slot: &mut Option<usize>, val: usize| {
        if slot.is_none() {
            *slot = Some(val);
        }
    };
    let mut edge_piece: Vec<[Option<usize>; 2]> = vec![[None, None]; n_edges];
    for s in 0..n_slabs {
        for (pos, &si) in slab_order[s].iter().enumerate() {
            let below = piece_base[s] + pos;
            let above = piece_base[s] + pos + 1;
            let e = subsegs[si].edge;
            record(&mut edge_piece[e][0], below);
            record(&mut edge_piece[e][1], above);
        }
    }
    // Vertical subsegments: locate the adjacent pieces left and right.
    for (&xi, ids) in &verticals_at {
        let xb = &xs[xi];
        for &si in ids {
            let s = &subsegs[si];
            let midy = (&s.a.y + &s.b.y) / rat_int(2);
            let e = s.edge;
            for (side, slab) in [(0usize, xi), (1usize, xi + 1)] {
                let order = &slab_order[slab];
                let mut pos = 0;
                for &other in order {
                    if y_at(&subsegs[other], xb) < midy {
                        pos += 1;
                    }
                }
                record(&mut edge_piece[e][side], piece_base[slab] + pos);
            }
        }
    }

    // Face ids per union-find class.
    let mut class_face: BTreeMap<usize, usize> = BTreeMap::new();
    let mut face_reps: Vec<(Point2, bool)> = Vec::new();
    for s in 0..n_slabs {
        let xm = slab_mid(s);
        let order = &slab_order[s];
        for pos in 0..order.len() + 1 {
            let piece = piece_base[s] + pos;
            let root = uf.find(piece);
            let bounded = pos > 0 && pos < order.len();
            let rep_y = if order.is_empty() {
                rat_int(0)
            } else if pos == 0 {
                y_at(&subsegs[order[0]], &xm) - rat_int(1)
            } else if pos == order.len() {
                y_at(&subsegs[order[order.len() - 1]], &xm) + rat_int(1)
            } else {
                (y_at(&subsegs[order[pos - 1]], &xm) + y_at(&subsegs[order[pos]], &xm))
                    / rat_int(2)
            };
            let rep = Point2::new(xm.clone(), rep_y);
            match class_face.get(&root) {
                Some(&f) => {
                    // Prefer a bounded representative for bounded faces.
                    if bounded && !face_reps[f].1 {
                        face_reps[f] = (rep, true);
                    }
                }
                None => {
                    class_face.insert(root, face_reps.len());
                    face_reps.push((rep, bounded));
                }
            }
        }
    }

    let outer_root = uf.find(piece_base[0]);
    let outer_face = class_face[&outer_root];
    // An unbounded face keeps an unbounded representative.
    if face_reps[outer_face].1 {
        let rep = Point2::new(&xs[0] - rat_int(1), rat_int(0));
        face_reps[outer_face] = (rep, false);
    }

    let face_of_edge_side = edge_piece
        .into_iter()
        .map(|sides| {
            [
                sides[0].map(|p| class_face[&uf.find(p)]),
                sides[1].map(|p| class_face[&uf.find(p)]),
            ]
        })
        .collect();

    Ok(SlabFaces {
        face_of_edge_side,
        face_reps,
        outer_face,
    })
}

fn max_bound(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.clone().max(y.clone())),
    }
}

fn min_bound(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
    }
}

fn open_interval_nonempty(lo: &Option<Rat>, hi: &Option<Rat>) -> bool {
    match (lo, hi) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

/// Is some open subinterval of (lo, hi) uncovered by the closed intervals?
fn gap_uncovered(lo: &Option<Rat>, hi: &Option<Rat>, ivals: &[(Rat, Rat)]) -> bool {
    // Unbounded gaps always escape the finitely many intervals.
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return true;
    };
    let mut cursor = lo.clone();
    for (a, b) in ivals {
        if b <= &cursor {
            continue;
        }
        if a > &cursor {
            // Uncovered gap (cursor, min(a, hi)).
            return &cursor < hi && a > &cursor;
        }
        cursor = b.clone();
        if &cursor >= hi {
            return false;
        }
    }
    &cursor < hi
}

// ---------------------------------------------------------------------------
// Union complexity straight from loops (no face enumeration)

#[derive(Clone, Debug)]
pub struct LoopUnionStats {
    pub edge_count: usize,
    pub vertex_count: usize,
    /// Pairwise boundary crossing counts (loop index, loop index, count).
    pub crossing_counts: Vec<(usize, usize, usize)>,
}

/// Union-boundary edge and vertex counts for a family of boundary loops.
///
/// `contains(i, p)` must answer closed membership of `p` in loop `i`'s
/// region; pass [`point_in_loop`] for generic simple polygons or
/// [`point_in_star_polygon`] when something faster applies.
pub fn union_complexity_of_loops(
    loops: &[BoundaryLoop],
    contains: impl Fn(usize, &Point2) -> bool,
) -> Result<LoopUnionStats, GeomError> {
    let mut crossings: Vec<Vec<(usize, Rat, Point2, usize)>> = vec![Vec::new(); loops.len()];
    let mut pair_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut crossing_points: Vec<(Point2, usize, usize)> = Vec::new();

    // Float coordinates once per corner; the sign filter below rejects
    // the bulk of non-crossing candidates before any exact arithmetic.
    let approx: Vec<Vec<(f64, f64)>> = loops
        .iter()
        .map(|lp| lp.points.iter().map(|p| p.to_f64()).collect())
        .collect();

    for (li, si, lj, sj) in candidate_segment_pairs(loops) {
        let fa = approx[li][si];
        let fb = approx[li][(si + 1) % approx[li].len()];
        let fc = approx[lj][sj];
        let fd = approx[lj][(sj + 1) % approx[lj].len()];
        if definitely_same_side(fa, fb, fc, fd) || definitely_same_side(fc, fd, fa, fb) {
            continue;
        }
        let (a, b) = loop_segment(&loops[li], si);
        let (c, d) = loop_segment(&loops[lj], sj);
        if segments_collinear_overlap(a, b, c, d) {
            return Err(GeomError::Degenerate(
                "overlapping collinear boundary segments".into(),
            ));
        }
        if segments_properly_cross(a, b, c, d) {
            let (p, t) = crossing_point(a, b, c, d);
            let (_, u) = crossing_point(c, d, a, b);
            let id = crossing_points.len();
            crossing_points.push((p.clone(), li, lj));
            crossings[li].push((si, t, p.clone(), id));
            crossings[lj].push((sj, u, p, id));
            *pair_counts.entry((li, lj)).or_insert(0) += 1;
        }
    }

    let mut vertex_on_union: Vec<bool> = Vec::with_capacity(crossing_points.len());
    for (p, li, lj) in &crossing_points {
        let covered = (0..loops.len())
            .filter(|k| k != li && k != lj)
            .any(|k| contains(k, p));
        vertex_on_union.push(!covered);
    }

    let mut edge_count = 0usize;
    for (li, lp) in loops.iter().enumerate() {
        if crossings[li].is_empty() {
            // A crossing-free boundary is one closed edge; it lies on the
            // union boundary iff it is not swallowed by another region.
            let probe = &lp.points[0];
            let covered = (0..loops.len())
                .filter(|&k| k != li)
                .any(|k| contains(k, probe));
            if !covered {
                edge_count += 1;
            }
            continue;
        }
        crossings[li].sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        let cuts = &crossings[li];
        let m = cuts.len();
        for k in 0..m {
            let (s0, t0, _, _) = &cuts[k];
            let (s1, t1, _, _) = &cuts[(k + 1) % m];
            // Probe point strictly inside the piece from cut k to cut k+1.
            let probe = piece_probe(lp, (*s0, t0), (*s1, t1));
            let covered = (0..loops.len())
                .filter(|&x| x != li)
                .any(|x| contains(x, &probe));
            if !covered {
                edge_count += 1;
            }
        }
    }

    Ok(LoopUnionStats {
        edge_count,
        vertex_count: vertex_on_union.iter().filter(|&&v| v).count(),
        crossing_counts: pair_counts
            .into_iter()
            .map(|((i, j), c)| (i, j, c))
            .collect(),
    })
}

/// True only when both `c` and `d` are certainly strictly on one side of
/// the line `ab`: the determinants are floats, so a generous error margin
/// sends every borderline case to the exact predicates instead.
fn definitely_same_side(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let m = a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
    let m = m.max(c.0.abs()).max(c.1.abs()).max(d.0.abs()).max(d.1.abs());
    let err = 1e-9 * (1.0 + m * m);
    let det = |p: (f64, f64)| (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
    let dc = det(c);
    let dd = det(d);
    (dc > err && dd > err) || (dc < -err && dd < -err)
}

/// A point strictly inside the boundary piece between two cuts, walking
/// forward along the loop. Prefers a polygon corner; falls back to the
/// midpoint of the (single-segment) piece.
fn piece_probe(lp: &BoundaryLoop, from: (usize, &Rat), to: (usize, &Rat)) -> Point2 {
    let n = lp.points.len();
    if from.0 != to.0 || from.1 >= to.1 {
        // The piece passes through at least one corner; take the first.
        let corner = (from.0 + 1) % n;
        return lp.points[corner].clone();
    }
    let (a, b) = loop_segment(lp, from.0);
    let t = (from.1 + to.1) / rat_int(2);
    Point2::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    fn square(id: u32, x: i64, y: i64, side: i64) -> Region {
        Region::polygon(
            id,
            vec![
                Point2::from_ints(x, y),
                Point2::from_ints(x + side, y),
                Point2::from_ints(x + side, y + side),
                Point2::from_ints(x, y + side),
            ],
        )
        .unwrap()
    }

    fn triangle(id: u32, pts: [(i64, i64); 3]) -> Region {
        Region::polygon(
            id,
            pts.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_square() {
        let arr = build_arrangement(&[square(0, 0, 0, 2)]).unwrap();
        assert_eq!(arr.vertices.len(), 0);
        assert_eq!(arr.edges.len(), 1);
        assert!(arr.edges[0].endpoints.is_none());
        assert_eq!(arr.faces.len(), 2);
        let mut depths: Vec<usize> = arr.faces.iter().map(|f| f.depth).collect();
        depths.sort();
        assert_eq!(depths, vec![0, 1]);
        assert_eq!(arr.count_k_deep_faces(1), 1);
        assert_eq!(arr.count_k_deep_faces(2), 0);
        assert!(arr.euler_check());
        let uc = arr.union_complexity();
        assert_eq!(uc, UnionComplexity { edge_count: 1, vertex_count: 0 });
    }

    #[test]
    fn two_overlapping_squares() {
        // Corner-to-corner overlap in a smaller square.
        let arr = build_arrangement(&[square(0, 0, 0, 4), square(1, 3, 3, 4)]).unwrap();
        assert_eq!(arr.vertices.len(), 2);
        let mut depths: Vec<usize> = arr.faces.iter().map(|f| f.depth).collect();
        depths.sort();
        assert_eq!(depths, vec![0, 1, 1, 2]);
        assert!(arr.euler_check());
        let reps = arr.face_representatives(2);
        assert_eq!(reps.len(), 1);
        let overlap = square(9, 3, 3, 1);
        assert!(crate::geom::point_in_region(&reps[0], &overlap));
    }

    #[test]
    fn disjoint_squares_union() {
        let regions: Vec<Region> = (0..4).map(|i| square(i, 10 * i as i64, 0, 3)).collect();
        let arr = build_arrangement(&regions).unwrap();
        let uc = arr.union_complexity();
        assert_eq!(uc, UnionComplexity { edge_count: 4, vertex_count: 0 });
        assert!(arr.euler_check());
        assert_eq!(arr.count_k_deep_faces(1), 4);
    }

    #[test]
    fn three_triangles_with_common_depth3_face() {
        let a = triangle(0, [(0, 0), (10, 0), (5, 9)]);
        let b = triangle(1, [(1, 6), (9, 4), (6, 13)]);
        let c = triangle(2, [(-2, 3), (12, 2), (4, 7)]);
        let arr = build_arrangement(&[a, b, c]).unwrap();
        assert!(arr.faces.iter().any(|f| f.depth == 3));
        assert!(arr.euler_check());
    }

    #[test]
    fn nested_squares_have_no_inner_union_edge() {
        let arr = build_arrangement(&[square(0, 0, 0, 10), square(1, 3, 3, 2)]).unwrap();
        let uc = arr.union_complexity();
        assert_eq!(uc, UnionComplexity { edge_count: 1, vertex_count: 0 });
        assert_eq!(arr.count_k_deep_faces(2), 1);
    }

    #[test]
    fn degenerate_overlap_rejected() {
        // Shared collinear boundary portion.
        let res = build_arrangement(&[square(0, 0, 0, 2), square(1, 2, 0, 2)]);
        assert!(matches!(res, Err(GeomError::Degenerate(_))));
    }

    #[test]
    fn loop_union_matches_arrangement() {
        let regions = vec![square(0, 0, 0, 4), square(1, 3, 3, 4), square(2, 20, 0, 2)];
        let arr = build_arrangement(&regions).unwrap();
        let loops = loops_from_regions(&regions).unwrap();
        let stats = union_complexity_of_loops(&loops, |i, p| {
            crate::geom::point_in_region(p, &regions[i])
        })
        .unwrap();
        let uc = arr.union_complexity();
        assert_eq!(stats.edge_count, uc.edge_count);
        assert_eq!(stats.vertex_count, uc.vertex_count);
    }

    #[test]
    fn star_polygon_membership() {
        let center = Point2::from_ints(0, 0);
        // A non-convex star-shaped octagon around the origin.
        let radii = [4i64, 2, 4, 2, 4, 2, 4, 2];
        let dirs = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        let vs: Vec<Point2> = radii
            .iter()
            .zip(dirs.iter())
            .map(|(&r, &(dx, dy))| Point2::from_ints(r * dx, r * dy))
            .collect();
        for p in &vs {
            assert!(point_in_star_polygon(&center, &vs, p));
        }
        assert!(point_in_star_polygon(&center, &vs, &Point2::from_ints(0, 0)));
        assert!(point_in_star_polygon(&center, &vs, &Point2::from_ints(3, 0)));
        assert!(!point_in_star_polygon(&center, &vs, &Point2::from_ints(3, 3)));
        assert!(!point_in_star_polygon(&center, &vs, &Point2::from_ints(5, 0)));
        // Cross-check against parity on a grid chosen off every edge line.
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                let p = Point2::new(rat(3 * x + 1, 3), rat(5 * y + 1, 5));
                assert_eq!(
                    point_in_star_polygon(&center, &vs, &p),
                    point_in_loop(&p, &vs),
                    "at {:?}",
                    p
                );
            }
        }
    }
}
