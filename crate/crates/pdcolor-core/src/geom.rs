//! Geometric primitives, region kinds and exact predicates.
//!
//! Coordinates are exact rationals. Membership and intersection predicates
//! compare squared quantities, so every Disk/Polygon/PointMass/Ear test is
//! exact. Boundary crossing counts are exact for disk pairs and polygon
//! pairs; mixed curved pairs are counted on sampled boundaries and flagged
//! approximate.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for every coordinate and radius.
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest rational with the given denominator; used to pin down sampled
/// (f64) points before running exact predicates on them.
pub fn rat_approx(x: f64, den: i64) -> Rat {
    let scaled = x * den as f64;
    debug_assert!(scaled.abs() < 9.0e18);
    Rat::new(BigInt::from(libm::round(scaled) as i64), BigInt::from(den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    // Good enough for sampling and SVG; exact code paths never round-trip.
    r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl core::fmt::Debug for Point2 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat_int(x), rat_int(y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

pub fn dist2(p: &Point2, q: &Point2) -> Rat {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx * &dx + &dy * &dy
}

/// Cross product of (b-a) and (c-a); positive when a,b,c turn counterclockwise.
pub fn cross(a: &Point2, b: &Point2, c: &Point2) -> Rat {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    cross(a, b, c).cmp(&Rat::zero())
}

fn dot_diff(a: &Point2, b: &Point2, p: &Point2) -> Rat {
    // (b-a) . (p-a)
    (&b.x - &a.x) * (&p.x - &a.x) + (&b.y - &a.y) * (&p.y - &a.y)
}

/// Squared distance from point `p` to the closed segment `a..b`.
pub fn seg_point_dist2(a: &Point2, b: &Point2, p: &Point2) -> Rat {
    let len2 = dist2(a, b);
    if len2.is_zero() {
        return dist2(a, p);
    }
    let t = dot_diff(a, b, p);
    if t <= Rat::zero() {
        dist2(a, p)
    } else if t >= len2 {
        dist2(b, p)
    } else {
        let c = cross(a, b, p);
        &c * &c / len2
    }
}

fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments share at least one point.
pub fn segments_intersect(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    let opposite = |x: Ordering, y: Ordering| {
        (x == Ordering::Greater && y == Ordering::Less)
            || (x == Ordering::Less && y == Ordering::Greater)
    };
    if opposite(d1, d2) && opposite(d3, d4) {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Open crossing: the segments cross at a single point interior to both.
pub fn segments_properly_cross(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    d1 != Ordering::Equal
        && d2 != Ordering::Equal
        && d3 != Ordering::Equal
        && d4 != Ordering::Equal
        && d1 != d2
        && d3 != d4
}

/// Intersection point of the supporting lines of two properly crossing
/// segments, with the parameter along `a..b`.
pub fn crossing_point(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> (Point2, Rat) {
    let denom = (&b.x - &a.x) * (&d.y - &c.y) - (&b.y - &a.y) * (&d.x - &c.x);
    debug_assert!(!denom.is_zero());
    let t = ((&c.x - &a.x) * (&d.y - &c.y) - (&c.y - &a.y) * (&d.x - &c.x)) / &denom;
    let x = &a.x + (&b.x - &a.x) * &t;
    let y = &a.y + (&b.y - &a.y) * &t;
    (Point2::new(x, y), t)
}

pub fn segments_collinear_overlap(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    if orient(a, b, c) != Ordering::Equal || orient(a, b, d) != Ordering::Equal {
        return false;
    }
    // Same line; overlap iff the parameter intervals overlap in more than a point.
    let len2 = dist2(a, b);
    if len2.is_zero() {
        return false;
    }
    let tc = dot_diff(a, b, c);
    let td = dot_diff(a, b, d);
    let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
    lo < len2 && hi > Rat::zero() && (hi.clone().min(len2) - lo.max(Rat::zero())).is_positive()
}

/// Squared distance between two closed segments.
pub fn seg_seg_dist2(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> Rat {
    if segments_intersect(a, b, c, d) {
        return Rat::zero();
    }
    let mut best = seg_point_dist2(a, b, c);
    for cand in [
        seg_point_dist2(a, b, d),
        seg_point_dist2(c, d, a),
        seg_point_dist2(c, d, b),
    ] {
        if cand < best {
            best = cand;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Regions

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// A single point participating in intersections via membership.
    PointMass(Point2),
    Disk {
        center: Point2,
        radius: Rat,
    },
    /// Strictly convex, counterclockwise vertex sequence.
    ConvexPolygon(Vec<Point2>),
    /// Union of a disk about `center` and two capsules along the segments
    /// `center..anchor_a` and `center..anchor_b`.
    Ear {
        center: Point2,
        anchor_a: Point2,
        anchor_b: Point2,
        disk_radius: Rat,
        capsule_radius: Rat,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: u32,
    pub kind: RegionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    InvalidRegion(String),
    PointMassUnsupported,
    Degenerate(String),
}

impl core::fmt::Display for GeomError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GeomError::InvalidRegion(msg) => write!(f, "invalid region: {msg}"),
            GeomError::PointMassUnsupported => write!(f, "operation rejects PointMass regions"),
            GeomError::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
        }
    }
}

impl Region {
    pub fn new(id: u32, kind: RegionKind) -> Result<Self, GeomError> {
        match &kind {
            RegionKind::PointMass(_) => {}
            RegionKind::Disk { radius, .. } => {
                if !radius.is_positive() {
                    return Err(GeomError::InvalidRegion("disk radius must be positive".into()));
                }
            }
            RegionKind::ConvexPolygon(vs) => {
                if vs.len() < 3 {
                    return Err(GeomError::InvalidRegion("polygon needs >= 3 vertices".into()));
                }
                let n = vs.len();
                for i in 0..n {
                    let a = &vs[i];
                    let b = &vs[(i + 1) % n];
                    let c = &vs[(i + 2) % n];
                    if orient(a, b, c) != Ordering::Greater {
                        return Err(GeomError::InvalidRegion(
                            "polygon vertices must be strictly convex and counterclockwise".into(),
                        ));
                    }
                }
            }
            RegionKind::Ear {
                disk_radius,
                capsule_radius,
                ..
            } => {
                if capsule_radius.is_negative() || disk_radius <= capsule_radius {
                    return Err(GeomError::InvalidRegion(
                        "ear needs disk_radius > capsule_radius >= 0".into(),
                    ));
                }
            }
        }
        Ok(Region { id, kind })
    }

    pub fn point_mass(id: u32, p: Point2) -> Self {
        Region {
            id,
            kind: RegionKind::PointMass(p),
        }
    }

    pub fn disk(id: u32, center: Point2, radius: Rat) -> Result<Self, GeomError> {
        Region::new(id, RegionKind::Disk { center, radius })
    }

    pub fn polygon(id: u32, vertices: Vec<Point2>) -> Result<Self, GeomError> {
        Region::new(id, RegionKind::ConvexPolygon(vertices))
    }

    pub fn is_point_mass(&self) -> bool {
        matches!(self.kind, RegionKind::PointMass(_))
    }

    /// Axis-aligned bounding box (approximate for curved kinds, conservative).
    pub fn bbox_f64(&self) -> (f64, f64, f64, f64) {
        match &self.kind {
            RegionKind::PointMass(p) => {
                let (x, y) = p.to_f64();
                (x, y, x, y)
            }
            RegionKind::Disk { center, radius } => {
                let (x, y) = center.to_f64();
                let r = rat_to_f64(radius) + 1e-9;
                (x - r, y - r, x + r, y + r)
            }
            RegionKind::ConvexPolygon(vs) => {
                let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
                for v in vs {
                    let (x, y) = v.to_f64();
                    bb.0 = bb.0.min(x);
                    bb.1 = bb.1.min(y);
                    bb.2 = bb.2.max(x);
                    bb.3 = bb.3.max(y);
                }
                bb
            }
            RegionKind::Ear {
                center,
                anchor_a,
                anchor_b,
                disk_radius,
                capsule_radius,
            } => {
                let r = rat_to_f64(disk_radius).max(rat_to_f64(capsule_radius)) + 1e-9;
                let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
                for p in [center, anchor_a, anchor_b] {
                    let (x, y) = p.to_f64();
                    bb.0 = bb.0.min(x - r);
                    bb.1 = bb.1.min(y - r);
                    bb.2 = bb.2.max(x + r);
                    bb.3 = bb.3.max(y + r);
                }
                bb
            }
        }
    }
}

/// The family `F` an intersection hypergraph is built with respect to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDesc {
    Explicit(Vec<Region>),
    /// Every point of the plane.
    AllPoints,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub b: Vec<Region>,
    pub f: FamilyDesc,
}

impl Scene {
    pub fn new(b: Vec<Region>, f: FamilyDesc) -> Result<Self, GeomError> {
        let mut ids: Vec<u32> = b.iter().map(|r| r.id).collect();
        if let FamilyDesc::Explicit(fs) = &f {
            ids.extend(fs.iter().map(|r| r.id));
        }
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeomError::InvalidRegion("duplicate region id in scene".into()));
        }
        Ok(Scene { b, f })
    }

    pub fn explicit_f(&self) -> Option<&[Region]> {
        match &self.f {
            FamilyDesc::Explicit(fs) => Some(fs),
            FamilyDesc::AllPoints => None,
        }
    }

    /// Induced sub-scene on the given B-indices (F untouched).
    pub fn restrict_b(&self, keep: &[usize]) -> Scene {
        Scene {
            b: keep.iter().map(|&i| self.b[i].clone()).collect(),
            f: self.f.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Membership

/// True iff `p` lies in the closed region `r`. Exact for every kind.
pub fn point_in_region(p: &Point2, r: &Region) -> bool {
    match &r.kind {
        RegionKind::PointMass(q) => p == q,
        RegionKind::Disk { center, radius } => dist2(p, center) <= radius * radius,
        RegionKind::ConvexPolygon(vs) => point_in_convex_polygon(p, vs),
        RegionKind::Ear {
            center,
            anchor_a,
            anchor_b,
            disk_radius,
            capsule_radius,
        } => {
            dist2(p, center) <= disk_radius * disk_radius
                || seg_point_dist2(center, anchor_a, p) <= capsule_radius * capsule_radius
                || seg_point_dist2(center, anchor_b, p) <= capsule_radius * capsule_radius
        }
    }
}

pub fn point_in_convex_polygon(p: &Point2, vs: &[Point2]) -> bool {
    let n = vs.len();
    (0..n).all(|i| orient(&vs[i], &vs[(i + 1) % n], p) != Ordering::Less)
}

/// Squared distance from `p` to a convex polygon (0 when inside).
pub fn point_polygon_dist2(p: &Point2, vs: &[Point2]) -> Rat {
    if point_in_convex_polygon(p, vs) {
        return Rat::zero();
    }
    let n = vs.len();
    let mut best = seg_point_dist2(&vs[0], &vs[1 % n], p);
    for i in 1..n {
        let cand = seg_point_dist2(&vs[i], &vs[(i + 1) % n], p);
        if cand < best {
            best = cand;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Intersection

/// Convex or capsule-shaped building block of a region.
enum Component<'a> {
    Point(&'a Point2),
    Disk(&'a Point2, &'a Rat),
    Capsule(&'a Point2, &'a Point2, &'a Rat),
    Poly(&'a [Point2]),
}

fn components<'a>(r: &'a Region, out: &mut Vec<Component<'a>>) {
    match &r.kind {
        RegionKind::PointMass(p) => out.push(Component::Point(p)),
        RegionKind::Disk { center, radius } => out.push(Component::Disk(center, radius)),
        RegionKind::ConvexPolygon(vs) => out.push(Component::Poly(vs)),
        RegionKind::Ear {
            center,
            anchor_a,
            anchor_b,
            disk_radius,
            capsule_radius,
        } => {
            out.push(Component::Disk(center, disk_radius));
            out.push(Component::Capsule(center, anchor_a, capsule_radius));
            out.push(Component::Capsule(center, anchor_b, capsule_radius));
        }
    }
}

fn point_in_component(p: &Point2, c: &Component) -> bool {
    match c {
        Component::Point(q) => p == *q,
        Component::Disk(center, r) => dist2(p, center) <= *r * *r,
        Component::Capsule(a, b, r) => seg_point_dist2(a, b, p) <= *r * *r,
        Component::Poly(vs) => point_in_convex_polygon(p, vs),
    }
}

fn seg_polygon_dist2(a: &Point2, b: &Point2, vs: &[Point2]) -> Rat {
    if point_in_convex_polygon(a, vs) || point_in_convex_polygon(b, vs) {
        return Rat::zero();
    }
    let n = vs.len();
    let mut best: Option<Rat> = None;
    for i in 0..n {
        let c = &vs[i];
        let d = &vs[(i + 1) % n];
        let cand = seg_seg_dist2(a, b, c, d);
        if cand.is_zero() {
            return cand;
        }
        if best.as_ref().map_or(true, |bst| &cand < bst) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

fn convex_polygons_intersect(xs: &[Point2], ys: &[Point2]) -> bool {
    if point_in_convex_polygon(&xs[0], ys) || point_in_convex_polygon(&ys[0], xs) {
        return true;
    }
    let n = xs.len();
    let m = ys.len();
    for i in 0..n {
        for j in 0..m {
            if segments_intersect(&xs[i], &xs[(i + 1) % n], &ys[j], &ys[(j + 1) % m]) {
                return true;
            }
        }
    }
    false
}

fn components_intersect(a: &Component, b: &Component) -> bool {
    use Component::*;
    match (a, b) {
        (Point(p), other) | (other, Point(p)) => point_in_component(p, other),
        (Disk(c1, r1), Disk(c2, r2)) => {
            let s = *r1 + *r2;
            dist2(c1, c2) <= &s * &s
        }
        (Disk(c, r), Capsule(a0, a1, cr)) | (Capsule(a0, a1, cr), Disk(c, r)) => {
            let s = *r + *cr;
            seg_point_dist2(a0, a1, c) <= &s * &s
        }
        (Disk(c, r), Poly(vs)) | (Poly(vs), Disk(c, r)) => point_polygon_dist2(c, vs) <= *r * *r,
        (Capsule(a0, a1, r1), Capsule(b0, b1, r2)) => {
            let s = *r1 + *r2;
            seg_seg_dist2(a0, a1, b0, b1) <= &s * &s
        }
        (Capsule(a0, a1, r), Poly(vs)) | (Poly(vs), Capsule(a0, a1, r)) => {
            seg_polygon_dist2(a0, a1, vs) <= *r * *r
        }
        (Poly(xs), Poly(ys)) => convex_polygons_intersect(xs, ys),
    }
}

/// True iff the closed regions intersect. Exact for every kind pairing.
pub fn regions_intersect(a: &Region, b: &Region) -> bool {
    let mut ca = Vec::new();
    let mut cb = Vec::new();
    components(a, &mut ca);
    components(b, &mut cb);
    ca.iter().any(|x| cb.iter().any(|y| components_intersect(x, y)))
}

// ---------------------------------------------------------------------------
// Boundary crossing counts

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingCount {
    pub count: usize,
    /// False when the count was taken on sampled boundary polylines.
    pub exact: bool,
}

/// Number of transversal crossings of the two region boundaries.
pub fn boundary_intersection_count(
    a: &Region,
    b: &Region,
    samples_per_edge: usize,
) -> Result<CrossingCount, GeomError> {
    if a.is_point_mass() || b.is_point_mass() {
        return Err(GeomError::PointMassUnsupported);
    }
    match (&a.kind, &b.kind) {
        (
            RegionKind::Disk {
                center: c1,
                radius: r1,
            },
            RegionKind::Disk {
                center: c2,
                radius: r2,
            },
        ) => {
            let d2 = dist2(c1, c2);
            let sum = r1 + r2;
            let diff = r1 - r2;
            let sum2 = &sum * &sum;
            let diff2 = &diff * &diff;
            let count = if d2 > sum2 || d2 < diff2 {
                0
            } else if d2 == sum2 || d2 == diff2 {
                1
            } else {
                2
            };
            Ok(CrossingCount { count, exact: true })
        }
        (RegionKind::ConvexPolygon(xs), RegionKind::ConvexPolygon(ys)) => {
            let n = xs.len();
            let m = ys.len();
            let mut count = 0;
            for i in 0..n {
                for j in 0..m {
                    if segments_properly_cross(&xs[i], &xs[(i + 1) % n], &ys[j], &ys[(j + 1) % m]) {
                        count += 1;
                    }
                }
            }
            Ok(CrossingCount { count, exact: true })
        }
        _ => {
            let pa = boundary_polyline(a, samples_per_edge);
            let pb = boundary_polyline(b, samples_per_edge);
            let flips_a = membership_flips(&pa, b);
            let flips_b = membership_flips(&pb, a);
            Ok(CrossingCount {
                count: flips_a.max(flips_b),
                exact: false,
            })
        }
    }
}

/// Closed polyline tracing the region boundary, for sampled crossing counts.
pub fn boundary_polyline(r: &Region, samples_per_edge: usize) -> Vec<Point2> {
    let samples = samples_per_edge.max(8);
    match &r.kind {
        RegionKind::PointMass(p) => alloc::vec![p.clone()],
        RegionKind::Disk { center, radius } => {
            let (cx, cy) = center.to_f64();
            let rf = rat_to_f64(radius);
            (0..samples)
                .map(|i| {
                    let t = core::f64::consts::TAU * i as f64 / samples as f64;
                    Point2::new(
                        rat_approx(cx + rf * libm::cos(t), 1 << 30),
                        rat_approx(cy + rf * libm::sin(t), 1 << 30),
                    )
                })
                .collect()
        }
        RegionKind::ConvexPolygon(vs) => {
            let n = vs.len();
            let mut out = Vec::with_capacity(n * samples);
            for i in 0..n {
                let a = &vs[i];
                let b = &vs[(i + 1) % n];
                for s in 0..samples {
                    let t = rat(s as i64, samples as i64);
                    out.push(Point2::new(
                        &a.x + (&b.x - &a.x) * &t,
                        &a.y + (&b.y - &a.y) * &t,
                    ));
                }
            }
            out
        }
        RegionKind::Ear { .. } => ear_boundary_samples(r, samples * 4),
    }
}

/// Ears are star-shaped about their center; sample the radial exit distance.
fn ear_boundary_samples(r: &Region, samples: usize) -> Vec<Point2> {
    let RegionKind::Ear {
        center,
        anchor_a,
        anchor_b,
        disk_radius,
        capsule_radius,
    } = &r.kind
    else {
        unreachable!()
    };
    let (cx, cy) = center.to_f64();
    let aa = anchor_a.to_f64();
    let ab = anchor_b.to_f64();
    let rd = rat_to_f64(disk_radius);
    let rc = rat_to_f64(capsule_radius);
    (0..samples)
        .map(|i| {
            let t = core::f64::consts::TAU * i as f64 / samples as f64;
            let dir = (libm::cos(t), libm::sin(t));
            let mut radius = rd;
            for anchor in [aa, ab] {
                let seg = (anchor.0 - cx, anchor.1 - cy);
                radius = radius.max(capsule_radial_exit(seg, dir, rc));
            }
            Point2::new(
                rat_approx(cx + radius * dir.0, 1 << 30),
                rat_approx(cy + radius * dir.1, 1 << 30),
            )
        })
        .collect()
}

/// Exit distance along the ray `t*dir` (from the capsule's base endpoint) out
/// of the capsule around segment `(0,0)..seg` with radius `r`. The distance to
/// a convex set along a ray leaving it is monotone, so bisection is safe.
fn capsule_radial_exit(seg: (f64, f64), dir: (f64, f64), r: f64) -> f64 {
    let seg_len = libm::sqrt(seg.0 * seg.0 + seg.1 * seg.1);
    let dist = |t: f64| -> f64 {
        let p = (t * dir.0, t * dir.1);
        let proj = ((p.0 * seg.0 + p.1 * seg.1) / (seg_len * seg_len)).clamp(0.0, 1.0);
        let q = (proj * seg.0, proj * seg.1);
        libm::sqrt((p.0 - q.0) * (p.0 - q.0) + (p.1 - q.1) * (p.1 - q.1))
    };
    let mut hi = seg_len + r + 1e-9;
    if dist(hi) <= r {
        return hi;
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if dist(mid) <= r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Number of sign changes of membership in `r` along the closed polyline.
fn membership_flips(polyline: &[Point2], r: &Region) -> usize {
    if polyline.len() < 2 {
        return 0;
    }
    let inside: Vec<bool> = polyline.iter().map(|p| point_in_region(p, r)).collect();
    let n = inside.len();
    (0..n).filter(|&i| inside[i] != inside[(i + 1) % n]).count()
}

// ---------------------------------------------------------------------------
// Pseudo-disk check

#[derive(Clone, Debug)]
pub struct PseudoDiskReport {
    pub is_pseudo_disk_family: bool,
    /// (id, id, crossing count) for every pair crossing more than twice.
    pub violations: Vec<(u32, u32, usize)>,
    pub all_exact: bool,
}

/// Checks that every boundary pair crosses at most twice.
pub fn is_pseudo_disk_family(
    regions: &[Region],
    samples_per_edge: usize,
) -> Result<PseudoDiskReport, GeomError> {
    let mut violations = Vec::new();
    let mut all_exact = true;
    for i in 0..regions.len() {
        for j in (i + 1)..regions.len() {
            let cc = boundary_intersection_count(&regions[i], &regions[j], samples_per_edge)?;
            all_exact &= cc.exact;
            if cc.count > 2 {
                violations.push((regions[i].id, regions[j].id, cc.count));
            }
        }
    }
    Ok(PseudoDiskReport {
        is_pseudo_disk_family: violations.is_empty(),
        violations,
        all_exact,
    })
}

// ---------------------------------------------------------------------------

/// Rational point in the intersection of two intersecting regions, when one
/// can be found exactly. Used as a cheap closure witness.
pub fn common_point(a: &Region, b: &Region) -> Option<Point2> {
    use RegionKind::*;
    match (&a.kind, &b.kind) {
        (PointMass(p), _) => point_in_region(p, b).then(|| p.clone()),
        (_, PointMass(p)) => point_in_region(p, a).then(|| p.clone()),
        (
            Disk {
                center: c1,
                radius: r1,
            },
            Disk {
                center: c2,
                radius: r2,
            },
        ) => {
            let d2 = dist2(c1, c2);
            let sum = r1 + r2;
            if d2 > &sum * &sum {
                return None;
            }
            if d2.is_zero() {
                return Some(c1.clone());
            }
            // Radical-axis point on the center segment; inside both disks
            // whenever they overlap without containment.
            let t = (&d2 + r1 * r1 - r2 * r2) / (rat_int(2) * &d2);
            let p = Point2::new(
                &c1.x + (&c2.x - &c1.x) * &t,
                &c1.y + (&c2.y - &c1.y) * &t,
            );
            if point_in_region(&p, a) && point_in_region(&p, b) {
                Some(p)
            } else if dist2(c1, c2) <= r2 * r2 {
                Some(c1.clone())
            } else if dist2(c1, c2) <= r1 * r1 {
                Some(c2.clone())
            } else {
                None
            }
        }
        (Disk { center, .. }, ConvexPolygon(vs)) | (ConvexPolygon(vs), Disk { center, .. }) => {
            if !regions_intersect(a, b) {
                return None;
            }
            if point_in_convex_polygon(center, vs) {
                return Some(center.clone());
            }
            // Closest polygon point to the center lies in the disk.
            let n = vs.len();
            let mut best: Option<(Rat, Point2)> = None;
            for i in 0..n {
                let (d, p) = closest_on_segment(&vs[i], &vs[(i + 1) % n], center);
                if best.as_ref().map_or(true, |(bd, _)| &d < bd) {
                    best = Some((d, p));
                }
            }
            best.map(|(_, p)| p)
        }
        (ConvexPolygon(xs), ConvexPolygon(ys)) => {
            if point_in_convex_polygon(&xs[0], ys) {
                return Some(xs[0].clone());
            }
            if point_in_convex_polygon(&ys[0], xs) {
                return Some(ys[0].clone());
            }
            for v in xs {
                if point_in_convex_polygon(v, ys) {
                    return Some(v.clone());
                }
            }
            for v in ys {
                if point_in_convex_polygon(v, xs) {
                    return Some(v.clone());
                }
            }
            let n = xs.len();
            let m = ys.len();
            for i in 0..n {
                for j in 0..m {
                    let (c, d) = (&ys[j], &ys[(j + 1) % m]);
                    if segments_properly_cross(&xs[i], &xs[(i + 1) % n], c, d) {
                        return Some(crossing_point(&xs[i], &xs[(i + 1) % n], c, d).0);
                    }
                }
            }
            None
        }
        // Ear pairings: fall back to the anchors and center, which cover the
        // constructions the ear kind exists for.
        _ => {
            for cand in candidate_points(a) {
                if point_in_region(&cand, a) && point_in_region(&cand, b) {
                    return Some(cand);
                }
            }
            for cand in candidate_points(b) {
                if point_in_region(&cand, a) && point_in_region(&cand, b) {
                    return Some(cand);
                }
            }
            None
        }
    }
}

fn candidate_points(r: &Region) -> Vec<Point2> {
    match &r.kind {
        RegionKind::PointMass(p) => alloc::vec![p.clone()],
        RegionKind::Disk { center, .. } => alloc::vec![center.clone()],
        RegionKind::ConvexPolygon(vs) => vs.clone(),
        RegionKind::Ear {
            center,
            anchor_a,
            anchor_b,
            ..
        } => alloc::vec![center.clone(), anchor_a.clone(), anchor_b.clone()],
    }
}

fn closest_on_segment(a: &Point2, b: &Point2, p: &Point2) -> (Rat, Point2) {
    let len2 = dist2(a, b);
    if len2.is_zero() {
        return (dist2(a, p), a.clone());
    }
    let t = dot_diff(a, b, p);
    let t = if t <= Rat::zero() {
        Rat::zero()
    } else if t >= len2 {
        Rat::one()
    } else {
        t / len2
    };
    let q = Point2::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t);
    (dist2(&q, p), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(id: u32, x: i64, y: i64, r: i64) -> Region {
        Region::disk(id, Point2::from_ints(x, y), rat_int(r)).unwrap()
    }

    fn square(id: u32, x: i64, y: i64, side: i64) -> Region {
        Region::polygon(
            id,
            alloc::vec![
                Point2::from_ints(x, y),
                Point2::from_ints(x + side, y),
                Point2::from_ints(x + side, y + side),
                Point2::from_ints(x, y + side),
            ],
        )
        .unwrap()
    }

    #[test]
    fn disk_membership() {
        let d = disk(0, 0, 0, 1);
        assert!(point_in_region(&Point2::from_ints(0, 0), &d));
        assert!(point_in_region(&Point2::from_ints(1, 0), &d)); // closed
        assert!(!point_in_region(&Point2::from_ints(2, 0), &d));
    }

    #[test]
    fn disk_disk_intersection() {
        assert!(!regions_intersect(&disk(0, 0, 0, 1), &disk(1, 3, 0, 1)));
        assert!(regions_intersect(&disk(0, 0, 0, 1), &disk(1, 1, 0, 1)));
        // Tangent disks touch (closed semantics).
        assert!(regions_intersect(&disk(0, 0, 0, 1), &disk(1, 2, 0, 1)));
    }

    #[test]
    fn overlapping_squares_intersect() {
        // Unit squares at origin and (1/2, 1/2), scaled by 2 to stay integral.
        let a = square(0, 0, 0, 2);
        let b = square(1, 1, 1, 2);
        assert!(regions_intersect(&a, &b));
        assert!(!regions_intersect(&square(2, 0, 0, 1), &square(3, 5, 5, 1)));
    }

    #[test]
    fn disk_crossing_counts() {
        let cases = [
            ((0, 0, 1), (1, 0, 1), 2), // lens
            ((0, 0, 1), (3, 0, 1), 0), // disjoint
            ((0, 0, 1), (2, 0, 1), 1), // externally tangent
            ((0, 0, 3), (1, 0, 1), 0), // nested
            ((0, 0, 2), (1, 0, 1), 1), // internally tangent
        ];
        for ((x1, y1, r1), (x2, y2, r2), want) in cases {
            let a = disk(0, x1, y1, r1);
            let b = disk(1, x2, y2, r2);
            let cc = boundary_intersection_count(&a, &b, 16).unwrap();
            assert!(cc.exact);
            assert_eq!(cc.count, want, "{:?} {:?}", a, b);
        }
    }

    #[test]
    fn polygon_crossing_counts() {
        let a = square(0, 0, 0, 4);
        let b = square(1, 2, 2, 4);
        let cc = boundary_intersection_count(&a, &b, 4).unwrap();
        assert!(cc.exact);
        assert_eq!(cc.count, 2);
    }

    #[test]
    fn eight_crossing_star_detected() {
        // A square and a diamond forming an eight-pointed star: their
        // boundaries cross 8 times, so the pair is not a pseudo-disk family.
        let a = Region::polygon(
            0,
            alloc::vec![
                Point2::from_ints(-2, -2),
                Point2::from_ints(2, -2),
                Point2::from_ints(2, 2),
                Point2::from_ints(-2, 2),
            ],
        )
        .unwrap();
        let b = Region::polygon(
            1,
            alloc::vec![
                Point2::from_ints(3, 0),
                Point2::from_ints(0, 3),
                Point2::from_ints(-3, 0),
                Point2::from_ints(0, -3),
            ],
        )
        .unwrap();
        let cc = boundary_intersection_count(&a, &b, 4).unwrap();
        assert_eq!(cc.count, 8);
        let report = is_pseudo_disk_family(&[a, b], 4).unwrap();
        assert!(!report.is_pseudo_disk_family);
        assert_eq!(report.violations, alloc::vec![(0, 1, 8)]);
    }

    #[test]
    fn pointmass_rejected_by_crossing_count() {
        let p = Region::point_mass(0, Point2::from_ints(0, 0));
        let d = disk(1, 0, 0, 1);
        assert!(matches!(
            boundary_intersection_count(&p, &d, 4),
            Err(GeomError::PointMassUnsupported)
        ));
    }

    #[test]
    fn common_point_in_disk_lens() {
        let a = disk(0, 0, 0, 1);
        let b = disk(1, 1, 0, 1);
        let p = common_point(&a, &b).unwrap();
        assert!(point_in_region(&p, &a) && point_in_region(&p, &b));
        assert!(common_point(&a, &disk(2, 5, 0, 1)).is_none());
    }

    #[test]
    fn pointmass_pair_semantics() {
        let p = Region::point_mass(0, Point2::from_ints(1, 1));
        let q = Region::point_mass(1, Point2::from_ints(1, 1));
        let r = Region::point_mass(2, Point2::from_ints(2, 1));
        assert!(regions_intersect(&p, &q));
        assert!(!regions_intersect(&p, &r));
    }

    #[test]
    fn invalid_regions_rejected() {
        assert!(Region::disk(0, Point2::from_ints(0, 0), rat_int(0)).is_err());
        // Clockwise square.
        assert!(Region::polygon(
            0,
            alloc::vec![
                Point2::from_ints(0, 0),
                Point2::from_ints(0, 1),
                Point2::from_ints(1, 1),
                Point2::from_ints(1, 0),
            ],
        )
        .is_err());
        // Collinear triple.
        assert!(Region::polygon(
            0,
            alloc::vec![
                Point2::from_ints(0, 0),
                Point2::from_ints(1, 0),
                Point2::from_ints(2, 0),
                Point2::from_ints(1, 1),
            ],
        )
        .is_err());
    }
}
