//! Instance generators. All of them are deterministic in the seed and emit
//! rational coordinates on coarse lattices, so downstream exact predicates
//! and integer-arithmetic oracles stay cheap.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{dist2, rat, rat_approx, rat_int, GeomError, Point2, Rat, Region, RegionKind};

/// Coordinate lattice denominator for random generators.
const LATTICE: i64 = 4096;
/// Fine jitter denominator breaking coincidences between edge lines.
const JITTER: i64 = 1 << 20;

fn lattice_range(lo: f64, hi: f64) -> (i64, i64) {
    let a = libm::ceil(lo * LATTICE as f64) as i64;
    let b = libm::floor(hi * LATTICE as f64) as i64;
    (a, b.max(a))
}

/// `n` random disks in general position: no coincident centers, no
/// tangencies, no equal-radius concentric pairs. Disks are always a
/// pseudo-disk family; the generator only rules out degenerate contacts.
pub fn gen_random_disks(
    n: usize,
    seed: u64,
    radius_range: (f64, f64),
    bbox: (f64, f64, f64, f64),
    id_base: u32,
) -> Vec<Region> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xlo, xhi) = lattice_range(bbox.0, bbox.2);
    let (ylo, yhi) = lattice_range(bbox.1, bbox.3);
    let (rlo, rhi) = lattice_range(radius_range.0.max(1.0 / LATTICE as f64), radius_range.1);
    let mut out: Vec<Region> = Vec::with_capacity(n);
    while out.len() < n {
        let cx = rat(rng.gen_range(xlo..=xhi), LATTICE) + rat(rng.gen_range(0..64), JITTER);
        let cy = rat(rng.gen_range(ylo..=yhi), LATTICE) + rat(rng.gen_range(0..64), JITTER);
        let r = rat(rng.gen_range(rlo..=rhi.max(rlo)), LATTICE);
        let center = Point2::new(cx, cy);
        let degenerate = out.iter().any(|d| {
            let RegionKind::Disk {
                center: oc,
                radius: or,
            } = &d.kind
            else {
                unreachable!()
            };
            let dd = dist2(&center, oc);
            let sum = &r + or;
            let diff = &r - or;
            dd == &sum * &sum || dd == &diff * &diff || dd == Rat::from_integer(0.into())
        });
        if degenerate {
            continue;
        }
        let id = id_base + out.len() as u32;
        out.push(Region::disk(id, center, r).expect("positive radius"));
    }
    out
}

/// `n` point masses on the coordinate lattice, pairwise distinct.
pub fn gen_random_points(
    n: usize,
    seed: u64,
    bbox: (f64, f64, f64, f64),
    id_base: u32,
) -> Vec<Region> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xlo, xhi) = lattice_range(bbox.0, bbox.2);
    let (ylo, yhi) = lattice_range(bbox.1, bbox.3);
    let mut out: Vec<Region> = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point2::new(
            rat(rng.gen_range(xlo..=xhi), LATTICE) + rat(rng.gen_range(0..64), JITTER),
            rat(rng.gen_range(ylo..=yhi), LATTICE) + rat(rng.gen_range(0..64), JITTER),
        );
        if out.iter().any(|q| {
            matches!(&q.kind, RegionKind::PointMass(op) if *op == p)
        }) {
            continue;
        }
        let id = id_base + out.len() as u32;
        out.push(Region::point_mass(id, p));
    }
    out
}

/// `n` positive homothets (scale then translate) of a strictly convex base
/// polygon. Homothets of a convex region are pseudo-disks.
pub fn gen_homothets(
    base: &[Point2],
    n: usize,
    seed: u64,
    scale_range: (f64, f64),
    bbox: (f64, f64, f64, f64),
    id_base: u32,
) -> Result<Vec<Region>, GeomError> {
    // Validates convexity.
    Region::polygon(u32::MAX, base.to_vec())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xlo, xhi) = lattice_range(bbox.0, bbox.2);
    let (ylo, yhi) = lattice_range(bbox.1, bbox.3);
    let slo = libm::ceil(scale_range.0.max(0.01) * 1024.0) as i64;
    let shi = (libm::floor(scale_range.1 * 1024.0) as i64).max(slo);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let s = rat(rng.gen_range(slo..=shi), 1024);
        let t = Point2::new(
            rat(rng.gen_range(xlo..=xhi), LATTICE) + rat(rng.gen_range(1..JITTER / 2), JITTER),
            rat(rng.gen_range(ylo..=yhi), LATTICE) + rat(rng.gen_range(1..JITTER / 2), JITTER),
        );
        let verts: Vec<Point2> = base
            .iter()
            .map(|v| Point2::new(&t.x + &s * &v.x, &t.y + &s * &v.y))
            .collect();
        out.push(Region::polygon(id_base + k as u32, verts)?);
    }
    Ok(out)
}

/// The lower-bound family: `n` points spread on a circle of radius 2 about
/// the origin, and one region per pair `{i, j}` made of a central disk of
/// radius `1 + (i*n + j)*eps` plus two capsules of radius `(i*n + j)*eps`
/// along the segments from the origin to the two points. Each region
/// contains exactly its two points; the intersection hypergraph is the
/// complete graph, yet the union complexity of any m regions stays linear.
#[derive(Clone, Debug)]
pub struct BearEars {
    /// Point masses `p_0..p_{n-1}`, ids `0..n`.
    pub points: Vec<Region>,
    /// One ear region per pair `i < j`, ids starting at `n`, ordered by
    /// `(i, j)` lexicographically.
    pub ears: Vec<Region>,
    pub epsilon: Rat,
}

impl BearEars {
    /// The pair of point indices the k-th ear spans.
    pub fn pair_of(&self, k: usize) -> (usize, usize) {
        let n = self.points.len();
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if idx == k {
                    return (i, j);
                }
                idx += 1;
            }
        }
        panic!("ear index out of range");
    }
}

/// `epsilon = None` picks the default `1/(64 n^2)`. Fails when
/// `(n^2 - 1) * epsilon >= 1/4`, which would let regions reach foreign
/// points.
pub fn gen_bear_ears(n: usize, epsilon: Option<Rat>) -> Result<BearEars, GeomError> {
    if n < 2 {
        return Err(GeomError::InvalidRegion(String::from(
            "bear ears need at least 2 points",
        )));
    }
    let eps = epsilon.unwrap_or_else(|| rat(1, 64 * (n * n) as i64));
    let guard = rat_int((n * n) as i64 - 1) * &eps;
    if guard >= rat(1, 4) || !num_traits::Signed::is_positive(&eps) {
        return Err(GeomError::InvalidRegion(String::from(
            "bear ears epsilon guard: (n^2 - 1) * epsilon must stay below 1/4",
        )));
    }
    // Evenly spaced circle points, rationalized at denominator <= 10^6.
    let points: Vec<Region> = (0..n)
        .map(|k| {
            let t = core::f64::consts::TAU * k as f64 / n as f64;
            let p = Point2::new(
                rat_approx(2.0 * libm::cos(t), 1_000_000),
                rat_approx(2.0 * libm::sin(t), 1_000_000),
            );
            Region::point_mass(k as u32, p)
        })
        .collect();
    let origin = Point2::from_ints(0, 0);
    let mut ears = Vec::with_capacity(n * (n - 1) / 2);
    let mut id = n as u32;
    for i in 0..n {
        for j in i + 1..n {
            let m = rat_int((i * n + j) as i64);
            let cap = &m * &eps;
            let disk = Rat::one() + &cap;
            let (pa, pb) = match (&points[i].kind, &points[j].kind) {
                (RegionKind::PointMass(a), RegionKind::PointMass(b)) => (a.clone(), b.clone()),
                _ => unreachable!(),
            };
            ears.push(Region::new(
                id,
                RegionKind::Ear {
                    center: origin.clone(),
                    anchor_a: pa,
                    anchor_b: pb,
                    disk_radius: disk,
                    capsule_radius: cap,
                },
            )?);
            id += 1;
        }
    }
    Ok(BearEars {
        points,
        ears,
        epsilon: eps,
    })
}

/// Three near-equilateral triangle vertices plus a jittered interior point.
/// Against a dense family of disks the Delaunay graph of the four points is
/// the complete graph: every pair, including each vertex with the interior
/// point, is cut out by some disk avoiding the other two.
pub fn gen_k4_points(seed: u64) -> Vec<Region> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tri = [(0i64, 0i64), (60, 0), (30, 52)];
    let mut out: Vec<Region> = tri
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| Region::point_mass(k as u32, Point2::from_ints(x, y)))
        .collect();
    // Centroid with a small lattice jitter keeping it well interior.
    let jx = rng.gen_range(-40..=40i64);
    let jy = rng.gen_range(-40..=40i64);
    let center = Point2::new(
        rat_int(30) + rat(jx, LATTICE),
        rat(52, 3) + rat(jy, LATTICE),
    );
    out.push(Region::point_mass(3, center));
    out
}
