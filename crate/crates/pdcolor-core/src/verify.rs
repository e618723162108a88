//! Verification oracles: coloring validity, planarity, VC-dimension and
//! count identities. Every failed report carries a concrete counterexample
//! that re-verifies on its own.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::UnionComplexity;
use crate::coloring::Coloring;
use crate::geom::{regions_intersect, GeomError, Scene};
use crate::hypergraph::IntersectionHypergraph;
use crate::planarity::{is_planar, kuratowski_certificate, KuratowskiCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// A hyperedge violating the checked property.
    Hyperedge(Vec<usize>),
    /// A shattered vertex subset.
    ShatteredSet(Vec<usize>),
    Kuratowski(KuratowskiCertificate),
    Counts {
        vertices: usize,
        edges: usize,
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    pub details: Option<Counterexample>,
}

impl VerificationReport {
    fn pass(claim: &str) -> Self {
        VerificationReport {
            claim: String::from(claim),
            passed: true,
            details: None,
        }
    }
    fn fail(claim: &str, details: Counterexample) -> Self {
        VerificationReport {
            claim: String::from(claim),
            passed: false,
            details: Some(details),
        }
    }
}

/// No hyperedge of size >= 2 may be monochromatic.
pub fn check_proper(hg: &IntersectionHypergraph, col: &Coloring) -> VerificationReport {
    assert_eq!(col.colors.len(), hg.n, "coloring length mismatch");
    for he in hg.hyperedges() {
        let first = col.colors[he[0]];
        if he.iter().all(|&v| col.colors[v] == first) {
            return VerificationReport::fail("proper", Counterexample::Hyperedge(he.clone()));
        }
    }
    VerificationReport::pass("proper")
}

/// Every hyperedge must contain a color occurring exactly once within it.
pub fn check_conflict_free(hg: &IntersectionHypergraph, col: &Coloring) -> VerificationReport {
    assert_eq!(col.colors.len(), hg.n, "coloring length mismatch");
    for he in hg.hyperedges() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in he {
            *counts.entry(col.colors[v]).or_insert(0) += 1;
        }
        if !counts.values().any(|&c| c == 1) {
            return VerificationReport::fail(
                "conflict-free",
                Counterexample::Hyperedge(he.clone()),
            );
        }
    }
    VerificationReport::pass("conflict-free")
}

pub fn check_planarity(g: &crate::hypergraph::Graph) -> VerificationReport {
    if is_planar(g) {
        VerificationReport::pass("planar")
    } else {
        let cert = kuratowski_certificate(g).expect("non-planar graph has a certificate");
        VerificationReport::fail("planar", Counterexample::Kuratowski(cert))
    }
}

/// Largest d such that some d-subset of vertices is shattered by the trace
/// family. The hypergraph drops hyperedges of size <= 1, so shattering a
/// pair needs singleton and empty traces; with `include_small_traces` those
/// are reconstructed from the scene's witnesses (regions of F meeting at
/// most one member), plus the empty trace.
pub fn vc_dimension(
    hg: &IntersectionHypergraph,
    include_small_traces: bool,
    scene: Option<&Scene>,
) -> Result<usize, GeomError> {
    if hg.n > 25 {
        return Err(GeomError::InvalidRegion(String::from(
            "VC-dimension brute force limited to 25 vertices",
        )));
    }
    let traces = trace_masks(hg, include_small_traces, scene);
    Ok(vc_subset_first(hg.n, &traces))
}

fn trace_masks(
    hg: &IntersectionHypergraph,
    include_small_traces: bool,
    scene: Option<&Scene>,
) -> Vec<u32> {
    let mut traces: Vec<u32> = hg
        .hyperedges()
        .map(|he| he.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    // The empty trace is always realized (a region meeting no member);
    // singleton traces need witnesses and are gated by the flag.
    traces.push(0);
    if include_small_traces {
        if let Some(scene) = scene {
            if let Some(fs) = scene.explicit_f() {
                for f in fs {
                    let members: Vec<usize> = scene
                        .b
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| regions_intersect(b, f))
                        .map(|(i, _)| i)
                        .collect();
                    if members.len() == 1 {
                        traces.push(1 << members[0]);
                    }
                }
            }
        }
    }
    traces.sort_unstable();
    traces.dedup();
    traces
}

/// Subset-first enumeration: for every candidate subset, check that each of
/// its subsets arises as a projection of some trace.
pub fn vc_subset_first(n: usize, traces: &[u32]) -> usize {
    let mut best = usize::MAX;
    for d in 0.. {
        if d > n || !any_shattered(n, traces, d, &mut |_| {}) {
            break;
        }
        best = d;
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Returns a shattered subset of the given size, if any.
pub fn shattered_subset(
    hg: &IntersectionHypergraph,
    include_small_traces: bool,
    scene: Option<&Scene>,
    size: usize,
) -> Option<Vec<usize>> {
    let traces = trace_masks(hg, include_small_traces, scene);
    let mut found: Option<u32> = None;
    any_shattered(hg.n, &traces, size, &mut |mask| {
        if found.is_none() {
            found = Some(mask);
        }
    });
    found.map(|mask| (0..hg.n).filter(|&v| mask & (1 << v) != 0).collect())
}

fn any_shattered(n: usize, traces: &[u32], d: usize, on_found: &mut impl FnMut(u32)) -> bool {
    if d == 0 {
        // The empty set is shattered iff its single subset is a projection,
        // i.e. iff there is any trace at all.
        if !traces.is_empty() {
            on_found(0);
            return true;
        }
        return false;
    }
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let mask: u32 = subset.iter().fold(0, |m, &v| m | (1 << v));
        let mut seen: u64 = 0;
        for &t in traces {
            let proj = t & mask;
            // Compress the projection into a small index.
            let mut idx = 0usize;
            for (k, &v) in subset.iter().enumerate() {
                if proj & (1 << v) != 0 {
                    idx |= 1 << k;
                }
            }
            seen |= 1 << idx;
        }
        if seen.count_ones() as usize == 1 << d {
            on_found(mask);
            return true;
        }
        // Next combination.
        let mut k = d;
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if subset[k] < n - (d - k) {
                subset[k] += 1;
                for j in k + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Trace-first enumeration used as an independent cross-check: collects the
/// projection set per candidate subset by iterating over traces outermost.
pub fn vc_trace_first(n: usize, traces: &[u32]) -> usize {
    use alloc::collections::BTreeSet;
    let all_masks: Vec<u32> = (0..(1u32 << n)).collect();
    let mut best = 0usize;
    for &mask in &all_masks {
        let d = mask.count_ones() as usize;
        if d <= best {
            continue;
        }
        let mut projections: BTreeSet<u32> = BTreeSet::new();
        for &t in traces {
            projections.insert(t & mask);
        }
        if projections.len() == 1 << d {
            best = d;
        }
    }
    best
}

/// Ratio table entry for the census report: hyperedges of size at most k
/// against k^3 * n.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRatio {
    pub k: usize,
    pub cumulative: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct CountBoundsReport {
    /// The union-boundary inequality v <= e <= v + n, asserted exactly.
    pub report: VerificationReport,
    /// Report-only ratio table (no assertable constant exists).
    pub ratios: Vec<CensusRatio>,
}

pub fn check_count_bounds(
    union: &UnionComplexity,
    n_regions: usize,
    census: &BTreeMap<usize, usize>,
) -> CountBoundsReport {
    let (v, e) = (union.vertex_count, union.edge_count);
    let report = if v <= e && e <= v + n_regions {
        VerificationReport::pass("union-counts")
    } else {
        VerificationReport::fail(
            "union-counts",
            Counterexample::Counts {
                vertices: v,
                edges: e,
                n: n_regions,
            },
        )
    };
    let mut ratios = Vec::new();
    let mut cumulative = 0usize;
    for (&k, &count) in census {
        cumulative += count;
        let denom = (k * k * k * n_regions.max(1)) as f64;
        ratios.push(CensusRatio {
            k,
            cumulative,
            ratio: cumulative as f64 / denom,
        });
    }
    CountBoundsReport { report, ratios }
}
