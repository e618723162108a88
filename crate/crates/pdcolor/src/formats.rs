//! JSON scene/hypergraph/coloring files, JSONL reports, CSV stats.
//!
//! Rationals travel as `"num/den"` strings so files stay exact and
//! diff-friendly. Every output embeds the producing config and a SHA-256
//! hash of its input for provenance.

use std::str::FromStr;

use pdcolor_core::geom::{FamilyDesc, RegionKind};
use pdcolor_core::hypergraph::Witness;
use pdcolor_core::verify::{Counterexample, VerificationReport};
use pdcolor_core::{IntersectionHypergraph, Point2, Rat, Region, Scene};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Provenance block written into every artifact.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Header {
    pub tool: String,
    pub version: String,
    /// The full command configuration that produced the file.
    pub config: String,
    /// SHA-256 of the input file bytes, when the command read one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_hash: Option<String>,
}

impl Header {
    pub fn new(config: String, input_hash: Option<String>) -> Self {
        Header {
            tool: "pdcolor".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            input_hash,
        }
    }
}

fn rat_str(r: &Rat) -> String {
    format!("{}", r)
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s.trim()).map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

fn point_json(p: &Point2) -> [String; 2] {
    [rat_str(&p.x), rat_str(&p.y)]
}

fn parse_point(p: &[String; 2]) -> Result<Point2, CliError> {
    Ok(Point2::new(parse_rat(&p[0])?, parse_rat(&p[1])?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionJson {
    Point {
        id: u32,
        center: [String; 2],
    },
    Disk {
        id: u32,
        center: [String; 2],
        radius: String,
    },
    Polygon {
        id: u32,
        vertices: Vec<[String; 2]>,
    },
    Ear {
        id: u32,
        center: [String; 2],
        anchor_a: [String; 2],
        anchor_b: [String; 2],
        disk_radius: String,
        capsule_radius: String,
    },
}

pub fn region_to_json(r: &Region) -> RegionJson {
    match &r.kind {
        RegionKind::PointMass(p) => RegionJson::Point {
            id: r.id,
            center: point_json(p),
        },
        RegionKind::Disk { center, radius } => RegionJson::Disk {
            id: r.id,
            center: point_json(center),
            radius: rat_str(radius),
        },
        RegionKind::ConvexPolygon(vs) => RegionJson::Polygon {
            id: r.id,
            vertices: vs.iter().map(point_json).collect(),
        },
        RegionKind::Ear {
            center,
            anchor_a,
            anchor_b,
            disk_radius,
            capsule_radius,
        } => RegionJson::Ear {
            id: r.id,
            center: point_json(center),
            anchor_a: point_json(anchor_a),
            anchor_b: point_json(anchor_b),
            disk_radius: rat_str(disk_radius),
            capsule_radius: rat_str(capsule_radius),
        },
    }
}

pub fn region_from_json(j: &RegionJson) -> Result<Region, CliError> {
    let bad = |e: pdcolor_core::geom::GeomError| CliError::Parse(format!("invalid region: {e:?}"));
    Ok(match j {
        RegionJson::Point { id, center } => Region::point_mass(*id, parse_point(center)?),
        RegionJson::Disk { id, center, radius } => {
            Region::disk(*id, parse_point(center)?, parse_rat(radius)?).map_err(bad)?
        }
        RegionJson::Polygon { id, vertices } => {
            let vs = vertices
                .iter()
                .map(parse_point)
                .collect::<Result<Vec<_>, _>>()?;
            Region::polygon(*id, vs).map_err(bad)?
        }
        RegionJson::Ear {
            id,
            center,
            anchor_a,
            anchor_b,
            disk_radius,
            capsule_radius,
        } => Region::new(
            *id,
            RegionKind::Ear {
                center: parse_point(center)?,
                anchor_a: parse_point(anchor_a)?,
                anchor_b: parse_point(anchor_b)?,
                disk_radius: parse_rat(disk_radius)?,
                capsule_radius: parse_rat(capsule_radius)?,
            },
        )
        .map_err(bad)?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyJson {
    /// The symbolic all-points family.
    Symbolic(String),
    Explicit(Vec<RegionJson>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SceneFile {
    pub header: Header,
    pub b: Vec<RegionJson>,
    pub f: FamilyJson,
}

pub fn scene_to_file(scene: &Scene, header: Header) -> SceneFile {
    SceneFile {
        header,
        b: scene.b.iter().map(region_to_json).collect(),
        f: match &scene.f {
            FamilyDesc::AllPoints => FamilyJson::Symbolic("all_points".into()),
            FamilyDesc::Explicit(fs) => {
                FamilyJson::Explicit(fs.iter().map(region_to_json).collect())
            }
        },
    }
}

pub fn scene_from_file(file: &SceneFile) -> Result<Scene, CliError> {
    let b = file
        .b
        .iter()
        .map(region_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let f = match &file.f {
        FamilyJson::Symbolic(s) if s == "all_points" => FamilyDesc::AllPoints,
        FamilyJson::Symbolic(s) => {
            return Err(CliError::Parse(format!("unknown symbolic family {s:?}")))
        }
        FamilyJson::Explicit(fs) => FamilyDesc::Explicit(
            fs.iter()
                .map(region_from_json)
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Scene::new(b, f).map_err(|e| CliError::Parse(format!("invalid scene: {e:?}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Region { id: u32 },
    Point { at: [String; 2] },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperedgeJson {
    pub members: Vec<usize>,
    pub witness: WitnessJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub header: Header,
    pub n: usize,
    /// Sorted lexicographically by member list.
    pub hyperedges: Vec<HyperedgeJson>,
}

pub fn hypergraph_to_file(hg: &IntersectionHypergraph, header: Header) -> HypergraphFile {
    HypergraphFile {
        header,
        n: hg.n,
        hyperedges: hg
            .iter()
            .map(|(members, w)| HyperedgeJson {
                members: members.clone(),
                witness: match w {
                    Witness::Region(id) => WitnessJson::Region { id: *id },
                    Witness::Point(p) => WitnessJson::Point { at: point_json(p) },
                },
            })
            .collect(),
    }
}

pub fn hypergraph_from_file(file: &HypergraphFile) -> Result<IntersectionHypergraph, CliError> {
    let mut hg = IntersectionHypergraph::new(file.n);
    for h in &file.hyperedges {
        if h.members.len() < 2 || h.members.iter().any(|&i| i >= file.n) {
            return Err(CliError::Parse(format!("bad hyperedge {:?}", h.members)));
        }
        let w = match &h.witness {
            WitnessJson::Region { id } => Witness::Region(*id),
            WitnessJson::Point { at } => Witness::Point(parse_point(at)?),
        };
        hg.insert(h.members.clone(), w);
    }
    Ok(hg)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringFile {
    pub header: Header,
    pub colors: Vec<usize>,
    pub palette_size: usize,
    pub method: String,
    pub optimal: bool,
}

pub fn coloring_to_file(c: &pdcolor_core::coloring::Coloring, header: Header) -> ColoringFile {
    ColoringFile {
        header,
        colors: c.colors.clone(),
        palette_size: c.palette_size,
        method: c.method.clone(),
        optimal: c.optimal,
    }
}

pub fn coloring_from_file(file: &ColoringFile) -> pdcolor_core::coloring::Coloring {
    pdcolor_core::coloring::Coloring {
        colors: file.colors.clone(),
        palette_size: file.palette_size,
        method: file.method.clone(),
        optimal: file.optimal,
    }
}

/// One line of a JSONL verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportLine {
    pub claim: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

pub fn report_line(r: &VerificationReport) -> ReportLine {
    let counterexample = r.details.as_ref().map(|d| match d {
        Counterexample::Hyperedge(h) => serde_json::json!({ "hyperedge": h }),
        Counterexample::ShatteredSet(s) => serde_json::json!({ "shattered_set": s }),
        Counterexample::Kuratowski(k) => serde_json::json!({
            "kuratowski": format!("{:?}", k.kind),
            "edges": k.edges,
        }),
        Counterexample::Counts { vertices, edges, n } => {
            serde_json::json!({ "vertices": vertices, "edges": edges, "n": n })
        }
    });
    ReportLine {
        claim: r.claim.clone(),
        passed: r.passed,
        counterexample,
    }
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Parse(format!("serialize: {e}")))?;
    write_atomic(path, body.as_bytes())
}

/// Write via a sibling temp file then rename, so readers never see a
/// half-written artifact.
pub fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or_else(|| std::path::Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
    ));
    std::fs::write(&tmp, bytes).map_err(CliError::Io)?;
    std::fs::rename(&tmp, path).map_err(CliError::Io)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(
    path: &std::path::Path,
) -> Result<(T, String), CliError> {
    let bytes = std::fs::read(path).map_err(CliError::Io)?;
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((value, sha256_hex(&bytes)))
}
