use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use pdcolor::error::CliError;
use pdcolor::formats::{
    coloring_from_file, coloring_to_file, hypergraph_from_file, hypergraph_to_file, read_json,
    report_line, scene_from_file, scene_to_file, write_atomic, write_json, ColoringFile, Header,
    HypergraphFile, SceneFile,
};
use pdcolor::suite;
use pdcolor_core::coloring::{conflict_free_coloring, greedy_hypergraph_coloring, proper_color_hypergraph, Coloring};
use pdcolor_core::constructions::{
    gen_bear_ears, gen_homothets, gen_k4_points, gen_random_disks, gen_random_points,
};
use pdcolor_core::geom::{FamilyDesc, GeomError, Rat, RegionKind};
use pdcolor_core::hypergraph::{
    build_intersection_hypergraph, delaunay_graph, hyperedge_census, point_closure,
    restricted_delaunay_graph, witnesses_reverify, ClosureSampling,
};
use pdcolor_core::verify::{
    check_conflict_free, check_count_bounds, check_planarity, check_proper, vc_dimension,
    VerificationReport,
};
use pdcolor_core::{IntersectionHypergraph, Point2, Scene};

#[derive(Parser, Debug)]
#[command(name = "pdcolor", version, about = "Intersection hypergraphs of pseudo-disk families: generation, coloring, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    RandomDisks,
    Homothets,
    RandomPoints,
    BearEars,
    K4Points,
}

#[derive(Subcommand, Clone, Debug)]
enum Command {
    /// Generate a scene file from a named construction.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also generate this many regions for the family F (same kind,
        /// derived seed); 0 leaves F as the all-points family.
        #[arg(long, default_value_t = 0)]
        wrt: usize,
        #[arg(long, default_value_t = 0.8)]
        radius_min: f64,
        #[arg(long, default_value_t = 2.5)]
        radius_max: f64,
        /// Bounding box as x0,y0,x1,y1.
        #[arg(long, default_value = "0,0,12,12")]
        bbox: String,
        /// Epsilon for the bear-ears construction, as a rational string.
        #[arg(long)]
        epsilon: Option<String>,
        /// JSON file with a polygon vertex list for homothet bases.
        #[arg(long)]
        base_polygon: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the intersection hypergraph of a scene.
    Hypergraph {
        #[arg(long)]
        input: PathBuf,
        /// Point-close the hypergraph after building it.
        #[arg(long)]
        close: bool,
        /// Grid step for closure sampling (rational); omit to sample from
        /// the arrangement of a polygonal scene.
        #[arg(long)]
        grid_step: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Properly color a hypergraph, aiming for four colors.
    Color {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Conflict-free color a scene's hypergraph by iterated proper coloring.
    Cfcolor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        grid_step: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every applicable checker and write a JSONL report.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        fail_fast: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate arrangement, census, and palette statistics as CSV.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a scene (optionally with a coloring) to SVG.
    Svg {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = 128)]
        approx_vertices: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the full acceptance battery.
    Suite {
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        fail_fast: bool,
        /// Directory for the JSONL report (printed to stdout regardless).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    /// Debug rendering with the output path cleared: artifacts must be
    /// byte-identical for the same logical configuration, wherever they
    /// are written.
    fn config_string(&self) -> String {
        let mut c = self.clone();
        match &mut c {
            Command::Gen { out, .. }
            | Command::Hypergraph { out, .. }
            | Command::Color { out, .. }
            | Command::Cfcolor { out, .. }
            | Command::Stats { out, .. }
            | Command::Svg { out, .. } => *out = PathBuf::new(),
            Command::Verify { out, .. } | Command::Suite { out, .. } => *out = None,
        }
        format!("{c:?}")
    }
}

fn parse_bbox(s: &str) -> Result<(f64, f64, f64, f64), CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse(format!("bad bbox {s:?}: {e}")))?;
    if parts.len() != 4 {
        return Err(CliError::Parse(format!("bbox needs 4 numbers, got {s:?}")));
    }
    Ok((parts[0], parts[1], parts[2], parts[3]))
}

fn parse_rat_arg(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s).map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

fn sampling_for(scene: &Scene, grid_step: &Option<String>) -> Result<ClosureSampling, CliError> {
    match grid_step {
        Some(s) => Ok(ClosureSampling::Grid {
            step: parse_rat_arg(s)?,
        }),
        None => {
            let polygonal = scene
                .b
                .iter()
                .all(|r| matches!(r.kind, RegionKind::ConvexPolygon(_)));
            if polygonal {
                Ok(ClosureSampling::Arrangement)
            } else {
                // Curved scenes have no exact arrangement; fall back to a
                // unit grid.
                Ok(ClosureSampling::Grid {
                    step: pdcolor_core::geom::rat(1, 2),
                })
            }
        }
    }
}

fn load_scene(path: &PathBuf) -> Result<(Scene, String), CliError> {
    let (file, hash) = read_json::<SceneFile>(path)?;
    Ok((scene_from_file(&file)?, hash))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.command.config_string();
    match cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            wrt,
            radius_min,
            radius_max,
            ref bbox,
            ref epsilon,
            ref base_polygon,
            ref out,
        } => {
            let bbox = parse_bbox(bbox)?;
            let rr = (radius_min, radius_max);
            let scene = match kind {
                GenKind::RandomDisks => {
                    let b = gen_random_disks(n, seed, rr, bbox, 0);
                    let f = if wrt > 0 {
                        FamilyDesc::Explicit(gen_random_disks(wrt, seed ^ 0xf00d, rr, bbox, 100_000))
                    } else {
                        FamilyDesc::AllPoints
                    };
                    Scene::new(b, f)?
                }
                GenKind::Homothets => {
                    let base: Vec<Point2> = match base_polygon {
                        Some(p) => {
                            let (file, _) = read_json::<Vec<[String; 2]>>(p)?;
                            file.iter()
                                .map(|[x, y]| {
                                    Ok::<_, CliError>(Point2::new(parse_rat_arg(x)?, parse_rat_arg(y)?))
                                })
                                .collect::<Result<_, _>>()?
                        }
                        None => vec![
                            Point2::from_ints(0, 0),
                            Point2::from_ints(4, 0),
                            Point2::from_ints(6, 3),
                            Point2::from_ints(3, 6),
                            Point2::from_ints(-1, 3),
                        ],
                    };
                    let b = gen_homothets(&base, n, seed, (0.4, 1.4), bbox, 0)?;
                    let f = if wrt > 0 {
                        FamilyDesc::Explicit(gen_homothets(
                            &base,
                            wrt,
                            seed ^ 0xf00d,
                            (0.4, 1.4),
                            bbox,
                            100_000,
                        )?)
                    } else {
                        FamilyDesc::AllPoints
                    };
                    Scene::new(b, f)?
                }
                GenKind::RandomPoints => {
                    let b = gen_random_points(n, seed, bbox, 0);
                    let f = if wrt > 0 {
                        FamilyDesc::Explicit(gen_random_disks(wrt, seed ^ 0xf00d, rr, bbox, 100_000))
                    } else {
                        FamilyDesc::AllPoints
                    };
                    Scene::new(b, f)?
                }
                GenKind::BearEars => {
                    let eps = epsilon.as_deref().map(parse_rat_arg).transpose()?;
                    let be = gen_bear_ears(n, eps)?;
                    Scene::new(be.points, FamilyDesc::Explicit(be.ears))?
                }
                GenKind::K4Points => {
                    let b = gen_k4_points(seed);
                    let f = if wrt > 0 {
                        FamilyDesc::Explicit(gen_random_disks(
                            wrt.max(4),
                            seed ^ 0xf00d,
                            (4.0, 40.0),
                            (-15.0, -15.0, 75.0, 67.0),
                            100_000,
                        ))
                    } else {
                        FamilyDesc::AllPoints
                    };
                    Scene::new(b, f)?
                }
            };
            write_json(out, &scene_to_file(&scene, Header::new(config, None)))?;
        }
        Command::Hypergraph {
            ref input,
            close,
            ref grid_step,
            ref out,
        } => {
            let (scene, hash) = load_scene(input)?;
            let hg = match scene.explicit_f() {
                Some(_) => build_intersection_hypergraph(&scene)?,
                None => IntersectionHypergraph::new(scene.b.len()),
            };
            let hg = if close || scene.explicit_f().is_none() {
                point_closure(&scene, &hg, &sampling_for(&scene, grid_step)?)?
            } else {
                hg
            };
            write_json(out, &hypergraph_to_file(&hg, Header::new(config, Some(hash))))?;
        }
        Command::Color {
            ref input,
            ref hypergraph,
            budget,
            ref out,
        } => {
            let (scene, hash) = load_scene(input)?;
            let (hg_file, _) = read_json::<HypergraphFile>(hypergraph)?;
            let hg = hypergraph_from_file(&hg_file)?;
            if hg.n != scene.b.len() {
                return Err(CliError::Parse(format!(
                    "hypergraph has {} vertices, scene has {}",
                    hg.n,
                    scene.b.len()
                )));
            }
            let c = proper_color_hypergraph(&scene, &hg, budget);
            write_json(out, &coloring_to_file(&c, Header::new(config, Some(hash))))?;
            if !c.optimal {
                return Err(CliError::Budget(format!(
                    "exact search fell back to a greedy palette of {}",
                    c.palette_size
                )));
            }
        }
        Command::Cfcolor {
            ref input,
            budget,
            ref grid_step,
            ref out,
        } => {
            let (scene, hash) = load_scene(input)?;
            let hg = build_intersection_hypergraph(&scene)?;
            let sampling = sampling_for(&scene, grid_step)?;
            let mut colorer = |sub: &Scene| -> Result<Coloring, GeomError> {
                let sub_hg = build_intersection_hypergraph(sub)?;
                let closed = point_closure(sub, &sub_hg, &sampling)?;
                Ok(proper_color_hypergraph(sub, &closed, budget))
            };
            let cf = conflict_free_coloring(&scene, &hg, &mut colorer)?;
            write_json(out, &coloring_to_file(&cf, Header::new(config, Some(hash))))?;
            let check = check_conflict_free(&hg, &cf);
            if !check.passed {
                return Err(CliError::VerifyFailed("coloring is not conflict-free".into()));
            }
        }
        Command::Verify {
            ref input,
            ref hypergraph,
            ref coloring,
            fail_fast,
            ref out,
        } => {
            let (scene, hash) = load_scene(input)?;
            let mut reports: Vec<VerificationReport> = Vec::new();
            let hg = match hypergraph {
                Some(p) => {
                    let (file, _) = read_json::<HypergraphFile>(p)?;
                    let hg = hypergraph_from_file(&file)?;
                    reports.push(match witnesses_reverify(&scene, &hg) {
                        Ok(()) => VerificationReport {
                            claim: "witnesses-reverify".into(),
                            passed: true,
                            details: None,
                        },
                        Err(bad) => VerificationReport {
                            claim: "witnesses-reverify".into(),
                            passed: false,
                            details: Some(pdcolor_core::verify::Counterexample::Hyperedge(bad)),
                        },
                    });
                    hg
                }
                None => match scene.explicit_f() {
                    Some(_) => build_intersection_hypergraph(&scene)?,
                    None => point_closure(
                        &scene,
                        &IntersectionHypergraph::new(scene.b.len()),
                        &sampling_for(&scene, &None)?,
                    )?,
                },
            };
            reports.push(check_planarity(&delaunay_graph(&hg)));
            if scene.explicit_f().is_some() {
                if let Ok(r) = restricted_delaunay_graph(&scene, &hg) {
                    reports.push(check_planarity(&r.graph));
                }
            }
            if let Some(p) = coloring {
                let (file, _) = read_json::<ColoringFile>(p)?;
                let c = coloring_from_file(&file);
                reports.push(check_proper(&hg, &c));
                // Only colorings that claim conflict-freeness are held to it;
                // a plain proper coloring is not expected to satisfy it.
                if c.method == "conflict-free" {
                    reports.push(check_conflict_free(&hg, &c));
                }
            }
            if hg.n <= 15 {
                if let Ok(d) = vc_dimension(&hg, true, Some(&scene)) {
                    reports.push(VerificationReport {
                        claim: format!("vc-dimension-{d}-at-most-4"),
                        passed: d <= 4,
                        details: None,
                    });
                }
            }
            let polygonal = scene
                .b
                .iter()
                .all(|r| matches!(r.kind, RegionKind::ConvexPolygon(_)));
            if polygonal && !scene.b.is_empty() {
                let arr = pdcolor_core::arrangement::build_arrangement(&scene.b)?;
                let census = hyperedge_census(&hg, hg.n.max(2));
                reports.push(
                    check_count_bounds(&arr.union_complexity(), scene.b.len(), &census).report,
                );
            }

            let mut emitted = Vec::new();
            let mut failed = false;
            for r in &reports {
                emitted.push(serde_json::to_string(&report_line(r)).unwrap());
                if !r.passed {
                    failed = true;
                    if fail_fast {
                        break;
                    }
                }
            }
            let body = emitted.join("\n") + "\n";
            match out {
                Some(p) => write_atomic(p, body.as_bytes())?,
                None => print!("{body}"),
            }
            let _ = hash;
            if failed {
                return Err(CliError::VerifyFailed("see report".into()));
            }
        }
        Command::Stats {
            ref input,
            ref out,
        } => {
            let (scene, hash) = load_scene(input)?;
            let hg = match scene.explicit_f() {
                Some(_) => build_intersection_hypergraph(&scene)?,
                None => point_closure(
                    &scene,
                    &IntersectionHypergraph::new(scene.b.len()),
                    &sampling_for(&scene, &None)?,
                )?,
            };
            let census = hyperedge_census(&hg, hg.n.max(2));
            let greedy = greedy_hypergraph_coloring(&hg);
            let mut rows = vec![
                "# config,input_hash".to_string(),
                format!("# {},{}", config.replace(',', ";"), hash),
                "metric,value".to_string(),
                format!("regions,{}", scene.b.len()),
                format!("hyperedges,{}", hg.len()),
                format!("delaunay_edges,{}", delaunay_graph(&hg).edge_count()),
                format!("greedy_palette,{}", greedy.palette_size),
            ];
            for (k, c) in &census {
                if *c > 0 {
                    rows.push(format!("census_k{k},{c}"));
                }
            }
            let polygonal = scene
                .b
                .iter()
                .all(|r| matches!(r.kind, RegionKind::ConvexPolygon(_)));
            if polygonal && !scene.b.is_empty() {
                let arr = pdcolor_core::arrangement::build_arrangement(&scene.b)?;
                let u = arr.union_complexity();
                rows.push(format!("arrangement_vertices,{}", arr.vertices.len()));
                rows.push(format!("arrangement_faces,{}", arr.faces.len()));
                rows.push(format!("union_vertices,{}", u.vertex_count));
                rows.push(format!("union_edges,{}", u.edge_count));
            }
            write_atomic(out, (rows.join("\n") + "\n").as_bytes())?;
        }
        Command::Svg {
            ref input,
            ref coloring,
            approx_vertices,
            ref out,
        } => {
            let (scene, _) = load_scene(input)?;
            let c = match coloring {
                Some(p) => {
                    let (file, _) = read_json::<ColoringFile>(p)?;
                    Some(coloring_from_file(&file))
                }
                None => None,
            };
            let svg = pdcolor::svg::render_scene(&scene, c.as_ref(), approx_vertices);
            write_atomic(out, svg.as_bytes())?;
        }
        Command::Suite {
            budget,
            fail_fast,
            ref out,
        } => {
            let cfg = suite::SuiteConfig {
                budget,
                fail_fast,
                threads: suite::thread_count(),
            };
            let results = suite::run_all(&cfg);
            let mut lines = Vec::new();
            for r in &results {
                let line = suite::format_line(r);
                println!("{line}");
                lines.push(
                    serde_json::json!({
                        "criterion": r.index,
                        "name": r.name,
                        "passed": r.passed,
                        "seconds": r.seconds,
                        "details": r.details,
                    })
                    .to_string(),
                );
            }
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                write_atomic(&dir.join("suite.jsonl"), (lines.join("\n") + "\n").as_bytes())?;
            }
            if results.iter().any(|r| !r.passed) {
                return Err(CliError::VerifyFailed("acceptance criteria failed".into()));
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
