//! SVG rendering of scenes: region interiors stack translucent grey so
//! depth reads as darkness, boundaries take palette colors when a
//! coloring is supplied.

use pdcolor_core::coloring::Coloring;
use pdcolor_core::geom::boundary_polyline;
use pdcolor_core::{Region, Scene};

const PALETTE: &[&str] = &[
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
    "#bcbd22", "#8c564b", "#2ca02c", "#d62728", "#9467bd", "#7f7f7f", "#1f77b4", "#ff9896",
    "#c5b0d5", "#c49c94",
];

fn color_for(idx: usize) -> &'static str {
    PALETTE[idx % PALETTE.len()]
}

struct View {
    min_x: f64,
    min_y: f64,
    scale: f64,
    height: f64,
}

impl View {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        // Flip y so the plane's up is the image's up.
        (
            (x - self.min_x) * self.scale + 20.0,
            self.height - ((y - self.min_y) * self.scale + 20.0),
        )
    }
}

fn path_for(r: &Region, view: &View, samples: usize) -> String {
    let pts = boundary_polyline(r, samples);
    if pts.len() == 1 {
        let (x, y) = pts[0].to_f64();
        let (px, py) = view.map(x, y);
        return format!(
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" class=\"pt\"/>"
        );
    }
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = p.to_f64();
        let (px, py) = view.map(x, y);
        d.push_str(if i == 0 { "M" } else { "L" });
        d.push_str(&format!("{px:.2} {py:.2} "));
    }
    d.push('Z');
    format!("<path d=\"{d}\"/>")
}

pub fn render_scene(scene: &Scene, coloring: Option<&Coloring>, samples: usize) -> String {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let fs = scene.explicit_f().unwrap_or(&[]);
    for r in scene.b.iter().chain(fs.iter()) {
        let (x0, y0, x1, y1) = r.bbox_f64();
        min_x = min_x.min(x0);
        min_y = min_y.min(y0);
        max_x = max_x.max(x1);
        max_y = max_y.max(y1);
    }
    if !min_x.is_finite() {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = 760.0 / span;
    let width = (max_x - min_x) * scale + 40.0;
    let height = (max_y - min_y) * scale + 40.0;
    let view = View {
        min_x,
        min_y,
        scale,
        height,
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // F regions first, as faint outlines under everything.
    if !fs.is_empty() {
        out.push_str("<g fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.6\">\n");
        for r in fs {
            out.push_str(&path_for(r, &view, samples));
            out.push('\n');
        }
        out.push_str("</g>\n");
    }

    // Stacked translucent fills: a point of depth d renders with d layers,
    // so darkness is monotone in depth.
    out.push_str("<g fill=\"#333333\" fill-opacity=\"0.13\" stroke=\"none\">\n");
    for r in &scene.b {
        if !r.is_point_mass() {
            out.push_str(&path_for(r, &view, samples));
            out.push('\n');
        }
    }
    out.push_str("</g>\n");

    for (i, r) in scene.b.iter().enumerate() {
        let stroke = match coloring {
            Some(c) if i < c.colors.len() => color_for(c.colors[i]),
            _ => "#222222",
        };
        out.push_str(&format!(
            "<g fill=\"{stroke}\" fill-opacity=\"{}\" stroke=\"{stroke}\" stroke-width=\"1.6\">\n",
            if r.is_point_mass() { "1.0" } else { "0.0" }
        ));
        out.push_str(&path_for(r, &view, samples));
        out.push_str("\n</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdcolor_core::geom::{rat_int, FamilyDesc};
    use pdcolor_core::{Point2, Region};

    #[test]
    fn renders_mixed_scene() {
        let scene = Scene::new(
            vec![
                Region::disk(0, Point2::from_ints(0, 0), rat_int(2)).unwrap(),
                Region::point_mass(1, Point2::from_ints(1, 1)),
            ],
            FamilyDesc::Explicit(vec![
                Region::disk(5, Point2::from_ints(1, 0), rat_int(1)).unwrap()
            ]),
        )
        .unwrap();
        let svg = render_scene(&scene, None, 64);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<circle"));
        assert!(svg.matches("<path").count() >= 2);
    }

    #[test]
    fn coloring_changes_strokes() {
        let scene = Scene::new(
            vec![Region::disk(0, Point2::from_ints(0, 0), rat_int(2)).unwrap()],
            FamilyDesc::AllPoints,
        )
        .unwrap();
        let c = Coloring {
            colors: vec![3],
            palette_size: 4,
            method: "test".into(),
            optimal: true,
        };
        let svg = render_scene(&scene, Some(&c), 64);
        assert!(svg.contains(color_for(3)));
    }
}
