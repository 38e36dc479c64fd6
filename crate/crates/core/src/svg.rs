//! Deterministic SVG rendering of planar scenes.
//!
//! Geometry is emitted in world coordinates inside one group whose
//! transform maps the square viewport onto the canvas with the y axis
//! pointing up. Numbers are printed with at most six decimals, so equal
//! scenes render to identical bytes.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::arcs::{unit, ArcSet};
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::region::ArcRegion;

const CANVAS: f64 = 600.0;
/// Arcs narrower than this are drawn as ticks instead of sectors.
const TICK_WIDTH: f64 = 1e-6;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Direction arcs attached to one base point.
#[derive(Debug, Clone)]
pub struct PointArcs {
    pub base: Point,
    pub arcs: ArcSet,
}

/// Everything that can appear in one picture. All members are optional.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub title: Option<String>,
    pub points: Vec<Point>,
    pub arcs: Vec<PointArcs>,
    pub region: Option<ArcRegion>,
    /// Dashed certificate circles `(center, radius)`.
    pub circles: Vec<(Point, f64)>,
}

impl Scene {
    pub fn with_set(set: &PointSet) -> Self {
        Scene {
            points: set.points().to_vec(),
            ..Scene::default()
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

struct Viewport {
    min_x: f64,
    max_y: f64,
    side: f64,
}

impl Viewport {
    fn scale(&self) -> f64 {
        CANVAS / self.side
    }
}

fn viewport(scene: &Scene) -> Option<Viewport> {
    let mut boxes: Vec<[f64; 4]> = Vec::new();
    for p in &scene.points {
        boxes.push([p.x(), p.y(), p.x(), p.y()]);
    }
    for a in &scene.arcs {
        boxes.push([a.base.x(), a.base.y(), a.base.x(), a.base.y()]);
    }
    for (c, r) in &scene.circles {
        boxes.push([c.x() - r, c.y() - r, c.x() + r, c.y() + r]);
    }
    if let Some(region) = &scene.region {
        let r = region.radius;
        for arc in &region.boundary {
            let c = &arc.center;
            boxes.push([c.x() - r, c.y() - r, c.x() + r, c.y() + r]);
        }
    }
    let first = *boxes.first()?;
    let b = boxes.iter().fold(first, |acc, b| {
        [
            acc[0].min(b[0]),
            acc[1].min(b[1]),
            acc[2].max(b[2]),
            acc[3].max(b[3]),
        ]
    });
    let extent = (b[2] - b[0]).max(b[3] - b[1]);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let side = 1.2 * extent;
    let cx = 0.5 * (b[0] + b[2]);
    let cy = 0.5 * (b[1] + b[3]);
    Some(Viewport {
        min_x: cx - 0.5 * side,
        max_y: cy + 0.5 * side,
        side,
    })
}

fn check_planar(p: &Point) -> Result<()> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar(p.dim()));
    }
    Ok(())
}

/// Renders `scene` to an SVG document.
pub fn render_svg(scene: &Scene) -> Result<String> {
    for p in scene
        .points
        .iter()
        .chain(scene.arcs.iter().map(|a| &a.base))
        .chain(scene.circles.iter().map(|(c, _)| c))
    {
        check_planar(p)?;
    }
    let vp = viewport(scene).unwrap_or(Viewport {
        min_x: -0.6,
        max_y: 0.6,
        side: 1.2,
    });
    let s = vp.scale();
    let px = 1.0 / s;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = num(CANVAS)
    );
    if let Some(t) = &scene.title {
        let _ = writeln!(out, "<title>{}</title>", escape(t));
    }
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<g transform="matrix({} 0 0 {} {} {})">"#,
        num(s),
        num(-s),
        num(-vp.min_x * s),
        num(vp.max_y * s)
    );

    if let Some(region) = &scene.region {
        write_region(&mut out, region, px);
    }
    for (c, r) in &scene.circles {
        let _ = writeln!(
            out,
            r##"<circle class="certificate" cx="{}" cy="{}" r="{}" fill="none" stroke="#555555" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
            num(c.x()),
            num(c.y()),
            num(*r),
            num(px),
            num(6.0 * px),
            num(4.0 * px)
        );
    }
    let sector = 0.12 * vp.side;
    for (k, pa) in scene.arcs.iter().enumerate() {
        write_arcs(&mut out, pa, sector, PALETTE[k % PALETTE.len()], px);
    }
    for p in &scene.points {
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(p.x()),
            num(p.y()),
            num(2.0 * px)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn deg(theta: f64) -> String {
    format!("{:.3}°", theta.to_degrees())
}

fn write_arcs(out: &mut String, pa: &PointArcs, len: f64, color: &str, px: f64) {
    let (bx, by) = (pa.base.x(), pa.base.y());
    if pa.arcs.is_full() {
        let _ = writeln!(
            out,
            r#"<circle class="sector" cx="{}" cy="{}" r="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="{}"><title>all directions</title></circle>"#,
            num(bx),
            num(by),
            num(len),
            num(px)
        );
        return;
    }
    for (a, b) in pa.arcs.arcs() {
        if b - a < TICK_WIDTH {
            let t = 0.5 * (a + b);
            let [ux, uy] = unit(t);
            let _ = writeln!(
                out,
                r#"<line class="tick" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"><title>{}</title></line>"#,
                num(bx),
                num(by),
                num(bx + len * ux),
                num(by + len * uy),
                num(2.0 * px),
                deg(t.rem_euclid(TAU))
            );
            continue;
        }
        let [ax, ay] = unit(a);
        let [ex, ey] = unit(b);
        let large = u8::from(b - a > std::f64::consts::PI);
        let _ = writeln!(
            out,
            r#"<path class="sector" d="M {} {} L {} {} A {} {} 0 {large} 1 {} {} Z" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="{}"><title>{} to {}</title></path>"#,
            num(bx),
            num(by),
            num(bx + len * ax),
            num(by + len * ay),
            num(len),
            num(len),
            num(bx + len * ex),
            num(by + len * ey),
            num(px),
            deg(a),
            deg(b.rem_euclid(TAU))
        );
    }
}

fn write_region(out: &mut String, region: &ArcRegion, px: f64) {
    if region.is_empty() || region.boundary.is_empty() {
        return;
    }
    let r = region.radius;
    if region.is_full_disk() {
        let c = &region.boundary[0].center;
        let _ = writeln!(
            out,
            r##"<circle class="region" cx="{}" cy="{}" r="{}" fill="#e8e8ff" stroke="#3333aa" stroke-width="{}"/>"##,
            num(c.x()),
            num(c.y()),
            num(r),
            num(px)
        );
        return;
    }
    let start = region.boundary[0].start_point(r);
    let mut d = format!("M {} {}", num(start.x()), num(start.y()));
    for arc in &region.boundary {
        let e = arc.end_point(r);
        let large = u8::from(arc.sweep() > std::f64::consts::PI);
        let _ = write!(
            d,
            " A {} {} 0 {large} 1 {} {}",
            num(r),
            num(r),
            num(e.x()),
            num(e.y())
        );
    }
    d.push_str(" Z");
    let _ = writeln!(
        out,
        r##"<path class="region" d="{d}" fill="#e8e8ff" stroke="#3333aa" stroke-width="{}"/>"##,
        num(px)
    );
}
