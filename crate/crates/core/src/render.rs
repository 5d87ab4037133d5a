//! Deterministic SVG figures. Numbers are printed with fixed precision so the
//! same inputs always give the same bytes.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::PipelineError;
use crate::graph::{GraphWindow, LatticePoint, Partition, Trace};
use crate::inflation::{dilate, GeneRecord};
use crate::polygon::GoldenPolygon;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderKind {
    GraphWindow,
    TorusPartition,
    DynpolyOverlay,
    GeneShadow,
}

impl RenderKind {
    pub const ALL: [RenderKind; 4] =
        [RenderKind::GraphWindow, RenderKind::TorusPartition, RenderKind::DynpolyOverlay, RenderKind::GeneShadow];

    pub fn name(self) -> &'static str {
        match self {
            RenderKind::GraphWindow => "graph-window",
            RenderKind::TorusPartition => "torus-partition",
            RenderKind::DynpolyOverlay => "dynpoly-overlay",
            RenderKind::GeneShadow => "gene-shadow",
        }
    }
}

impl FromStr for RenderKind {
    type Err = PipelineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RenderKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| PipelineError::UnknownRender(s.to_string()))
    }
}

/// Fill colour for polygon type `k`, spread around the hue circle.
pub fn type_colour(k: usize) -> String {
    let h = ((k * 137) % 360) as f64 / 60.0;
    let l = if k.is_multiple_of(2) { 0.60 } else { 0.72 };
    let c = (1.0 - (2.0 * l - 1.0f64).abs()) * 0.65;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

struct Svg {
    body: String,
    width: f64,
    height: f64,
}

impl Svg {
    fn new(width: f64, height: f64) -> Self {
        Svg { body: String::new(), width, height }
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str, extra: &str) {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="0.5"{extra}/>"#,
            coords.join(" ")
        );
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{stroke}" stroke-width="{width}"/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            coords.join(" ")
        );
    }

    fn circle(&mut self, c: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{:.3}" cy="{:.3}" r="{r}" fill="{fill}"/>"#, c.0, c.1);
    }

    fn text(&mut self, at: (f64, f64), size: f64, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{:.3}" y="{:.3}" font-size="{size}" font-family="monospace" text-anchor="middle">{s}</text>"#,
            at.0, at.1
        );
    }

    fn finish(self, defs: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{defs}<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

/// The graph on its window, one unit per `cell` pixels, `y` up. Vertices are
/// coloured by type, the traced strand through the origin is drawn thick and
/// the origin is the black dot.
pub fn graph_window(g: &GraphWindow, strand: Option<&Trace>, cell: f64) -> String {
    let r = g.radius as f64;
    let size = (2.0 * r + 2.0) * cell;
    let at = |p: LatticePoint| ((p.x as f64 + r + 1.0) * cell, size - (p.y as f64 + r + 1.0) * cell);
    let mut svg = Svg::new(size, size);
    for (a, b) in &g.edges {
        if g.contains(*a) && g.contains(*b) {
            svg.line(at(*a), at(*b), "#555", 1.0);
        }
    }
    if let Some(t) = strand {
        let pts: Vec<(f64, f64)> = t.vertices.iter().filter(|v| g.contains(**v)).map(|v| at(*v)).collect();
        svg.polyline(&pts, "#c00", 2.5);
    }
    let mut pts: Vec<_> = g.types.iter().collect();
    pts.sort();
    for (p, k) in pts {
        svg.circle(at(*p), cell * 0.18, &type_colour(*k));
    }
    svg.circle(at(LatticePoint::new(0, 0)), cell * 0.3, "black");
    svg.finish("")
}

/// Polygons of the torus partition drawn on the unit square, `scale` pixels
/// per unit, `y` up. Every lattice translate meeting the square is drawn and
/// clipped to it.
fn torus_frame(partition: &Partition, scale: f64, labels: bool) -> (Svg, String) {
    let mut svg = Svg::new(scale, scale);
    let at = |x: f64, y: f64| (x * scale, scale - y * scale);
    let mut layer = String::new();
    for (idx, poly) in partition.polygons.iter().enumerate() {
        for (i, j) in translates(poly) {
            let pts: Vec<(f64, f64)> =
                poly.vertices.iter().map(|v| v.to_f64()).map(|(x, y)| at(x + i, y + j)).collect();
            svg.polygon(&pts, &type_colour(idx + 1), "#333", r#" clip-path="url(#unit)""#);
            if labels {
                let (cx, cy) = poly.centroid_f64();
                let (x, y) = (cx + i, cy + j);
                if (0.0..1.0).contains(&x) && (0.0..1.0).contains(&y) {
                    let c = at(x, y);
                    let _ = writeln!(
                        layer,
                        r#"<text x="{:.3}" y="{:.3}" font-size="{:.1}" font-family="monospace" text-anchor="middle">{}</text>"#,
                        c.0,
                        c.1,
                        scale / 60.0,
                        idx + 1
                    );
                }
            }
        }
    }
    let defs = format!("<defs><clipPath id=\"unit\"><rect width=\"{scale}\" height=\"{scale}\"/></clipPath></defs>\n");
    svg.body.push_str(&layer);
    (svg, defs)
}

fn translates(poly: &GoldenPolygon) -> Vec<(f64, f64)> {
    let b = poly.bbox();
    let mut out = Vec::new();
    for i in -3..=3 {
        for j in -3..=3 {
            let (i, j) = (i as f64, j as f64);
            if b.max.0 + i > 0.0 && b.min.0 + i < 1.0 && b.max.1 + j > 0.0 && b.min.1 + j < 1.0 {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn torus_partition(partition: &Partition, scale: f64) -> String {
    let (svg, defs) = torus_frame(partition, scale, true);
    svg.finish(&defs)
}

/// The partition faded, with each dynamical polygon drawn dark inside its cell.
pub fn dynpoly_overlay(partition: &Partition, polygons: &[GoldenPolygon], scale: f64) -> String {
    let (mut svg, defs) = torus_frame(partition, scale, false);
    svg.body = format!("<g opacity=\"0.35\">\n{}</g>\n", svg.body);
    let at = |x: f64, y: f64| (x * scale, scale - y * scale);
    for poly in polygons {
        for (i, j) in translates(poly) {
            let pts: Vec<(f64, f64)> =
                poly.vertices.iter().map(|v| v.to_f64()).map(|(x, y)| at(x + i, y + j)).collect();
            svg.polygon(&pts, "#222", "#000", r#" clip-path="url(#unit)""#);
        }
    }
    svg.finish(&defs)
}

/// A gene dilated by `phi^3` (blue) over its shadow strand (red), `cell`
/// pixels per unit, `y` up, framed around the shadow.
pub fn gene_shadow(rec: &GeneRecord, cell: f64) -> String {
    let gene: Vec<(f64, f64)> = rec.arrays.vertices(rec.center).into_iter().map(|v| dilate(v).to_f64()).collect();
    let mut shadow: Vec<(f64, f64)> = Vec::new();
    for arr in [&rec.shadow.first, &rec.shadow.second] {
        let mut cur = rec.shadow_center;
        let mut half = vec![cur];
        for o in arr {
            cur = cur + o.step;
            half.push(cur);
        }
        if shadow.is_empty() {
            half.reverse();
            shadow.extend(half.iter().map(|v| (v.x as f64, v.y as f64)));
        } else {
            shadow.extend(half.iter().skip(1).map(|v| (v.x as f64, v.y as f64)));
        }
    }
    let all = gene.iter().chain(&shadow);
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (x, y) in all {
        lo = (lo.0.min(*x), lo.1.min(*y));
        hi = (hi.0.max(*x), hi.1.max(*y));
    }
    let (w, h) = ((hi.0 - lo.0 + 4.0) * cell, (hi.1 - lo.1 + 4.0) * cell);
    let at = |(x, y): (f64, f64)| ((x - lo.0 + 2.0) * cell, h - (y - lo.1 + 2.0) * cell);
    let mut svg = Svg::new(w, h);
    svg.polyline(&shadow.iter().map(|p| at(*p)).collect::<Vec<_>>(), "#c00", 2.0);
    for p in &shadow {
        svg.circle(at(*p), cell * 0.1, "#c00");
    }
    svg.polyline(&gene.iter().map(|p| at(*p)).collect::<Vec<_>>(), "#06c", 2.0);
    svg.circle(at(gene[3]), cell * 0.2, "#06c");
    svg.text((w / 2.0, cell), cell * 0.6, &format!("gene {}", rec.index));
    svg.finish("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DataSet;

    #[test]
    fn partition_figure_has_every_polygon() {
        let d = DataSet::embedded();
        let svg = torus_partition(&Partition::new(d.partition.clone()), 600.0);
        for k in 1..=26 {
            assert!(svg.contains(&type_colour(k)), "polygon {k}");
        }
        assert_eq!(svg, torus_partition(&Partition::new(d.partition), 600.0));
    }

    #[test]
    fn kinds_parse() {
        for k in RenderKind::ALL {
            assert_eq!(k.name().parse::<RenderKind>().unwrap(), k);
        }
    }
}
