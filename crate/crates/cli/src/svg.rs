//! Fixed-size self-contained SVG report: the pair geometry with boundary
//! samples colored by density, x + rK overlays at the extreme samples, and
//! the density-vs-arclength curve for every scale.

use kdense::density::DensityProfile;
use kdense::{ConvexBody, Result, Vec2};
use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
/// Geometry pane and curve pane, as (x, y, w, h) in page units.
const GEO_PANE: [f64; 4] = [30.0, 70.0, 350.0, 470.0];
const PLOT_PANE: [f64; 4] = [450.0, 70.0, 320.0, 430.0];
const RING_POINTS: usize = 256;
/// Curve axis headroom above the largest possible density value.
const Y_MAX: f64 = 1.05;
const CURVE_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

struct Bounds {
    min: Vec2,
    max: Vec2,
}

impl Bounds {
    fn new() -> Bounds {
        Bounds {
            min: Vec2::new(f64::INFINITY, f64::INFINITY),
            max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Vec2) {
        self.min = Vec2::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Vec2::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    /// Shared world-to-pane transform: uniform scale, centered, y flipped
    /// so the page reads like the plane.
    fn fit(&self, pane: [f64; 4], margin: f64) -> PaneMap {
        let w = (self.max.x - self.min.x).max(1e-12);
        let h = (self.max.y - self.min.y).max(1e-12);
        let scale = ((pane[2] * (1.0 - 2.0 * margin)) / w)
            .min((pane[3] * (1.0 - 2.0 * margin)) / h);
        PaneMap {
            scale,
            cx: 0.5 * (self.min.x + self.max.x),
            cy: 0.5 * (self.min.y + self.max.y),
            px: pane[0] + 0.5 * pane[2],
            py: pane[1] + 0.5 * pane[3],
        }
    }
}

struct PaneMap {
    scale: f64,
    cx: f64,
    cy: f64,
    px: f64,
    py: f64,
}

impl PaneMap {
    fn apply(&self, p: Vec2) -> (f64, f64) {
        (
            self.px + (p.x - self.cx) * self.scale,
            self.py - (p.y - self.cy) * self.scale,
        )
    }
}

fn ring_path(points: &[Vec2], map: &PaneMap) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = map.apply(*p);
        let _ = write!(d, "{}{x:.2} {y:.2}", if i == 0 { "M" } else { " L" });
    }
    d.push_str(" Z");
    d
}

/// Blue-to-red scale over the density range [0, 1].
fn delta_color(delta: f64) -> String {
    let t = delta.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as i64;
    format!("rgb({},{},{})", lerp(37.0, 220.0), lerp(99.0, 38.0), lerp(235.0, 38.0))
}

/// Indices of the smallest and largest value, first occurrence each.
fn extreme_indices(values: &[f64]) -> Option<(usize, usize)> {
    let mut lo = 0;
    let mut hi = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[lo] {
            lo = i;
        }
        if *v > values[hi] {
            hi = i;
        }
    }
    if values.is_empty() {
        None
    } else {
        Some((lo, hi))
    }
}

/// Total boundary length implied by a uniformly spaced sample set.
fn total_arclength(p: &DensityProfile) -> f64 {
    if p.samples.len() >= 2 {
        (p.samples[1].s - p.samples[0].s) * p.samples.len() as f64
    } else {
        1.0
    }
}

pub fn render(g: &ConvexBody, k: &ConvexBody, profiles: &[DensityProfile]) -> Result<String> {
    let g_ring: Vec<Vec2> = g
        .boundary_sample(RING_POINTS)?
        .iter()
        .map(|bp| bp.point)
        .collect();
    let k_ring: Vec<Vec2> = k
        .boundary_sample(RING_POINTS)?
        .iter()
        .map(|bp| bp.point)
        .collect();

    // Overlays sit where the widest profile is most extreme, so an uneven
    // density reads directly off the geometry.
    let focus = profiles.iter().max_by(|a, b| a.r.total_cmp(&b.r));
    let mut overlays: Vec<(Vec2, f64)> = Vec::new();
    if let Some(p) = focus {
        if let Some((lo, hi)) = extreme_indices(&p.deltas) {
            overlays.push((p.samples[lo].point, p.r));
            if hi != lo {
                overlays.push((p.samples[hi].point, p.r));
            }
        }
    }

    let mut bounds = Bounds::new();
    for p in &g_ring {
        bounds.add(*p);
    }
    for p in &k_ring {
        bounds.add(*p);
    }
    for (x, r) in &overlays {
        for p in &k_ring {
            bounds.add(*x + *p * *r);
        }
    }
    let map = bounds.fit(GEO_PANE, 0.06);

    let mut out = String::new();
    let _ = write!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="ui-monospace, Menlo, monospace" font-size="13">"##
    );
    out.push('\n');
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="30" y="32" font-size="17" fill="#111827">K-density report</text>"##
    );
    let _ = writeln!(
        out,
        r##"<text x="30" y="52" fill="#4b5563">G: {}   K: {}</text>"##,
        g.kind_name(),
        k.kind_name()
    );

    // Geometry pane.
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#f9fafb" stroke="#d1d5db"/>"##,
        GEO_PANE[0], GEO_PANE[1], GEO_PANE[2], GEO_PANE[3]
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="#eef2ff" stroke="#1e3a8a" stroke-width="1.5"/>"##,
        ring_path(&g_ring, &map)
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="none" stroke="#6b7280" stroke-width="1.2" stroke-dasharray="5 3"/>"##,
        ring_path(&k_ring, &map)
    );
    for (x, r) in &overlays {
        let shifted: Vec<Vec2> = k_ring.iter().map(|p| *x + *p * *r).collect();
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="none" stroke="#b45309" stroke-width="1.2" stroke-dasharray="2 2"/>"##,
            ring_path(&shifted, &map)
        );
    }
    if let Some(p) = focus {
        for (bp, delta) in p.samples.iter().zip(&p.deltas) {
            let (x, y) = map.apply(bp.point);
            let _ = writeln!(
                out,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{}"/>"##,
                delta_color(*delta)
            );
        }
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" fill="#4b5563">points: delta at r = {}; overlays: x + rK at the extremes</text>"##,
            GEO_PANE[0],
            GEO_PANE[1] + GEO_PANE[3] + 20.0,
            p.r
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" fill="#4b5563">G solid, K dashed at the origin; delta scale <tspan fill="{}">0</tspan> to <tspan fill="{}">1</tspan></text>"##,
        GEO_PANE[0],
        GEO_PANE[1] + GEO_PANE[3] + 38.0,
        delta_color(0.0),
        delta_color(1.0)
    );

    // Curve pane: density against arc length, one polyline per scale.
    let [ox, oy, pw, ph] = PLOT_PANE;
    let _ = writeln!(
        out,
        r##"<rect x="{ox}" y="{oy}" width="{pw}" height="{ph}" fill="#f9fafb" stroke="#d1d5db"/>"##
    );
    for i in 0..=4 {
        let frac = i as f64 * 0.25;
        let y = oy + ph * (1.0 - frac / Y_MAX);
        let _ = writeln!(
            out,
            r##"<line x1="{ox}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#e5e7eb"/>"##,
            ox + pw
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{:.2}" text-anchor="end" fill="#6b7280">{frac}</text>"##,
            ox - 6.0,
            y + 4.0
        );
    }
    for (i, p) in profiles.iter().enumerate() {
        let color = CURVE_COLORS[i % CURVE_COLORS.len()];
        let total = total_arclength(p);
        let mut points = String::new();
        for (bp, delta) in p.samples.iter().zip(&p.deltas) {
            let x = ox + (bp.s / total) * pw;
            let y = oy + ph * (1.0 - delta / Y_MAX);
            let _ = write!(points, "{x:.2},{y:.2} ");
        }
        // Close the period visually with the first sample repeated at s = L.
        if let Some(delta) = p.deltas.first() {
            let y = oy + ph * (1.0 - delta / Y_MAX);
            let _ = write!(points, "{:.2},{y:.2}", ox + pw);
        }
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"##,
            points.trim_end()
        );
        let ly = oy + 16.0 + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"##,
            ox + pw - 88.0,
            ox + pw - 68.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" fill="#374151">r = {}</text>"##,
            ox + pw - 62.0,
            ly + 4.0,
            p.r
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" text-anchor="middle" fill="#4b5563">arc length s (one boundary period)</text>"##,
        ox + 0.5 * pw,
        oy + ph + 24.0
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" transform="rotate(-90 {} {})" text-anchor="middle" fill="#4b5563">delta</text>"##,
        ox - 34.0,
        oy + 0.5 * ph,
        ox - 34.0,
        oy + 0.5 * ph
    );
    out.push_str("</svg>\n");
    Ok(out)
}
