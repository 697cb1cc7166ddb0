//! SVG figures: a 3-D scatter of embedded points against generation, and a
//! hypervolume trace.
//!
//! Output is a pure function of the input; coordinates are written with fixed
//! decimals so identical inputs give byte-identical files.

use std::fmt::Write as _;

use super::table::{embedding_rows, EmbeddingRow};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::metrics::{ExplorationProfile, HypervolumeTrace};

const ANCHORS: [(u8, u8, u8); 5] =
    [(68, 1, 84), (59, 82, 139), (33, 145, 140), (94, 201, 98), (253, 231, 37)];

const BACKGROUND: &str = "#8c8c8c";

/// Perceptually uniform dark-purple to yellow ramp; `s` is clamped to [0, 1].
pub fn colour_map(s: f64) -> (u8, u8, u8) {
    let s = if s.is_nan() { 0.0 } else { s.clamp(0.0, 1.0) };
    let pos = s * 4.0;
    let k = (pos.floor() as usize).min(3);
    let t = pos - k as f64;
    let (a, b) = (ANCHORS[k], ANCHORS[k + 1]);
    let mix = |x: u8, y: u8| (x as f64 + (y as f64 - x as f64) * t).round() as u8;
    (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    pub width: u32,
    pub height: u32,
    /// Rotation about the vertical axis, degrees.
    pub azimuth: f64,
    /// Camera elevation above the e1-e2 plane, degrees.
    pub elevation: f64,
    pub point_radius: f64,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self { width: 900, height: 700, azimuth: 45.0, elevation: 25.0, point_radius: 2.5 }
    }
}

struct Projector {
    cos_a: f64,
    sin_a: f64,
    cos_e: f64,
    sin_e: f64,
    scale: f64,
    u0: f64,
    v0: f64,
    left: f64,
    top: f64,
}

impl Projector {
    fn new(opts: &FigureOptions, left: f64, top: f64, w: f64, h: f64) -> Self {
        let (sin_a, cos_a) = opts.azimuth.to_radians().sin_cos();
        let (sin_e, cos_e) = opts.elevation.to_radians().sin_cos();
        let mut p = Self { cos_a, sin_a, cos_e, sin_e, scale: 1.0, u0: 0.0, v0: 0.0, left, top };
        let corners: Vec<(f64, f64)> = (0..8)
            .map(|c| {
                let s = |bit: usize| if c & bit == 0 { -1.0 } else { 1.0 };
                p.raw(s(1), s(2), s(4))
            })
            .collect();
        let (umin, umax) = bounds(corners.iter().map(|c| c.0));
        let (vmin, vmax) = bounds(corners.iter().map(|c| c.1));
        p.scale = (w / (umax - umin)).min(h / (vmax - vmin));
        // centre the cube in the plot area
        p.u0 = umin - (w / p.scale - (umax - umin)) / 2.0;
        p.v0 = vmax + (h / p.scale - (vmax - vmin)) / 2.0;
        p
    }

    /// Orthographic view of a point in the cube [-1, 1]^3, z vertical.
    fn raw(&self, x: f64, y: f64, z: f64) -> (f64, f64) {
        let u = x * self.cos_a - y * self.sin_a;
        let depth = x * self.sin_a + y * self.cos_a;
        (u, z * self.cos_e + depth * self.sin_e)
    }

    fn px(&self, x: f64, y: f64, z: f64) -> (f64, f64) {
        let (u, v) = self.raw(x, y, z);
        (self.left + (u - self.u0) * self.scale, self.top + (self.v0 - v) * self.scale)
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn open_svg(out: &mut String, opts: &FigureOptions, title: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = opts.width,
        h = opts.height
    );
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{BACKGROUND}\"/>", opts.width, opts.height);
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
        opts.width as f64 / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn label(out: &mut String, (x, y): (f64, f64), anchor: &str, text: &str) {
    let _ = writeln!(
        out,
        "<text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"{anchor}\">{}</text>",
        escape(text)
    );
}

fn axis_line(out: &mut String, a: (f64, f64), b: (f64, f64)) {
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
        a.0, a.1, b.0, b.1
    );
}

/// Renders embedding rows: one circle per row coloured by score, then a white
/// cross over every point of the final generation.
pub fn render_history_rows(rows: &[EmbeddingRow], opts: &FigureOptions) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::contract("nothing to render: no embedded points"));
    }
    let last_gen = rows.iter().map(|r| r.generation).max().unwrap_or(0);
    let half = |v: f64| if v > 0.0 { v } else { 1.0 };
    let r1 = half(rows.iter().map(|r| r.e1.abs()).fold(0.0, f64::max));
    let r2 = half(rows.iter().map(|r| r.e2.abs()).fold(0.0, f64::max));
    let z = |g: usize| if last_gen == 0 { 0.0 } else { 2.0 * g as f64 / last_gen as f64 - 1.0 };

    let (w, h) = (opts.width as f64, opts.height as f64);
    let proj = Projector::new(opts, 70.0, 50.0, w - 140.0, h - 110.0);

    let mut out = String::new();
    let title = format!("{} space, stride {}", rows[0].space, rows[0].stride);
    open_svg(&mut out, opts, &title);

    // axes along three edges of the cube
    let origin = proj.px(-1.0, -1.0, -1.0);
    let ends = [proj.px(1.0, -1.0, -1.0), proj.px(-1.0, 1.0, -1.0), proj.px(-1.0, -1.0, 1.0)];
    for &end in &ends {
        axis_line(&mut out, origin, end);
    }
    for t in [-1.0, 0.0, 1.0] {
        let (x, y) = proj.px(t, -1.0, -1.0);
        label(&mut out, (x, y + 16.0), "middle", &format!("{:.3}", t * r1));
        let (x, y) = proj.px(-1.0, t, -1.0);
        label(&mut out, (x - 8.0, y + 14.0), "end", &format!("{:.3}", t * r2));
    }
    for g in [0, last_gen / 2, last_gen] {
        let (x, y) = proj.px(-1.0, -1.0, z(g));
        label(&mut out, (x - 8.0, y + 4.0), "end", &g.to_string());
    }
    let tip = |p: (f64, f64), dx: f64, dy: f64| (p.0 + dx, p.1 + dy);
    label(&mut out, tip(ends[0], 18.0, 4.0), "start", "e1");
    label(&mut out, tip(ends[1], -18.0, 4.0), "end", "e2");
    label(&mut out, tip(ends[2], 0.0, -10.0), "middle", "generation");

    for r in rows {
        let (x, y) = proj.px(r.e1 / r1, r.e2 / r2, z(r.generation));
        let (cr, cg, cb) = colour_map(r.score);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.2}\" fill=\"rgb({cr},{cg},{cb})\"/>",
            opts.point_radius
        );
    }
    let arm = opts.point_radius * 1.6;
    for r in rows.iter().filter(|r| r.generation == last_gen) {
        let (x, y) = proj.px(r.e1 / r1, r.e2 / r2, z(r.generation));
        let _ = writeln!(
            out,
            "<path class=\"cross\" d=\"M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}\" stroke=\"white\" stroke-width=\"1.5\" fill=\"none\"/>",
            x - arm, y - arm, x + arm, y + arm, x - arm, y + arm, x + arm, y - arm
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_history_figure(
    embedding: &Embedding,
    profile: &ExplorationProfile,
    opts: &FigureOptions,
) -> Result<String> {
    render_history_rows(&embedding_rows(embedding, profile)?, opts)
}

/// Line plot of hypervolume against generation.
pub fn render_hv_figure(trace: &HypervolumeTrace, opts: &FigureOptions) -> Result<String> {
    if trace.values.is_empty() {
        return Err(Error::contract("nothing to render: empty hypervolume trace"));
    }
    if trace.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::contract("hypervolume trace holds a non-finite value"));
    }
    let (w, h) = (opts.width as f64, opts.height as f64);
    let (left, right, top, bottom) = (90.0, w - 40.0, 50.0, h - 60.0);
    let n = trace.values.len();
    let (lo, hi) = bounds(trace.values.iter().copied());
    let xpos = |g: usize| {
        if n == 1 {
            (left + right) / 2.0
        } else {
            left + (right - left) * g as f64 / (n - 1) as f64
        }
    };
    let ypos = |v: f64| {
        if hi > lo {
            bottom - (bottom - top) * (v - lo) / (hi - lo)
        } else {
            (top + bottom) / 2.0
        }
    };

    let mut out = String::new();
    open_svg(&mut out, opts, "hypervolume");
    axis_line(&mut out, (left, bottom), (right, bottom));
    axis_line(&mut out, (left, bottom), (left, top));
    for g in [0, (n - 1) / 2, n - 1] {
        label(&mut out, (xpos(g), bottom + 18.0), "middle", &g.to_string());
    }
    for v in [lo, hi] {
        label(&mut out, (left - 8.0, ypos(v) + 4.0), "end", &format!("{v:.4e}"));
    }
    label(&mut out, ((left + right) / 2.0, h - 20.0), "middle", "generation");

    out.push_str("<polyline class=\"hv\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"");
    for (g, &v) in trace.values.iter().enumerate() {
        if g > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.2},{:.2}", xpos(g), ypos(v));
    }
    out.push_str("\"/>\n</svg>\n");
    Ok(out)
}
