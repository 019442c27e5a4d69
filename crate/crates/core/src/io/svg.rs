//! SVG 1.1 plots: one marker per initial position and one arrow per
//! velocity. 3D instances use an orthographic projection.

use std::fmt::Write as _;

use crate::conflict::detect_conflicts;
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{Dimension, Instance};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    /// Arrow length expressed as minutes of flight.
    pub arrow_minutes: f64,
    pub highlight_conflicts: bool,
    /// View direction for 3D instances, degrees.
    pub view_azimuth: f64,
    pub view_elevation: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width: 800,
            height: 800,
            arrow_minutes: 6.0,
            highlight_conflicts: false,
            view_azimuth: -60.0,
            view_elevation: 25.0,
        }
    }
}

struct Projection {
    right: Vec3,
    up: Vec3,
}

impl Projection {
    fn new(dim: Dimension, opts: &SvgOptions) -> Self {
        match dim {
            Dimension::TwoD => Projection { right: Vec3::new(1.0, 0.0, 0.0), up: Vec3::new(0.0, 1.0, 0.0) },
            Dimension::ThreeD => {
                let (sa, ca) = sin_cos_deg(opts.view_azimuth);
                let (se, ce) = sin_cos_deg(opts.view_elevation);
                Projection { right: Vec3::new(-sa, ca, 0.0), up: Vec3::new(-se * ca, -se * sa, ce) }
            }
        }
    }

    fn apply(&self, p: Vec3) -> (f64, f64) {
        (p.dot(self.right), p.dot(self.up))
    }
}

pub fn render_svg(instance: &Instance, opts: &SvgOptions) -> String {
    let proj = Projection::new(instance.dimension, opts);
    let horizon = opts.arrow_minutes / 60.0;
    let segments: Vec<((f64, f64), (f64, f64))> = instance
        .aircraft
        .iter()
        .map(|a| (proj.apply(a.p_hat), proj.apply(a.position_at(horizon))))
        .collect();

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(a, b) in &segments {
        for (x, y) in [a, b] {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let (w, h) = (opts.width as f64, opts.height as f64);
    let pad = 0.06 * w.min(h);
    let scale = (w.min(h) - 2.0 * pad) / span;
    let cx = (min_x + max_x) / 2.0;
    let cy = (min_y + max_y) / 2.0;
    let to_screen = |(x, y): (f64, f64)| (w / 2.0 + (x - cx) * scale, h / 2.0 - (y - cy) * scale);

    let conflicts = if opts.highlight_conflicts { detect_conflicts(instance) } else { Vec::new() };
    let mut conflicting = vec![false; instance.n()];
    for c in &conflicts {
        conflicting[c.i] = true;
        conflicting[c.j] = true;
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(
        s,
        r#"<title>{} instance, n = {}, D = {} NM</title>"#,
        instance.metadata.scenario,
        instance.n(),
        instance.safety_distance
    );
    let _ = writeln!(
        s,
        r##"<defs><marker id="arrowhead" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#1f4e99"/></marker></defs>"##
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r#"<g id="velocities">"#);
    for &(a, b) in &segments {
        let (x1, y1) = to_screen(a);
        let (x2, y2) = to_screen(b);
        let _ = writeln!(
            s,
            r##"<line class="velocity" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#1f4e99" stroke-width="1.2" marker-end="url(#arrowhead)"/>"##
        );
    }
    let _ = writeln!(s, "</g>");

    if !conflicts.is_empty() {
        let _ = writeln!(s, r#"<g id="conflicts">"#);
        for c in &conflicts {
            let (x1, y1) = to_screen(proj.apply(instance.aircraft_by_id(c.i).unwrap().position_at(c.t_cpa)));
            let (x2, y2) = to_screen(proj.apply(instance.aircraft_by_id(c.j).unwrap().position_at(c.t_cpa)));
            let _ = writeln!(
                s,
                r##"<line class="conflict" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#d62728" stroke-width="2" stroke-dasharray="4 3"/>"##
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, r#"<g id="aircraft">"#);
    for (a, &(p, _)) in instance.aircraft.iter().zip(&segments) {
        let (x, y) = to_screen(p);
        let fill = if conflicting[a.id] { "#d62728" } else { "#222222" };
        let _ = writeln!(s, r#"<circle class="aircraft" cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{fill}"/>"#);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="10" font-family="sans-serif">{}</text>"#, x + 5.0, y - 5.0, a.id);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
