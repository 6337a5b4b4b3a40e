//! Minimal SVG output: β curves on the left, the domain with a minimal orbit
//! on the right.

use std::io::{self, Write};

use billiard_beta::billiards::ModelTag;
use billiard_beta::geometry::{SupportDomain, Vec2};

use crate::commands::SweepRow;

const W: f64 = 900.0;
const H: f64 = 420.0;
const PAD: f64 = 50.0;
const PLOT_W: f64 = 480.0;

fn color(m: ModelTag) -> &'static str {
    match m {
        ModelTag::Birkhoff => "#1f77b4",
        ModelTag::Symplectic => "#d62728",
        ModelTag::Outer => "#2ca02c",
        ModelTag::Fourth => "#9467bd",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn polyline(w: &mut dyn Write, pts: &[(f64, f64)], stroke: &str, closed: bool) -> io::Result<()> {
    let tag = if closed { "polygon" } else { "polyline" };
    write!(w, "<{tag} fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\" points=\"")?;
    for (i, (x, y)) in pts.iter().enumerate() {
        let sep = if i == 0 { "" } else { " " };
        write!(w, "{sep}{x:.2},{y:.2}")?;
    }
    writeln!(w, "\"/>")
}

pub fn write_sweep(
    w: &mut dyn Write,
    title: &str,
    rows: &[SweepRow],
    dom: &SupportDomain,
    orbit: &[Vec2],
) -> io::Result<()> {
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">"
    )?;
    writeln!(w, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>")?;
    writeln!(w, "<text x=\"{PAD}\" y=\"24\">{}</text>", escape(title))?;

    // β panel, ρ on [0, 1/2]
    let (lo, hi) = rows
        .iter()
        .map(|r| r.beta)
        .fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x0 = PAD;
    let x1 = PAD + PLOT_W - 2.0 * PAD;
    let (y0, y1) = (H - PAD, PAD);
    let sx = |rho: f64| x0 + (x1 - x0) * rho / 0.5;
    let sy = |b: f64| y0 + (y1 - y0) * (b - lo) / span;
    writeln!(w, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>")?;
    writeln!(w, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>")?;
    let zero = sy(0.0);
    writeln!(w, "<line x1=\"{x0}\" y1=\"{zero:.2}\" x2=\"{x1}\" y2=\"{zero:.2}\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>")?;
    writeln!(w, "<text x=\"{}\" y=\"{}\">ρ</text>", x1 - 10.0, y0 + 30.0)?;
    writeln!(w, "<text x=\"{x0}\" y=\"{}\">0</text>", y0 + 16.0)?;
    writeln!(w, "<text x=\"{}\" y=\"{}\">1/2</text>", x1 - 10.0, y0 + 16.0)?;
    writeln!(w, "<text x=\"4\" y=\"{:.2}\">{hi:.3}</text>", y1 + 4.0)?;
    writeln!(w, "<text x=\"4\" y=\"{:.2}\">{lo:.3}</text>", y0)?;
    for (i, m) in ModelTag::ALL.into_iter().enumerate() {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.model == m)
            .map(|r| (sx(r.p as f64 / r.q as f64), sy(r.beta)))
            .collect();
        polyline(w, &pts, color(m), false)?;
        let ly = PAD + 16.0 * i as f64;
        writeln!(w, "<text x=\"{}\" y=\"{ly}\" fill=\"{}\">{m}</text>", x1 + 8.0, color(m))?;
    }

    // domain panel
    let boundary: Vec<Vec2> = (0..360).map(|j| dom.point(std::f64::consts::TAU * j as f64 / 360.0)).collect();
    let r = boundary.iter().map(|p| p.x.abs().max(p.y.abs())).fold(0.0, f64::max).max(1e-12);
    let cx = PLOT_W + (W - PLOT_W) / 2.0;
    let cy = H / 2.0;
    let scale = ((W - PLOT_W) / 2.0 - PAD).min(H / 2.0 - PAD) / r;
    let map = |p: &Vec2| (cx + scale * p.x, cy - scale * p.y);
    polyline(w, &boundary.iter().map(map).collect::<Vec<_>>(), "black", true)?;
    polyline(w, &orbit.iter().map(map).collect::<Vec<_>>(), color(ModelTag::Birkhoff), true)?;
    writeln!(w, "<text x=\"{}\" y=\"{}\">minimal Birkhoff orbit, ρ = 1/3</text>", PLOT_W + PAD, H - 16.0)?;
    writeln!(w, "</svg>")
}
