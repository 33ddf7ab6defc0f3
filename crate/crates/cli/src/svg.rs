//! Static SVG 1.1 diagram of the walls in the `(β, α)` half-plane.
//!
//! This is the only place exact rationals are converted to floating point.
//! Coordinates are printed with three decimals so the output is byte-stable.

use std::fmt::Write;

use kuwalls_core::rational::{to_f64, Q};
use kuwalls_core::walls::{ChamberReport, WallLocus};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

struct Frame {
    beta_lo: f64,
    beta_hi: f64,
    alpha_hi: f64,
}

impl Frame {
    fn x(&self, beta: f64) -> f64 {
        MARGIN + (beta - self.beta_lo) / (self.beta_hi - self.beta_lo) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, alpha: f64) -> f64 {
        HEIGHT - MARGIN - alpha / self.alpha_hi * (HEIGHT - 2.0 * MARGIN)
    }

    fn sx(&self) -> f64 {
        (WIDTH - 2.0 * MARGIN) / (self.beta_hi - self.beta_lo)
    }

    fn sy(&self) -> f64 {
        (HEIGHT - 2.0 * MARGIN) / self.alpha_hi
    }
}

fn frame(report: &ChamberReport) -> Frame {
    let beta0 = to_f64(&report.config.beta0);
    let (mut lo, mut hi, mut top) = (beta0 - 0.5, beta0 + 0.5, 0.5f64);
    for w in &report.walls {
        match w.locus {
            WallLocus::Semicircle { center_beta, radius_sq } => {
                let (c, r) = (to_f64(&center_beta), to_f64(&radius_sq).sqrt());
                lo = lo.min(c - r);
                hi = hi.max(c + r);
                top = top.max(r);
            }
            WallLocus::Vertical { beta0 } => {
                lo = lo.min(to_f64(&beta0));
                hi = hi.max(to_f64(&beta0));
            }
        }
        top = top.max(to_f64(&w.alpha_sq).sqrt());
    }
    let pad = 0.1 * (hi - lo);
    Frame { beta_lo: lo - pad, beta_hi: hi + pad, alpha_hi: top * 1.25 }
}

fn alpha(x: &Q) -> f64 {
    to_f64(x).sqrt()
}

pub fn render(report: &ChamberReport, title: &str) -> String {
    let f = frame(report);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(s, r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    let base = f.y(0.0);
    let _ = writeln!(
        s,
        r#"  <line x1="{:.3}" y1="{base:.3}" x2="{:.3}" y2="{base:.3}" stroke="black"/>"#,
        MARGIN,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        s,
        r#"  <text x="{:.3}" y="{:.3}" font-size="14">&#946;</text>"#,
        WIDTH - MARGIN + 8.0,
        base + 4.0
    );
    let _ = writeln!(s, r#"  <text x="{:.3}" y="{:.3}" font-size="14">&#945;</text>"#, MARGIN - 4.0, MARGIN - 12.0);

    for w in &report.walls {
        match w.locus {
            WallLocus::Semicircle { center_beta, radius_sq } => {
                let (c, r) = (to_f64(&center_beta), alpha(&radius_sq));
                let _ = writeln!(
                    s,
                    r#"  <path d="M {:.3} {base:.3} A {:.3} {:.3} 0 0 1 {:.3} {base:.3}" fill="none" stroke="crimson" stroke-width="2"/>"#,
                    f.x(c - r),
                    r * f.sx(),
                    r * f.sy(),
                    f.x(c + r)
                );
            }
            WallLocus::Vertical { beta0 } => {
                let x = f.x(to_f64(&beta0));
                let _ = writeln!(
                    s,
                    r#"  <line x1="{x:.3}" y1="{base:.3}" x2="{x:.3}" y2="{:.3}" stroke="crimson" stroke-width="2"/>"#,
                    f.y(f.alpha_hi)
                );
            }
        }
    }

    let b0 = f.x(to_f64(&report.config.beta0));
    let _ = writeln!(
        s,
        r#"  <line x1="{b0:.3}" y1="{base:.3}" x2="{b0:.3}" y2="{:.3}" stroke="steelblue" stroke-dasharray="6 4"/>"#,
        f.y(f.alpha_hi)
    );
    let _ = writeln!(
        s,
        r#"  <text x="{:.3}" y="{:.3}" font-size="12" fill="steelblue">&#946; = {}</text>"#,
        b0 + 4.0,
        f.y(f.alpha_hi) + 12.0,
        report.config.beta0
    );

    // Chamber labels sit on the β₀ line between consecutive crossings.
    let mut bounds: Vec<f64> = vec![f.alpha_hi];
    bounds.extend(report.walls.iter().map(|w| alpha(&w.alpha_sq)));
    bounds.push(0.0);
    for (i, pair) in bounds.windows(2).enumerate() {
        let mid = (pair[0] + pair[1]) / 2.0;
        let _ = writeln!(
            s,
            r#"  <text x="{:.3}" y="{:.3}" font-size="12">chamber {}</text>"#,
            b0 + 6.0,
            f.y(mid) + 4.0,
            i + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
