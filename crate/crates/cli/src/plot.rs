//! Self-contained SVG of filtered state means with ±3σ bands.

use std::fmt::Write as _;

/// One panel: a mean line with a shaded band and optional points.
pub struct Panel<'a> {
    pub title: &'a str,
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    pub points: Option<&'a [f64]>,
}

const WIDTH: f64 = 900.0;
const PANEL_H: f64 = 280.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 40.0;

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn path(xs: impl Iterator<Item = (f64, f64)>) -> String {
    let mut d = String::new();
    for (i, (x, y)) in xs.enumerate() {
        let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
    }
    d
}

pub fn render(times: &[f64], panels: &[Panel]) -> String {
    let height = PANEL_H * panels.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (t0, t1) = match (times.first(), times.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        (Some(&a), _) => (a - 1.0, a + 1.0),
        _ => (0.0, 1.0),
    };
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
    for (k, p) in panels.iter().enumerate() {
        let top = k as f64 * PANEL_H + MARGIN_T;
        let lo = p.mean.iter().zip(&p.sd).map(|(m, s)| m - 3.0 * s);
        let hi = p.mean.iter().zip(&p.sd).map(|(m, s)| m + 3.0 * s);
        let pts = p.points.unwrap_or(&[]).iter().copied();
        let y_lo = lo.clone().chain(pts.clone()).fold(f64::INFINITY, f64::min);
        let y_hi = hi.clone().chain(pts).fold(f64::NEG_INFINITY, f64::max);
        let (y_lo, y_hi) = if y_lo.is_finite() { padded(y_lo, y_hi) } else { (-1.0, 1.0) };
        let sx = |t: f64| MARGIN_L + (t - t0) / (t1 - t0) * plot_w;
        let sy = |v: f64| top + (y_hi - v) / (y_hi - y_lo) * plot_h;

        let _ = writeln!(svg, r#"<text x="{MARGIN_L}" y="{:.2}" font-size="13">{}</text>"#, top - 10.0, p.title);
        let _ = writeln!(
            svg,
            r##"<rect x="{MARGIN_L}" y="{top:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#444"/>"##
        );
        for v in ticks(y_lo, y_hi) {
            let y = sy(v);
            let _ = writeln!(
                svg,
                r##"<line x1="{MARGIN_L}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3e}</text>"##,
                MARGIN_L + plot_w,
                MARGIN_L - 5.0,
                y + 4.0
            );
        }
        for t in ticks(t0, t1) {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t:.1}</text>"#,
                sx(t),
                top + plot_h + 15.0
            );
        }
        if !times.is_empty() {
            let upper = times.iter().zip(hi).map(|(&t, v)| (sx(t), sy(v)));
            let lower: Vec<(f64, f64)> = times.iter().zip(lo).map(|(&t, v)| (sx(t), sy(v))).collect();
            let band = path(upper.chain(lower.into_iter().rev()));
            let _ = writeln!(svg, r##"<path d="{band}Z" fill="#4a7ebb" fill-opacity="0.2" stroke="none"/>"##);
            let mean = path(times.iter().zip(&p.mean).map(|(&t, &v)| (sx(t), sy(v))));
            let _ = writeln!(svg, r##"<path d="{mean}" fill="none" stroke="#1f4e8c" stroke-width="1.5"/>"##);
        }
        if let Some(obs) = p.points {
            for (&t, &v) in times.iter().zip(obs) {
                let _ = writeln!(svg, r##"<circle cx="{:.2}" cy="{:.2}" r="1.8" fill="#c0392b"/>"##, sx(t), sy(v));
            }
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">time (s)</text>"#,
        MARGIN_L + plot_w / 2.0,
        height - 8.0
    );
    svg.push_str("</svg>\n");
    svg
}
