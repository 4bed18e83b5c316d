//! Minimal self-contained SVG writers for the scatter and trace plots.
//! No timestamps or environment-dependent metadata, so plot bytes are a
//! pure function of the data.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 640.0;
const MARGIN: f64 = 60.0;

fn map_x(v: f64, lo: f64, hi: f64) -> f64 {
    MARGIN + (v - lo) / (hi - lo) * (W - 2.0 * MARGIN)
}

fn map_y(v: f64, lo: f64, hi: f64) -> f64 {
    H - MARGIN - (v - lo) / (hi - lo) * (H - 2.0 * MARGIN)
}

/// Valence/arousal scatter over the fixed 1..9 rating plane, with axis
/// ticks at every integer and midlines at 5.
pub fn scatter_plot(points: &[(f64, f64, String)], title: &str) -> String {
    let (lo, hi) = (1.0, 9.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="28" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        W / 2.0,
        title
    );
    // Frame.
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        MARGIN,
        MARGIN,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    // Neutral midlines.
    let mid_x = map_x(5.0, lo, hi);
    let mid_y = map_y(5.0, lo, hi);
    let _ = writeln!(
        svg,
        r##"<line x1="{mid_x}" y1="{MARGIN}" x2="{mid_x}" y2="{}" stroke="#bbbbbb" stroke-dasharray="4 4"/>"##,
        H - MARGIN
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{MARGIN}" y1="{mid_y}" x2="{}" y2="{mid_y}" stroke="#bbbbbb" stroke-dasharray="4 4"/>"##,
        W - MARGIN
    );
    // Ticks and labels.
    for t in 1..=9 {
        let x = map_x(t as f64, lo, hi);
        let y = map_y(t as f64, lo, hi);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
            H - MARGIN,
            H - MARGIN + 6.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{t}</text>"#,
            H - MARGIN + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y}" x2="{MARGIN}" y2="{y}" stroke="black"/>"#,
            MARGIN - 6.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="12">{t}</text>"#,
            MARGIN - 10.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">valence</text>"#,
        W / 2.0,
        H - 14.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 18 {})">arousal</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (v, a, id) in points {
        let x = map_x(*v, lo, hi);
        let y = map_y(*a, lo, hi);
        let _ = writeln!(
            svg,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#3366cc" fill-opacity="0.7"><title>{id}</title></circle>"##
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Simple polyline plot of one or more per-frame series sharing an x axis.
pub fn trace_plot(series: &[(&str, &[f64])], title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="28" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        W / 2.0,
        title
    );
    let colors = ["#3366cc", "#cc3333", "#33aa55", "#aa7700"];
    let max_len = series.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let lo = series
        .iter()
        .flat_map(|(_, s)| s.iter().copied())
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let hi = series
        .iter()
        .flat_map(|(_, s)| s.iter().copied())
        .fold(f64::NEG_INFINITY, f64::max)
        .max(lo + 1e-9);
    for (si, (name, values)) in series.iter().enumerate() {
        let color = colors[si % colors.len()];
        let mut path = String::new();
        for (i, &v) in values.iter().enumerate() {
            let x = MARGIN + i as f64 / (max_len.max(2) - 1) as f64 * (W - 2.0 * MARGIN);
            let y = map_y(v, lo, hi);
            let _ = write!(path, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        let _ = writeln!(svg, r#"<path d="{path}" fill="none" stroke="{color}"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{name}</text>"#,
            W - MARGIN + 4.0,
            MARGIN + 16.0 * si as f64
        );
    }
    svg.push_str("</svg>\n");
    svg
}
