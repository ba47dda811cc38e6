//! Text renderings: fixed-precision numbers, CSV samples and SVG plots.

use std::fmt::Write;

use crate::fuzzy::FuzzyInterval;

/// `%.{digits}g`-style formatting: `digits` significant digits, trailing
/// zeros removed, scientific notation for very small or large magnitudes.
pub fn format_g(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `n` evenly spaced membership samples over the support, both ends
/// included.
pub fn samples(f: &FuzzyInterval, n: usize) -> Vec<(f64, f64)> {
    let s = f.support();
    (0..n)
        .map(|i| {
            let x = if n == 1 {
                s.lo
            } else if i == n - 1 {
                s.hi
            } else {
                s.lo + s.width() * i as f64 / (n - 1) as f64
            };
            (x, f.membership(x))
        })
        .collect()
}

pub fn csv(points: &[(f64, f64)], stamp: Option<u64>) -> String {
    let mut out = String::new();
    if let Some(t) = stamp {
        writeln!(out, "# generated_at={t}").unwrap();
    }
    out.push_str("x,mu\n");
    for (x, m) in points {
        writeln!(out, "{x},{m}").unwrap();
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

/// Standalone SVG plot of the membership function given by `points`.
pub fn svg(points: &[(f64, f64)], title: &str, stamp: Option<u64>) -> String {
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(x, _)| (a.min(x), b.max(x)));
    let pad = if hi > lo { 0.05 * (hi - lo) } else { 1.0 };
    let (x0, x1) = (lo - pad, hi + pad);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |m: f64| HEIGHT - MARGIN - m * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    )
    .unwrap();
    if let Some(t) = stamp {
        writeln!(out, "<!-- generated_at={t} -->").unwrap();
    }
    writeln!(out, r#"<title>{}</title>"#, escape(title)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    // axes
    let (ax0, ax1, ay0, ay1) = (MARGIN, WIDTH - MARGIN, py(0.0), py(1.0));
    writeln!(out, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    writeln!(out, r#"<line x1="{ax0}" y1="{ay0}" x2="{ax1}" y2="{ay0}"/>"#).unwrap();
    writeln!(out, r#"<line x1="{ax0}" y1="{ay0}" x2="{ax0}" y2="{ay1}"/>"#).unwrap();
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g font-family="sans-serif" font-size="12" fill="black">"#).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">1</text>"#, ax0 - 6.0, ay1 + 4.0).unwrap();
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">0</text>"#, ax0 - 6.0, ay0 + 4.0).unwrap();
    for x in [lo, hi] {
        writeln!(out, r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#, px(x), ay0 + 18.0, format_g(x, 6))
            .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    // The membership drops to zero outside the support.
    let mut poly = vec![(x0, 0.0)];
    if let Some(&(x, _)) = points.first() {
        poly.push((x, 0.0));
    }
    poly.extend_from_slice(points);
    if let Some(&(x, _)) = points.last() {
        poly.push((x, 0.0));
    }
    poly.push((x1, 0.0));
    let coords: Vec<String> = poly.iter().map(|&(x, m)| format!("{:.3},{:.3}", px(x), py(m))).collect();
    writeln!(
        out,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
