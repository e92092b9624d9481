//! Minimal standalone SVG rendering for reliability diagrams: filled bars
//! for per-bin accuracy, outlined bars for per-bin mean confidence, and the
//! identity diagonal. No external services or crates involved.

use std::fmt::Write as _;

use vocalib_core::BinStats;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 55.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 35.0;
const MARGIN_BOTTOM: f64 = 50.0;

fn x(frac: f64) -> f64 {
    MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
}

fn y(frac: f64) -> f64 {
    HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
}

/// Render one reliability diagram. `title` should be short ASCII; it is
/// written into a text node verbatim.
pub fn reliability_svg(bins: &[BinStats], title: &str) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = write!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = write!(
        out,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#,
        x(0.5)
    );

    for b in bins {
        if b.count == 0 {
            continue;
        }
        let left = x(b.lower) + 1.0;
        let width = (x(b.upper) - x(b.lower) - 2.0).max(1.0);
        let _ = write!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#4878a8" fill-opacity="0.85"/>"##,
            left,
            y(b.accuracy),
            width,
            (y(0.0) - y(b.accuracy)).max(0.0)
        );
        let _ = write!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#c04040" stroke-width="1.5"/>"##,
            left,
            y(b.confidence),
            width,
            (y(0.0) - y(b.confidence)).max(0.0)
        );
    }

    // identity diagonal: perfect calibration
    let _ = write!(
        out,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888888" stroke-dasharray="5,4"/>"##,
        x(0.0),
        y(0.0),
        x(1.0),
        y(1.0)
    );

    // axes with ticks every 0.25
    let _ = write!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        x(0.0),
        y(0.0),
        x(1.0),
        y(0.0)
    );
    let _ = write!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#,
        x(0.0),
        y(0.0),
        x(0.0),
        y(1.0)
    );
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let _ = write!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{frac}</text>"#,
            x(frac),
            y(0.0) + 16.0
        );
        let _ = write!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{frac}</text>"#,
            x(0.0) - 6.0,
            y(frac) + 4.0
        );
    }
    let _ = write!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">confidence</text>"#,
        x(0.5),
        HEIGHT - 12.0
    );
    let _ = write!(
        out,
        r#"<text x="14" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 {})">accuracy</text>"#,
        y(0.5),
        y(0.5)
    );
    out.push_str("</svg>");
    out
}
