//! Deterministic SVG 1.1 rendering of a segment collection.

use welbound_core::collection::RowCollection;

const UNIT: i64 = 24;
const MARGIN: i64 = 24;
const STROKE: i64 = 4;

fn px(v: i64) -> String {
    v.to_string()
}

/// Renders segments as horizontal lines (level 0 at the bottom), holes as
/// dashed overlays across their unit gap, and point segments as circles.
pub fn render(collection: &RowCollection) -> String {
    let min_x = collection.segments.iter().map(|s| s.xl).min().unwrap_or(0);
    let max_x = collection.segments.iter().map(|s| s.xr).max().unwrap_or(0);
    let max_level = collection.segments.iter().map(|s| s.level).max().unwrap_or(0);

    let width = (max_x - min_x) * UNIT + 2 * MARGIN;
    let height = max_level * UNIT + 2 * MARGIN;
    let x_of = |x: i64| (x - min_x) * UNIT + MARGIN;
    let y_of = |level: i64| (max_level - level) * UNIT + MARGIN;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" \
         height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        px(width),
        px(height),
        px(width),
        px(height)
    ));

    let mut segments = collection.segments.clone();
    segments.sort_unstable();
    for s in &segments {
        let y = y_of(s.level);
        if s.xl == s.xr {
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1a1a1a\"/>\n",
                px(x_of(s.xl)),
                px(y),
                px(STROKE)
            ));
        } else {
            out.push_str(&format!(
                "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1a1a1a\" \
                 stroke-width=\"{}\" stroke-linecap=\"round\"/>\n",
                px(x_of(s.xl)),
                px(y),
                px(x_of(s.xr)),
                px(y),
                px(STROKE)
            ));
        }
    }

    let mut holes = collection.holes.clone();
    holes.sort_unstable();
    for &(level, h) in &holes {
        let y = y_of(level);
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c02020\" \
             stroke-width=\"2\" stroke-dasharray=\"4 3\"/>\n",
            px(x_of(h)),
            px(y),
            px(x_of(h + 1)),
            px(y)
        ));
    }
    out.push_str("</svg>\n");
    out
}
