//! Static rendering of affine diagrams: the cut cylinder is drawn as a
//! rectangle with dashed vertical edges; a strand crossing the cut exits one
//! edge and re-enters through the other.

use atl_core::diagram::{AffineDiagram, Arc, Side};

const SPACING: f64 = 40.0;
const MARGIN: f64 = 30.0;
const HEIGHT: f64 = 140.0;
const TOP_Y: f64 = 20.0;
const BOTTOM_Y: f64 = 120.0;

pub fn render_text(d: &AffineDiagram) -> String {
    let mut out = format!(
        "D({} -> {})  circles: {}\n",
        d.bottom_count(),
        d.top_count(),
        d.circles()
    );
    for arc in d.arcs() {
        match *arc {
            Arc::Through {
                bottom,
                top,
                winding,
            } => out.push_str(&format!("  strand B{bottom} -> T{top}  winding {winding}\n")),
            Arc::Cup { side, a, b, wrap } => {
                let tag = if side == Side::Top { "T" } else { "B" };
                let kind = if wrap { "through the cut" } else { "direct" };
                out.push_str(&format!("  cup    {tag}{a} - {tag}{b}  {kind}\n"));
            }
        }
    }
    out
}

pub fn render_svg(d: &AffineDiagram) -> String {
    let n = d.top_count().max(d.bottom_count()).max(1) as f64;
    let width = 2.0 * MARGIN + n * SPACING;
    let top_x = |i: u32| MARGIN + (i as f64 - 0.5) * SPACING * n / d.top_count().max(1) as f64;
    let bot_x =
        |i: u32| MARGIN + (i as f64 - 0.5) * SPACING * n / d.bottom_count().max(1) as f64;

    let mut body = String::new();
    // boundary circles and the cut (dashed verticals)
    body.push_str(&format!(
        r#"<line x1="0" y1="{TOP_Y}" x2="{width}" y2="{TOP_Y}" stroke="gray" stroke-width="1"/>"#
    ));
    body.push_str(&format!(
        r#"<line x1="0" y1="{BOTTOM_Y}" x2="{width}" y2="{BOTTOM_Y}" stroke="gray" stroke-width="1"/>"#
    ));
    for x in [0.0, width] {
        body.push_str(&format!(
            r#"<line x1="{x}" y1="0" x2="{x}" y2="{HEIGHT}" stroke="dimgray" stroke-dasharray="6,4" stroke-width="1"/>"#
        ));
    }

    let path = |pts: &[(f64, f64)]| -> String {
        let mut s = format!("M {} {}", pts[0].0, pts[0].1);
        for w in pts.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let mx = (x0 + x1) / 2.0;
            let my = (y0 + y1) / 2.0;
            s.push_str(&format!(" Q {mx} {my} {x1} {y1}"));
        }
        s
    };
    let stroke = r#"fill="none" stroke="rgb(16,64,160)" stroke-width="2""#;

    for arc in d.arcs() {
        match *arc {
            Arc::Through {
                bottom,
                top,
                winding,
            } => {
                let crossings = winding.unsigned_abs() as usize;
                if crossings == 0 {
                    body.push_str(&format!(
                        r#"<path d="M {} {BOTTOM_Y} C {} {}, {} {}, {} {TOP_Y}" {stroke}/>"#,
                        bot_x(bottom),
                        bot_x(bottom),
                        BOTTOM_Y - 40.0,
                        top_x(top),
                        TOP_Y + 40.0,
                        top_x(top)
                    ));
                } else {
                    // exit one edge, re-enter through the other, |winding| times
                    let (exit, enter) = if winding > 0 { (width, 0.0) } else { (0.0, width) };
                    let steps = crossings + 1;
                    let frac =
                        |i: usize| BOTTOM_Y + (TOP_Y - BOTTOM_Y) * i as f64 / steps as f64;
                    body.push_str(&format!(
                        r#"<path d="{}" {stroke}/>"#,
                        path(&[(bot_x(bottom), BOTTOM_Y), (exit, frac(1))])
                    ));
                    for i in 1..crossings {
                        body.push_str(&format!(
                            r#"<path d="{}" {stroke}/>"#,
                            path(&[(enter, frac(i)), (exit, frac(i + 1))])
                        ));
                    }
                    body.push_str(&format!(
                        r#"<path d="{}" {stroke}/>"#,
                        path(&[(enter, frac(crossings)), (top_x(top), TOP_Y)])
                    ));
                }
            }
            Arc::Cup { side, a, b, wrap } => {
                let (y, dir, x) = match side {
                    Side::Top => (TOP_Y, 1.0, top_x(a)),
                    Side::Bottom => (BOTTOM_Y, -1.0, bot_x(a)),
                };
                let xb = match side {
                    Side::Top => top_x(b),
                    Side::Bottom => bot_x(b),
                };
                if !wrap {
                    let depth = y + dir * (20.0 + (xb - x) * 0.25);
                    body.push_str(&format!(
                        r#"<path d="M {x} {y} C {x} {depth}, {xb} {depth}, {xb} {y}" {stroke}/>"#
                    ));
                } else {
                    // from the larger endpoint through the cut to the smaller
                    let depth = y + dir * 30.0;
                    body.push_str(&format!(
                        r#"<path d="M {xb} {y} C {xb} {depth}, {width} {depth}, {width} {}" {stroke}/>"#,
                        y + dir * 35.0
                    ));
                    body.push_str(&format!(
                        r#"<path d="M 0 {} C 0 {depth}, {x} {depth}, {x} {y}" {stroke}/>"#,
                        y + dir * 35.0
                    ));
                }
            }
        }
    }
    // noncontractible circles: horizontal closed curves around the cylinder
    for c in 0..d.circles() {
        let y = (TOP_Y + BOTTOM_Y) / 2.0 + (c as f64 - (d.circles() as f64 - 1.0) / 2.0) * 12.0;
        body.push_str(&format!(
            r#"<line x1="0" y1="{y}" x2="{width}" y2="{y}" stroke="rgb(160,64,16)" stroke-width="2"/>"#
        ));
    }
    // marked points
    for i in 1..=d.top_count() {
        body.push_str(&format!(
            r#"<circle cx="{}" cy="{TOP_Y}" r="3" fill="black"/><text x="{}" y="{}" font-size="10" text-anchor="middle">{i}</text>"#,
            top_x(i),
            top_x(i),
            TOP_Y - 6.0
        ));
    }
    for i in 1..=d.bottom_count() {
        body.push_str(&format!(
            r#"<circle cx="{}" cy="{BOTTOM_Y}" r="3" fill="black"/><text x="{}" y="{}" font-size="10" text-anchor="middle">{i}</text>"#,
            bot_x(i),
            bot_x(i),
            BOTTOM_Y + 14.0
        ));
    }

    format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{HEIGHT}" viewBox="0 0 {width} {HEIGHT}">{body}</svg>"#
    )
}
