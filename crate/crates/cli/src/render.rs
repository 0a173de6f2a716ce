//! Write-only DOT and SVG views. Colors 1..4 map to red, green, blue, and
//! pink; everything carries a redundant shape or dash encoding so the
//! pictures survive grayscale printing. Uncolored elements come out gray.

use std::fmt::Write;

use nanodisc_core::coloring::{Color, TotalColoring};
use nanodisc_core::disc::Nanodisc;
use nanodisc_core::semigraph::{Element, Semigraph, VertexId};

fn color_of(c: Option<&TotalColoring>, el: Element) -> Option<Color> {
    c.and_then(|c| c.get(&el))
}

fn color_name(c: Option<Color>) -> &'static str {
    match c {
        Some(Color(1)) => "red",
        Some(Color(2)) => "green",
        Some(Color(3)) => "blue",
        Some(Color(4)) => "pink",
        _ => "gray",
    }
}

fn dot_shape(c: Option<Color>) -> &'static str {
    match c {
        Some(Color(1)) => "circle",
        Some(Color(2)) => "box",
        Some(Color(3)) => "diamond",
        Some(Color(4)) => "triangle",
        _ => "circle",
    }
}

fn dot_style(c: Option<Color>) -> &'static str {
    match c {
        Some(Color(1)) => "solid",
        Some(Color(2)) => "dashed",
        Some(Color(3)) => "dotted",
        Some(Color(4)) => "bold",
        _ => "solid",
    }
}

fn dash_array(c: Option<Color>) -> &'static str {
    match c {
        Some(Color(2)) => "8 4",
        Some(Color(3)) => "2 3",
        Some(Color(4)) => "9 3 2 3",
        _ => "none",
    }
}

pub fn to_dot(g: &Semigraph, coloring: Option<&TotalColoring>) -> String {
    let mut out = String::new();
    out.push_str("graph {\n");
    out.push_str("  node [style=filled, fontsize=10];\n");
    for v in g.vertices() {
        let c = color_of(coloring, Element::Vertex(v));
        let _ = writeln!(
            out,
            "  v{} [fillcolor={}, shape={}];",
            v.0,
            color_name(c),
            dot_shape(c)
        );
    }
    for e in g.edges() {
        let c = color_of(coloring, Element::of_edge(e));
        let _ = writeln!(
            out,
            "  v{} -- v{} [color={}, style={}, penwidth=2];",
            e.u.0,
            e.v.0,
            color_name(c),
            dot_style(c)
        );
    }
    for (i, s) in g.semiedges().iter().enumerate() {
        let c = color_of(coloring, Element::Semi(s.anchor, s.slot));
        let _ = writeln!(out, "  s{i} [shape=point, width=0.08];");
        let _ = writeln!(
            out,
            "  v{} -- s{i} [color={}, style={}, penwidth=2];",
            s.anchor.0,
            color_name(c),
            dot_style(c)
        );
    }
    out.push_str("}\n");
    out
}

const VERTEX_R: f64 = 5.0;

/// One vertex mark: a disk, with an overlaid outline shape keyed to the
/// color so the palette stays readable without color.
fn vertex_mark(out: &mut String, x: f64, y: f64, c: Option<Color>) {
    let fill = color_name(c);
    let r = VERTEX_R;
    let _ = writeln!(
        out,
        r#"  <circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}" stroke="black" stroke-width="0.8"/>"#
    );
    match c {
        Some(Color(2)) => {
            let s = r * 1.9;
            let _ = writeln!(
                out,
                r#"  <rect x="{:.2}" y="{:.2}" width="{s:.2}" height="{s:.2}" fill="none" stroke="black" stroke-width="0.8"/>"#,
                x - s / 2.0,
                y - s / 2.0
            );
        }
        Some(Color(3)) => {
            let s = r * 1.4;
            let _ = writeln!(
                out,
                r#"  <polygon points="{x:.2},{:.2} {:.2},{y:.2} {x:.2},{:.2} {:.2},{y:.2}" fill="none" stroke="black" stroke-width="0.8"/>"#,
                y - s,
                x + s,
                y + s,
                x - s
            );
        }
        Some(Color(4)) => {
            let s = r * 1.6;
            let _ = writeln!(
                out,
                r#"  <polygon points="{x:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="black" stroke-width="0.8"/>"#,
                y - s,
                x + s * 0.87,
                y + s / 2.0,
                x - s * 0.87,
                y + s / 2.0
            );
        }
        _ => {}
    }
}

fn edge_line(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64), c: Option<Color>) {
    let _ = writeln!(
        out,
        r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{}" stroke-width="2.5" stroke-dasharray="{}"/>"#,
        color_name(c),
        dash_array(c)
    );
}

fn svg_open(size: f64) -> String {
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s:.0}" height="{s:.0}" "#,
            r#"viewBox="0 0 {s:.0} {s:.0}">"#,
            "\n",
            r#"  <rect width="100%" height="100%" fill="white"/>"#,
            "\n"
        ),
        s = size
    )
}

/// Concentric layout: cycle t sits on a circle of radius proportional to
/// t + 1, vertices spread by their cycle position starting at twelve
/// o'clock. One guide ring is drawn per face layer, through the layer's
/// annulus.
pub fn disc_svg(d: &Nanodisc, coloring: Option<&TotalColoring>) -> String {
    let cycles = d.cycles();
    let n = cycles.len();
    let step = 55.0;
    let base = step;
    let size = 2.0 * (base + n as f64 * step);
    let mid = size / 2.0;
    let ring_r = |t: usize| base + (t as f64 + 1.0) * step;
    let pos = |v: VertexId| {
        let (t, p) = {
            let c = d.coord(v);
            (c.cycle, c.pos)
        };
        let len = cycles[t].len() as f64;
        let ang = 2.0 * std::f64::consts::PI * p as f64 / len - std::f64::consts::FRAC_PI_2;
        (mid + ring_r(t) * ang.cos(), mid + ring_r(t) * ang.sin())
    };

    let mut out = svg_open(size);
    for layer in 0..d.layers().len() {
        let r = if layer == 0 {
            ring_r(0) - step * 0.5
        } else if layer == n {
            ring_r(n - 1) + step * 0.5
        } else {
            (ring_r(layer - 1) + ring_r(layer)) / 2.0
        };
        let _ = writeln!(
            out,
            r#"  <circle class="ring" cx="{mid:.2}" cy="{mid:.2}" r="{r:.2}" fill="none" stroke="gainsboro" stroke-width="1"/>"#
        );
    }
    for e in d.graph().edges() {
        edge_line(
            &mut out,
            pos(e.u),
            pos(e.v),
            color_of(coloring, Element::of_edge(e)),
        );
    }
    for v in d.graph().vertices() {
        let (x, y) = pos(v);
        vertex_mark(&mut out, x, y, color_of(coloring, Element::Vertex(v)));
    }
    out.push_str("</svg>\n");
    out
}

/// Fallback layout for graphs without an embedding: vertices on one
/// circle in id order, semiedges as outward stubs.
pub fn ring_svg(g: &Semigraph, coloring: Option<&TotalColoring>) -> String {
    let n = g.vertex_count().max(1);
    let ring = 40.0 + 9.0 * n as f64;
    let size = 2.0 * ring + 120.0;
    let mid = size / 2.0;
    let pos = |v: VertexId| {
        let ang = 2.0 * std::f64::consts::PI * v.0 as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
        (mid + ring * ang.cos(), mid + ring * ang.sin())
    };

    let mut out = svg_open(size);
    for e in g.edges() {
        edge_line(
            &mut out,
            pos(e.u),
            pos(e.v),
            color_of(coloring, Element::of_edge(e)),
        );
    }
    for s in g.semiedges() {
        let (x, y) = pos(s.anchor);
        let scale = (ring + 30.0 + 8.0 * s.slot as f64) / ring;
        let tip = (mid + (x - mid) * scale, mid + (y - mid) * scale);
        edge_line(
            &mut out,
            (x, y),
            tip,
            color_of(coloring, Element::Semi(s.anchor, s.slot)),
        );
    }
    for v in g.vertices() {
        let (x, y) = pos(v);
        vertex_mark(&mut out, x, y, color_of(coloring, Element::Vertex(v)));
    }
    out.push_str("</svg>\n");
    out
}
