//! SVG drawing of an arrangement, optionally colored.
//!
//! The viewport is the clip box. Each line becomes one `<line>` element
//! clipped to the box, vertices become dots. Output is a pure function of
//! the input, so repeated renders are byte-identical.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arrangement::Arrangement;
use crate::exact::Rational;

pub const PALETTE: [&str; 16] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#000000",
];

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

pub fn render_svg(arr: &Arrangement, colors: Option<&[usize]>) -> String {
    let half = f(&arr.clip_box().half);
    let size = 2.0 * half;
    let stroke = size / 400.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="800">"#,
        -half, -half, size, size
    );
    let _ = writeln!(
        out,
        r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white" stroke="none"/>"#,
        -half, -half, size, size
    );
    // y grows downward in SVG.
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke-width="{stroke:.6}" stroke-linecap="round">"#);
    let mut ends = vec![Vec::new(); arr.num_lines()];
    for q in 0..arr.num_infinite_points() {
        let (l, _) = arr.infinite_point_ray(q);
        ends[l].push(arr.exit_point(q));
    }
    for (l, pts) in ends.iter().enumerate() {
        let color = match colors {
            Some(c) => PALETTE[c[l] % PALETTE.len()],
            None => "#333333",
        };
        let _ = writeln!(
            out,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{color}" data-line="{l}"/>"#,
            f(&pts[0].x),
            f(&pts[0].y),
            f(&pts[1].x),
            f(&pts[1].y),
        );
    }
    let radius = stroke * 1.5;
    for v in 0..arr.num_vertices() {
        let p = arr.vertex_point(v);
        let _ = writeln!(
            out,
            r##"<circle cx="{:.6}" cy="{:.6}" r="{radius:.6}" fill="#000000" stroke="none"/>"##,
            f(&p.x),
            f(&p.y)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
