//! SVG drawing of a lattice-path region.

use std::fmt::Write;

use dmkit_core::latticepath::{Region, Step};

const CELL: i64 = 32;
const MARGIN: i64 = 24;

fn points(start: (i64, i64), steps: &[Step]) -> Vec<(i64, i64)> {
    let mut pts = vec![start];
    for s in steps {
        let (x, y) = *pts.last().expect("nonempty");
        pts.push(match s {
            Step::E => (x + 1, y),
            Step::N => (x, y + 1),
        });
    }
    pts
}

/// Grid, both bounding paths, the start and end points, and step labels on `P`.
pub fn region_svg(r: &Region) -> String {
    let p = points((0, 0), &r.p);
    let q = points((-(r.d as i64), r.d as i64), &r.q);
    let (min_x, max_x) = (-(r.d as i64), (r.u + r.c) as i64);
    let (min_y, max_y) = (0, r.v as i64 + r.d as i64);
    let w = (max_x - min_x) * CELL + 2 * MARGIN;
    let h = (max_y - min_y) * CELL + 2 * MARGIN;
    let tx = |x: i64| MARGIN + (x - min_x) * CELL;
    let ty = |y: i64| h - MARGIN - (y - min_y) * CELL;
    let poly = |pts: &[(i64, i64)]| {
        pts.iter()
            .map(|&(x, y)| format!("{},{}", tx(x), ty(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="1">"##);
    for x in min_x..=max_x {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#,
            tx(x),
            ty(min_y),
            ty(max_y)
        );
    }
    for y in min_y..=max_y {
        let _ = writeln!(
            out,
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#,
            ty(y),
            tx(min_x),
            tx(max_x)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<polyline fill="none" stroke="#1f77b4" stroke-width="3" points="{}"/>"##,
        poly(&p)
    );
    let _ = writeln!(
        out,
        r##"<polyline fill="none" stroke="#d62728" stroke-width="3" points="{}"/>"##,
        poly(&q)
    );
    for i in 0..=r.d {
        let (x, y) = r.start_point(i);
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#,
            tx(x),
            ty(y)
        );
    }
    for j in 0..=r.c {
        let (x, y) = r.end_point(j);
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="white" stroke="black"/>"#,
            tx(x),
            ty(y)
        );
    }
    for (k, w) in p.windows(2).enumerate() {
        let (mx, my) = (tx(w[0].0) + tx(w[1].0), ty(w[0].1) + ty(w[1].1));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="11" font-family="sans-serif" text-anchor="middle">{}</text>"#,
            mx / 2 + 6,
            my / 2 + 12,
            k + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
