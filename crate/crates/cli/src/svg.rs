//! Static 600×600 plots in the complex plane. Every region part becomes one
//! element with `class="part"`, every eigenvalue or zero one `class="marker"`.

use std::fmt::Write;

use quatloc::regions::ComplexShape;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;
const GRID: usize = 180;

struct View {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl View {
    fn fit(shapes: &[ComplexShape], markers: &[[f64; 2]]) -> View {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut add = |c: [f64; 2], r: f64| {
            for k in 0..2 {
                lo[k] = lo[k].min(c[k] - r);
                hi[k] = hi[k].max(c[k] + r);
            }
        };
        for s in shapes {
            match *s {
                ComplexShape::Disc { center, radius, .. } => add(center, radius),
                // the oval lies in the two discs of radius √bound around its foci
                ComplexShape::Oval { c1, c2, bound, .. } => {
                    add(c1, bound.sqrt());
                    add(c2, bound.sqrt());
                }
                ComplexShape::Point { center, .. } => add(center, 0.0),
            }
        }
        for &m in markers {
            add(m, 0.0);
        }
        if !lo[0].is_finite() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9) * 1.05;
        let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
        View { x0: mid[0] - span / 2.0, y0: mid[1] - span / 2.0, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - MARGIN - (y - self.y0) * self.scale
    }

    fn span(&self) -> f64 {
        (SIZE - 2.0 * MARGIN) / self.scale
    }
}

/// Zero set of `|z−c1||z−c2| − b` as line segments.
fn oval_segments(c1: [f64; 2], c2: [f64; 2], bound: f64) -> Vec<([f64; 2], [f64; 2])> {
    let r = bound.sqrt();
    let pad = r * 0.05 + 1e-9;
    let (xmin, xmax) = (c1[0].min(c2[0]) - r - pad, c1[0].max(c2[0]) + r + pad);
    let (ymin, ymax) = (c1[1].min(c2[1]) - r - pad, c1[1].max(c2[1]) + r + pad);
    let (dx, dy) = ((xmax - xmin) / GRID as f64, (ymax - ymin) / GRID as f64);
    let f = |x: f64, y: f64| (x - c1[0]).hypot(y - c1[1]) * (x - c2[0]).hypot(y - c2[1]) - bound;
    let vals: Vec<Vec<f64>> = (0..=GRID).map(|i| (0..=GRID).map(|j| f(xmin + i as f64 * dx, ymin + j as f64 * dy)).collect()).collect();

    let mut segs = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let (x, y) = (xmin + i as f64 * dx, ymin + j as f64 * dy);
            // corners counter-clockwise from bottom-left
            let v = [vals[i][j], vals[i + 1][j], vals[i + 1][j + 1], vals[i][j + 1]];
            let p = [[x, y], [x + dx, y], [x + dx, y + dy], [x, y + dy]];
            let cross = |a: usize, b: usize| -> [f64; 2] {
                let t = v[a] / (v[a] - v[b]);
                [p[a][0] + t * (p[b][0] - p[a][0]), p[a][1] + t * (p[b][1] - p[a][1])]
            };
            let edges: Vec<[f64; 2]> = (0..4).filter(|&e| (v[e] < 0.0) != (v[(e + 1) % 4] < 0.0)).map(|e| cross(e, (e + 1) % 4)).collect();
            match edges.len() {
                2 => segs.push((edges[0], edges[1])),
                4 => {
                    let centre = f(x + dx / 2.0, y + dy / 2.0);
                    if (centre < 0.0) == (v[0] < 0.0) {
                        segs.push((edges[0], edges[3]));
                        segs.push((edges[1], edges[2]));
                    } else {
                        segs.push((edges[0], edges[1]));
                        segs.push((edges[2], edges[3]));
                    }
                }
                _ => {}
            }
        }
    }
    segs
}

fn dot_path(view: &View, c: [f64; 2], r: f64) -> String {
    let (x, y) = (view.px(c[0]), view.py(c[1]));
    format!("M {:.3} {:.3} a {r} {r} 0 1 0 {:.3} 0 a {r} {r} 0 1 0 {:.3} 0 ", x - r, y, 2.0 * r, -2.0 * r)
}

pub fn render(title: &str, shapes: &[ComplexShape], markers: &[[f64; 2]]) -> String {
    let view = View::fit(shapes, markers);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" viewBox="0 0 600 600">"#);
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r##"<rect x="0" y="0" width="600" height="600" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="#999999"/>"##, w = SIZE - 2.0 * MARGIN);
    let (x1, y1) = (view.x0, view.y0);
    let (x2, y2) = (view.x0 + view.span(), view.y0 + view.span());
    if x1 <= 0.0 && 0.0 <= x2 {
        let _ = writeln!(s, r##"<line class="axis" x1="{0:.3}" y1="{MARGIN}" x2="{0:.3}" y2="{1}" stroke="#bbbbbb"/>"##, view.px(0.0), SIZE - MARGIN);
    }
    if y1 <= 0.0 && 0.0 <= y2 {
        let _ = writeln!(s, r##"<line class="axis" x1="{MARGIN}" y1="{0:.3}" x2="{1}" y2="{0:.3}" stroke="#bbbbbb"/>"##, view.py(0.0), SIZE - MARGIN);
    }
    let label = |v: f64| format!("{v:.4}");
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{}" font-size="11">{}</text>"#, SIZE - MARGIN + 15.0, label(x1));
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#, SIZE - MARGIN, SIZE - MARGIN + 15.0, label(x2));
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#, MARGIN - 4.0, SIZE - MARGIN, label(y1));
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#, MARGIN - 4.0, MARGIN + 10.0, label(y2));

    for shape in shapes {
        match *shape {
            ComplexShape::Disc { center, radius, projected } => {
                let _ = writeln!(
                    s,
                    r##"<circle class="part" data-projected="{projected}" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#4477aa" fill-opacity="0.15" stroke="#4477aa"/>"##,
                    view.px(center[0]),
                    view.py(center[1]),
                    radius * view.scale
                );
            }
            ComplexShape::Oval { c1, c2, bound, projected } => {
                let segs = oval_segments(c1, c2, bound);
                let mut d = String::new();
                if segs.is_empty() {
                    d.push_str(&dot_path(&view, c1, 1.5));
                    d.push_str(&dot_path(&view, c2, 1.5));
                }
                for (a, b) in segs {
                    let _ = write!(d, "M {:.3} {:.3} L {:.3} {:.3} ", view.px(a[0]), view.py(a[1]), view.px(b[0]), view.py(b[1]));
                }
                let _ = writeln!(s, r##"<path class="part" data-projected="{projected}" d="{}" fill="none" stroke="#228833"/>"##, d.trim_end());
            }
            ComplexShape::Point { center, projected } => {
                let _ = writeln!(
                    s,
                    r##"<circle class="part" data-projected="{projected}" cx="{:.3}" cy="{:.3}" r="2" fill="#4477aa"/>"##,
                    view.px(center[0]),
                    view.py(center[1])
                );
            }
        }
    }
    for m in markers {
        let _ = writeln!(s, r##"<circle class="marker" cx="{:.3}" cy="{:.3}" r="3.5" fill="#cc3311"/>"##, view.px(m[0]), view.py(m[1]));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
