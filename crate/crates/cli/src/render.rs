//! SVG pictures. Purely presentational: nothing here feeds a verdict.

use std::fmt::Write as _;

use realpencil::algebra::rational::to_f64;
use realpencil::algebra::{rat, ProjPoint, Rational};
use realpencil::pencil::{Pencil, PencilParameter};
use realpencil::topology::{fiber, ComponentKind, CurveTopology};

const SIZE: f64 = 800.0;
const COLUMNS: usize = 400;
const SEGMENT_SAMPLES: usize = 200;
const PALETTE: &[&str] = &["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

pub struct TriangleOverlay {
    pub points: [ProjPoint; 3],
    pub signs: [i8; 3],
    pub inner: ProjPoint,
}

pub struct Overlay<'a> {
    pub pencil: Option<&'a Pencil>,
    pub members: usize,
    pub triangle: Option<TriangleOverlay>,
}

fn coords(p: &ProjPoint) -> [f64; 3] {
    [to_f64(&p.0[0]), to_f64(&p.0[1]), to_f64(&p.0[2])]
}

struct Canvas {
    out: String,
    window: f64,
}

impl Canvas {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let s = SIZE / (2.0 * self.window);
        ((x + self.window) * s, (self.window - y) * s)
    }

    /// Polylines through affine points; `None` breaks the line.
    fn polyline(&mut self, pts: &[Option<(f64, f64)>], style: &str) {
        let limit = 4.0 * self.window;
        let mut run: Vec<(f64, f64)> = Vec::new();
        let flush = |run: &mut Vec<(f64, f64)>, out: &mut String| {
            if run.len() > 1 {
                let s: Vec<String> = run.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(out, "  <polyline points=\"{}\" {style}/>", s.join(" "));
            }
            run.clear();
        };
        let mut last: Option<(f64, f64)> = None;
        for p in pts {
            match p {
                Some((x, y)) if x.abs() < limit && y.abs() < limit => {
                    if let Some((lx, ly)) = last {
                        if (lx - x).abs() + (ly - y).abs() > self.window {
                            flush(&mut run, &mut self.out);
                        }
                    }
                    run.push(self.map(*x, *y));
                    last = Some((*x, *y));
                }
                _ => {
                    flush(&mut run, &mut self.out);
                    last = None;
                }
            }
        }
        flush(&mut run, &mut self.out);
    }

    fn dot(&mut self, p: &ProjPoint, r: f64, fill: &str) {
        let [x, y, z] = coords(p);
        if z == 0.0 {
            return;
        }
        let (u, v) = self.map(x / z, y / z);
        let _ = writeln!(self.out, "  <circle cx=\"{u:.2}\" cy=\"{v:.2}\" r=\"{r}\" fill=\"{fill}\"/>");
    }
}

fn affine(h: [f64; 3]) -> Option<(f64, f64)> {
    if h[2].abs() < 1e-12 {
        None
    } else {
        Some((h[0] / h[2], h[1] / h[2]))
    }
}

/// Branches of `f(x, y) = 0` over a grid of columns, joined while the number
/// of real roots stays the same. With `swap`, the roles of x and y change.
fn trace_member(form: &realpencil::algebra::TernaryForm, window: f64) -> Vec<Vec<Option<(f64, f64)>>> {
    let f = form.dehomogenize();
    let (f, swap) = if f.deg_y() == 0 { (f.swap(), true) } else { (f, false) };
    let mut lines: Vec<Vec<Option<(f64, f64)>>> = Vec::new();
    let mut prev = usize::MAX;
    let scale = 1 << 10;
    let precision = rat(1, 1 << 12);
    for j in 0..=COLUMNS {
        let t = -window + 2.0 * window * j as f64 / COLUMNS as f64;
        let x: Rational = rat((t * scale as f64).round() as i64, scale);
        let ys: Vec<f64> = fiber(&f, &x)
            .into_iter()
            .map(|mut r| {
                r.refine_to(&precision);
                r.approx()
            })
            .collect();
        if ys.len() != prev {
            lines.extend(std::iter::repeat_with(Vec::new).take(ys.len()));
        }
        let base = lines.len() - ys.len();
        for (i, y) in ys.iter().enumerate() {
            let xf = to_f64(&x);
            lines[base + i].push(Some(if swap { (*y, xf) } else { (xf, *y) }));
        }
        prev = ys.len();
    }
    lines
}

pub fn render_svg(topo: &CurveTopology, overlay: &Overlay<'_>, window: f64) -> String {
    let mut c = Canvas { out: String::new(), window };
    let _ = writeln!(
        c.out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(c.out, "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");

    if let Some(p) = overlay.pencil {
        let n = overlay.members.max(1);
        for i in 0..n {
            let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
            let lambda = rat((theta.tan() * 64.0).round() as i64, 64);
            let member = p.member(&PencilParameter::Finite(lambda));
            for line in trace_member(&member, window) {
                c.polyline(&line, "fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"");
            }
        }
        for b in &p.base_points {
            c.dot(b, 3.0, "#999999");
        }
    }

    if let Some(t) = &overlay.triangle {
        for e in 0..3 {
            let (p, q) = (coords(&t.points[e]), coords(&t.points[(e + 1) % 3]));
            let s = t.signs[e] as f64;
            let pts: Vec<Option<(f64, f64)>> = (0..=SEGMENT_SAMPLES)
                .map(|k| {
                    let th = std::f64::consts::FRAC_PI_2 * k as f64 / SEGMENT_SAMPLES as f64;
                    let (a, b) = (th.cos(), s * th.sin());
                    affine([a * p[0] + b * q[0], a * p[1] + b * q[1], a * p[2] + b * q[2]])
                })
                .collect();
            c.polyline(&pts, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
        }
        c.dot(&t.inner, 4.0, "black");
    }

    for (i, comp) in topo.components.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut pts: Vec<Option<(f64, f64)>> = comp.trace.iter().map(|p| affine(coords(p))).collect();
        if comp.kind == ComponentKind::Oval {
            if let Some(first) = pts.first().cloned() {
                pts.push(first);
            }
        }
        c.polyline(&pts, &format!("fill=\"none\" stroke=\"{colour}\" stroke-width=\"2\""));
        c.dot(&comp.witness, 2.5, colour);
    }
    c.out.push_str("</svg>\n");
    c.out
}
