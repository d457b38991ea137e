use std::f64::consts::PI;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use pwgl::circle::{CirclePoint, PWMoebius};
use pwgl::ratgeom::{Polytope, Rat};

const SIZE: f64 = 320.0;
const COLORS: [&str; 8] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"];

pub struct Palette {
    keys: Vec<String>,
}

impl Palette {
    pub fn new(keys: impl Iterator<Item = String>) -> Self {
        let mut out: Vec<String> = Vec::new();
        for k in keys {
            if !out.contains(&k) {
                out.push(k);
            }
        }
        Self { keys: out }
    }

    pub fn color(&self, key: &str) -> &'static str {
        let i = self.keys.iter().position(|k| k == key).unwrap_or(0);
        COLORS[i % COLORS.len()]
    }

    pub fn legend(&self) -> Vec<(String, &'static str)> {
        self.keys.iter().map(|k| (k.clone(), self.color(k))).collect()
    }
}

/// Vertices of a planar polygon in counterclockwise order.
pub fn polygon(p: &Polytope) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = p
        .vertices()
        .map(|vs| vs.iter().map(|v| (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0))).collect())
        .unwrap_or_default();
    let n = pts.len().max(1) as f64;
    let (cx, cy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    pts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    pts
}

/// Unit square with y pointing up.
pub fn square(polys: &[(Vec<(f64, f64)>, String)], palette: &Palette) -> String {
    let mut s = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-4 -4 {0} {0}" width="{1}" height="{1}">"#, SIZE + 8.0, SIZE);
    for (pts, key) in polys {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", x * SIZE, (1.0 - y) * SIZE)).collect();
        write!(
            s,
            r##"<polygon points="{}" fill="{}" fill-opacity="0.7" stroke="#222" stroke-width="1"><title>{}</title></polygon>"##,
            coords.join(" "),
            palette.color(key),
            key
        )
        .unwrap();
    }
    write!(s, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="none" stroke="#000" stroke-width="2"/></svg>"##).unwrap();
    s
}

fn angle(p: &CirclePoint) -> f64 {
    match p {
        CirclePoint::Finite(x) => 2.0 * x.to_f64().unwrap_or(f64::INFINITY).atan(),
        CirclePoint::Infinity => PI,
    }
}

/// Samples of the graph in angle coordinates `(θ, f(θ))`, both in `(-π, π]`.
pub fn circle_graph_points(f: &PWMoebius) -> Vec<(f64, f64)> {
    (1..400)
        .filter_map(|i| {
            let t = -PI + 2.0 * PI * i as f64 / 400.0;
            let x = Rat::from_float((t / 2.0).tan())?;
            let y = f.apply(&CirclePoint::Finite(x));
            Some((t, angle(&y)))
        })
        .collect()
}

pub fn graph(points: &[(f64, f64)], breakpoints: &[f64]) -> String {
    let to_px = |t: f64| (t + PI) / (2.0 * PI) * SIZE;
    let mut s = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-4 -4 {0} {0}" width="{1}" height="{1}">"#, SIZE + 8.0, SIZE);
    write!(s, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="none" stroke="#000"/>"##).unwrap();
    write!(s, r##"<line x1="0" y1="{SIZE}" x2="{SIZE}" y2="0" stroke="#bbb" stroke-dasharray="4 4"/>"##).unwrap();
    for b in breakpoints {
        let x = to_px(2.0 * b.atan());
        write!(s, r##"<line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{SIZE}" stroke="#e15759" stroke-width="0.8"/>"##).unwrap();
    }
    let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    for w in points.windows(2) {
        if (w[1].1 - w[0].1).abs() > PI {
            segments.push(Vec::new());
        }
        segments.last_mut().expect("nonempty").push(w[1]);
    }
    for seg in segments.iter().filter(|s| s.len() > 1) {
        let coords: Vec<String> = seg.iter().map(|(t, y)| format!("{:.2},{:.2}", to_px(*t), SIZE - to_px(*y))).collect();
        write!(s, r##"<polyline points="{}" fill="none" stroke="#4e79a7" stroke-width="2"/>"##, coords.join(" ")).unwrap();
    }
    s.push_str("</svg>");
    s
}
