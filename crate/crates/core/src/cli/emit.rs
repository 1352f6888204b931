//! JSON values, CSV tables and SVG scenes.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebra::{Quaternion, Scalar, Signature};
use crate::geometry::{ProjLine, ProjPoint};
use crate::polynomials::RealPoly;

pub fn scalar<S: Scalar>(s: &S) -> Value {
    s.to_json()
}

pub fn quaternion<S: Scalar>(q: &Quaternion<S>) -> Value {
    Value::Array(q.coords().into_iter().map(scalar).collect())
}

/// Integer-cleared homogeneous coordinates where the backend allows it.
pub fn point<S: Scalar>(p: &ProjPoint<S>) -> Value {
    Value::Array(p.coords().iter().map(scalar).collect())
}

pub fn line<S: Scalar>(l: &ProjLine<S>) -> Value {
    Value::Array(l.coords().iter().map(scalar).collect())
}

/// Coefficients in ascending degree next to the printed form.
pub fn real_poly<S: Scalar>(p: &RealPoly<S>) -> Value {
    json!({
        "coeffs": p.coeffs().iter().map(scalar).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

/// Tabular output, rendered as CSV.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Fixed,
    Moving,
    Focal,
    Tracer,
    Point,
}

impl Mark {
    fn class(self) -> &'static str {
        match self {
            Mark::Fixed => "joint fixed",
            Mark::Moving => "joint moving",
            Mark::Focal => "focal",
            Mark::Tracer => "tracer",
            Mark::Point => "point",
        }
    }

    fn colour(self) -> &'static str {
        match self {
            Mark::Fixed => "#1f4e9c",
            Mark::Moving => "#c0392b",
            Mark::Focal => "#7d3c98",
            Mark::Tracer => "#117a65",
            Mark::Point => "#333333",
        }
    }
}

/// Geometry to draw in the chart `x = x₂/x₁`, `y = x₃/x₁`.
#[derive(Clone, Debug)]
pub struct Scene {
    pub signature: Signature,
    pub title: String,
    pub points: Vec<(Mark, String, [f64; 3])>,
    /// `(class, label, line coordinates)`.
    pub lines: Vec<(&'static str, String, [f64; 3])>,
    /// `(class, homogeneous samples)`; breaks where `x₁` changes sign.
    pub curves: Vec<(&'static str, Vec<[f64; 3]>)>,
}

impl Scene {
    pub fn new(signature: Signature, title: impl Into<String>) -> Self {
        Scene {
            signature,
            title: title.into(),
            points: Vec::new(),
            lines: Vec::new(),
            curves: Vec::new(),
        }
    }

    pub fn point<S: Scalar>(&mut self, mark: Mark, label: impl Into<String>, p: &ProjPoint<S>) {
        self.points.push((mark, label.into(), to_f64(&p.coords())));
    }

    pub fn line<S: Scalar>(&mut self, class: &'static str, label: impl Into<String>, l: &ProjLine<S>) {
        self.lines.push((class, label.into(), to_f64(&l.coords())));
    }

    fn extent(&self) -> f64 {
        let r = self
            .points
            .iter()
            .filter_map(|(_, _, p)| chart(p))
            .map(|(x, y)| x.abs().max(y.abs()))
            .filter(|r| r.is_finite())
            .fold(1.0f64, f64::max);
        (r * 1.2).min(8.0)
    }

    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 640.0;
        let r = self.extent();
        let px = |v: f64| (v + r) / (2.0 * r) * SIZE;
        let py = |v: f64| (r - v) / (2.0 * r) * SIZE;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(s, r##"<rect class="frame" x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" stroke="#999"/>"##);
        if self.signature == Signature::Split {
            let _ = writeln!(
                s,
                r#"<circle class="null-circle" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#,
                px(0.0),
                py(0.0),
                SIZE / (2.0 * r)
            );
        }
        for (class, pts) in &self.curves {
            for run in runs(pts) {
                let d: Vec<String> = run.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
                let _ = writeln!(
                    s,
                    r##"<polyline class="{class}" points="{}" fill="none" stroke="#555" stroke-width="1"/>"##,
                    d.join(" ")
                );
            }
        }
        for (class, label, u) in &self.lines {
            if let Some(((x0, y0), (x1, y1))) = clip_line(u, self.signature, r) {
                let _ = writeln!(
                    s,
                    r##"<line class="{class}" data-label="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
                    escape(label),
                    px(x0),
                    py(y0),
                    px(x1),
                    py(y1)
                );
            }
        }
        for (mark, label, p) in &self.points {
            let (cx, cy, ideal) = match chart(p) {
                Some((x, y)) if x.abs() <= r && y.abs() <= r => (px(x), py(y), false),
                // ideal or off-chart: marker on the frame in the point's direction
                _ => {
                    let (dx, dy) = if p[0].abs() < 1e-12 { (p[1], p[2]) } else { (p[1] / p[0], p[2] / p[0]) };
                    let m = dx.abs().max(dy.abs()).max(f64::MIN_POSITIVE);
                    (px(dx / m * r * 0.97), py(dy / m * r * 0.97), true)
                }
            };
            let extra = if ideal { " ideal" } else { "" };
            let _ = writeln!(
                s,
                r#"<circle class="{}{extra}" data-label="{}" cx="{cx:.2}" cy="{cy:.2}" r="4" fill="{}"/>"#,
                mark.class(),
                escape(label),
                mark.colour()
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="{}">{}</text>"#,
                cx + 6.0,
                cy - 6.0,
                mark.colour(),
                escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn to_f64<S: Scalar>(c: &[S; 3]) -> [f64; 3] {
    [c[0].to_f64(), c[1].to_f64(), c[2].to_f64()]
}

fn chart(p: &[f64; 3]) -> Option<(f64, f64)> {
    let scale = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (p[0].abs() > 1e-9 * scale).then(|| (p[1] / p[0], p[2] / p[0]))
}

/// Splits a sampled curve where it leaves the affine chart.
fn runs(pts: &[[f64; 3]]) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let mut prev_sign = 0.0;
    for p in pts {
        let sign = p[0].signum();
        match chart(p) {
            Some(xy) if xy.0.abs() < 50.0 && xy.1.abs() < 50.0 && (prev_sign == 0.0 || sign == prev_sign) => {
                cur.push(xy);
            }
            Some(xy) if xy.0.abs() < 50.0 && xy.1.abs() < 50.0 => {
                if cur.len() > 1 {
                    out.push(std::mem::take(&mut cur));
                }
                cur = vec![xy];
            }
            _ => {
                if cur.len() > 1 {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
        }
        prev_sign = sign;
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

/// The line `⟨u, (1, x, y)⟩ = 0` clipped to the square `[−r, r]²`.
fn clip_line(u: &[f64; 3], sig: Signature, r: f64) -> Option<((f64, f64), (f64, f64))> {
    // u₁ − ε(u₂ x + u₃ y) = 0
    let e = sig.epsilon() as f64;
    let (a, b, c) = (-e * u[1], -e * u[2], u[0]);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let mut push = |x: f64, y: f64| {
        if x.abs() <= r + 1e-9 && y.abs() <= r + 1e-9 && !hits.iter().any(|h| (h.0 - x).abs() + (h.1 - y).abs() < 1e-9) {
            hits.push((x, y));
        }
    };
    if b.abs() > 1e-12 {
        push(-r, -(c + a * -r) / b);
        push(r, -(c + a * r) / b);
    }
    if a.abs() > 1e-12 {
        push(-(c + b * -r) / a, -r);
        push(-(c + b * r) / a, r);
    }
    (hits.len() >= 2).then(|| (hits[0], hits[1]))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_points_land_on_the_unit_circle() {
        for p in [[1.0, 1.0, 0.0], [5.0, 3.0, 4.0], [13.0, -5.0, 12.0]] {
            let (x, y) = chart(&p).unwrap();
            assert!((x * x + y * y - 1.0).abs() < 1e-12);
        }
        assert!(chart(&[0.0, 1.0, 1.0]).is_none());
    }

    #[test]
    fn clipping() {
        // [i + k] is x₁ − x₃ = 0, the horizontal y = 1
        let ((x0, y0), (x1, y1)) = clip_line(&[1.0, 0.0, 1.0], Signature::Split, 2.0).unwrap();
        assert_eq!((y0, y1), (1.0, 1.0));
        assert_eq!((x0.min(x1), x0.max(x1)), (-2.0, 2.0));
        assert!(clip_line(&[5.0, 0.0, 1.0], Signature::Split, 2.0).is_none());
    }

    #[test]
    fn csv_quotes_fields() {
        let t = Table {
            header: vec!["a".into(), "b".into()],
            rows: vec![vec!["1".into(), "x,y".into()]],
        };
        assert_eq!(String::from_utf8(t.to_csv()).unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
