//! SVG emission for construction figures: the witness triangles, every
//! labeled trace line clipped to the viewport, the labeled trace points, and
//! the fixed point marked. Mathematical orientation (y up); the viewport fits
//! the traced points with a 10% margin.

use std::fmt::Write;

use crate::construction::{ConstructionTrace, Element};
use crate::geom::{Line, Point, Triangle};

struct Frame {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Frame {
    fn around(points: &[Point]) -> Frame {
        let mut frame = Frame {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points {
            frame.min_x = frame.min_x.min(p.x);
            frame.min_y = frame.min_y.min(p.y);
            frame.max_x = frame.max_x.max(p.x);
            frame.max_y = frame.max_y.max(p.y);
        }
        if points.is_empty() {
            return Frame { min_x: -1.0, min_y: -1.0, max_x: 1.0, max_y: 1.0 };
        }
        // 10% margin, with a floor so degenerate extents stay drawable
        let pad_x = (0.1 * (frame.max_x - frame.min_x)).max(0.5);
        let pad_y = (0.1 * (frame.max_y - frame.min_y)).max(0.5);
        Frame {
            min_x: frame.min_x - pad_x,
            min_y: frame.min_y - pad_y,
            max_x: frame.max_x + pad_x,
            max_y: frame.max_y + pad_y,
        }
    }

    fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    fn extent(&self) -> f64 {
        self.width().max(self.height())
    }

    /// World to SVG: flip y so the figure reads y-up.
    fn map(&self, p: Point) -> (f64, f64) {
        (p.x, -p.y)
    }

    /// The two endpoints of the line clipped to the frame, in world
    /// coordinates, if the line crosses it.
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let dir = l.direction();
        let origin = l.point_on();
        let mut ts: Vec<f64> = Vec::new();
        let slack = 1e-9 * self.extent();
        let mut consider = |t: f64| {
            let p = origin + dir * t;
            if p.x >= self.min_x - slack
                && p.x <= self.max_x + slack
                && p.y >= self.min_y - slack
                && p.y <= self.max_y + slack
            {
                ts.push(t);
            }
        };
        if dir.x.abs() > 1e-12 {
            consider((self.min_x - origin.x) / dir.x);
            consider((self.max_x - origin.x) / dir.x);
        }
        if dir.y.abs() > 1e-12 {
            consider((self.min_y - origin.y) / dir.y);
            consider((self.max_y - origin.y) / dir.y);
        }
        ts.sort_by(f64::total_cmp);
        let (first, last) = (ts.first()?, ts.last()?);
        if (last - first).abs() < 1e-12 {
            return None;
        }
        Some((origin + dir * *first, origin + dir * *last))
    }
}

fn push_text(out: &mut String, x: f64, y: f64, size: f64, label: &str) {
    let escaped = label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
    writeln!(
        out,
        r#"  <text x="{x}" y="{y}" font-size="{size}" font-family="serif" font-style="italic">{escaped}</text>"#
    )
    .expect("write to string");
}

fn push_polygon(out: &mut String, frame: &Frame, t: &Triangle, stroke: &str, dash: &str) {
    let pts: Vec<String> = t
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = frame.map(*v);
            format!("{x},{y}")
        })
        .collect();
    writeln!(
        out,
        r#"  <polygon points="{}" fill="none" stroke="{stroke}" stroke-width="{}"{dash} />"#,
        pts.join(" "),
        frame.extent() / 250.0,
    )
    .expect("write to string");
}

/// Renders the labeled trace (and the triangle pair, when given) as a
/// standalone SVG document. Every label in the trace appears exactly once as
/// a text element.
pub fn render(trace: &ConstructionTrace, triangles: Option<(&Triangle, &Triangle)>) -> String {
    let mut anchors: Vec<Point> = Vec::new();
    for entry in trace.entries() {
        if let Element::Point(p) = entry.element {
            anchors.push(p);
        }
    }
    if let Some((source, image)) = triangles {
        anchors.extend(source.vertices());
        anchors.extend(image.vertices());
    }
    let frame = Frame::around(&anchors);
    let extent = frame.extent();
    let (view_x, view_y) = (frame.min_x, -frame.max_y);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("write to string");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view_x} {view_y} {} {}" width="640" height="{}">"#,
        frame.width(),
        frame.height(),
        (640.0 * frame.height() / frame.width()).round(),
    )
    .expect("write to string");
    writeln!(
        out,
        r#"  <rect x="{view_x}" y="{view_y}" width="{}" height="{}" fill="white" />"#,
        frame.width(),
        frame.height(),
    )
    .expect("write to string");

    if let Some((source, image)) = triangles {
        push_polygon(&mut out, &frame, source, "#1f6f43", "");
        push_polygon(&mut out, &frame, image, "#904a98", r#" stroke-dasharray="0.6%""#);
    }

    let stroke_w = extent / 400.0;
    let font = extent / 28.0;
    let offset = extent / 90.0;

    for entry in trace.entries() {
        match entry.element {
            Element::Line(l) => {
                if let Some((p, q)) = frame.clip(&l) {
                    let (x1, y1) = frame.map(p);
                    let (x2, y2) = frame.map(q);
                    writeln!(
                        out,
                        r##"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#44546a" stroke-width="{stroke_w}" />"##
                    )
                    .expect("write to string");
                    // label partway along the clipped segment, nudged off the
                    // line along its normal
                    let normal = crate::geom::Vec2::new(l.a(), l.b());
                    let at = p + (q - p) * 0.18 + normal * offset;
                    let (lx, ly) = frame.map(at);
                    push_text(&mut out, lx, ly, font, &entry.label);
                }
            }
            Element::Point(p) => {
                let (cx, cy) = frame.map(p);
                let emphasized = entry.label == "C";
                let (radius, fill) = if emphasized {
                    (extent / 90.0, "#c0392b")
                } else {
                    (extent / 140.0, "#1a1a1a")
                };
                writeln!(out, r#"  <circle cx="{cx}" cy="{cy}" r="{radius}" fill="{fill}" />"#)
                    .expect("write to string");
                push_text(&mut out, cx + offset, cy - offset, font, &entry.label);
            }
        }
    }

    writeln!(out, "</svg>").expect("write to string");
    out
}
