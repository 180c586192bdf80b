//! SVG export. One user unit is one paper millimeter; the y axis is flipped
//! so the sheet origin is the bottom-left corner.

use std::fmt::Write as _;

use crate::error::DomainError;
use crate::magistral::expand_drawing;
use crate::model::{to_paper_mm, Drawing, Element, Header, Point32};
use crate::standards::{Slant, Standards};

/// Fixed three-decimal number with no negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

struct Sheet<'a> {
    drawing: &'a Drawing,
    standards: &'a Standards,
    height: f64,
}

impl Sheet<'_> {
    fn point(&self, header: &Header, p: Point32) -> (String, String) {
        let q = to_paper_mm(self.drawing, self.standards, header, p.to_f64());
        (num(q.x), num(self.height - q.y))
    }

    fn paper_len(&self, header: &Header, v: f64) -> f64 {
        v * self.drawing.paper_factor(self.standards, header.attr.space)
    }

    fn color(&self, header: &Header) -> &str {
        let i = usize::from(header.attr.color.get());
        self.standards.svg.palette.get(i).map_or("#000000", String::as_str)
    }

    fn stroke(&self, header: &Header) -> String {
        let line = header.attr.line;
        let width = if line.is_thick() {
            self.standards.svg.main_width
        } else {
            self.standards.svg.thin_width
        };
        let mut s = format!(" stroke=\"{}\" stroke-width=\"{}\"", self.color(header), num(width));
        let period = self.standards.line_period(line);
        if !period.is_empty() {
            let dashes: Vec<_> = period.iter().map(|v| num(*v)).collect();
            let _ = write!(s, " stroke-dasharray=\"{}\"", dashes.join(" "));
        }
        s
    }

    fn element(&self, e: &Element, out: &mut String) {
        let h = e.header();
        match e {
            Element::Segment(s) => {
                let (x1, y1) = self.point(h, s.start);
                let (x2, y2) = self.point(h, s.end);
                let _ = writeln!(
                    out,
                    "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"{}/>",
                    self.stroke(h)
                );
            }
            Element::Arc(a) => {
                let (r, a0, sweep) = (f64::from(a.radius), f64::from(a.start_angle), f64::from(a.sweep));
                let at = |angle: f64| {
                    let c = a.center.to_f64();
                    Point32::new((c.x + r * angle.cos()) as f32, (c.y + r * angle.sin()) as f32)
                };
                let radius = num(self.paper_len(h, r));
                // y is flipped, so counterclockwise becomes sweep-flag 0
                let flag = if sweep > 0.0 { 0 } else { 1 };
                let (x0, y0) = self.point(h, at(a0));
                let (xm, ym) = self.point(h, at(a0 + 0.5 * sweep));
                let (x1, y1) = self.point(h, at(a0 + sweep));
                let _ = writeln!(
                    out,
                    "<path d=\"M {x0} {y0} A {radius} {radius} 0 0 {flag} {xm} {ym} A {radius} {radius} 0 0 {flag} {x1} {y1}\"{}/>",
                    self.stroke(h)
                );
            }
            Element::Polyline(p) => {
                let points: Vec<_> = p
                    .vertices
                    .iter()
                    .map(|v| {
                        let (x, y) = self.point(h, *v);
                        format!("{x},{y}")
                    })
                    .collect();
                let _ = writeln!(out, "<polyline points=\"{}\"{}/>", points.join(" "), self.stroke(h));
            }
            Element::Text(t) => {
                let (x, y) = self.point(h, t.anchor);
                let degrees = -f64::from(t.rotation).to_degrees();
                let skew = match t.font.slant {
                    Slant::Upright => "",
                    Slant::Inclined => " skewX(-15)",
                };
                let _ = writeln!(
                    out,
                    "<text transform=\"translate({x} {y}) rotate({}) scale({} 1){skew}\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"{}\" stroke=\"none\">{}</text>",
                    num(degrees),
                    num(t.compression_factor()),
                    num(t.font.size_mm()),
                    self.color(h),
                    escape(&t.text_string()),
                );
            }
            Element::Magistral(_) => unreachable!("magistrals are expanded before rendering"),
        }
    }
}

/// Renders the drawing with magistrals expanded.
pub fn render_svg(d: &Drawing, standards: &Standards) -> Result<String, DomainError> {
    let (width, height) = standards
        .sheet_size(d.format)
        .ok_or_else(|| DomainError::invalid("format", "not in the configured format table"))?;
    let expanded = expand_drawing(d, standards)?;
    let sheet = Sheet {
        drawing: &expanded,
        standards,
        height: f64::from(height),
    };
    let (w, hgt) = (f64::from(width), f64::from(height));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}mm\" height=\"{height}mm\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0.000\" y=\"0.000\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\"/>",
        num(w),
        num(hgt),
        num(standards.svg.thin_width)
    );
    out.push_str("<g fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n");
    for e in &expanded.elements {
        sheet.element(e, &mut out);
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
