//! Expansion of a magistral into explicit segments, arcs, polylines and texts.
//!
//! All lengths from settings are paper millimeters; `length_scale` converts
//! them to the carrier's own units (1 for paper-space elements).

use std::f64::consts::{PI, TAU};

use super::registry::{descriptor, CarrierStyle, Glyph, Length, MagistralTypeDescriptor, Pattern};
use super::settings::{decode_individual, FieldValue, IndividualSettings};
use super::validate_magistral_scaled;
use crate::error::DomainError;
use crate::geometry::{CarrierLine, Frame};
use crate::model::{
    ArcElement, CarrierRecord, Element, GeneralSettings, Header, MagistralElement, Point32, PolylineElement,
    SegmentElement, TextElement, POLYLINE_MAX_VERTICES,
};
use crate::standards::quantize::{COMPRESSION, GENERAL};
use crate::standards::LineType;
use crate::text::encode_cp1251;

/// Upper bound on gaps (or wavy half-waves) per magistral.
pub const MAX_PERIODS: usize = 1 << 20;

/// Samples per half-wave of the wavy line.
pub const WAVY_SAMPLES: usize = 8;

/// Estimated advance of one character, as a fraction of the font size.
pub const TEXT_ADVANCE: f64 = 0.7;

/// Arclength partition of a carrier. `carrier_on` and `gaps` are sorted,
/// and together tile `[0, length]` without overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub length: f64,
    pub first: f64,
    pub on: f64,
    pub gap: f64,
    pub carrier_on: Vec<(f64, f64)>,
    pub gaps: Vec<(f64, f64)>,
    /// Glyph frames at gap midpoints, one per gap.
    pub anchors: Vec<Frame>,
}

fn resolve(l: Length, g: &GeneralSettings, s: &IndividualSettings) -> f64 {
    match l {
        Length::FirstStep => GENERAL.dequantize(g.first_step),
        Length::Step => GENERAL.dequantize(g.step),
        Length::Picture => GENERAL.dequantize(g.picture),
        Length::Field(name) => s.length(name).expect("registry lengths name length fields"),
        Length::Zero => 0.0,
    }
}

/// Pattern lengths `(first, on, gap)` in carrier units, for periodic types.
pub(crate) fn pattern_lengths(
    d: &MagistralTypeDescriptor,
    g: &GeneralSettings,
    s: &IndividualSettings,
    length_scale: f64,
) -> Option<(f64, f64, f64)> {
    match d.pattern {
        Pattern::Periodic { first, on, gap } => Some((
            resolve(first, g, s) * length_scale,
            resolve(on, g, s) * length_scale,
            resolve(gap, g, s) * length_scale,
        )),
        Pattern::Wavy | Pattern::Rails => None,
    }
}

/// Number of gaps that fit, or `None` if it exceeds [`MAX_PERIODS`].
pub(crate) fn period_count(length: f64, first: f64, on: f64, gap: f64) -> Option<usize> {
    if first + gap > length + slack(length) {
        return Some(0);
    }
    let n = ((length + slack(length) - first - gap) / (on + gap)).floor() + 1.0;
    (n <= MAX_PERIODS as f64).then_some(n as usize)
}

pub(crate) fn wavy_half_waves(length: f64, half_wave: f64) -> Option<usize> {
    let n = (length / half_wave).round().max(1.0);
    (n <= MAX_PERIODS as f64).then_some(n as usize)
}

fn slack(length: f64) -> f64 {
    1e-9 * length.max(1.0)
}

fn checked(
    m: &MagistralElement,
    length_scale: f64,
) -> Result<(&'static MagistralTypeDescriptor, IndividualSettings, CarrierLine), DomainError> {
    let violations = validate_magistral_scaled(m, length_scale);
    if !violations.is_empty() {
        let text: Vec<_> = violations.iter().map(|v| v.to_string()).collect();
        return Err(DomainError::Precondition(text.join("; ")));
    }
    let d = descriptor(m.mtype)?;
    let s = decode_individual(m.mtype, &m.individual).expect("validated");
    Ok((d, s, m.carrier.to_geometry()))
}

pub fn layout(m: &MagistralElement, length_scale: f64) -> Result<Layout, DomainError> {
    let (d, s, carrier) = checked(m, length_scale)?;
    layout_of(d, &m.general, &s, &carrier, length_scale)
}

fn layout_of(
    d: &MagistralTypeDescriptor,
    g: &GeneralSettings,
    s: &IndividualSettings,
    carrier: &CarrierLine,
    length_scale: f64,
) -> Result<Layout, DomainError> {
    let length = carrier.length()?;
    let Some((first, on, gap)) = pattern_lengths(d, g, s, length_scale) else {
        return Ok(Layout {
            length,
            first: 0.0,
            on: length,
            gap: 0.0,
            carrier_on: vec![(0.0, length)],
            gaps: Vec::new(),
            anchors: Vec::new(),
        });
    };
    let count = period_count(length, first, on, gap)
        .ok_or_else(|| DomainError::Precondition(format!("more than {MAX_PERIODS} periods")))?;
    let mut carrier_on = Vec::new();
    let mut gaps = Vec::with_capacity(count);
    let mut end = 0.0;
    for k in 0..count {
        let g0 = if k == 0 { first } else { first + k as f64 * (on + gap) };
        let g1 = (g0 + gap).min(length);
        if g0 > end {
            carrier_on.push((end, g0));
        }
        gaps.push((g0, g1));
        end = g1;
    }
    if length > end {
        carrier_on.push((end, length));
    }
    let anchors = gaps
        .iter()
        .map(|&(a, b)| carrier.frame_at(0.5 * (a + b)))
        .collect::<Result<_, _>>()?;
    Ok(Layout {
        length,
        first,
        on,
        gap,
        carrier_on,
        gaps,
        anchors,
    })
}

pub fn tessellate(m: &MagistralElement) -> Result<Vec<Element>, DomainError> {
    tessellate_scaled(m, 1.0)
}

/// As [`tessellate`], with `length_scale` carrier units per paper mm.
pub fn tessellate_scaled(m: &MagistralElement, length_scale: f64) -> Result<Vec<Element>, DomainError> {
    let (d, s, carrier) = checked(m, length_scale)?;
    let carrier_header = with_line(m.header, d.carrier_line);
    let glyph_header = with_line(m.header, d.glyph_line);
    let mut out = Vec::new();
    match d.pattern {
        Pattern::Wavy => {
            let lambda = s.length("half_wave_length").expect("wavy field") * length_scale;
            let amplitude = s.length("half_wave_height").expect("wavy field") * length_scale;
            wavy(&carrier, lambda, amplitude, carrier_header, &mut out)?;
        }
        Pattern::Rails => {
            let offset = s.length("rail_offset").expect("rails field") * length_scale;
            for side in [1.0, -1.0] {
                push_curve(&carrier.offset(side * offset)?, carrier_header, &mut out);
            }
        }
        Pattern::Periodic { .. } => {
            let lay = layout_of(d, &m.general, &s, &carrier, length_scale)?;
            for &(a, b) in &lay.carrier_on {
                let piece = carrier.sub(a, b)?;
                match d.carrier_style {
                    CarrierStyle::Single => push_curve(&piece, carrier_header, &mut out),
                    CarrierStyle::Double(field) => {
                        let half = 0.5 * s.length(field).expect("double field") * length_scale;
                        for side in [1.0, -1.0] {
                            push_curve(&piece.offset(side * half)?, carrier_header, &mut out);
                        }
                    }
                }
            }
            let mut pen = Pen {
                header: glyph_header,
                frame: None,
                out: &mut out,
            };
            for (frame, &(a, b)) in lay.anchors.iter().zip(&lay.gaps) {
                pen.frame = Some(*frame);
                draw_glyph(d.glyph, &s, b - a, length_scale, &mut pen)?;
            }
        }
    }
    Ok(out)
}

/// Sum of encoded sizes of the tessellation output.
pub fn expanded_size(m: &MagistralElement) -> Result<usize, DomainError> {
    expanded_size_scaled(m, 1.0)
}

pub fn expanded_size_scaled(m: &MagistralElement, length_scale: f64) -> Result<usize, DomainError> {
    Ok(tessellate_scaled(m, length_scale)?.iter().map(Element::size).sum())
}

/// How far a glyph may extend past its gap along the tangent, at each end.
pub fn glyph_overreach(glyph: Glyph, s: &IndividualSettings, gap: f64, length_scale: f64) -> f64 {
    let h = 0.5 * gap;
    let len = |name| s.length(name).expect("glyph field") * length_scale;
    let half_extent = match glyph {
        Glyph::None | Glyph::Zigzag | Glyph::Band => return 0.0,
        Glyph::Arrows { count } => 0.5 * len("arrow_long") + spread(s, count, "arrow_spacing", length_scale),
        Glyph::Strokes { count } => 0.5 * len("stroke_tilt") + spread(s, count, "stroke_spacing", length_scale),
        Glyph::DoubleDot => 0.5 * len("dot_spacing") + gap / 8.0,
        Glyph::Text => 0.5 * text_width(s, length_scale),
        Glyph::Crosses { count } => 0.5 * len("cross_height") + spread(s, count, "cross_spacing", length_scale),
        Glyph::Check => 0.5 * len("check_width"),
        Glyph::Dot => 0.5 * len("dot_diameter"),
        Glyph::DashDots => 0.5 * len("dash_length") + 1.5 * len("dot_diameter"),
    };
    (half_extent - h).max(0.0)
}

/// Offset of the outermost copy from the glyph center.
fn spread(s: &IndividualSettings, count: u8, field: &str, length_scale: f64) -> f64 {
    match count {
        2 => 0.5 * s.length(field).expect("spacing field") * length_scale,
        3 => s.length(field).expect("spacing field") * length_scale,
        _ => 0.0,
    }
}

fn text_parts(s: &IndividualSettings) -> (crate::standards::FontSpec, &str, f64) {
    match (s.get("font"), s.get("text"), s.get("compression")) {
        (Some(FieldValue::Font(f)), Some(FieldValue::Text(t)), Some(FieldValue::Compression(c))) => (*f, t, *c),
        _ => unreachable!("text types carry font, text and compression"),
    }
}

fn text_width(s: &IndividualSettings, length_scale: f64) -> f64 {
    let (font, text, compression) = text_parts(s);
    text.chars().count() as f64 * TEXT_ADVANCE * font.size_mm() * compression * length_scale
}

fn with_line(h: Header, line: LineType) -> Header {
    let mut h = h;
    h.attr.line = line;
    h
}

fn push_curve(c: &CarrierLine, header: Header, out: &mut Vec<Element>) {
    let record = CarrierRecord::from_geometry(c);
    // pieces that collapse when narrowed to 32 bits are dropped
    if record.to_geometry().check().is_err() {
        return;
    }
    out.push(match record {
        CarrierRecord::Segment { start, end } => Element::Segment(SegmentElement { header, start, end }),
        CarrierRecord::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } => Element::Arc(ArcElement {
            header,
            center,
            radius,
            start_angle,
            sweep,
        }),
    });
}

fn wavy(
    carrier: &CarrierLine,
    lambda: f64,
    amplitude: f64,
    header: Header,
    out: &mut Vec<Element>,
) -> Result<(), DomainError> {
    let length = carrier.length()?;
    let n = wavy_half_waves(length, lambda)
        .ok_or_else(|| DomainError::Precondition(format!("more than {MAX_PERIODS} half-waves")))?;
    let samples = WAVY_SAMPLES * n + 1;
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let s = if i + 1 == samples {
            length
        } else {
            length * i as f64 / (samples - 1) as f64
        };
        // phase is i / WAVY_SAMPLES half-waves; nodes are exactly on the carrier
        let (wave, j) = (i / WAVY_SAMPLES, i % WAVY_SAMPLES);
        let sign = if wave % 2 == 0 { 1.0 } else { -1.0 };
        let v = sign * amplitude * (PI * j as f64 / WAVY_SAMPLES as f64).sin();
        points.push(Point32::from_f64(carrier.frame_at(s)?.to_world(0.0, v)));
    }
    // consecutive chunks share their boundary vertex
    let mut start = 0;
    while start + 1 < points.len() {
        let end = (start + POLYLINE_MAX_VERTICES).min(points.len());
        out.push(Element::Polyline(PolylineElement {
            header,
            vertices: points[start..end].to_vec(),
        }));
        start = end - 1;
    }
    Ok(())
}

/// Emits primitives in the local frame of one gap.
struct Pen<'a> {
    header: Header,
    frame: Option<Frame>,
    out: &'a mut Vec<Element>,
}

impl Pen<'_> {
    fn at(&self, u: f64, v: f64) -> Point32 {
        Point32::from_f64(self.frame.expect("frame set before drawing").to_world(u, v))
    }

    fn segment(&mut self, u0: f64, v0: f64, u1: f64, v1: f64) {
        let (start, end) = (self.at(u0, v0), self.at(u1, v1));
        if start != end {
            self.out.push(Element::Segment(SegmentElement {
                header: self.header,
                start,
                end,
            }));
        }
    }

    fn polyline(&mut self, local: &[(f64, f64)]) {
        let vertices = local.iter().map(|&(u, v)| self.at(u, v)).collect();
        self.out.push(Element::Polyline(PolylineElement {
            header: self.header,
            vertices,
        }));
    }

    fn circle(&mut self, u: f64, diameter: f64) {
        let radius = (0.5 * diameter) as f32;
        if radius > 0.0 {
            self.out.push(Element::Arc(ArcElement {
                header: self.header,
                center: self.at(u, 0.0),
                radius,
                start_angle: 0.0,
                sweep: TAU as f32,
            }));
        }
    }

    fn cross(&mut self, u: f64, height: f64) {
        let h = 0.5 * height;
        self.segment(u - h, -h, u + h, h);
        self.segment(u - h, h, u + h, -h);
    }
}

fn positions(count: u8, spacing: f64) -> Vec<f64> {
    match count {
        2 => vec![-0.5 * spacing, 0.5 * spacing],
        3 => vec![-spacing, 0.0, spacing],
        _ => vec![0.0],
    }
}

fn draw_glyph(
    glyph: Glyph,
    s: &IndividualSettings,
    gap: f64,
    length_scale: f64,
    pen: &mut Pen<'_>,
) -> Result<(), DomainError> {
    let len = |name| s.length(name).expect("glyph field") * length_scale;
    let maybe = |name| s.length(name).map_or(0.0, |v| v * length_scale);
    let h = 0.5 * gap;
    match glyph {
        Glyph::None => {}
        Glyph::Arrows { count } => {
            let (a, t) = (len("arrow_long"), len("arrow_trans"));
            for c in positions(count, maybe("arrow_spacing")) {
                pen.polyline(&[(c - 0.5 * a, t), (c + 0.5 * a, 0.0), (c - 0.5 * a, -t)]);
            }
        }
        Glyph::Zigzag => {
            let z = 0.5 * len("zigzag_height");
            pen.polyline(&[(-h, 0.0), (-gap / 6.0, z), (gap / 6.0, -z), (h, 0.0)]);
        }
        Glyph::Strokes { count } => {
            let (height, tilt) = (len("stroke_height"), len("stroke_tilt"));
            for c in positions(count, maybe("stroke_spacing")) {
                pen.segment(c - 0.5 * tilt, -0.5 * height, c + 0.5 * tilt, 0.5 * height);
            }
        }
        Glyph::DoubleDot => {
            for c in positions(2, len("dot_spacing")) {
                pen.circle(c, gap / 4.0);
            }
        }
        Glyph::Text => {
            let (font, text, compression) = text_parts(s);
            if text.is_empty() {
                return Ok(());
            }
            let frame = pen.frame.expect("frame set before drawing");
            let mut rotation = frame.tangent.angle();
            if frame.tangent.x < 0.0 {
                rotation += PI;
                if rotation > PI {
                    rotation -= TAU;
                }
            }
            pen.out.push(Element::Text(TextElement {
                header: pen.header,
                font,
                compression: COMPRESSION.quantize("compression", compression)? as u8,
                anchor: Point32::from_f64(frame.origin),
                rotation: rotation as f32,
                text: encode_cp1251("text", text)?,
            }));
        }
        Glyph::Crosses { count } => {
            let height = len("cross_height");
            for c in positions(count, maybe("cross_spacing")) {
                pen.cross(c, height);
            }
        }
        Glyph::Check => {
            let (height, width) = (len("check_height"), len("check_width"));
            pen.polyline(&[
                (-0.5 * width, 0.5 * height),
                (0.0, -0.5 * height),
                (0.5 * width, 0.5 * height),
            ]);
        }
        Glyph::Band => {
            let t = 0.5 * len("stroke_thickness");
            pen.polyline(&[(-h, -t), (h, -t), (h, t), (-h, t), (-h, -t)]);
        }
        Glyph::Dot => pen.circle(0.0, len("dot_diameter")),
        Glyph::DashDots => {
            let (dash, dot) = (len("dash_length"), len("dot_diameter"));
            pen.segment(-0.5 * dash, 0.0, 0.5 * dash, 0.0);
            pen.circle(-(0.5 * dash + dot), dot);
            pen.circle(0.5 * dash + dot, dot);
        }
    }
    Ok(())
}
