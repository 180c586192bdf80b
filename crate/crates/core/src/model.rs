//! In-memory drawing: element records as they are stored (32-bit floats,
//! quantized codes), the drawing container, and element-level validation.

use serde::Serialize;

use crate::error::{DomainError, Violation};
use crate::geometry::{CarrierLine, Point};
use crate::magistral;
use crate::standards::quantize::COMPRESSION;
use crate::standards::{Attr, CoordSpace, FontSpec, ScaleId, SheetFormat, Standards};

pub const HEADER_SIZE: usize = 3;
pub const SEGMENT_SIZE: usize = 19;
pub const ARC_SIZE: usize = 23;
pub const MAGISTRAL_SIZE: usize = 43;
pub const CARRIER_SIZE: usize = 21;
pub const INDIVIDUAL_SIZE: usize = 12;
pub const POLYLINE_MAX_VERTICES: usize = u16::MAX as usize;

pub fn polyline_size(vertices: usize) -> usize {
    HEADER_SIZE + 2 + 8 * vertices
}

pub fn text_size(bytes: usize) -> usize {
    HEADER_SIZE + 15 + bytes
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point32 {
    pub x: f32,
    pub y: f32,
}

impl Point32 {
    pub const fn new(x: f32, y: f32) -> Self {
        Self { x, y }
    }

    pub fn to_f64(self) -> Point {
        Point::new(f64::from(self.x), f64::from(self.y))
    }

    pub fn from_f64(p: Point) -> Self {
        Self::new(p.x as f32, p.y as f32)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Element type tags. Frozen: they are part of the file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum ElementTag {
    Segment = 0x01,
    Arc = 0x02,
    Polyline = 0x03,
    Text = 0x04,
    Magistral = 0x05,
}

impl ElementTag {
    pub fn from_byte(b: u8) -> Option<Self> {
        Some(match b {
            0x01 => ElementTag::Segment,
            0x02 => ElementTag::Arc,
            0x03 => ElementTag::Polyline,
            0x04 => ElementTag::Text,
            0x05 => ElementTag::Magistral,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementTag::Segment => "segment",
            ElementTag::Arc => "arc",
            ElementTag::Polyline => "polyline",
            ElementTag::Text => "text",
            ElementTag::Magistral => "magistral",
        }
    }
}

/// Layer and attribute byte. The element tag is implied by the variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Header {
    pub layer: u8,
    pub attr: Attr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentElement {
    pub header: Header,
    pub start: Point32,
    pub end: Point32,
}

/// Circular arc; a circle is an arc with sweep ±2π.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcElement {
    pub header: Header,
    pub center: Point32,
    pub radius: f32,
    pub start_angle: f32,
    pub sweep: f32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolylineElement {
    pub header: Header,
    pub vertices: Vec<Point32>,
}

/// Single-line text. `anchor` is the center of the text box; `rotation` is
/// the baseline direction in radians; `text` is in code page 1251.
#[derive(Debug, Clone, PartialEq)]
pub struct TextElement {
    pub header: Header,
    pub font: FontSpec,
    /// Horizontal compression factor in 0.01 units, 10..=255.
    pub compression: u8,
    pub anchor: Point32,
    pub rotation: f32,
    pub text: Vec<u8>,
}

impl TextElement {
    pub fn compression_factor(&self) -> f64 {
        COMPRESSION.dequantize(u16::from(self.compression))
    }

    pub fn text_string(&self) -> String {
        crate::text::decode_cp1251(&self.text)
    }
}

/// Stored form of a magistral's carrier line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CarrierRecord {
    Segment {
        start: Point32,
        end: Point32,
    },
    Arc {
        center: Point32,
        radius: f32,
        start_angle: f32,
        sweep: f32,
    },
}

impl CarrierRecord {
    pub fn to_geometry(self) -> CarrierLine {
        match self {
            CarrierRecord::Segment { start, end } => CarrierLine::Segment {
                start: start.to_f64(),
                end: end.to_f64(),
            },
            CarrierRecord::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => CarrierLine::Arc {
                center: center.to_f64(),
                radius: f64::from(radius),
                start_angle: f64::from(start_angle),
                sweep: f64::from(sweep),
            },
        }
    }

    pub fn from_geometry(c: &CarrierLine) -> Self {
        match *c {
            CarrierLine::Segment { start, end } => CarrierRecord::Segment {
                start: Point32::from_f64(start),
                end: Point32::from_f64(end),
            },
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => CarrierRecord::Arc {
                center: Point32::from_f64(center),
                radius: radius as f32,
                start_angle: start_angle as f32,
                sweep: sweep as f32,
            },
        }
    }
}

/// The three shared magistral lengths as raw 0.01 mm codes; 0 marks a
/// setting that does not apply to the magistral type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct GeneralSettings {
    pub first_step: u16,
    pub step: u16,
    pub picture: u16,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagistralElement {
    pub header: Header,
    pub carrier: CarrierRecord,
    pub mtype: u8,
    pub general: GeneralSettings,
    /// Type-specific settings, laid out per the type's field list.
    pub individual: [u8; INDIVIDUAL_SIZE],
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Segment(SegmentElement),
    Arc(ArcElement),
    Polyline(PolylineElement),
    Text(TextElement),
    Magistral(MagistralElement),
}

impl Element {
    pub fn tag(&self) -> ElementTag {
        match self {
            Element::Segment(_) => ElementTag::Segment,
            Element::Arc(_) => ElementTag::Arc,
            Element::Polyline(_) => ElementTag::Polyline,
            Element::Text(_) => ElementTag::Text,
            Element::Magistral(_) => ElementTag::Magistral,
        }
    }

    pub fn header(&self) -> &Header {
        match self {
            Element::Segment(e) => &e.header,
            Element::Arc(e) => &e.header,
            Element::Polyline(e) => &e.header,
            Element::Text(e) => &e.header,
            Element::Magistral(e) => &e.header,
        }
    }

    /// Encoded size in bytes, computed without encoding.
    pub fn size(&self) -> usize {
        element_size(self)
    }
}

pub fn element_size(e: &Element) -> usize {
    match e {
        Element::Segment(_) => SEGMENT_SIZE,
        Element::Arc(_) => ARC_SIZE,
        Element::Polyline(p) => polyline_size(p.vertices.len()),
        Element::Text(t) => text_size(t.text.len()),
        Element::Magistral(_) => MAGISTRAL_SIZE,
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Drawing {
    pub scale: ScaleId,
    pub format: SheetFormat,
    pub elements: Vec<Element>,
}

impl Drawing {
    pub fn new(scale: ScaleId, format: SheetFormat) -> Self {
        Self {
            scale,
            format,
            elements: Vec::new(),
        }
    }

    /// Paper millimeters per element unit for an element in `space`.
    pub fn paper_factor(&self, standards: &Standards, space: CoordSpace) -> f64 {
        match space {
            CoordSpace::Bumaga => 1.0,
            CoordSpace::Natura => standards.scale(self.scale).map_or(1.0, |s| s.factor()),
        }
    }
}

/// Resolves a point of element `header` to paper millimeters.
pub fn to_paper_mm(d: &Drawing, standards: &Standards, header: &Header, p: Point) -> Point {
    let k = d.paper_factor(standards, header.attr.space);
    if k == 1.0 {
        p
    } else {
        Point::new(p.x * k, p.y * k)
    }
}

/// Standards-level checks of one element. Lengths of magistral settings are
/// taken as paper millimeters in the element's own units.
pub fn validate_element(e: &Element) -> Vec<Violation> {
    validate_element_scaled(e, 1.0)
}

/// As [`validate_element`], with `length_scale` element units per paper mm.
pub fn validate_element_scaled(e: &Element, length_scale: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let geometry = |out: &mut Vec<Violation>, field: &str, r: Result<(), DomainError>| {
        if let Err(err) = r {
            out.push(Violation::new(field, err.to_string(), "non-degenerate finite geometry"));
        }
    };
    match e {
        Element::Segment(s) => {
            let c = CarrierLine::Segment {
                start: s.start.to_f64(),
                end: s.end.to_f64(),
            };
            geometry(&mut out, "segment", c.check());
        }
        Element::Arc(a) => {
            let c = CarrierRecord::Arc {
                center: a.center,
                radius: a.radius,
                start_angle: a.start_angle,
                sweep: a.sweep,
            }
            .to_geometry();
            geometry(&mut out, "arc", c.check());
        }
        Element::Polyline(p) => {
            let n = p.vertices.len();
            if !(2..=POLYLINE_MAX_VERTICES).contains(&n) {
                out.push(Violation::new("vertices", n.to_string(), "2..=65535"));
            }
            if let Some(i) = p.vertices.iter().position(|v| !v.is_finite()) {
                out.push(Violation::new(format!("vertices[{i}]"), "non-finite", "finite"));
            }
        }
        Element::Text(t) => {
            if !t.font.is_legal() {
                out.push(Violation::new(
                    "font.size",
                    format!("{} mm", t.font.size_mm()),
                    "2.5, 3.5, 5, 7, 10, 14, 20, 28, 40 mm",
                ));
            }
            if !COMPRESSION.contains_code(u16::from(t.compression)) {
                out.push(Violation::new(
                    "compression",
                    format!("{:.2}", t.compression_factor()),
                    "0.10..=2.55",
                ));
            }
            if !t.anchor.is_finite() || !t.rotation.is_finite() {
                out.push(Violation::new("anchor", "non-finite", "finite"));
            }
            if t.text.len() > 255 {
                out.push(Violation::new(
                    "text",
                    format!("{} bytes", t.text.len()),
                    "0..=255 bytes",
                ));
            }
        }
        Element::Magistral(m) => out.extend(magistral::validate_magistral_scaled(m, length_scale)),
    }
    out
}

/// A violation located in a drawing; `element` is `None` for header fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrawingViolation {
    pub element: Option<usize>,
    #[serde(flatten)]
    pub violation: Violation,
}

impl std::fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.element {
            Some(i) => write!(f, "element {i}: {}", self.violation),
            None => write!(f, "drawing: {}", self.violation),
        }
    }
}

pub fn validate_drawing(d: &Drawing, standards: &Standards) -> Vec<DrawingViolation> {
    let mut out = Vec::new();
    let header = |violation| DrawingViolation {
        element: None,
        violation,
    };
    if standards.scale(d.scale).is_none() {
        out.push(header(Violation::new(
            "scale",
            format!("id {}", d.scale.0),
            format!("0..{} (configured scale table)", standards.scales.len()),
        )));
    }
    if let SheetFormat::Standard(id) = d.format {
        if standards.sheet_size(d.format).is_none() {
            out.push(header(Violation::new(
                "format",
                format!("standard id {id}"),
                format!("0..{} (configured format table)", standards.formats.len()),
            )));
        }
    }
    for (i, e) in d.elements.iter().enumerate() {
        let k = 1.0 / d.paper_factor(standards, e.header().attr.space);
        out.extend(
            validate_element_scaled(e, k)
                .into_iter()
                .map(|violation| DrawingViolation {
                    element: Some(i),
                    violation,
                }),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standards::{ColorIndex, LineType, Slant};

    fn header(space: CoordSpace) -> Header {
        Header {
            layer: 0,
            attr: Attr::new(LineType::SolidMain, ColorIndex::default(), space),
        }
    }

    #[test]
    fn paper_transform() {
        let s = Standards::bundled();
        let d = Drawing::new(s.scale_id(1, 100).unwrap(), SheetFormat::default());
        let p = Point::new(1000.0, 0.0);
        assert_eq!(
            to_paper_mm(&d, s, &header(CoordSpace::Natura), p),
            Point::new(10.0, 0.0)
        );
        let q = Point::new(-3.25, 17.0);
        assert_eq!(to_paper_mm(&d, s, &header(CoordSpace::Bumaga), q), q);
        let unit = Drawing::new(s.scale_id(1, 1).unwrap(), SheetFormat::default());
        assert_eq!(to_paper_mm(&unit, s, &header(CoordSpace::Natura), q), q);
    }

    #[test]
    fn sizes() {
        let seg = Element::Segment(SegmentElement {
            header: Header::default(),
            start: Point32::new(0.0, 0.0),
            end: Point32::new(1.0, 1.0),
        });
        assert_eq!(element_size(&seg), 19);
        let poly = Element::Polyline(PolylineElement {
            header: Header::default(),
            vertices: vec![Point32::default(); 10],
        });
        assert_eq!(element_size(&poly), 5 + 8 * 10);
        assert_eq!(text_size(4), 22);
    }

    #[test]
    fn well_formed_segment_is_clean() {
        let seg = Element::Segment(SegmentElement {
            header: Header::default(),
            start: Point32::new(0.0, 0.0),
            end: Point32::new(3.0, 4.0),
        });
        assert!(validate_element(&seg).is_empty());
        let degenerate = Element::Segment(SegmentElement {
            header: Header::default(),
            start: Point32::new(2.0, 2.0),
            end: Point32::new(2.0, 2.0),
        });
        assert_eq!(validate_element(&degenerate).len(), 1);
    }

    #[test]
    fn six_mm_text_is_a_violation() {
        let t = Element::Text(TextElement {
            header: Header::default(),
            font: FontSpec {
                size_code: 12,
                slant: Slant::Upright,
            },
            compression: 100,
            anchor: Point32::new(0.0, 0.0),
            rotation: 0.0,
            text: b"K1".to_vec(),
        });
        let v = validate_element(&t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "font.size");
    }

    #[test]
    fn full_circle_arc_from_f32_is_valid() {
        let a = Element::Arc(ArcElement {
            header: Header::default(),
            center: Point32::new(0.0, 0.0),
            radius: 1.0,
            start_angle: 0.0,
            sweep: std::f32::consts::TAU,
        });
        assert!(validate_element(&a).is_empty());
    }

    #[test]
    fn unknown_scale_and_format() {
        let s = Standards::bundled();
        let d = Drawing::new(ScaleId(250), SheetFormat::Standard(200));
        let v = validate_drawing(&d, s);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|v| v.element.is_none()));
    }
}
