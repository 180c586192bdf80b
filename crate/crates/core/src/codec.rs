//! Bit-exact little-endian encoding of drawings (`.tcgx`).
//!
//! Decoding is strict: every padding byte must be zero, every float finite,
//! every quantized code inside its field's range. Anything the decoder
//! accepts re-encodes to the identical bytes.

use thiserror::Error;

use crate::magistral::{self, IndividualError};
use crate::model::*;
use crate::standards::quantize::{COMPRESSION, GENERAL};
use crate::standards::{decode_font, encode_font, unpack_attr, ScaleId, SheetFormat};

pub const MAGIC: [u8; 4] = *b"TCGX";
pub const FORMAT_VERSION: u16 = 1;
pub const FILE_HEADER_SIZE: usize = 16;

const CARRIER_SEGMENT: u8 = 0;
const CARRIER_ARC: u8 = 1;
const FORMAT_STANDARD: u8 = 0;
const FORMAT_CUSTOM: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeErrorKind {
    #[error("truncated: need {needed} bytes, {available} available")]
    Truncated { needed: usize, available: usize },
    #[error("unknown element tag 0x{0:02X}")]
    UnknownTag(u8),
    #[error("attribute byte 0x{0:02X} has line type 7")]
    LineType(u8),
    #[error("carrier kind {0} is not 0 (segment) or 1 (arc)")]
    CarrierKind(u8),
    #[error("padding byte is 0x{0:02X}, expected zero")]
    NonzeroPadding(u8),
    #[error("non-finite float")]
    NonFinite,
    #[error("font byte 0x{0:02X} is not one of the 18 legal fonts")]
    Font(u8),
    #[error("{field} code {code} is out of range")]
    CodeOutOfRange { field: String, code: u16 },
    #[error("magistral type {0} is not in 1..=26")]
    MagistralType(u8),
    #[error("polyline vertex count {0} is below 2")]
    VertexCount(u16),
    #[error("bad magic {0:02X?}")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0}")]
    Version(u16),
    #[error("sheet format kind {0} is not 0 (standard) or 1 (custom)")]
    FormatKind(u8),
    #[error("custom sheet side of 0 mm")]
    FormatSide,
    #[error("{0} trailing bytes after the last element")]
    TrailingBytes(usize),
}

/// A decode failure located at an absolute byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct DecodeError {
    pub offset: usize,
    pub element: Option<usize>,
    pub kind: DecodeErrorKind,
}

impl std::fmt::Display for DecodeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.element {
            Some(i) => write!(f, "element {i} at byte {}: {}", self.offset, self.kind),
            None => write!(f, "at byte {}: {}", self.offset, self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}cannot encode: {reason}", element.map(|i| format!("element {i}: ")).unwrap_or_default())]
pub struct EncodeError {
    pub element: Option<usize>,
    pub reason: String,
}

impl EncodeError {
    fn new(reason: impl Into<String>) -> Self {
        Self {
            element: None,
            reason: reason.into(),
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, at: usize, kind: DecodeErrorKind) -> DecodeError {
        DecodeError {
            offset: at,
            element: None,
            kind,
        }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        let available = self.buf.len().saturating_sub(self.pos);
        if available < n {
            return Err(self.err(self.pos, DecodeErrorKind::Truncated { needed: n, available }));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, DecodeError> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, DecodeError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn f32(&mut self) -> Result<f32, DecodeError> {
        let at = self.pos;
        let b = self.take(4)?;
        let v = f32::from_le_bytes([b[0], b[1], b[2], b[3]]);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(at, DecodeErrorKind::NonFinite))
        }
    }

    fn point(&mut self) -> Result<Point32, DecodeError> {
        Ok(Point32::new(self.f32()?, self.f32()?))
    }

    fn zero(&mut self, n: usize) -> Result<(), DecodeError> {
        let at = self.pos;
        let b = self.take(n)?;
        match b.iter().position(|b| *b != 0) {
            Some(i) => Err(self.err(at + i, DecodeErrorKind::NonzeroPadding(b[i]))),
            None => Ok(()),
        }
    }
}

fn put_f32(out: &mut Vec<u8>, v: f32) -> Result<(), EncodeError> {
    if !v.is_finite() {
        return Err(EncodeError::new("non-finite coordinate"));
    }
    out.extend_from_slice(&v.to_le_bytes());
    Ok(())
}

fn put_point(out: &mut Vec<u8>, p: Point32) -> Result<(), EncodeError> {
    put_f32(out, p.x)?;
    put_f32(out, p.y)
}

fn put_header(out: &mut Vec<u8>, tag: ElementTag, h: &Header) {
    out.push(tag as u8);
    out.push(h.layer);
    out.push(h.attr.pack());
}

fn encode_carrier(out: &mut Vec<u8>, c: &CarrierRecord) -> Result<(), EncodeError> {
    match *c {
        CarrierRecord::Segment { start, end } => {
            out.push(CARRIER_SEGMENT);
            put_point(out, start)?;
            put_point(out, end)?;
            put_f32(out, 0.0)
        }
        CarrierRecord::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } => {
            out.push(CARRIER_ARC);
            put_point(out, center)?;
            put_f32(out, radius)?;
            put_f32(out, start_angle)?;
            put_f32(out, sweep)
        }
    }
}

/// Appends the record of one element to `out`.
pub fn encode_element_into(out: &mut Vec<u8>, e: &Element) -> Result<(), EncodeError> {
    let start = out.len();
    let r = encode_record(out, e);
    if r.is_err() {
        out.truncate(start);
    }
    debug_assert!(r.is_err() || out.len() - start == element_size(e));
    r
}

fn encode_record(out: &mut Vec<u8>, e: &Element) -> Result<(), EncodeError> {
    put_header(out, e.tag(), e.header());
    match e {
        Element::Segment(s) => {
            put_point(out, s.start)?;
            put_point(out, s.end)?;
        }
        Element::Arc(a) => {
            put_point(out, a.center)?;
            put_f32(out, a.radius)?;
            put_f32(out, a.start_angle)?;
            put_f32(out, a.sweep)?;
        }
        Element::Polyline(p) => {
            let n = p.vertices.len();
            if !(2..=POLYLINE_MAX_VERTICES).contains(&n) {
                return Err(EncodeError::new(format!("polyline with {n} vertices")));
            }
            out.extend_from_slice(&(n as u16).to_le_bytes());
            for v in &p.vertices {
                put_point(out, *v)?;
            }
        }
        Element::Text(t) => {
            let font = encode_font(t.font).map_err(|e| EncodeError::new(e.to_string()))?;
            if !COMPRESSION.contains_code(u16::from(t.compression)) {
                return Err(EncodeError::new(format!(
                    "text compression code {} outside 10..=255",
                    t.compression
                )));
            }
            if t.text.len() > 255 {
                return Err(EncodeError::new(format!("text of {} bytes", t.text.len())));
            }
            out.push(font);
            out.push(t.compression);
            put_point(out, t.anchor)?;
            put_f32(out, t.rotation)?;
            out.push(t.text.len() as u8);
            out.extend_from_slice(&t.text);
        }
        Element::Magistral(m) => {
            encode_carrier(out, &m.carrier)?;
            if magistral::descriptor(m.mtype).is_err() {
                return Err(EncodeError::new(format!("magistral type {}", m.mtype)));
            }
            out.push(m.mtype);
            for (name, code) in [
                ("first_step", m.general.first_step),
                ("step", m.general.step),
                ("picture", m.general.picture),
            ] {
                if code > GENERAL.max_code {
                    return Err(EncodeError::new(format!("{name} code {code} above 60000")));
                }
                out.extend_from_slice(&code.to_le_bytes());
            }
            magistral::decode_individual(m.mtype, &m.individual).map_err(|e| EncodeError::new(e.to_string()))?;
            out.extend_from_slice(&m.individual);
        }
    }
    Ok(())
}

pub fn encode_element(e: &Element) -> Result<Vec<u8>, EncodeError> {
    let mut out = Vec::with_capacity(element_size(e));
    encode_element_into(&mut out, e)?;
    Ok(out)
}

/// Decodes the element record starting at `offset`; returns the element and
/// the number of bytes consumed. Error offsets are absolute.
pub fn decode_element(buf: &[u8], offset: usize) -> Result<(Element, usize), DecodeError> {
    let mut r = Reader { buf, pos: offset };
    let tag_byte = r.u8()?;
    let tag = ElementTag::from_byte(tag_byte).ok_or_else(|| r.err(offset, DecodeErrorKind::UnknownTag(tag_byte)))?;
    let layer = r.u8()?;
    let attr_byte = r.u8()?;
    let attr = unpack_attr(attr_byte).map_err(|_| r.err(offset + 2, DecodeErrorKind::LineType(attr_byte)))?;
    let header = Header { layer, attr };

    let element = match tag {
        ElementTag::Segment => Element::Segment(SegmentElement {
            header,
            start: r.point()?,
            end: r.point()?,
        }),
        ElementTag::Arc => Element::Arc(ArcElement {
            header,
            center: r.point()?,
            radius: r.f32()?,
            start_angle: r.f32()?,
            sweep: r.f32()?,
        }),
        ElementTag::Polyline => {
            let at = r.pos;
            let n = r.u16()?;
            if n < 2 {
                return Err(r.err(at, DecodeErrorKind::VertexCount(n)));
            }
            let mut vertices = Vec::with_capacity(usize::from(n).min(buf.len() / 8));
            for _ in 0..n {
                vertices.push(r.point()?);
            }
            Element::Polyline(PolylineElement { header, vertices })
        }
        ElementTag::Text => {
            let at = r.pos;
            let font_byte = r.u8()?;
            let font = decode_font(font_byte).map_err(|_| r.err(at, DecodeErrorKind::Font(font_byte)))?;
            let compression = r.u8()?;
            if !COMPRESSION.contains_code(u16::from(compression)) {
                return Err(r.err(
                    at + 1,
                    DecodeErrorKind::CodeOutOfRange {
                        field: "compression".into(),
                        code: u16::from(compression),
                    },
                ));
            }
            let anchor = r.point()?;
            let rotation = r.f32()?;
            let len = r.u8()?;
            let text = r.take(usize::from(len))?.to_vec();
            Element::Text(TextElement {
                header,
                font,
                compression,
                anchor,
                rotation,
                text,
            })
        }
        ElementTag::Magistral => {
            let kind_at = r.pos;
            let kind = r.u8()?;
            let carrier = match kind {
                CARRIER_SEGMENT => {
                    let start = r.point()?;
                    let end = r.point()?;
                    r.zero(4)?;
                    CarrierRecord::Segment { start, end }
                }
                CARRIER_ARC => CarrierRecord::Arc {
                    center: r.point()?,
                    radius: r.f32()?,
                    start_angle: r.f32()?,
                    sweep: r.f32()?,
                },
                other => {
                    // report the kind byte even if the rest of the record is missing
                    return Err(r.err(kind_at, DecodeErrorKind::CarrierKind(other)));
                }
            };
            let mtype_at = r.pos;
            let mtype = r.u8()?;
            if magistral::descriptor(mtype).is_err() {
                return Err(r.err(mtype_at, DecodeErrorKind::MagistralType(mtype)));
            }
            let mut codes = [0u16; 3];
            for (code, name) in codes.iter_mut().zip(["first_step", "step", "picture"]) {
                let at = r.pos;
                *code = r.u16()?;
                if *code > GENERAL.max_code {
                    return Err(r.err(
                        at,
                        DecodeErrorKind::CodeOutOfRange {
                            field: name.into(),
                            code: *code,
                        },
                    ));
                }
            }
            let ind_at = r.pos;
            let individual: [u8; INDIVIDUAL_SIZE] = r.take(INDIVIDUAL_SIZE)?.try_into().unwrap();
            magistral::decode_individual(mtype, &individual).map_err(|e| individual_error(ind_at, &individual, e))?;
            Element::Magistral(MagistralElement {
                header,
                carrier,
                mtype,
                general: GeneralSettings {
                    first_step: codes[0],
                    step: codes[1],
                    picture: codes[2],
                },
                individual,
            })
        }
    };
    Ok((element, r.pos - offset))
}

fn individual_error(base: usize, bytes: &[u8; INDIVIDUAL_SIZE], e: IndividualError) -> DecodeError {
    let kind = match e {
        IndividualError::Padding { byte } => DecodeErrorKind::NonzeroPadding(bytes[byte]),
        IndividualError::Code { field, code, .. } => DecodeErrorKind::CodeOutOfRange {
            field: field.to_string(),
            code,
        },
        IndividualError::Font { byte } => DecodeErrorKind::Font(bytes[byte]),
        IndividualError::Text { field, byte } => DecodeErrorKind::CodeOutOfRange {
            field: field.to_string(),
            code: u16::from(bytes[byte]),
        },
        IndividualError::Type(t) => DecodeErrorKind::MagistralType(t),
    };
    DecodeError {
        offset: base + e.byte(),
        element: None,
        kind,
    }
}

pub fn encode_drawing(d: &Drawing) -> Result<Vec<u8>, EncodeError> {
    let count = u32::try_from(d.elements.len()).map_err(|_| EncodeError::new("more than 2^32-1 elements"))?;
    let body: usize = d.elements.iter().map(element_size).sum();
    let mut out = Vec::with_capacity(FILE_HEADER_SIZE + body);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(d.scale.0);
    match d.format {
        SheetFormat::Standard(id) => {
            out.push(FORMAT_STANDARD);
            out.extend_from_slice(&[id, 0, 0, 0]);
        }
        SheetFormat::Custom { width, height } => {
            if width == 0 || height == 0 {
                return Err(EncodeError::new("custom sheet side of 0 mm"));
            }
            out.push(FORMAT_CUSTOM);
            out.extend_from_slice(&width.to_le_bytes());
            out.extend_from_slice(&height.to_le_bytes());
        }
    }
    out.extend_from_slice(&count.to_le_bytes());
    for (i, e) in d.elements.iter().enumerate() {
        encode_element_into(&mut out, e).map_err(|mut err| {
            err.element = Some(i);
            err
        })?;
    }
    Ok(out)
}

pub fn decode_drawing(buf: &[u8]) -> Result<Drawing, DecodeError> {
    let mut r = Reader { buf, pos: 0 };
    let magic: [u8; 4] = r.take(4)?.try_into().unwrap();
    if magic != MAGIC {
        return Err(r.err(0, DecodeErrorKind::BadMagic(magic)));
    }
    let version = r.u16()?;
    if version != FORMAT_VERSION {
        return Err(r.err(4, DecodeErrorKind::Version(version)));
    }
    let scale = ScaleId(r.u8()?);
    let kind = r.u8()?;
    let format = match kind {
        FORMAT_STANDARD => {
            let id = r.u8()?;
            r.zero(3)?;
            SheetFormat::Standard(id)
        }
        FORMAT_CUSTOM => {
            let at = r.pos;
            let width = r.u16()?;
            let height = r.u16()?;
            if width == 0 {
                return Err(r.err(at, DecodeErrorKind::FormatSide));
            }
            if height == 0 {
                return Err(r.err(at + 2, DecodeErrorKind::FormatSide));
            }
            SheetFormat::Custom { width, height }
        }
        other => return Err(r.err(7, DecodeErrorKind::FormatKind(other))),
    };
    let count = r.u32()?;
    let mut elements = Vec::with_capacity((count as usize).min(buf.len() / SEGMENT_SIZE));
    for i in 0..count as usize {
        let (e, used) = decode_element(buf, r.pos).map_err(|mut err| {
            err.element = Some(i);
            err
        })?;
        r.pos += used;
        elements.push(e);
    }
    if r.pos != buf.len() {
        return Err(r.err(r.pos, DecodeErrorKind::TrailingBytes(buf.len() - r.pos)));
    }
    Ok(Drawing {
        scale,
        format,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standards::{Attr, ColorIndex, CoordSpace, LineType};

    fn segment() -> Element {
        Element::Segment(SegmentElement {
            header: Header::default(),
            start: Point32::new(0.0, 0.0),
            end: Point32::new(1.0, 1.0),
        })
    }

    #[test]
    fn segment_bytes_by_hand() {
        let mut expected = vec![0x01, 0x00, 0x00];
        for v in [0.0f32, 0.0, 1.0, 1.0] {
            expected.extend_from_slice(&v.to_le_bytes());
        }
        // 1.0f32 = 0x3F800000
        assert_eq!(&expected[11..15], &[0x00, 0x00, 0x80, 0x3F]);
        let bytes = encode_element(&segment()).unwrap();
        assert_eq!(bytes, expected);
        assert_eq!(bytes.len(), 19);
    }

    #[test]
    fn empty_drawing_is_header_only() {
        let d = Drawing::default();
        let bytes = encode_drawing(&d).unwrap();
        assert_eq!(bytes.len(), FILE_HEADER_SIZE);
        assert_eq!(&bytes[..4], b"TCGX");
        assert_eq!(decode_drawing(&bytes).unwrap(), d);
    }

    #[test]
    fn unknown_tag() {
        let err = decode_element(&[0x09, 0, 0], 0).unwrap_err();
        assert_eq!(err.kind, DecodeErrorKind::UnknownTag(9));
        assert_eq!(err.offset, 0);
    }

    #[test]
    fn attribute_with_line_type_seven() {
        let mut bytes = encode_element(&segment()).unwrap();
        bytes[2] = 0x07;
        let err = decode_element(&bytes, 0).unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.kind, DecodeErrorKind::LineType(7));
    }

    #[test]
    fn truncated_segment() {
        let bytes = encode_element(&segment()).unwrap();
        let err = decode_element(&bytes[..10], 0).unwrap_err();
        assert!(matches!(err.kind, DecodeErrorKind::Truncated { .. }));
    }

    #[test]
    fn nan_coordinate_rejected() {
        let mut bytes = encode_element(&segment()).unwrap();
        bytes[3..7].copy_from_slice(&f32::NAN.to_le_bytes());
        let err = decode_element(&bytes, 0).unwrap_err();
        assert_eq!((err.offset, err.kind), (3, DecodeErrorKind::NonFinite));
    }

    #[test]
    fn trailing_and_magic() {
        let mut bytes = encode_drawing(&Drawing::default()).unwrap();
        bytes.push(0);
        let err = decode_drawing(&bytes).unwrap_err();
        assert_eq!(err.kind, DecodeErrorKind::TrailingBytes(1));
        bytes[0] = b'X';
        assert!(matches!(
            decode_drawing(&bytes).unwrap_err().kind,
            DecodeErrorKind::BadMagic(_)
        ));
    }

    #[test]
    fn element_index_is_attached() {
        let d = Drawing {
            elements: vec![segment(), segment()],
            ..Drawing::default()
        };
        let mut bytes = encode_drawing(&d).unwrap();
        let second = FILE_HEADER_SIZE + SEGMENT_SIZE;
        bytes[second] = 0x42;
        let err = decode_drawing(&bytes).unwrap_err();
        assert_eq!(err.element, Some(1));
        assert_eq!(err.offset, second);
    }

    #[test]
    fn text_roundtrip_and_size() {
        let e = Element::Text(TextElement {
            header: Header {
                layer: 7,
                attr: Attr::new(LineType::SolidThin, ColorIndex::new(3).unwrap(), CoordSpace::Bumaga),
            },
            font: crate::standards::FontSpec::new(3.5, crate::standards::Slant::Inclined).unwrap(),
            compression: 100,
            anchor: Point32::new(1.5, -2.0),
            rotation: 0.5,
            text: crate::text::encode_cp1251("t", "К1-100").unwrap(),
        });
        let bytes = encode_element(&e).unwrap();
        assert_eq!(bytes.len(), 18 + 6);
        let (back, used) = decode_element(&bytes, 0).unwrap();
        assert_eq!(used, bytes.len());
        assert_eq!(back, e);
    }

    #[test]
    fn custom_format_zero_side() {
        let d = Drawing {
            format: SheetFormat::Custom { width: 100, height: 50 },
            ..Drawing::default()
        };
        let mut bytes = encode_drawing(&d).unwrap();
        assert_eq!(decode_drawing(&bytes).unwrap(), d);
        bytes[8] = 0;
        bytes[9] = 0;
        assert_eq!(decode_drawing(&bytes).unwrap_err().kind, DecodeErrorKind::FormatSide);
    }
}
