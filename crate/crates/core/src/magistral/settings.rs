//! The 12-byte individual settings block and the three general settings.

use thiserror::Error;

use super::registry::{descriptor, FieldKind, MagistralTypeDescriptor, TEXT_BYTES};
use crate::error::{DomainError, Violation};
use crate::model::{GeneralSettings, INDIVIDUAL_SIZE};
use crate::standards::quantize::{COMPRESSION, GENERAL};
use crate::standards::{decode_font, encode_font, FontSpec, Slant};
use crate::text::{decode_cp1251, encode_cp1251};

#[derive(Debug, Clone, PartialEq)]
pub enum FieldValue {
    /// Millimeters.
    Length(f64),
    Font(FontSpec),
    Text(String),
    /// Factor, 1.0 = no compression.
    Compression(f64),
}

/// Decoded individual settings, one value per descriptor field in order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndividualSettings {
    mtype: u8,
    values: Vec<FieldValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndividualError {
    #[error("magistral type {0} is not in 1..=26")]
    Type(u8),
    #[error("individual byte {byte} must be zero")]
    Padding { byte: usize },
    #[error("{field} code {code} at individual byte {byte} is out of range")]
    Code {
        field: &'static str,
        code: u16,
        byte: usize,
    },
    #[error("font byte at individual byte {byte} is not a legal font")]
    Font { byte: usize },
    #[error("{field} at individual byte {byte} is not zero-padded text")]
    Text { field: &'static str, byte: usize },
}

impl IndividualError {
    /// Offset of the offending byte inside the 12-byte block.
    pub fn byte(&self) -> usize {
        match *self {
            IndividualError::Type(_) => 0,
            IndividualError::Padding { byte }
            | IndividualError::Code { byte, .. }
            | IndividualError::Font { byte }
            | IndividualError::Text { byte, .. } => byte,
        }
    }
}

impl IndividualSettings {
    /// The canonical valid settings of a type.
    pub fn defaults(mtype: u8) -> Result<Self, DomainError> {
        let d = descriptor(mtype)?;
        let values = d
            .fields
            .iter()
            .map(|f| match f.kind {
                FieldKind::Length { default_mm, .. } => FieldValue::Length(default_mm),
                FieldKind::Font => FieldValue::Font(FontSpec::new(3.5, Slant::Upright).unwrap()),
                FieldKind::Text => FieldValue::Text("В1".into()),
                FieldKind::Compression => FieldValue::Compression(1.0),
            })
            .collect();
        Ok(Self { mtype, values })
    }

    pub fn mtype(&self) -> u8 {
        self.mtype
    }

    pub fn descriptor(&self) -> &'static MagistralTypeDescriptor {
        descriptor(self.mtype).expect("settings are built for registered types")
    }

    pub fn get(&self, name: &str) -> Option<&FieldValue> {
        let d = self.descriptor();
        d.fields.iter().position(|f| f.name == name).map(|i| &self.values[i])
    }

    pub fn length(&self, name: &str) -> Option<f64> {
        match self.get(name)? {
            FieldValue::Length(v) => Some(*v),
            _ => None,
        }
    }

    pub fn fields(&self) -> impl Iterator<Item = (&'static str, &FieldValue)> {
        self.descriptor().fields.iter().map(|f| f.name).zip(&self.values)
    }

    /// Replaces one value. The value kind must match the field; the value
    /// itself is not range-checked here (see [`validate_settings`]).
    pub fn set(&mut self, name: &str, value: FieldValue) -> Result<(), DomainError> {
        let d = self.descriptor();
        let i = d.fields.iter().position(|f| f.name == name).ok_or_else(|| {
            let known: Vec<_> = d.fields.iter().map(|f| f.name).collect();
            DomainError::invalid(name, format!("not a setting of {}; known: {}", d.key, known.join(", ")))
        })?;
        let ok = matches!(
            (&d.fields[i].kind, &value),
            (FieldKind::Length { .. }, FieldValue::Length(_))
                | (FieldKind::Font, FieldValue::Font(_))
                | (FieldKind::Text, FieldValue::Text(_))
                | (FieldKind::Compression, FieldValue::Compression(_))
        );
        if !ok {
            return Err(DomainError::invalid(name, "value kind does not match the field"));
        }
        self.values[i] = value;
        Ok(())
    }
}

pub fn encode_individual(mtype: u8, settings: &IndividualSettings) -> Result<[u8; INDIVIDUAL_SIZE], DomainError> {
    let d = descriptor(mtype)?;
    if settings.mtype != mtype {
        return Err(DomainError::invalid(
            "individual",
            format!("settings of type {} used for type {mtype}", settings.mtype),
        ));
    }
    let mut out = [0u8; INDIVIDUAL_SIZE];
    let mut at = 0;
    for (f, v) in d.fields.iter().zip(&settings.values) {
        match (&f.kind, v) {
            (FieldKind::Length { q, .. }, FieldValue::Length(mm)) => {
                let code = q.quantize(f.name, *mm)?;
                if q.bytes == 1 {
                    out[at] = code as u8;
                } else {
                    out[at..at + 2].copy_from_slice(&code.to_le_bytes());
                }
            }
            (FieldKind::Font, FieldValue::Font(font)) => out[at] = encode_font(*font)?,
            (FieldKind::Text, FieldValue::Text(s)) => {
                let bytes = encode_cp1251(f.name, s)?;
                if bytes.len() > TEXT_BYTES {
                    return Err(DomainError::invalid(
                        f.name,
                        format!("{s:?} has {} characters; at most 4 fit", bytes.len()),
                    ));
                }
                out[at..at + bytes.len()].copy_from_slice(&bytes);
            }
            (FieldKind::Compression, FieldValue::Compression(c)) => {
                out[at] = COMPRESSION.quantize(f.name, *c)? as u8;
            }
            _ => return Err(DomainError::invalid(f.name, "value kind does not match the field")),
        }
        at += f.kind.bytes();
    }
    Ok(out)
}

pub fn decode_individual(mtype: u8, bytes: &[u8; INDIVIDUAL_SIZE]) -> Result<IndividualSettings, IndividualError> {
    let d = descriptor(mtype).map_err(|_| IndividualError::Type(mtype))?;
    let mut values = Vec::with_capacity(d.fields.len());
    let mut at = 0;
    for f in d.fields {
        let value = match f.kind {
            FieldKind::Length { q, .. } => {
                let code = if q.bytes == 1 {
                    u16::from(bytes[at])
                } else {
                    u16::from_le_bytes([bytes[at], bytes[at + 1]])
                };
                if !q.contains_code(code) {
                    return Err(IndividualError::Code {
                        field: f.name,
                        code,
                        byte: at,
                    });
                }
                FieldValue::Length(q.dequantize(code))
            }
            FieldKind::Font => {
                FieldValue::Font(decode_font(bytes[at]).map_err(|_| IndividualError::Font { byte: at })?)
            }
            FieldKind::Text => {
                let raw = &bytes[at..at + TEXT_BYTES];
                let len = raw.iter().position(|b| *b == 0).unwrap_or(TEXT_BYTES);
                if let Some(i) = raw[len..].iter().position(|b| *b != 0) {
                    return Err(IndividualError::Text {
                        field: f.name,
                        byte: at + len + i,
                    });
                }
                FieldValue::Text(decode_cp1251(&raw[..len]))
            }
            FieldKind::Compression => {
                let code = u16::from(bytes[at]);
                if !COMPRESSION.contains_code(code) {
                    return Err(IndividualError::Code {
                        field: f.name,
                        code,
                        byte: at,
                    });
                }
                FieldValue::Compression(COMPRESSION.dequantize(code))
            }
        };
        values.push(value);
        at += f.kind.bytes();
    }
    if let Some(i) = bytes[at..].iter().position(|b| *b != 0) {
        return Err(IndividualError::Padding { byte: at + i });
    }
    Ok(IndividualSettings { mtype, values })
}

/// General settings as optional millimeter values; `None` stores code 0.
pub fn general_from_mm(
    first_step: Option<f64>,
    step: Option<f64>,
    picture: Option<f64>,
) -> Result<GeneralSettings, DomainError> {
    let q = |name: &str, v: Option<f64>| v.map_or(Ok(0), |mm| GENERAL.quantize(name, mm));
    Ok(GeneralSettings {
        first_step: q("first_step", first_step)?,
        step: q("step", step)?,
        picture: q("picture", picture)?,
    })
}

/// Default general settings of a type: first step 10 mm, step 20 mm,
/// picture 5 mm where applicable, 0 elsewhere.
pub fn default_general(d: &MagistralTypeDescriptor) -> GeneralSettings {
    GeneralSettings {
        first_step: if d.uses_first_step { 1_000 } else { 0 },
        step: if d.uses_step { 2_000 } else { 0 },
        picture: if d.uses_picture { 500 } else { 0 },
    }
}

pub(crate) fn validate_general(d: &MagistralTypeDescriptor, g: &GeneralSettings) -> Vec<Violation> {
    let mut out = Vec::new();
    for (name, applicable, code) in [
        ("first_step", d.uses_first_step, g.first_step),
        ("step", d.uses_step, g.step),
        ("picture", d.uses_picture, g.picture),
    ] {
        let value = format!("{:.2} mm", GENERAL.dequantize(code));
        if applicable {
            if !GENERAL.contains_code(code) {
                out.push(Violation::new(name, value, "0.01..=600 mm"));
            }
        } else if code != 0 {
            out.push(Violation::new(
                name,
                value,
                format!("0 ({name} is inapplicable to {})", d.name),
            ));
        }
    }
    out
}

/// Checks typed settings against the type's field ranges.
pub fn validate_settings(mtype: u8, general: &GeneralSettings, settings: &IndividualSettings) -> Vec<Violation> {
    let d = match descriptor(mtype) {
        Ok(d) => d,
        Err(_) => return vec![Violation::new("mtype", mtype.to_string(), "1..=26")],
    };
    let mut out = validate_general(d, general);
    if settings.mtype != mtype {
        out.push(Violation::new(
            "individual",
            format!("settings of type {}", settings.mtype),
            format!("settings of type {mtype}"),
        ));
        return out;
    }
    for (f, v) in d.fields.iter().zip(&settings.values) {
        match (&f.kind, v) {
            (FieldKind::Length { q, .. }, FieldValue::Length(mm)) => {
                if q.quantize(f.name, *mm).is_err() {
                    out.push(Violation::new(
                        f.name,
                        format!("{mm} mm"),
                        format!("{}..={} mm, step {} mm", q.min_mm(), q.max_mm(), q.step()),
                    ));
                }
            }
            (FieldKind::Font, FieldValue::Font(font)) => {
                if !font.is_legal() {
                    out.push(Violation::new(
                        "font.size",
                        format!("{} mm", font.size_mm()),
                        "2.5, 3.5, 5, 7, 10, 14, 20, 28, 40 mm",
                    ));
                }
            }
            (FieldKind::Text, FieldValue::Text(s)) => match encode_cp1251(f.name, s) {
                Ok(bytes) if bytes.len() > TEXT_BYTES => out.push(Violation::new(
                    f.name,
                    format!("{s:?} ({} characters)", s.chars().count()),
                    "0..=4 characters",
                )),
                Ok(_) => {}
                Err(e) => out.push(Violation::new(f.name, format!("{s:?}"), e.to_string())),
            },
            (FieldKind::Compression, FieldValue::Compression(c)) => {
                if COMPRESSION.quantize(f.name, *c).is_err() {
                    out.push(Violation::new(f.name, format!("{c}"), "0.10..=2.55, step 0.01"));
                }
            }
            _ => out.push(Violation::new(f.name, "wrong value kind", "matching kind")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_block_layout() {
        let mut s = IndividualSettings::defaults(9).unwrap();
        s.set("font", FieldValue::Font(FontSpec::new(2.5, Slant::Upright).unwrap()))
            .unwrap();
        s.set("text", FieldValue::Text("В1".into())).unwrap();
        s.set("compression", FieldValue::Compression(1.0)).unwrap();
        let bytes = encode_individual(9, &s).unwrap();
        // font 2.5/0.5 = 5; В = 0xC2 and 1 = 0x31 in cp1251; 1.00/0.01 = 100
        assert_eq!(bytes, [0x05, 0xC2, 0x31, 0x00, 0x00, 0x64, 0, 0, 0, 0, 0, 0]);
        assert_eq!(decode_individual(9, &bytes).unwrap(), s);
    }

    #[test]
    fn zigzag_height_byte() {
        let mut s = IndividualSettings::defaults(4).unwrap();
        s.set("zigzag_height", FieldValue::Length(2.5)).unwrap();
        let bytes = encode_individual(4, &s).unwrap();
        assert_eq!(bytes[0], 25);
        assert!(bytes[1..].iter().all(|b| *b == 0));
    }

    #[test]
    fn zigzag_height_above_default_range() {
        let mut bytes = [0u8; 12];
        bytes[0] = 255;
        assert_eq!(
            decode_individual(4, &bytes).unwrap_err(),
            IndividualError::Code {
                field: "zigzag_height",
                code: 255,
                byte: 0
            }
        );
    }

    #[test]
    fn nonzero_padding() {
        let mut bytes = encode_individual(4, &IndividualSettings::defaults(4).unwrap()).unwrap();
        bytes[11] = 1;
        assert_eq!(
            decode_individual(4, &bytes).unwrap_err(),
            IndividualError::Padding { byte: 11 }
        );
    }

    #[test]
    fn text_with_hole() {
        let mut bytes = encode_individual(9, &IndividualSettings::defaults(9).unwrap()).unwrap();
        bytes[1] = 0;
        assert_eq!(
            decode_individual(9, &bytes).unwrap_err(),
            IndividualError::Text { field: "text", byte: 2 }
        );
    }

    #[test]
    fn five_characters_do_not_fit() {
        let mut s = IndividualSettings::defaults(9).unwrap();
        s.set("text", FieldValue::Text("К1234".into())).unwrap();
        assert!(encode_individual(9, &s).is_err());
        let g = default_general(descriptor(9).unwrap());
        let v = validate_settings(9, &g, &s);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "text");
    }

    #[test]
    fn set_checks_kind_and_name() {
        let mut s = IndividualSettings::defaults(4).unwrap();
        assert!(s.set("nope", FieldValue::Length(1.0)).is_err());
        assert!(s.set("zigzag_height", FieldValue::Text("x".into())).is_err());
    }

    #[test]
    fn zero_arrow_offset_only_for_high_voltage() {
        let mut s = IndividualSettings::defaults(23).unwrap();
        s.set("arrow_long", FieldValue::Length(0.0)).unwrap();
        assert!(encode_individual(23, &s).is_ok());
        let mut s = IndividualSettings::defaults(1).unwrap();
        s.set("arrow_long", FieldValue::Length(0.0)).unwrap();
        assert!(encode_individual(1, &s).is_err());
    }

    #[test]
    fn general_applicability() {
        let d = descriptor(16).unwrap();
        let mut g = default_general(d);
        assert!(validate_general(d, &g).is_empty());
        g.step = 100;
        let v = validate_general(d, &g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "step");
    }
}
