//! Magistrals: a carrier line plus a repeating glyph pattern, stored in 43
//! bytes and expanded to explicit geometry on demand.

mod registry;
mod settings;
mod tessellate;

pub use registry::{
    descriptor, descriptor_by_key, hatch_eligible, CarrierStyle, FieldKind, FieldSpec, Glyph, Length,
    MagistralTypeDescriptor, Pattern, DESCRIPTORS, TEXT_BYTES,
};
pub use settings::{
    decode_individual, default_general, encode_individual, general_from_mm, validate_settings, FieldValue,
    IndividualError, IndividualSettings,
};
pub use tessellate::{
    expanded_size, expanded_size_scaled, glyph_overreach, layout, tessellate, tessellate_scaled, Layout, MAX_PERIODS,
    TEXT_ADVANCE, WAVY_SAMPLES,
};

use crate::error::{DomainError, Violation};
use crate::geometry::CarrierLine;
use crate::model::{Drawing, Element, MagistralElement};
use crate::standards::Standards;

pub fn validate_magistral(m: &MagistralElement) -> Vec<Violation> {
    validate_magistral_scaled(m, 1.0)
}

/// As [`validate_magistral`], with `length_scale` carrier units per paper mm.
pub fn validate_magistral_scaled(m: &MagistralElement, length_scale: f64) -> Vec<Violation> {
    let Ok(d) = descriptor(m.mtype) else {
        return vec![Violation::new("mtype", m.mtype.to_string(), "1..=26")];
    };
    let mut out = settings::validate_general(d, &m.general);
    let s = match decode_individual(m.mtype, &m.individual) {
        Ok(s) => Some(s),
        Err(e) => {
            out.push(individual_violation(d, &m.individual, &e));
            None
        }
    };
    let carrier = m.carrier.to_geometry();
    let length = match carrier.length() {
        Ok(l) => l,
        Err(e) => {
            out.push(Violation::new(
                "carrier",
                e.to_string(),
                "non-degenerate finite geometry",
            ));
            return out;
        }
    };
    let (Some(s), true) = (s, out.is_empty()) else {
        return out;
    };
    let offsets: &[(&str, f64)] = match (d.pattern, d.carrier_style) {
        (Pattern::Rails, _) => &[("rail_offset", 1.0)],
        (_, CarrierStyle::Double(field)) => &[(field, 0.5)],
        _ => &[],
    };
    for &(field, factor) in offsets {
        let dist = s.length(field).unwrap_or(0.0) * factor * length_scale;
        if let CarrierLine::Arc { radius, .. } = carrier {
            if dist >= radius {
                out.push(Violation::new(
                    field,
                    format!("{dist} (arc radius {radius})"),
                    "less than the carrier radius",
                ));
            }
        }
    }
    match tessellate::pattern_lengths(d, &m.general, &s, length_scale) {
        Some((first, on, gap)) => {
            if tessellate::period_count(length, first, on, gap).is_none() {
                out.push(Violation::new(
                    "carrier",
                    format!("length {length}"),
                    format!("at most {MAX_PERIODS} pattern periods"),
                ));
            }
        }
        None if d.pattern == Pattern::Wavy => {
            let lambda = s.length("half_wave_length").unwrap_or(1.0) * length_scale;
            if tessellate::wavy_half_waves(length, lambda).is_none() {
                out.push(Violation::new(
                    "carrier",
                    format!("length {length}"),
                    format!("at most {MAX_PERIODS} half-waves"),
                ));
            }
        }
        None => {}
    }
    out
}

fn individual_violation(d: &MagistralTypeDescriptor, bytes: &[u8; 12], e: &IndividualError) -> Violation {
    match e {
        IndividualError::Code { field, code, .. } => {
            let allowed = match d.field(field).map(|(_, f)| f.kind) {
                Some(FieldKind::Length { q, .. }) => {
                    format!("{}..={} mm, step {} mm", q.min_mm(), q.max_mm(), q.step())
                }
                _ => "0.10..=2.55".to_string(),
            };
            Violation::new(*field, format!("code {code}"), allowed)
        }
        IndividualError::Font { byte } => Violation::new(
            "font",
            format!("byte 0x{:02X}", bytes[*byte]),
            "2.5..=40 mm standard size, 75° or 90°",
        ),
        IndividualError::Text { field, byte } => {
            Violation::new(*field, format!("byte {byte} after the terminator"), "zero padding")
        }
        IndividualError::Padding { byte } => {
            Violation::new(format!("individual[{byte}]"), format!("0x{:02X}", bytes[*byte]), "0x00")
        }
        IndividualError::Type(t) => Violation::new("mtype", t.to_string(), "1..=26"),
    }
}

/// Replaces every magistral by its tessellation; other elements are kept.
pub fn expand_drawing(d: &Drawing, standards: &Standards) -> Result<Drawing, DomainError> {
    let mut out = Drawing::new(d.scale, d.format);
    for e in &d.elements {
        match e {
            Element::Magistral(m) => {
                let k = 1.0 / d.paper_factor(standards, m.header.attr.space);
                out.elements.extend(tessellate_scaled(m, k)?);
            }
            other => out.elements.push(other.clone()),
        }
    }
    Ok(out)
}
