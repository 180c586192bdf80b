//! The 26 magistral types, in table order.

use crate::error::DomainError;
use crate::standards::quantize::{Quantizer, Q8};
use crate::standards::LineType;

/// 0.01 to 600 mm, 0.01 mm steps.
const Q600: Quantizer = Quantizer::new(1, 1, 60_000, 2);
/// 0.01 to 300 mm, 0.01 mm steps.
const Q300: Quantizer = Quantizer::new(1, 1, 30_000, 2);
/// 0.1 to 150 mm, 0.01 mm steps.
const Q150: Quantizer = Quantizer::new(1, 10, 15_000, 2);
/// 0.01 to 25.5 mm, 0.01 mm steps (dot diameters and the like).
const Q25_5: Quantizer = Quantizer::new(1, 1, 2_550, 2);
/// 0.05 to 25 mm, 0.01 mm steps.
const Q25_FINE: Quantizer = Quantizer::new(1, 5, 2_500, 2);
/// 0.1 to 12 mm, 0.1 mm steps.
const Q12: Quantizer = Quantizer::new(10, 1, 120, 1);
/// 0 to 12 mm, 0.1 mm steps.
const Q12_ZERO: Quantizer = Quantizer::new(10, 0, 120, 1);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    Length {
        q: Quantizer,
        default_mm: f64,
    },
    /// One font byte.
    Font,
    /// Up to 4 characters in code page 1251, zero padded.
    Text,
    /// Compression factor, 0.01 steps, one byte.
    Compression,
}

impl FieldKind {
    pub fn bytes(&self) -> usize {
        match self {
            FieldKind::Length { q, .. } => usize::from(q.bytes),
            FieldKind::Font | FieldKind::Compression => 1,
            FieldKind::Text => TEXT_BYTES,
        }
    }
}

pub const TEXT_BYTES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub name: &'static str,
    pub kind: FieldKind,
}

const fn len(name: &'static str, q: Quantizer, default_mm: f64) -> FieldSpec {
    FieldSpec {
        name,
        kind: FieldKind::Length { q, default_mm },
    }
}

/// Source of one length of the periodic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    FirstStep,
    Step,
    Picture,
    Field(&'static str),
    Zero,
}

/// How the carrier is cut into carrier-on pieces and glyph gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// Carrier on `[0, first]`, then repeating gap of length `gap` followed
    /// by carrier of length `on`.
    Periodic { first: Length, on: Length, gap: Length },
    /// One sine polyline along the whole carrier.
    Wavy,
    /// Two parallel curves at ± the rail offset; no carrier, no gaps.
    Rails,
}

/// The symbol drawn in each gap, in the gap's local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glyph {
    None,
    /// Chevron arrowheads pointing along the carrier.
    Arrows {
        count: u8,
    },
    /// Z-shaped break joining the two carrier ends.
    Zigzag,
    /// Short slanted strokes across the carrier.
    Strokes {
        count: u8,
    },
    /// Two dots; diameter is a quarter of the gap.
    DoubleDot,
    Text,
    /// X-shaped crosses.
    Crosses {
        count: u8,
    },
    /// V-shaped check mark.
    Check,
    /// Closed rectangle spanning the whole gap, as wide as the stroke thickness.
    Band,
    Dot,
    /// Short dash with a dot on each side.
    DashDots,
}

/// How carrier-on pieces are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierStyle {
    Single,
    /// Two parallel lines separated by the named field.
    Double(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagistralTypeDescriptor {
    pub id: u8,
    pub key: &'static str,
    pub name: &'static str,
    pub uses_first_step: bool,
    pub uses_step: bool,
    pub uses_picture: bool,
    pub fields: &'static [FieldSpec],
    pub pattern: Pattern,
    pub glyph: Glyph,
    pub carrier_style: CarrierStyle,
    pub hatch_eligible: bool,
    pub carrier_line: LineType,
    pub glyph_line: LineType,
}

impl MagistralTypeDescriptor {
    pub fn field(&self, name: &str) -> Option<(usize, &'static FieldSpec)> {
        let mut offset = 0;
        for f in self.fields {
            if f.name == name {
                return Some((offset, f));
            }
            offset += f.kind.bytes();
        }
        None
    }

    pub fn individual_bytes(&self) -> usize {
        self.fields.iter().map(|f| f.kind.bytes()).sum()
    }

    pub fn is_text_type(&self) -> bool {
        self.glyph == Glyph::Text
    }
}

const ARROWS: &[FieldSpec] = &[len("arrow_long", Q12, 2.0), len("arrow_trans", Q8, 1.0)];
const DOUBLE_ARROWS: &[FieldSpec] = &[
    len("arrow_long", Q12, 2.0),
    len("arrow_trans", Q8, 1.0),
    len("arrow_spacing", Q8, 2.5),
];
const WAVY: &[FieldSpec] = &[len("half_wave_length", Q300, 5.0), len("half_wave_height", Q150, 1.5)];
const ZIGZAG: &[FieldSpec] = &[len("zigzag_height", Q8, 2.5)];
const STROKE: &[FieldSpec] = &[len("stroke_height", Q8, 3.0), len("stroke_tilt", Q8, 1.0)];
const STROKES: &[FieldSpec] = &[
    len("stroke_height", Q8, 3.0),
    len("stroke_spacing", Q8, 1.5),
    len("stroke_tilt", Q8, 1.0),
];
const DOUBLE_DOT: &[FieldSpec] = &[len("dot_spacing", Q8, 2.0)];
const TEXT: &[FieldSpec] = &[
    FieldSpec {
        name: "font",
        kind: FieldKind::Font,
    },
    FieldSpec {
        name: "text",
        kind: FieldKind::Text,
    },
    FieldSpec {
        name: "compression",
        kind: FieldKind::Compression,
    },
];
const CROSS: &[FieldSpec] = &[len("cross_height", Q8, 2.0)];
const CROSSES: &[FieldSpec] = &[len("cross_height", Q8, 2.0), len("cross_spacing", Q8, 2.5)];
const CHECK: &[FieldSpec] = &[len("check_height", Q8, 2.0), len("check_width", Q8, 3.0)];
const RAILS: &[FieldSpec] = &[len("rail_offset", Q600, 0.75)];
const BAND: &[FieldSpec] = &[len("stroke_thickness", Q600, 3.0)];
const DOT: &[FieldSpec] = &[len("dot_diameter", Q25_5, 1.0)];
const GAP_DASH_DOT: &[FieldSpec] = &[
    len("gap_length", Q600, 3.0),
    len("dash_length", Q600, 6.0),
    len("dot_diameter", Q25_5, 1.0),
];
const GROUNDING: &[FieldSpec] = &[
    len("stroke_spacing", Q600, 4.0),
    len("dash_length", Q600, 10.0),
    len("cross_height", Q25_5, 2.0),
];
const HV_CABLE: &[FieldSpec] = &[
    len("gap_length", Q600, 4.0),
    len("arrow_long", Q12_ZERO, 1.5),
    len("arrow_trans", Q25_FINE, 1.0),
];
const WATER: &[FieldSpec] = &[len("gap_length", Q600, 2.0), len("line_spacing", Q8, 1.5)];
const LOW_CURRENT: &[FieldSpec] = &[
    len("gap_length", Q600, 5.0),
    len("dash_length", Q600, 1.5),
    len("dot_diameter", Q25_5, 0.6),
];

const GENERAL_PATTERN: Pattern = Pattern::Periodic {
    first: Length::FirstStep,
    on: Length::Step,
    gap: Length::Picture,
};
const GAP_FIELD_PATTERN: Pattern = Pattern::Periodic {
    first: Length::FirstStep,
    on: Length::Picture,
    gap: Length::Field("gap_length"),
};

#[allow(clippy::too_many_arguments)]
const fn desc(
    id: u8,
    key: &'static str,
    name: &'static str,
    uses: (bool, bool, bool),
    fields: &'static [FieldSpec],
    pattern: Pattern,
    glyph: Glyph,
    lines: (LineType, LineType),
) -> MagistralTypeDescriptor {
    MagistralTypeDescriptor {
        id,
        key,
        name,
        uses_first_step: uses.0,
        uses_step: uses.1,
        uses_picture: uses.2,
        fields,
        pattern,
        glyph,
        carrier_style: CarrierStyle::Single,
        hatch_eligible: false,
        carrier_line: lines.0,
        glyph_line: lines.1,
    }
}

use LineType::{Dashed, DashedThickened, SolidMain as Main, SolidThin as Thin};

const ALL3: (bool, bool, bool) = (true, true, true);
const MAIN: (LineType, LineType) = (Main, Main);
const THIN: (LineType, LineType) = (Thin, Thin);

pub static DESCRIPTORS: [MagistralTypeDescriptor; 26] = [
    desc(
        1,
        "single_arrows",
        "solid with single arrows",
        ALL3,
        ARROWS,
        GENERAL_PATTERN,
        Glyph::Arrows { count: 1 },
        MAIN,
    ),
    desc(
        2,
        "double_arrows",
        "solid with double arrows",
        ALL3,
        DOUBLE_ARROWS,
        GENERAL_PATTERN,
        Glyph::Arrows { count: 2 },
        MAIN,
    ),
    MagistralTypeDescriptor {
        hatch_eligible: true,
        ..desc(
            3,
            "wavy",
            "solid wavy",
            (false, false, true),
            WAVY,
            Pattern::Wavy,
            Glyph::None,
            THIN,
        )
    },
    MagistralTypeDescriptor {
        hatch_eligible: true,
        ..desc(
            4,
            "thin_zigzag",
            "solid thin with zigzag",
            ALL3,
            ZIGZAG,
            GENERAL_PATTERN,
            Glyph::Zigzag,
            THIN,
        )
    },
    desc(
        5,
        "single_stroke",
        "solid with single stroke",
        ALL3,
        STROKE,
        GENERAL_PATTERN,
        Glyph::Strokes { count: 1 },
        MAIN,
    ),
    desc(
        6,
        "double_stroke",
        "solid with double stroke",
        ALL3,
        STROKES,
        GENERAL_PATTERN,
        Glyph::Strokes { count: 2 },
        MAIN,
    ),
    desc(
        7,
        "triple_stroke",
        "solid with triple stroke",
        ALL3,
        STROKES,
        GENERAL_PATTERN,
        Glyph::Strokes { count: 3 },
        MAIN,
    ),
    desc(
        8,
        "double_dot",
        "solid with double dot",
        ALL3,
        DOUBLE_DOT,
        GENERAL_PATTERN,
        Glyph::DoubleDot,
        MAIN,
    ),
    desc(
        9,
        "main_text",
        "solid main with text",
        ALL3,
        TEXT,
        GENERAL_PATTERN,
        Glyph::Text,
        MAIN,
    ),
    desc(
        10,
        "dashed_thin_text",
        "dashed thin with text",
        ALL3,
        TEXT,
        GENERAL_PATTERN,
        Glyph::Text,
        (Dashed, Thin),
    ),
    desc(
        11,
        "single_cross",
        "solid with single cross",
        ALL3,
        CROSS,
        GENERAL_PATTERN,
        Glyph::Crosses { count: 1 },
        MAIN,
    ),
    desc(
        12,
        "double_cross",
        "solid with double cross",
        ALL3,
        CROSSES,
        GENERAL_PATTERN,
        Glyph::Crosses { count: 2 },
        MAIN,
    ),
    desc(
        13,
        "single_check",
        "solid with single check",
        ALL3,
        CHECK,
        GENERAL_PATTERN,
        Glyph::Check,
        MAIN,
    ),
    desc(
        14,
        "thin_text",
        "solid thin with text",
        ALL3,
        TEXT,
        GENERAL_PATTERN,
        Glyph::Text,
        THIN,
    ),
    desc(
        15,
        "dashed_thickened_text",
        "dashed thickened with text",
        ALL3,
        TEXT,
        GENERAL_PATTERN,
        Glyph::Text,
        (DashedThickened, Main),
    ),
    desc(
        16,
        "railroad",
        "railroad",
        (false, false, true),
        RAILS,
        Pattern::Rails,
        Glyph::None,
        MAIN,
    ),
    desc(
        17,
        "open_conductor_main",
        "open conductor, main line",
        ALL3,
        ZIGZAG,
        GENERAL_PATTERN,
        Glyph::Zigzag,
        MAIN,
    ),
    desc(
        18,
        "open_conductor_thin",
        "open conductor, thin line",
        ALL3,
        ZIGZAG,
        GENERAL_PATTERN,
        Glyph::Zigzag,
        THIN,
    ),
    desc(
        19,
        "special_dashed",
        "special dashed",
        (true, false, true),
        BAND,
        Pattern::Periodic {
            first: Length::FirstStep,
            on: Length::Zero,
            gap: Length::Picture,
        },
        Glyph::Band,
        THIN,
    ),
    desc(
        20,
        "low_voltage",
        "line up to 36 V",
        (true, true, false),
        DOT,
        Pattern::Periodic {
            first: Length::FirstStep,
            on: Length::Step,
            gap: Length::Field("dot_diameter"),
        },
        Glyph::Dot,
        MAIN,
    ),
    desc(
        21,
        "emergency_low_voltage",
        "emergency lighting up to 36 V",
        (true, false, false),
        GAP_DASH_DOT,
        Pattern::Periodic {
            first: Length::FirstStep,
            on: Length::Field("dash_length"),
            gap: Length::Field("gap_length"),
        },
        Glyph::Dot,
        MAIN,
    ),
    desc(
        22,
        "grounding_conductor",
        "grounding conductor",
        (false, false, false),
        GROUNDING,
        Pattern::Periodic {
            first: Length::Field("dash_length"),
            on: Length::Field("dash_length"),
            gap: Length::Field("stroke_spacing"),
        },
        Glyph::Crosses { count: 1 },
        MAIN,
    ),
    desc(
        23,
        "high_voltage_cable",
        "high-voltage cable",
        (true, false, true),
        HV_CABLE,
        GAP_FIELD_PATTERN,
        Glyph::Arrows { count: 1 },
        MAIN,
    ),
    MagistralTypeDescriptor {
        carrier_style: CarrierStyle::Double("line_spacing"),
        ..desc(
            24,
            "water_pipe",
            "water pipe",
            (true, false, true),
            WATER,
            GAP_FIELD_PATTERN,
            Glyph::None,
            MAIN,
        )
    },
    desc(
        25,
        "grounding_line",
        "grounding line",
        ALL3,
        DOT,
        GENERAL_PATTERN,
        Glyph::Dot,
        MAIN,
    ),
    desc(
        26,
        "low_current_cable",
        "low-current cable",
        (true, false, true),
        LOW_CURRENT,
        GAP_FIELD_PATTERN,
        Glyph::DashDots,
        MAIN,
    ),
];

pub fn descriptor(id: u8) -> Result<&'static MagistralTypeDescriptor, DomainError> {
    match id {
        1..=26 => Ok(&DESCRIPTORS[usize::from(id) - 1]),
        other => Err(DomainError::MagistralType(other)),
    }
}

pub fn hatch_eligible(id: u8) -> Result<bool, DomainError> {
    descriptor(id).map(|d| d.hatch_eligible)
}

pub fn descriptor_by_key(key: &str) -> Option<&'static MagistralTypeDescriptor> {
    DESCRIPTORS.iter().find(|d| d.key == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_follow_table_order() {
        for (i, d) in DESCRIPTORS.iter().enumerate() {
            assert_eq!(usize::from(d.id), i + 1);
            assert!(d.individual_bytes() <= 12, "{}", d.key);
        }
    }

    #[test]
    fn exclusion_lists() {
        let without = |pred: fn(&MagistralTypeDescriptor) -> bool| -> Vec<u8> {
            DESCRIPTORS.iter().filter(|d| !pred(d)).map(|d| d.id).collect()
        };
        assert_eq!(without(|d| d.uses_step), vec![3, 16, 19, 21, 22, 23, 24, 26]);
        assert_eq!(without(|d| d.uses_picture), vec![20, 21, 22]);
        assert_eq!(without(|d| d.uses_first_step), vec![3, 16, 22]);
    }

    #[test]
    fn wavy_descriptor() {
        let d = descriptor(3).unwrap();
        assert!(!d.uses_step && !d.uses_first_step && d.hatch_eligible);
    }

    #[test]
    fn text_descriptor_fields() {
        let names: Vec<_> = descriptor(9).unwrap().fields.iter().map(|f| f.name).collect();
        assert_eq!(names, ["font", "text", "compression"]);
    }

    #[test]
    fn hatch() {
        assert!(hatch_eligible(3).unwrap());
        assert!(hatch_eligible(4).unwrap());
        assert!(!hatch_eligible(9).unwrap());
        assert_eq!(DESCRIPTORS.iter().filter(|d| d.hatch_eligible).count(), 2);
        assert!(hatch_eligible(0).is_err());
    }

    #[test]
    fn out_of_range_ids() {
        assert_eq!(descriptor(27).unwrap_err(), DomainError::MagistralType(27));
        assert!(descriptor(0).is_err());
    }

    #[test]
    fn pattern_sources_are_applicable_or_fields() {
        for d in &DESCRIPTORS {
            if let Pattern::Periodic { first, on, gap } = d.pattern {
                for l in [first, on, gap] {
                    match l {
                        Length::FirstStep => assert!(d.uses_first_step, "{}", d.key),
                        Length::Step => assert!(d.uses_step, "{}", d.key),
                        Length::Picture => assert!(d.uses_picture, "{}", d.key),
                        Length::Field(f) => assert!(d.field(f).is_some(), "{} {f}", d.key),
                        Length::Zero => {}
                    }
                }
            }
        }
    }
}
