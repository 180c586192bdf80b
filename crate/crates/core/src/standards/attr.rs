//! The per-element attribute byte: line kind, color index and coordinate
//! space packed as `space:1 | color:4 | line:3` (MSB to LSB).

use crate::error::DomainError;

/// Line kinds available to drawing elements: the six GOST 2.303 kinds plus
/// the thickened dashed line of GOST 21.106.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum LineType {
    SolidMain = 0,
    SolidThin = 1,
    Dashed = 2,
    DashDotThin = 3,
    DashDotThick = 4,
    DashDotDot = 5,
    DashedThickened = 6,
}

impl LineType {
    pub const ALL: [LineType; 7] = [
        LineType::SolidMain,
        LineType::SolidThin,
        LineType::Dashed,
        LineType::DashDotThin,
        LineType::DashDotThick,
        LineType::DashDotDot,
        LineType::DashedThickened,
    ];

    pub fn from_code(code: u8) -> Result<Self, DomainError> {
        Self::ALL
            .get(usize::from(code))
            .copied()
            .ok_or(DomainError::LineType(code))
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    /// Key used for this kind in the standards config.
    pub fn key(self) -> &'static str {
        match self {
            LineType::SolidMain => "solid_main",
            LineType::SolidThin => "solid_thin",
            LineType::Dashed => "dashed",
            LineType::DashDotThin => "dash_dot_thin",
            LineType::DashDotThick => "dash_dot_thick",
            LineType::DashDotDot => "dash_dot_dot",
            LineType::DashedThickened => "dashed_thickened",
        }
    }

    /// Whether the kind is drawn with the main (thick) stroke width.
    pub fn is_thick(self) -> bool {
        matches!(
            self,
            LineType::SolidMain | LineType::DashDotThick | LineType::DashedThickened
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorIndex(u8);

impl ColorIndex {
    pub fn new(index: u8) -> Result<Self, DomainError> {
        if index < 16 {
            Ok(Self(index))
        } else {
            Err(DomainError::Color(index))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// The two coordinate systems of a drawing. They share origin and axes and
/// differ only by the drawing scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoordSpace {
    /// Model space, full-size units.
    #[default]
    Natura,
    /// Paper space, sheet millimeters.
    Bumaga,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Attr {
    pub line: LineType,
    pub color: ColorIndex,
    pub space: CoordSpace,
}

impl Attr {
    pub fn new(line: LineType, color: ColorIndex, space: CoordSpace) -> Self {
        Self { line, color, space }
    }
}

impl Default for Attr {
    fn default() -> Self {
        Self::new(LineType::SolidMain, ColorIndex::default(), CoordSpace::Natura)
    }
}

pub fn pack_attr(line: LineType, color: ColorIndex, space: CoordSpace) -> u8 {
    let space_bit = match space {
        CoordSpace::Natura => 0,
        CoordSpace::Bumaga => 1,
    };
    line.code() | (color.get() << 3) | (space_bit << 7)
}

/// Inverse of [`pack_attr`]. Fails only when the line-type field holds 7.
pub fn unpack_attr(byte: u8) -> Result<Attr, DomainError> {
    let line = LineType::from_code(byte & 0x07)?;
    let color = ColorIndex((byte >> 3) & 0x0F);
    let space = if byte & 0x80 == 0 {
        CoordSpace::Natura
    } else {
        CoordSpace::Bumaga
    };
    Ok(Attr { line, color, space })
}

impl Attr {
    pub fn pack(self) -> u8 {
        pack_attr(self.line, self.color, self.space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero() {
        let b = pack_attr(LineType::SolidMain, ColorIndex::new(0).unwrap(), CoordSpace::Natura);
        assert_eq!(b, 0x00);
        assert_eq!(
            unpack_attr(0x00).unwrap(),
            Attr::new(LineType::SolidMain, ColorIndex::new(0).unwrap(), CoordSpace::Natura)
        );
    }

    #[test]
    fn mixed_fields() {
        // 5 | 9 << 3 | 1 << 7
        let expected: u8 = 5 + 9 * 8 + 128;
        assert_eq!(expected, 0xCD);
        let line = LineType::from_code(5).unwrap();
        let b = pack_attr(line, ColorIndex::new(9).unwrap(), CoordSpace::Bumaga);
        assert_eq!(b, expected);
        let a = unpack_attr(0xCD).unwrap();
        assert_eq!(a.line.code(), 5);
        assert_eq!(a.color.get(), 9);
        assert_eq!(a.space, CoordSpace::Bumaga);
    }

    #[test]
    fn line_type_seven_rejected() {
        assert_eq!(unpack_attr(0x07), Err(DomainError::LineType(7)));
        assert!(LineType::from_code(7).is_err());
    }

    #[test]
    fn color_range() {
        assert!(ColorIndex::new(15).is_ok());
        assert!(ColorIndex::new(16).is_err());
    }
}
