//! Drawing font codec. Low 7 bits hold the size in 0.5 mm units, the high
//! bit selects the 75° slant.

use crate::error::DomainError;

/// Legal font sizes in half-millimeter units: 2.5, 3.5, 5, 7, 10, 14, 20, 28, 40 mm.
pub const FONT_SIZE_CODES: [u8; 9] = [5, 7, 10, 14, 20, 28, 40, 56, 80];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slant {
    /// Upright, 90°.
    Upright,
    /// Inclined, 75°.
    Inclined,
}

impl Slant {
    pub fn degrees(self) -> u8 {
        match self {
            Slant::Upright => 90,
            Slant::Inclined => 75,
        }
    }

    pub fn from_degrees(deg: u32) -> Result<Self, DomainError> {
        match deg {
            90 => Ok(Slant::Upright),
            75 => Ok(Slant::Inclined),
            other => Err(DomainError::invalid("slant", format!("{other}° is not 75° or 90°"))),
        }
    }
}

/// A font specification. `size_code` is in 0.5 mm units and is public so
/// that out-of-standard values can be represented and reported by the
/// validator; [`FontSpec::new`] only builds legal ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FontSpec {
    pub size_code: u8,
    pub slant: Slant,
}

impl FontSpec {
    pub fn new(size_mm: f64, slant: Slant) -> Result<Self, DomainError> {
        let code = (size_mm * 2.0).round();
        if (code / 2.0 - size_mm).abs() < 1e-9 && FONT_SIZE_CODES.contains(&(code as u8)) {
            Ok(Self {
                size_code: code as u8,
                slant,
            })
        } else {
            Err(DomainError::FontSize { size_mm })
        }
    }

    pub fn size_mm(self) -> f64 {
        f64::from(self.size_code) * 0.5
    }

    pub fn is_legal(self) -> bool {
        FONT_SIZE_CODES.contains(&self.size_code)
    }

    /// All 18 legal (size, slant) combinations.
    pub fn all() -> impl Iterator<Item = FontSpec> {
        FONT_SIZE_CODES.into_iter().flat_map(|size_code| {
            [Slant::Upright, Slant::Inclined]
                .into_iter()
                .map(move |slant| FontSpec { size_code, slant })
        })
    }
}

pub fn encode_font(font: FontSpec) -> Result<u8, DomainError> {
    if !font.is_legal() {
        return Err(DomainError::FontSize {
            size_mm: font.size_mm(),
        });
    }
    let slant_bit = match font.slant {
        Slant::Upright => 0,
        Slant::Inclined => 0x80,
    };
    Ok(font.size_code | slant_bit)
}

pub fn decode_font(byte: u8) -> Result<FontSpec, DomainError> {
    let font = FontSpec {
        size_code: byte & 0x7F,
        slant: if byte & 0x80 == 0 {
            Slant::Upright
        } else {
            Slant::Inclined
        },
    };
    if font.is_legal() {
        Ok(font)
    } else {
        Err(DomainError::FontSize {
            size_mm: font.size_mm(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_upright() {
        let f = FontSpec::new(2.5, Slant::Upright).unwrap();
        assert_eq!(encode_font(f).unwrap(), 0x05);
    }

    #[test]
    fn largest_inclined() {
        let f = FontSpec::new(40.0, Slant::Inclined).unwrap();
        assert_eq!(encode_font(f).unwrap(), 80 | 0x80);
        assert_eq!(encode_font(f).unwrap(), 0xD0);
        assert_eq!(decode_font(0xD0).unwrap(), f);
    }

    #[test]
    fn exactly_eighteen_legal_bytes() {
        let ok = (0..=255u8).filter(|b| decode_font(*b).is_ok()).count();
        assert_eq!(ok, 18);
        assert_eq!(FontSpec::all().count(), 18);
    }

    #[test]
    fn six_mm_is_not_a_size() {
        assert!(FontSpec::new(6.0, Slant::Upright).is_err());
        assert!(FontSpec::new(2.4, Slant::Upright).is_err());
        let bad = FontSpec {
            size_code: 12,
            slant: Slant::Upright,
        };
        assert!(encode_font(bad).is_err());
    }

    #[test]
    fn slant_degrees() {
        assert_eq!(Slant::from_degrees(75).unwrap(), Slant::Inclined);
        assert!(Slant::from_degrees(80).is_err());
    }
}
