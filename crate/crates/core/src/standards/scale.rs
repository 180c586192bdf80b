//! Drawing scales and sheet formats.

use serde::Deserialize;

use super::config::Standards;
use crate::error::DomainError;

/// Index into the configured scale table; stored as one byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ScaleId(pub u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scale {
    pub num: u32,
    pub den: u32,
}

impl Scale {
    /// Paper length per unit of full-size length.
    pub fn factor(self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }

    /// Reduction ratio den/num, e.g. 100 for 1:100.
    pub fn ratio(self) -> f64 {
        f64::from(self.den) / f64::from(self.num)
    }
}

impl std::fmt::Display for Scale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // 2:5 reads better as 1:2.5
        if self.num == 2 && self.den % 2 == 1 {
            write!(f, "1:{}", f64::from(self.den) / 2.0)
        } else if self.den == 2 && self.num % 2 == 1 {
            write!(f, "{}:1", f64::from(self.num) / 2.0)
        } else {
            write!(f, "{}:{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleContextBounds {
    pub min_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleContext {
    General,
    ProfileHorizontal,
    ProfileVertical,
}

impl Standards {
    pub fn scale(&self, id: ScaleId) -> Option<Scale> {
        self.scales.get(usize::from(id.0)).copied()
    }

    pub fn scale_id(&self, num: u32, den: u32) -> Option<ScaleId> {
        self.scales
            .iter()
            .position(|s| s.num == num && s.den == den)
            .map(|i| ScaleId(i as u8))
    }

    /// Scale ids usable in a given drawing context.
    pub fn allowed_scales(&self, ctx: ScaleContext) -> Vec<ScaleId> {
        let bounds = match ctx {
            ScaleContext::General => None,
            ScaleContext::ProfileHorizontal => Some(self.profile_horizontal),
            ScaleContext::ProfileVertical => Some(self.profile_vertical),
        };
        self.scales
            .iter()
            .enumerate()
            .filter(|(_, s)| bounds.is_none_or(|b| (b.min_ratio..=b.max_ratio).contains(&s.ratio())))
            .map(|(i, _)| ScaleId(i as u8))
            .collect()
    }

    /// Sheet size in millimeters, or `None` for an unknown standard id.
    pub fn sheet_size(&self, format: SheetFormat) -> Option<(u16, u16)> {
        match format {
            SheetFormat::Standard(id) => self.formats.get(usize::from(id)).map(|f| (f.width, f.height)),
            SheetFormat::Custom { width, height } => Some((width, height)),
        }
    }
}

/// Sheet format: an entry of the configured GOST 2.301 table or custom
/// whole-millimeter dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SheetFormat {
    Standard(u8),
    Custom { width: u16, height: u16 },
}

impl SheetFormat {
    pub fn custom(width: u32, height: u32) -> Result<Self, DomainError> {
        let side = |name: &str, v: u32| {
            u16::try_from(v)
                .ok()
                .filter(|v| *v > 0)
                .ok_or_else(|| DomainError::invalid(name, format!("{v} mm is not in 1..=65535")))
        };
        Ok(SheetFormat::Custom {
            width: side("format.width", width)?,
            height: side("format.height", height)?,
        })
    }
}

impl Default for SheetFormat {
    fn default() -> Self {
        SheetFormat::Standard(4)
    }
}
