//! Dimension style lengths: stored in 0.2 mm steps over a range about 2-3x
//! wider than GOST 2.307 allows; the validator enforces the narrow range.

use super::config::Standards;
use super::quantize::Quantizer;
use crate::error::{DomainError, Violation};

pub const ARROW_LEN: Quantizer = Quantizer::new(20, 1, 60, 1);
pub const TICK_LEN: Quantizer = Quantizer::new(20, 1, 50, 1);
pub const EXTENSION_OVERSHOOT: Quantizer = Quantizer::new(20, 1, 60, 1);
pub(crate) const STORAGE: [Quantizer; 3] = [ARROW_LEN, TICK_LEN, EXTENSION_OVERSHOOT];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionStyle {
    pub arrow_len: u8,
    pub tick_len: u8,
    pub extension_overshoot: u8,
}

impl DimensionStyle {
    pub fn from_mm(arrow_len: f64, tick_len: f64, extension_overshoot: f64) -> Result<Self, DomainError> {
        Ok(Self {
            arrow_len: ARROW_LEN.quantize("arrow_len", arrow_len)? as u8,
            tick_len: TICK_LEN.quantize("tick_len", tick_len)? as u8,
            extension_overshoot: EXTENSION_OVERSHOOT.quantize("extension_overshoot", extension_overshoot)? as u8,
        })
    }
}

/// Acceptable ranges, mm, inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionRanges {
    pub arrow_len: (f64, f64),
    pub tick_len: (f64, f64),
    pub extension_overshoot: (f64, f64),
}

impl DimensionRanges {
    pub(crate) fn fields_with_storage(&self) -> [(&'static str, (f64, f64), Quantizer); 3] {
        [
            ("arrow_len", self.arrow_len, ARROW_LEN),
            ("tick_len", self.tick_len, TICK_LEN),
            ("extension_overshoot", self.extension_overshoot, EXTENSION_OVERSHOOT),
        ]
    }
}

impl Standards {
    pub fn validate_dimension_style(&self, style: &DimensionStyle) -> Vec<Violation> {
        let codes = [style.arrow_len, style.tick_len, style.extension_overshoot];
        self.dimension
            .fields_with_storage()
            .into_iter()
            .zip(codes)
            .filter_map(|((name, (lo, hi), q), code)| {
                let v = q.dequantize(u16::from(code));
                let inside = q.contains_code(u16::from(code)) && v >= lo - 1e-9 && v <= hi + 1e-9;
                (!inside).then(|| Violation::new(name, format!("{v:.1} mm"), format!("{lo}..={hi} mm")))
            })
            .collect()
    }
}
