//! Fixed-step length quantizers used by every stored length.
//!
//! Steps are kept as integer hundredths of a millimeter so that dequantized
//! values are the exact decimal `code * step` (up to f64 rounding of the
//! final division) and never accumulate step error.

use crate::error::DomainError;

/// Slack, in code units, added before flooring so that decimal halves that
/// are not exactly representable in binary (12.345 / 0.01) still round up.
const HALF_UP_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quantizer {
    step_centi: u16,
    pub min_code: u16,
    pub max_code: u16,
    /// Stored width in bytes, 1 or 2.
    pub bytes: u8,
}

impl Quantizer {
    pub const fn new(step_centi: u16, min_code: u16, max_code: u16, bytes: u8) -> Self {
        assert!(bytes == 1 || bytes == 2);
        assert!(bytes == 2 || max_code <= 255);
        assert!(min_code <= max_code);
        Self {
            step_centi,
            min_code,
            max_code,
            bytes,
        }
    }

    /// Step in millimeters.
    pub fn step(&self) -> f64 {
        f64::from(self.step_centi) / 100.0
    }

    pub fn min_mm(&self) -> f64 {
        self.dequantize(self.min_code)
    }

    pub fn max_mm(&self) -> f64 {
        self.dequantize(self.max_code)
    }

    pub fn dequantize(&self, code: u16) -> f64 {
        (f64::from(code) * f64::from(self.step_centi)) / 100.0
    }

    pub fn contains_code(&self, code: u16) -> bool {
        (self.min_code..=self.max_code).contains(&code)
    }

    /// Round-half-up quantization of a length in millimeters.
    pub fn quantize(&self, field: &str, value_mm: f64) -> Result<u16, DomainError> {
        let out_of_range = || DomainError::OutOfRange {
            field: field.to_string(),
            value: value_mm,
            min: self.min_mm(),
            max: self.max_mm(),
        };
        if !value_mm.is_finite() {
            return Err(out_of_range());
        }
        let scaled = value_mm * 100.0 / f64::from(self.step_centi);
        let code = (scaled + 0.5 + HALF_UP_SLACK).floor();
        if code < f64::from(self.min_code) || code > f64::from(self.max_code) {
            return Err(out_of_range());
        }
        Ok(code as u16)
    }
}

/// General magistral settings: 0.01 to 600 mm in 0.01 mm steps, 2 bytes.
pub const GENERAL: Quantizer = Quantizer::new(1, 1, 60_000, 2);
/// Default individual setting: 0.1 to 25 mm in 0.1 mm steps, 1 byte.
pub const Q8: Quantizer = Quantizer::new(10, 1, 250, 1);
/// Text compression factor 0.10 to 2.55 in 0.01 steps, 1 byte.
pub const COMPRESSION: Quantizer = Quantizer::new(1, 10, 255, 1);

#[cfg(test)]
mod tests {
    use super::*;

    /// Round-half-up on a decimal literal using integer arithmetic only.
    fn decimal_half_up(literal: &str, step_centi: u64) -> u64 {
        let (int, frac) = literal.split_once('.').unwrap_or((literal, ""));
        let scale = 10u64.pow(frac.len() as u32);
        let value_scaled: u64 = format!("{int}{frac}").parse().unwrap();
        // value / (step_centi / 100) = value_scaled * 100 / (scale * step_centi)
        let num = value_scaled * 100;
        let den = scale * step_centi;
        (2 * num + den) / (2 * den)
    }

    #[test]
    fn upper_bound_of_general_range() {
        assert_eq!(GENERAL.quantize("step", 600.00).unwrap(), 60_000);
    }

    #[test]
    fn lower_bound_of_general_range() {
        assert_eq!(GENERAL.quantize("step", 0.01).unwrap(), 1);
    }

    #[test]
    fn decimal_half_rounds_up() {
        let expected = decimal_half_up("12.345", 1);
        assert_eq!(expected, 1235);
        assert_eq!(GENERAL.quantize("step", 12.345).unwrap(), 1235);
    }

    #[test]
    fn decimal_oracle_agrees_on_a_grid_of_literals() {
        for literal in ["0.015", "0.025", "1.005", "2.675", "599.995", "300.125", "7.5"] {
            let v: f64 = literal.parse().unwrap();
            assert_eq!(
                u64::from(GENERAL.quantize("x", v).unwrap()),
                decimal_half_up(literal, 1),
                "{literal}"
            );
        }
        for literal in ["0.15", "2.45", "24.95", "12.05"] {
            let v: f64 = literal.parse().unwrap();
            assert_eq!(
                u64::from(Q8.quantize("x", v).unwrap()),
                decimal_half_up(literal, 10),
                "{literal}"
            );
        }
    }

    #[test]
    fn out_of_range_names_field() {
        let err = GENERAL.quantize("picture", 600.006).unwrap_err();
        match err {
            DomainError::OutOfRange { field, .. } => assert_eq!(field, "picture"),
            other => panic!("{other:?}"),
        }
        assert!(GENERAL.quantize("step", 0.004).is_err());
        assert!(Q8.quantize("h", 25.05).is_err());
        assert!(Q8.quantize("h", f64::NAN).is_err());
    }

    #[test]
    fn half_step_window() {
        // [min - step/2, max + step/2)
        assert_eq!(GENERAL.quantize("x", 0.005).unwrap(), 1);
        assert_eq!(GENERAL.quantize("x", 600.004).unwrap(), 60_000);
        assert!(GENERAL.quantize("x", 600.005).is_err());
    }
}
