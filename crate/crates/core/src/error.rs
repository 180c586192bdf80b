use thiserror::Error;

/// A value outside the legal domain of a standards-constrained field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("line type code {0} is not one of the 7 registered line kinds")]
    LineType(u8),
    #[error("color index {0} does not fit in 4 bits")]
    Color(u8),
    #[error("font size {size_mm} mm is not a standard drawing font size")]
    FontSize { size_mm: f64 },
    #[error("{field}: {value} mm is outside the storable range {min}..={max} mm")]
    OutOfRange {
        field: String,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error("degenerate carrier line: {0}")]
    DegenerateCarrier(String),
    #[error("arclength {s} is outside 0..={length}")]
    Arclength { s: f64, length: f64 },
    #[error("offset {offset} collapses arc of radius {radius}")]
    OffsetCollapse { radius: f64, offset: f64 },
    #[error("magistral type {0} is not in 1..=26")]
    MagistralType(u8),
    #[error("magistral does not validate: {0}")]
    Precondition(String),
}

impl DomainError {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        DomainError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// One standards violation found by a validator. Violations are data: a
/// validator collects all of them instead of stopping at the first.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub field: String,
    pub value: String,
    pub allowed: String,
}

impl Violation {
    pub fn new(field: impl Into<String>, value: impl Into<String>, allowed: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            value: value.into(),
            allowed: allowed.into(),
        }
    }

    /// Same violation with its field name qualified by `prefix`.
    pub fn within(mut self, prefix: &str) -> Self {
        self.field = format!("{prefix}.{}", self.field);
        self
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {} (allowed: {})", self.field, self.value, self.allowed)
    }
}
