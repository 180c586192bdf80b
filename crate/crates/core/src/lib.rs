//! Compact standards-constrained 2D drawing kernel.

pub mod cli;
pub mod codec;
pub mod error;
pub mod geometry;
pub mod magistral;
pub mod model;
pub mod standards;
pub mod svg;
pub mod text;

pub use error::{DomainError, Violation};
