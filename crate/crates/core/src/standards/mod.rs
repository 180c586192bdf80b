//! Legal value domains derived from the drawing standards, and the
//! fixed-step encodings used to store them.

pub mod attr;
pub mod config;
pub mod dimension;
pub mod font;
pub mod projection;
pub mod quantize;
pub mod scale;

pub use attr::{pack_attr, unpack_attr, Attr, ColorIndex, CoordSpace, LineType};
pub use config::{ConfigError, Standards, CONFIG_DIR_ENV};
pub use dimension::DimensionStyle;
pub use font::{decode_font, encode_font, FontSpec, Slant};
pub use projection::{Axis, Projection, ProjectionCategory, ProjectionId};
pub use quantize::Quantizer;
pub use scale::{Scale, ScaleContext, ScaleId, SheetFormat};
