//! Loading of the bundled standards tables (`config/standards.toml`).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use super::attr::LineType;
use super::dimension::{DimensionRanges, STORAGE};
use super::projection::{Axis, Projection, ProjectionCategory};
use super::scale::{Scale, ScaleContextBounds};

pub const CONFIG_VERSION: u32 = 1;
pub const CONFIG_FILE_NAME: &str = "standards.toml";
/// Environment variable naming a directory holding a replacement `standards.toml`.
pub const CONFIG_DIR_ENV: &str = "TCGX_CONFIG_DIR";

const BUNDLED: &str = include_str!("../../config/standards.toml");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing standards config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unsupported standards config version {0} (expected {CONFIG_VERSION})")]
    Version(u32),
    #[error("invalid standards config: {0}")]
    Invalid(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    version: u32,
    scale: Vec<Scale>,
    scale_context: RawScaleContexts,
    format: Vec<FormatEntry>,
    projection: Vec<RawProjection>,
    dimension: RawDimension,
    line_kinds: BTreeMap<String, Vec<f64>>,
    svg: SvgConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScaleContexts {
    profile_horizontal: ScaleContextBounds,
    profile_vertical: ScaleContextBounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormatEntry {
    pub name: String,
    pub width: u16,
    pub height: u16,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    angle: f64,
    coef: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProjection {
    name: String,
    category: String,
    axes: [RawAxis; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDimension {
    arrow_len: [f64; 2],
    tick_len: [f64; 2],
    extension_overshoot: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SvgConfig {
    pub main_width: f64,
    pub thin_width: f64,
    pub palette: Vec<String>,
}

/// Immutable standards tables. Cheap to share; all accessors are `&self`.
#[derive(Debug, Clone)]
pub struct Standards {
    pub scales: Vec<Scale>,
    pub profile_horizontal: ScaleContextBounds,
    pub profile_vertical: ScaleContextBounds,
    pub formats: Vec<FormatEntry>,
    pub projections: Vec<Projection>,
    pub dimension: DimensionRanges,
    line_periods: [Vec<f64>; 7],
    pub svg: SvgConfig,
}

impl Standards {
    /// The tables shipped with the crate.
    pub fn bundled() -> &'static Standards {
        static BUNDLED_STANDARDS: OnceLock<Standards> = OnceLock::new();
        BUNDLED_STANDARDS.get_or_init(|| Standards::parse(BUNDLED).expect("bundled standards config is valid"))
    }

    pub fn bundled_text() -> &'static str {
        BUNDLED
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        if raw.version != CONFIG_VERSION {
            return Err(ConfigError::Version(raw.version));
        }
        let invalid = |msg: String| ConfigError::Invalid(msg);

        if raw.scale.is_empty() || raw.scale.len() > 256 {
            return Err(invalid(format!("{} scales; need 1..=256", raw.scale.len())));
        }
        if let Some(s) = raw.scale.iter().find(|s| s.num == 0 || s.den == 0) {
            return Err(invalid(format!("scale {}:{} has a zero term", s.num, s.den)));
        }
        if raw.format.is_empty() || raw.format.len() > 256 {
            return Err(invalid(format!("{} formats; need 1..=256", raw.format.len())));
        }
        if let Some(f) = raw.format.iter().find(|f| f.width == 0 || f.height == 0) {
            return Err(invalid(format!("format {} has a zero side", f.name)));
        }

        let mut projections = Vec::with_capacity(raw.projection.len());
        for p in raw.projection {
            let category = match p.category.as_str() {
                "axonometric" => ProjectionCategory::Axonometric,
                "view" => ProjectionCategory::View,
                "oblique" => ProjectionCategory::Oblique,
                other => return Err(invalid(format!("unknown projection category {other:?}"))),
            };
            let axes = p.axes.map(|a| Axis::from_degrees(a.angle, a.coef));
            projections.push(Projection {
                name: p.name,
                category,
                axes,
            });
        }
        let count = |c| projections.iter().filter(|p| p.category == c).count();
        if projections.len() != 25
            || count(ProjectionCategory::Axonometric) != 13
            || count(ProjectionCategory::View) != 6
            || count(ProjectionCategory::Oblique) != 6
        {
            return Err(invalid(
                "projection registry must hold 13 axonometric, 6 view and 6 oblique entries".into(),
            ));
        }

        let dimension = DimensionRanges {
            arrow_len: (raw.dimension.arrow_len[0], raw.dimension.arrow_len[1]),
            tick_len: (raw.dimension.tick_len[0], raw.dimension.tick_len[1]),
            extension_overshoot: (
                raw.dimension.extension_overshoot[0],
                raw.dimension.extension_overshoot[1],
            ),
        };
        for (name, (lo, hi), q) in dimension.fields_with_storage() {
            if !(lo <= hi && lo >= q.min_mm() && hi <= q.max_mm()) {
                return Err(invalid(format!(
                    "dimension range {name} {lo}..{hi} must lie inside storage {}..{}",
                    q.min_mm(),
                    q.max_mm()
                )));
            }
        }
        debug_assert_eq!(STORAGE.len(), 3);

        let mut line_kinds = raw.line_kinds;
        let mut periods: Vec<Vec<f64>> = Vec::with_capacity(7);
        for lt in LineType::ALL {
            let dashes = line_kinds
                .remove(lt.key())
                .ok_or_else(|| invalid(format!("line kind {} missing", lt.key())))?;
            if dashes.len() % 2 != 0 || dashes.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
                return Err(invalid(format!("line kind {} has a malformed period", lt.key())));
            }
            periods.push(dashes);
        }
        if let Some(extra) = line_kinds.keys().next() {
            return Err(invalid(format!("unknown line kind {extra}")));
        }
        let line_periods: [Vec<f64>; 7] = periods.try_into().expect("seven kinds");

        if raw.svg.palette.len() != 16 {
            return Err(invalid(format!(
                "palette has {} colors; need 16",
                raw.svg.palette.len()
            )));
        }
        if let Some(c) = raw.svg.palette.iter().find(|c| !is_hex_color(c)) {
            return Err(invalid(format!("palette color {c:?} is not #rrggbb")));
        }

        Ok(Self {
            scales: raw.scale,
            profile_horizontal: raw.scale_context.profile_horizontal,
            profile_vertical: raw.scale_context.profile_vertical,
            formats: raw.format,
            projections,
            dimension,
            line_periods,
            svg: raw.svg,
        })
    }

    pub fn load_dir(dir: &Path) -> Result<Self, ConfigError> {
        let path = dir.join(CONFIG_FILE_NAME);
        let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Tables from `$TCGX_CONFIG_DIR` when set, otherwise the bundled ones.
    pub fn from_env() -> Result<Self, ConfigError> {
        match std::env::var_os(CONFIG_DIR_ENV) {
            Some(dir) => Self::load_dir(Path::new(&dir)),
            None => Ok(Self::bundled().clone()),
        }
    }

    /// Dash/gap period of a line kind; empty for solid kinds.
    pub fn line_period(&self, line: LineType) -> &[f64] {
        &self.line_periods[usize::from(line.code())]
    }

    pub fn format_by_name(&self, name: &str) -> Option<u8> {
        self.formats
            .iter()
            .position(|f| f.name.eq_ignore_ascii_case(name))
            .map(|i| i as u8)
    }
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].chars().all(|c| c.is_ascii_hexdigit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_config_loads() {
        let s = Standards::bundled();
        assert!(s.scales.len() > 20);
        assert_eq!(s.projections.len(), 25);
        assert_eq!(s.svg.palette.len(), 16);
        assert_eq!(s.format_by_name("a4"), Some(4));
        assert!(s.line_period(LineType::SolidMain).is_empty());
        assert_eq!(s.line_period(LineType::Dashed), &[5.0, 1.5]);
    }

    #[test]
    fn version_is_checked() {
        let text = BUNDLED.replacen("version = 1", "version = 2", 1);
        assert!(matches!(Standards::parse(&text), Err(ConfigError::Version(2))));
    }

    #[test]
    fn missing_line_kind_is_rejected() {
        let text = BUNDLED.replace("dashed_thickened = [5.0, 1.5]\n", "");
        assert!(matches!(Standards::parse(&text), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn load_from_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join(CONFIG_FILE_NAME), BUNDLED).unwrap();
        let s = Standards::load_dir(dir.path()).unwrap();
        assert_eq!(s.scales, Standards::bundled().scales);
        assert!(Standards::load_dir(&dir.path().join("nope")).is_err());
    }
}
