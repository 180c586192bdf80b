use std::path::PathBuf;

use clap::{ArgGroup, Args};
use serde_json::json;

use super::{load, write_atomic, CliError, Outcome};
use crate::codec::encode_drawing;
use crate::error::Violation;
use crate::geometry::{CarrierLine, Point};
use crate::magistral::{
    default_general, descriptor, descriptor_by_key, encode_individual, validate_settings, FieldKind, FieldValue,
    IndividualSettings,
};
use crate::model::{
    validate_element_scaled, CarrierRecord, Drawing, Element, GeneralSettings, Header, MagistralElement,
};
use crate::standards::quantize::GENERAL;
use crate::standards::{Attr, ColorIndex, CoordSpace, FontSpec, ScaleId, SheetFormat, Slant, Standards};

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("carrier").required(true).args(["seg", "arc"])))]
pub struct NewMagistralArgs {
    /// Type id (1..=26) or key, e.g. `4` or `thin_zigzag`.
    #[arg(long = "type", value_name = "ID|KEY")]
    pub mtype: String,
    /// Straight carrier from (x1, y1) to (x2, y2).
    #[arg(long, value_name = "X1,Y1,X2,Y2", value_parser = floats::<4>, allow_hyphen_values = true)]
    pub seg: Option<[f64; 4]>,
    /// Arc carrier; angles in degrees, counterclockwise positive.
    #[arg(long, value_name = "CX,CY,R,A0,SWEEP", value_parser = floats::<5>, allow_hyphen_values = true)]
    pub arc: Option<[f64; 5]>,
    /// First step in mm; defaults to 10 where applicable.
    #[arg(long)]
    pub first_step: Option<f64>,
    /// Step in mm; defaults to 20 where applicable.
    #[arg(long)]
    pub step: Option<f64>,
    /// Picture length in mm; defaults to 5 where applicable.
    #[arg(long)]
    pub picture: Option<f64>,
    /// Individual setting, e.g. `zigzag_height=2.5`. Repeatable.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Text of a text-bearing type (at most 4 characters).
    #[arg(long)]
    pub text: Option<String>,
    /// Font of a text-bearing type: size in mm, optionally `/75` for slanted.
    #[arg(long, value_name = "MM[/DEG]")]
    pub font: Option<String>,
    /// Horizontal text compression factor.
    #[arg(long)]
    pub compression: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub layer: u8,
    /// Palette index 0..=15.
    #[arg(long, default_value_t = 0)]
    pub color: u8,
    /// Coordinate space of the carrier: `natura` (model units) or `bumaga` (paper mm).
    #[arg(long, default_value = "bumaga", value_parser = ["natura", "bumaga"])]
    pub space: String,
    /// Scale of a new drawing, e.g. `1:100`.
    #[arg(long, default_value = "1:1")]
    pub scale: String,
    /// Sheet of a new drawing: a configured name such as `A4`, or `WxH` in mm.
    #[arg(long, default_value = "A4")]
    pub format: String,
    #[arg(short, long)]
    pub output: PathBuf,
}

fn floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let found = parts.len();
    parts
        .try_into()
        .map_err(|_| format!("expected {N} comma-separated numbers, found {found}"))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_scale(s: &str, standards: &Standards) -> Result<ScaleId, CliError> {
    let bad = || usage(format!("--scale {s:?}: expected A:B from the scale table"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    let want = a / b;
    standards
        .scales
        .iter()
        .position(|sc| (sc.factor() - want).abs() <= 1e-12 * want.abs())
        .map(|i| ScaleId(i as u8))
        .ok_or_else(bad)
}

fn parse_format(s: &str, standards: &Standards) -> Result<SheetFormat, CliError> {
    if let Some(id) = standards.format_by_name(s) {
        return Ok(SheetFormat::Standard(id));
    }
    let bad = || usage(format!("--format {s:?}: expected a configured name or WxH"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (w, h) = (
        w.trim().parse().map_err(|_| bad())?,
        h.trim().parse().map_err(|_| bad())?,
    );
    SheetFormat::custom(w, h).map_err(|e| usage(e.to_string()))
}

fn parse_font(s: &str) -> Result<FontSpec, CliError> {
    let (size, slant) = s.split_once('/').unwrap_or((s, "90"));
    let size: f64 = size
        .trim()
        .parse()
        .map_err(|_| usage(format!("font {s:?}: bad size")))?;
    let deg: u32 = slant
        .trim()
        .parse()
        .map_err(|_| usage(format!("font {s:?}: bad slant")))?;
    let slant = Slant::from_degrees(deg).map_err(|e| usage(e.to_string()))?;
    // illegal sizes are kept so validation can report them
    let size_code = (size / 0.5).round();
    if !(0.0..=127.0).contains(&size_code) || (size_code * 0.5 - size).abs() > 1e-9 {
        return Err(usage(format!("font {s:?}: size is not a multiple of 0.5 mm")));
    }
    Ok(FontSpec {
        size_code: size_code as u8,
        slant,
    })
}

fn field_value(kind: FieldKind, name: &str, raw: &str) -> Result<FieldValue, CliError> {
    let number = || {
        raw.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("{name}={raw}: expected a number")))
    };
    Ok(match kind {
        FieldKind::Length { .. } => FieldValue::Length(number()?),
        FieldKind::Compression => FieldValue::Compression(number()?),
        FieldKind::Font => FieldValue::Font(parse_font(raw)?),
        FieldKind::Text => FieldValue::Text(raw.to_string()),
    })
}

fn carrier(args: &NewMagistralArgs) -> CarrierLine {
    match (args.seg, args.arc) {
        (Some([x1, y1, x2, y2]), _) => CarrierLine::Segment {
            start: Point::new(x1, y1),
            end: Point::new(x2, y2),
        },
        (None, Some([cx, cy, r, a0, sweep])) => CarrierLine::Arc {
            center: Point::new(cx, cy),
            radius: r,
            start_angle: a0.to_radians(),
            sweep: sweep.to_radians(),
        },
        (None, None) => unreachable!("clap requires a carrier"),
    }
}

fn rejected(violations: Vec<Violation>) -> Outcome {
    let text: String = violations.iter().map(|v| format!("{v}\n")).collect();
    Outcome {
        code: 1,
        json: json!({ "violations": violations }),
        text: format!("{text}{} violations; nothing written\n", violations.len()),
    }
}

pub(super) fn run(args: &NewMagistralArgs, standards: &Standards) -> Result<Outcome, CliError> {
    let d = match args.mtype.parse::<u8>() {
        Ok(id) => descriptor(id)?,
        Err(_) => descriptor_by_key(&args.mtype)
            .ok_or_else(|| usage(format!("--type {:?}: unknown magistral type", args.mtype)))?,
    };

    let mut settings = IndividualSettings::defaults(d.id)?;
    let mut assignments: Vec<(String, String)> = Vec::new();
    for (name, v) in [("text", &args.text), ("font", &args.font)] {
        if let Some(v) = v {
            assignments.push((name.into(), v.clone()));
        }
    }
    if let Some(c) = args.compression {
        assignments.push(("compression".into(), c.to_string()));
    }
    for s in &args.set {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| usage(format!("--set {s:?}: expected NAME=VALUE")))?;
        assignments.push((k.trim().into(), v.into()));
    }
    for (name, raw) in &assignments {
        let (_, spec) = d.field(name).ok_or_else(|| {
            let known: Vec<_> = d.fields.iter().map(|f| f.name).collect();
            usage(format!(
                "{} has no setting {name:?}; settings: {}",
                d.key,
                known.join(", ")
            ))
        })?;
        settings
            .set(name, field_value(spec.kind, name, raw)?)
            .map_err(|e| usage(e.to_string()))?;
    }

    let defaults = default_general(d);
    let mut violations = Vec::new();
    let mut code = |name: &str, given: Option<f64>, default: u16| match given {
        None => default,
        Some(mm) => GENERAL.quantize(name, mm).unwrap_or_else(|e| {
            violations.push(Violation::new(name, format!("{mm} mm"), e.to_string()));
            0
        }),
    };
    let general = GeneralSettings {
        first_step: code("first_step", args.first_step, defaults.first_step),
        step: code("step", args.step, defaults.step),
        picture: code("picture", args.picture, defaults.picture),
    };
    violations.extend(validate_settings(d.id, &general, &settings));
    if !violations.is_empty() {
        return Ok(rejected(violations));
    }

    let (mut drawing, existing) = if args.output.exists() {
        (load(&args.output)?.1, true)
    } else {
        (
            Drawing::new(
                parse_scale(&args.scale, standards)?,
                parse_format(&args.format, standards)?,
            ),
            false,
        )
    };
    let space = match args.space.as_str() {
        "natura" => CoordSpace::Natura,
        _ => CoordSpace::Bumaga,
    };
    let color = ColorIndex::new(args.color).map_err(|e| usage(e.to_string()))?;
    let m = MagistralElement {
        header: Header {
            layer: args.layer,
            attr: Attr::new(d.carrier_line, color, space),
        },
        carrier: CarrierRecord::from_geometry(&carrier(args)),
        mtype: d.id,
        general,
        individual: encode_individual(d.id, &settings)?,
    };
    let element = Element::Magistral(m);
    let k = 1.0 / drawing.paper_factor(standards, space);
    let violations = validate_element_scaled(&element, k);
    if !violations.is_empty() {
        return Ok(rejected(violations));
    }
    let size = element.size();
    drawing.elements.push(element);
    let bytes = encode_drawing(&drawing)?;
    write_atomic(&args.output, &bytes)?;
    let index = drawing.elements.len() - 1;
    Ok(Outcome::ok(
        json!({
            "output": args.output.display().to_string(),
            "created": !existing,
            "element": index,
            "type": d.id,
            "type_key": d.key,
            "size": size,
            "file_bytes": bytes.len(),
        }),
        format!(
            "{} element {index}: magistral {} (type {}), {size} bytes; file is {} bytes\n",
            args.output.display(),
            d.key,
            d.id,
            bytes.len()
        ),
    ))
}
