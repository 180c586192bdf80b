//! Element records in human units, for `inspect`.

use serde_json::{json, Map, Value};

use crate::magistral::{decode_individual, descriptor, FieldValue};
use crate::model::{CarrierRecord, Drawing, Element, Header, Point32};
use crate::standards::quantize::GENERAL;
use crate::standards::{CoordSpace, SheetFormat, Standards};

/// Rounds away 32-bit representation noise.
pub(crate) fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn point(p: Point32) -> Value {
    json!([round6(f64::from(p.x)), round6(f64::from(p.y))])
}

fn degrees(rad: f32) -> f64 {
    round6(f64::from(rad).to_degrees())
}

fn header(map: &mut Map<String, Value>, h: &Header) {
    map.insert("layer".into(), json!(h.layer));
    map.insert("line".into(), json!(h.attr.line.key()));
    map.insert("color".into(), json!(h.attr.color.get()));
    let space = match h.attr.space {
        CoordSpace::Natura => "natura",
        CoordSpace::Bumaga => "bumaga",
    };
    map.insert("space".into(), json!(space));
}

pub(crate) fn drawing_header(d: &Drawing, standards: &Standards) -> Value {
    let scale = standards
        .scale(d.scale)
        .map_or_else(|| format!("unknown id {}", d.scale.0), |s| s.to_string());
    let format = match d.format {
        SheetFormat::Standard(id) => standards.formats.get(usize::from(id)).map_or_else(
            || format!("unknown id {id}"),
            |f| format!("{} ({}x{} mm)", f.name, f.width, f.height),
        ),
        SheetFormat::Custom { width, height } => format!("custom ({width}x{height} mm)"),
    };
    json!({
        "scale": scale,
        "scale_id": d.scale.0,
        "format": format,
        "elements": d.elements.len(),
    })
}

fn carrier(c: &CarrierRecord) -> Value {
    match *c {
        CarrierRecord::Segment { start, end } => json!({
            "kind": "segment",
            "start": point(start),
            "end": point(end),
        }),
        CarrierRecord::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } => json!({
            "kind": "arc",
            "center": point(center),
            "radius": round6(f64::from(radius)),
            "start_angle_deg": degrees(start_angle),
            "sweep_deg": degrees(sweep),
        }),
    }
}

fn general_mm(code: u16) -> Value {
    if code == 0 {
        Value::Null
    } else {
        json!(GENERAL.dequantize(code))
    }
}

pub(crate) fn element(index: usize, offset: usize, e: &Element) -> Value {
    let mut map = Map::new();
    map.insert("index".into(), json!(index));
    map.insert("offset".into(), json!(offset));
    map.insert("tag".into(), json!(e.tag().name()));
    map.insert("size".into(), json!(e.size()));
    header(&mut map, e.header());
    match e {
        Element::Segment(s) => {
            map.insert("start".into(), point(s.start));
            map.insert("end".into(), point(s.end));
        }
        Element::Arc(a) => {
            map.insert("center".into(), point(a.center));
            map.insert("radius".into(), json!(round6(f64::from(a.radius))));
            map.insert("start_angle_deg".into(), json!(degrees(a.start_angle)));
            map.insert("sweep_deg".into(), json!(degrees(a.sweep)));
        }
        Element::Polyline(p) => {
            map.insert("vertex_count".into(), json!(p.vertices.len()));
            map.insert(
                "vertices".into(),
                Value::Array(p.vertices.iter().map(|v| point(*v)).collect()),
            );
        }
        Element::Text(t) => {
            map.insert("font_mm".into(), json!(t.font.size_mm()));
            map.insert("slant_deg".into(), json!(t.font.slant.degrees()));
            map.insert("compression".into(), json!(t.compression_factor()));
            map.insert("anchor".into(), point(t.anchor));
            map.insert("rotation_deg".into(), json!(degrees(t.rotation)));
            map.insert("text".into(), json!(t.text_string()));
        }
        Element::Magistral(m) => {
            map.insert("mtype".into(), json!(m.mtype));
            if let Ok(d) = descriptor(m.mtype) {
                map.insert("type_key".into(), json!(d.key));
                map.insert("type_name".into(), json!(d.name));
            }
            map.insert("carrier".into(), carrier(&m.carrier));
            map.insert(
                "general_mm".into(),
                json!({
                    "first_step": general_mm(m.general.first_step),
                    "step": general_mm(m.general.step),
                    "picture": general_mm(m.general.picture),
                }),
            );
            let individual = match decode_individual(m.mtype, &m.individual) {
                Ok(s) => {
                    let mut fields = Map::new();
                    for (name, v) in s.fields() {
                        let v = match v {
                            FieldValue::Length(mm) => json!(mm),
                            FieldValue::Font(f) => json!({"size_mm": f.size_mm(), "slant_deg": f.slant.degrees()}),
                            FieldValue::Text(t) => json!(t),
                            FieldValue::Compression(c) => json!(c),
                        };
                        fields.insert(name.into(), v);
                    }
                    Value::Object(fields)
                }
                Err(e) => json!({ "error": e.to_string() }),
            };
            map.insert("individual".into(), individual);
        }
    }
    Value::Object(map)
}

/// `key=value` pairs on one line; nested values stay compact JSON.
pub(crate) fn text_line(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
