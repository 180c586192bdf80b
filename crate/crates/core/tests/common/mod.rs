#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::Rng;

use tcgx::magistral::{
    default_general, descriptor, encode_individual, FieldKind, IndividualSettings, DESCRIPTORS, TEXT_BYTES,
};
use tcgx::model::*;
use tcgx::standards::quantize::COMPRESSION;
use tcgx::standards::{Attr, ColorIndex, CoordSpace, FontSpec, LineType, ScaleId, SheetFormat, Slant};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Golden files are only rewritten when this is set to 1.
pub fn blessing() -> bool {
    std::env::var("TCGX_BLESS").is_ok_and(|v| v == "1")
}

pub fn header(layer: u8, line: LineType, color: u8, space: CoordSpace) -> Header {
    Header {
        layer,
        attr: Attr::new(line, ColorIndex::new(color).unwrap(), space),
    }
}

pub fn magistral_with_defaults(mtype: u8, carrier: CarrierRecord) -> MagistralElement {
    let d = descriptor(mtype).unwrap();
    MagistralElement {
        header: header(0, d.carrier_line, 0, CoordSpace::Bumaga),
        carrier,
        mtype,
        general: default_general(d),
        individual: encode_individual(mtype, &IndividualSettings::defaults(mtype).unwrap()).unwrap(),
    }
}

/// One fixed element per tag, plus an arc-carried magistral.
pub fn hex_fixtures() -> Vec<(&'static str, Element)> {
    vec![
        (
            "segment",
            Element::Segment(SegmentElement {
                header: header(2, LineType::SolidThin, 3, CoordSpace::Bumaga),
                start: Point32::new(10.0, 20.0),
                end: Point32::new(30.5, -4.0),
            }),
        ),
        (
            "arc",
            Element::Arc(ArcElement {
                header: header(0, LineType::DashDotThin, 1, CoordSpace::Natura),
                center: Point32::new(100.0, 50.0),
                radius: 25.0,
                start_angle: 0.0,
                sweep: std::f32::consts::FRAC_PI_2,
            }),
        ),
        (
            "polyline",
            Element::Polyline(PolylineElement {
                header: header(1, LineType::SolidMain, 0, CoordSpace::Bumaga),
                vertices: vec![Point32::new(0.0, 0.0), Point32::new(10.0, 5.0), Point32::new(20.0, 0.0)],
            }),
        ),
        (
            "text",
            Element::Text(TextElement {
                header: header(0, LineType::SolidThin, 0, CoordSpace::Bumaga),
                font: FontSpec::new(3.5, Slant::Upright).unwrap(),
                compression: 100,
                anchor: Point32::new(15.0, 7.5),
                rotation: 0.0,
                text: vec![0xC2, 0x31],
            }),
        ),
        (
            "magistral",
            Element::Magistral(magistral_with_defaults(
                9,
                CarrierRecord::Segment {
                    start: Point32::new(0.0, 0.0),
                    end: Point32::new(100.0, 0.0),
                },
            )),
        ),
        (
            "magistral_arc",
            Element::Magistral(magistral_with_defaults(
                4,
                CarrierRecord::Arc {
                    center: Point32::new(50.0, 50.0),
                    radius: 40.0,
                    start_angle: 0.0,
                    sweep: std::f32::consts::PI,
                },
            )),
        ),
    ]
}

/// A small complete file: header plus a segment and a magistral.
pub fn drawing_fixture() -> Drawing {
    let fixtures = hex_fixtures();
    Drawing {
        scale: ScaleId(0),
        format: SheetFormat::Standard(4),
        elements: vec![fixtures[0].1.clone(), fixtures[4].1.clone()],
    }
}

/// The drawing rendered for the golden SVG of one magistral type.
pub fn svg_fixture(mtype: u8) -> Drawing {
    let mut d = Drawing::new(ScaleId(0), SheetFormat::custom(120, 40).unwrap());
    d.elements.push(Element::Magistral(magistral_with_defaults(
        mtype,
        CarrierRecord::Segment {
            start: Point32::new(10.0, 20.0),
            end: Point32::new(110.0, 20.0),
        },
    )));
    d
}

pub fn to_hex(bytes: &[u8], comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        out.push_str(&format!("# {line}\n"));
    }
    for (i, chunk) in bytes.chunks(16).enumerate() {
        let hex: Vec<_> = chunk.iter().map(|b| format!("{b:02x}")).collect();
        out.push_str(&format!("{:04x}: {}\n", i * 16, hex.join(" ")));
    }
    out
}

pub fn from_hex(text: &str) -> Vec<u8> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let data = line.split_once(':').map_or(line, |(_, d)| d);
        for pair in data.split_whitespace() {
            out.push(u8::from_str_radix(pair, 16).expect("hex byte"));
        }
    }
    out
}

fn finite_f32(rng: &mut StdRng) -> f32 {
    match rng.random_range(0..4) {
        0 => rng.random_range(-1.0e6f32..1.0e6),
        1 => rng.random_range(-100.0f32..100.0),
        2 => f32::from_bits(rng.random::<u32>() & 0xBF7F_FFFF),
        _ => *[0.0f32, -0.0, 1.0, f32::MIN_POSITIVE, f32::MAX, f32::MIN]
            .get(rng.random_range(0..6))
            .unwrap(),
    }
}

fn point(rng: &mut StdRng) -> Point32 {
    Point32::new(finite_f32(rng), finite_f32(rng))
}

fn random_header(rng: &mut StdRng) -> Header {
    let line = LineType::ALL[rng.random_range(0..7)];
    let space = if rng.random_bool(0.5) {
        CoordSpace::Natura
    } else {
        CoordSpace::Bumaga
    };
    header(rng.random(), line, rng.random_range(0..16), space)
}

pub fn random_font(rng: &mut StdRng) -> FontSpec {
    let all: Vec<_> = FontSpec::all().collect();
    all[rng.random_range(0..all.len())]
}

/// Random individual bytes that decode: every field code in range, text
/// zero-padded, tail zero.
pub fn random_individual(rng: &mut StdRng, mtype: u8) -> [u8; INDIVIDUAL_SIZE] {
    let d = descriptor(mtype).unwrap();
    let mut out = [0u8; INDIVIDUAL_SIZE];
    let mut at = 0;
    for f in d.fields {
        match f.kind {
            FieldKind::Length { q, .. } => {
                let code = rng.random_range(q.min_code..=q.max_code);
                if q.bytes == 1 {
                    out[at] = code as u8;
                } else {
                    out[at..at + 2].copy_from_slice(&code.to_le_bytes());
                }
            }
            FieldKind::Font => out[at] = tcgx::standards::encode_font(random_font(rng)).unwrap(),
            FieldKind::Text => {
                for b in out.iter_mut().skip(at).take(rng.random_range(0..=TEXT_BYTES)) {
                    *b = rng.random_range(1..=255);
                }
            }
            FieldKind::Compression => out[at] = rng.random_range(COMPRESSION.min_code..=COMPRESSION.max_code) as u8,
        }
        at += f.kind.bytes();
    }
    out
}

/// Any element the strict decoder accepts; not necessarily standards-clean.
pub fn random_element(rng: &mut StdRng) -> Element {
    let header = random_header(rng);
    match rng.random_range(0..5) {
        0 => Element::Segment(SegmentElement {
            header,
            start: point(rng),
            end: point(rng),
        }),
        1 => Element::Arc(ArcElement {
            header,
            center: point(rng),
            radius: finite_f32(rng),
            start_angle: finite_f32(rng),
            sweep: finite_f32(rng),
        }),
        2 => Element::Polyline(PolylineElement {
            header,
            vertices: (0..rng.random_range(2..12)).map(|_| point(rng)).collect(),
        }),
        3 => Element::Text(TextElement {
            header,
            font: random_font(rng),
            compression: rng.random_range(10..=255),
            anchor: point(rng),
            rotation: finite_f32(rng),
            text: (0..rng.random_range(0..20)).map(|_| rng.random()).collect(),
        }),
        _ => {
            let mtype = DESCRIPTORS[rng.random_range(0..DESCRIPTORS.len())].id;
            let carrier = if rng.random_bool(0.5) {
                CarrierRecord::Segment {
                    start: point(rng),
                    end: point(rng),
                }
            } else {
                CarrierRecord::Arc {
                    center: point(rng),
                    radius: finite_f32(rng),
                    start_angle: finite_f32(rng),
                    sweep: finite_f32(rng),
                }
            };
            Element::Magistral(MagistralElement {
                header,
                carrier,
                mtype,
                general: GeneralSettings {
                    first_step: rng.random_range(0..=60_000),
                    step: rng.random_range(0..=60_000),
                    picture: rng.random_range(0..=60_000),
                },
                individual: random_individual(rng, mtype),
            })
        }
    }
}

pub fn random_drawing(rng: &mut StdRng) -> Drawing {
    let format = if rng.random_bool(0.5) {
        SheetFormat::Standard(rng.random())
    } else {
        SheetFormat::Custom {
            width: rng.random_range(1..=u16::MAX),
            height: rng.random_range(1..=u16::MAX),
        }
    };
    Drawing {
        scale: ScaleId(rng.random()),
        format,
        elements: (0..rng.random_range(0..8)).map(|_| random_element(rng)).collect(),
    }
}
