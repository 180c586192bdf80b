//! Golden files. Run with TCGX_BLESS=1 to rewrite them after a reviewed
//! change of the byte layout or of a glyph program.

mod common;

use std::fs;

use common::*;
use tcgx::codec::{decode_drawing, decode_element, encode_drawing, encode_element};
use tcgx::standards::Standards;
use tcgx::svg::render_svg;

fn check(path: &std::path::Path, actual: &str) {
    if blessing() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e}; run with TCGX_BLESS=1 to create it", path.display()));
    assert!(expected == actual, "{} differs from the current output", path.display());
}

#[test]
fn element_records_match_hex_fixtures() {
    for (name, element) in hex_fixtures() {
        let bytes = encode_element(&element).unwrap();
        let path = golden_dir().join(format!("hex/{name}.hex"));
        let comment = format!("{name} record, {} bytes", bytes.len());
        check(&path, &to_hex(&bytes, &comment));
        let fixture = from_hex(&fs::read_to_string(&path).unwrap());
        let (decoded, used) = decode_element(&fixture, 0).unwrap();
        assert_eq!(used, fixture.len(), "{name}");
        assert_eq!(decoded, element, "{name}");
    }
}

#[test]
fn drawing_matches_hex_fixture() {
    let d = drawing_fixture();
    let bytes = encode_drawing(&d).unwrap();
    let path = golden_dir().join("hex/drawing.hex");
    check(&path, &to_hex(&bytes, "file header, segment, magistral"));
    let fixture = from_hex(&fs::read_to_string(&path).unwrap());
    assert_eq!(decode_drawing(&fixture).unwrap(), d);
}

#[test]
fn magistral_svgs_match() {
    for mtype in 1..=26u8 {
        let svg = render_svg(&svg_fixture(mtype), Standards::bundled()).unwrap();
        check(&golden_dir().join(format!("svg/type_{mtype:02}.svg")), &svg);
    }
}
