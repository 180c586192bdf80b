//! 8-bit text storage. Texts are kept in code page 1251 so Cyrillic
//! designations take one byte per character.

use encoding_rs::WINDOWS_1251;

use crate::error::DomainError;

pub fn encode_cp1251(field: &str, s: &str) -> Result<Vec<u8>, DomainError> {
    let (bytes, _, unmappable) = WINDOWS_1251.encode(s);
    if unmappable {
        return Err(DomainError::invalid(
            field,
            format!("{s:?} has characters outside code page 1251"),
        ));
    }
    if bytes.contains(&0) {
        return Err(DomainError::invalid(field, "text contains a NUL character"));
    }
    Ok(bytes.into_owned())
}

pub fn decode_cp1251(bytes: &[u8]) -> String {
    WINDOWS_1251.decode_without_bom_handling(bytes).0.into_owned()
}
