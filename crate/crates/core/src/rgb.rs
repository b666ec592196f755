//! 8-bit sRGB color values and hex string parsing/formatting.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An 8-bit sRGB color, the external currency of all inputs and outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RgbColor {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl RgbColor {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    /// Lowercase `#rrggbb` form of this color.
    pub fn to_hex(self) -> String {
        format_hex(self)
    }
}

impl fmt::Display for RgbColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

impl std::str::FromStr for RgbColor {
    type Err = ParseColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hex(s)
    }
}

/// Error produced when a hex color string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid hex color `{input}`: expected #rgb or #rrggbb")]
pub struct ParseColorError {
    pub input: String,
}

/// Parses `#rgb` or `#rrggbb` (case-insensitive, `#` optional).
///
/// The 3-digit form expands each nibble, e.g. `#fa0` → `#ffaa00`.
pub fn parse_hex(text: &str) -> Result<RgbColor, ParseColorError> {
    let err = || ParseColorError {
        input: text.to_string(),
    };
    let digits = text.strip_prefix('#').unwrap_or(text);
    if !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(err());
    }
    let nibble = |b: u8| -> u8 {
        match b {
            b'0'..=b'9' => b - b'0',
            b'a'..=b'f' => b - b'a' + 10,
            b'A'..=b'F' => b - b'A' + 10,
            _ => unreachable!("checked hexdigit"),
        }
    };
    let d = digits.as_bytes();
    match d.len() {
        3 => Ok(RgbColor::new(
            nibble(d[0]) * 17,
            nibble(d[1]) * 17,
            nibble(d[2]) * 17,
        )),
        6 => Ok(RgbColor::new(
            nibble(d[0]) * 16 + nibble(d[1]),
            nibble(d[2]) * 16 + nibble(d[3]),
            nibble(d[4]) * 16 + nibble(d[5]),
        )),
        _ => Err(err()),
    }
}

/// Formats a color as lowercase `#rrggbb`; inverse of [`parse_hex`] on its output.
pub fn format_hex(c: RgbColor) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_six_digit_hex() {
        assert_eq!(parse_hex("#ffffff").unwrap(), RgbColor::new(255, 255, 255));
        assert_eq!(parse_hex("#7e7900").unwrap(), RgbColor::new(126, 121, 0));
        assert_eq!(parse_hex("#000000").unwrap(), RgbColor::new(0, 0, 0));
    }

    #[test]
    fn parses_three_digit_hex_by_nibble_expansion() {
        assert_eq!(parse_hex("#fa0").unwrap(), RgbColor::new(255, 170, 0));
        assert_eq!(parse_hex("#fff").unwrap(), RgbColor::new(255, 255, 255));
    }

    #[test]
    fn accepts_missing_hash_and_uppercase() {
        assert_eq!(parse_hex("7E7900").unwrap(), RgbColor::new(126, 121, 0));
        assert_eq!(parse_hex("FA0").unwrap(), RgbColor::new(255, 170, 0));
    }

    #[test]
    fn rejects_malformed_input_naming_the_string() {
        for bad in ["zzz", "#12345", "", "#", "#ggg", "#1234567", "not a color"] {
            let err = parse_hex(bad).unwrap_err();
            assert_eq!(err.input, bad);
            assert!(err.to_string().contains(bad));
        }
    }

    #[test]
    fn formats_lowercase_six_digit() {
        assert_eq!(format_hex(RgbColor::new(255, 255, 0)), "#ffff00");
        assert_eq!(format_hex(RgbColor::new(0, 0, 0)), "#000000");
        assert_eq!(format_hex(RgbColor::new(117, 117, 117)), "#757575");
    }

    #[test]
    fn hex_round_trip_is_lossless() {
        for v in [0u8, 1, 17, 99, 128, 200, 254, 255] {
            let c = RgbColor::new(v, v.wrapping_mul(3), v ^ 0x5a);
            assert_eq!(parse_hex(&format_hex(c)).unwrap(), c);
        }
    }
}
