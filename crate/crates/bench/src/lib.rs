//! Shared fixtures for the pipeline benchmarks.

use huefix_core::dataset::{gen_dataset, ColorPair};
use huefix_core::rgb::{parse_hex, RgbColor};

pub fn hex(s: &str) -> RgbColor {
    parse_hex(s).expect("valid fixture hex")
}

/// Pairs spanning the interesting regimes: already compliant, near miss,
/// deep recursive fix, and the pathological yellow-on-white.
pub fn fixture_pairs() -> Vec<(&'static str, RgbColor, RgbColor)> {
    vec![
        ("compliant", hex("#111111"), hex("#ffffff")),
        ("near_miss_gray", hex("#777777"), hex("#ffffff")),
        ("blue_on_black", hex("#0033ff"), hex("#040404")),
        ("yellow_on_white", hex("#ffff00"), hex("#ffffff")),
    ]
}

pub fn desk_dataset() -> Vec<ColorPair> {
    gen_dataset(45, 200).expect("dataset generates")
}
