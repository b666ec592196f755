//! WCAG 2.1 relative luminance, contrast ratio and compliance predicates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rgb::RgbColor;

/// WCAG conformance level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WcagLevel {
    Aa,
    Aaa,
}

/// Text size class; large text has a lower required ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Normal,
    Large,
}

/// A compliance target: level plus text size, yielding the required ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WcagTarget {
    pub level: WcagLevel,
    pub size: SizeClass,
}

impl WcagTarget {
    pub const AA_NORMAL: WcagTarget = WcagTarget {
        level: WcagLevel::Aa,
        size: SizeClass::Normal,
    };

    pub fn new(level: WcagLevel, size: SizeClass) -> Self {
        Self { level, size }
    }

    /// The minimum contrast ratio this target demands.
    pub fn required_ratio(self) -> f64 {
        match (self.level, self.size) {
            (WcagLevel::Aa, SizeClass::Normal) => 4.5,
            (WcagLevel::Aa, SizeClass::Large) => 3.0,
            (WcagLevel::Aaa, SizeClass::Normal) => 7.0,
            (WcagLevel::Aaa, SizeClass::Large) => 4.5,
        }
    }
}

impl Default for WcagTarget {
    fn default() -> Self {
        Self::AA_NORMAL
    }
}

impl fmt::Display for WcagTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.level {
            WcagLevel::Aa => "AA",
            WcagLevel::Aaa => "AAA",
        };
        let size = match self.size {
            SizeClass::Normal => "normal",
            SizeClass::Large => "large",
        };
        write!(f, "{level}/{size} ({}:1)", self.required_ratio())
    }
}

fn linearize(channel: u8) -> f64 {
    crate::oklch::srgb_decode(channel as f64 / 255.0)
}

/// WCAG 2.1 relative luminance in [0, 1].
pub fn relative_luminance(c: RgbColor) -> f64 {
    0.2126 * linearize(c.r) + 0.7152 * linearize(c.g) + 0.0722 * linearize(c.b)
}

/// Contrast ratio between two colors: `(L_lighter + 0.05) / (L_darker + 0.05)`,
/// in [1, 21]. Symmetric in its arguments.
pub fn contrast_ratio(a: RgbColor, b: RgbColor) -> f64 {
    let la = relative_luminance(a);
    let lb = relative_luminance(b);
    contrast_ratio_from_luminance(la, lb)
}

/// Contrast ratio from two precomputed luminances.
pub(crate) fn contrast_ratio_from_luminance(la: f64, lb: f64) -> f64 {
    let (lighter, darker) = if la >= lb { (la, lb) } else { (lb, la) };
    (lighter + 0.05) / (darker + 0.05)
}

/// True iff `ratio` meets the target, with numerically exact `>=`.
pub fn passes(ratio: f64, target: WcagTarget) -> bool {
    ratio >= target.required_ratio()
}
