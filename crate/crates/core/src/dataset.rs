//! Deterministic generation of realistic web color pairs.
//!
//! Pairs are sampled in OKLCH space from weighted category parameter ranges
//! (brand colors, dark/light UI, accents, pastels) plus a fixed share of
//! known failure-prone edge scenarios, then converted to sRGB with gamut
//! enforcement. Every pair draws from its own RNG sub-stream keyed by
//! (seed, index), so output is byte-stable and insensitive to category
//! changes elsewhere in the set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oklch::{oklch_to_rgb, OklchColor};
use crate::rgb::RgbColor;
use crate::rng::SplitMix64;
use crate::wcag::contrast_ratio;

/// The six named failure-prone edge scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeCase {
    BrightYellowOnWhite,
    PureBlueOnBlack,
    MidGrayOnGray,
    NeonPinkOnDarkPurple,
    RedOnGreen,
    OrangeOnYellow,
}

impl EdgeCase {
    pub const ALL: [EdgeCase; 6] = [
        EdgeCase::BrightYellowOnWhite,
        EdgeCase::PureBlueOnBlack,
        EdgeCase::MidGrayOnGray,
        EdgeCase::NeonPinkOnDarkPurple,
        EdgeCase::RedOnGreen,
        EdgeCase::OrangeOnYellow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgeCase::BrightYellowOnWhite => "bright_yellow_on_white",
            EdgeCase::PureBlueOnBlack => "pure_blue_on_black",
            EdgeCase::MidGrayOnGray => "mid_gray_on_gray",
            EdgeCase::NeonPinkOnDarkPurple => "neon_pink_on_dark_purple",
            EdgeCase::RedOnGreen => "red_on_green",
            EdgeCase::OrangeOnYellow => "orange_on_yellow",
        }
    }
}

/// Pair category: one of the five weighted families or a named edge case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    BrandPrimary,
    DarkUi,
    LightUi,
    Accent,
    Pastel,
    Edge(EdgeCase),
}

impl Category {
    /// Canonical report order: weighted categories, then edge cases.
    pub const ALL: [Category; 11] = [
        Category::BrandPrimary,
        Category::DarkUi,
        Category::LightUi,
        Category::Accent,
        Category::Pastel,
        Category::Edge(EdgeCase::BrightYellowOnWhite),
        Category::Edge(EdgeCase::PureBlueOnBlack),
        Category::Edge(EdgeCase::MidGrayOnGray),
        Category::Edge(EdgeCase::NeonPinkOnDarkPurple),
        Category::Edge(EdgeCase::RedOnGreen),
        Category::Edge(EdgeCase::OrangeOnYellow),
    ];

    pub fn is_edge(self) -> bool {
        matches!(self, Category::Edge(_))
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::BrandPrimary => f.write_str("brand_primary"),
            Category::DarkUi => f.write_str("dark_ui"),
            Category::LightUi => f.write_str("light_ui"),
            Category::Accent => f.write_str("accent"),
            Category::Pastel => f.write_str("pastel"),
            Category::Edge(e) => write!(f, "edge:{}", e.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown category `{0}`")]
pub struct ParseCategoryError(String);

impl FromStr for Category {
    type Err = ParseCategoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for cat in Category::ALL {
            if cat.to_string() == s {
                return Ok(cat);
            }
        }
        Err(ParseCategoryError(s.to_string()))
    }
}

impl Serialize for Category {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A generated text/background pair with its category and cached initial
/// contrast ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorPair {
    pub text: RgbColor,
    pub bg: RgbColor,
    pub category: Category,
    pub initial_ratio: f64,
}

/// How a hue gets drawn for one side of a pair.
#[derive(Debug, Clone, Copy)]
pub enum HuePolicy {
    /// Global web-palette distribution (see [`HUE_FAMILIES`]).
    Weighted,
    /// Uniform within a fixed band, degrees.
    Band(f64, f64),
}

/// How the text lightness gets drawn.
#[derive(Debug, Clone, Copy)]
enum LightnessPolicy {
    /// Uniform in an absolute range.
    Absolute(f64, f64),
    /// Background lightness plus a uniform offset — used by edge scenarios
    /// whose character is "almost the same lightness as the background".
    OffsetFromBg(f64, f64),
}

/// Sampling ranges for one category. All OKLCH coordinates; chroma requests
/// beyond the sRGB gamut are clipped during conversion.
#[derive(Debug, Clone, Copy)]
pub struct CategorySpec {
    pub category: Category,
    /// Fraction of the weighted (non-edge) portion; 0 for edge scenarios.
    pub weight: f64,
    text_l: LightnessPolicy,
    text_c: (f64, f64),
    text_hue: HuePolicy,
    bg_l: (f64, f64),
    bg_c: (f64, f64),
    bg_hue: HuePolicy,
}

/// Hue families with weights and OKLCH-degree bands. Blue dominates at 25%,
/// red and green take 15% each; the remaining 45% is split across orange,
/// yellow, purple, pink (10% each) and cyan (5%).
pub const HUE_FAMILIES: [(&str, f64, f64, f64); 8] = [
    ("red", 0.15, 15.0, 45.0),
    ("orange", 0.10, 45.0, 75.0),
    ("yellow", 0.10, 90.0, 120.0),
    ("green", 0.15, 130.0, 165.0),
    ("cyan", 0.05, 180.0, 215.0),
    ("blue", 0.25, 230.0, 275.0),
    ("purple", 0.10, 290.0, 325.0),
    ("pink", 0.10, 330.0, 360.0),
];

/// The versioned sampling configuration for every category. Brand text
/// ranges follow the documented brand-color conventions; the rest are tuned so
/// well-designed UI pairs start mostly compliant while brand, accent and
/// edge pairs exercise the optimizer.
pub const CATEGORY_SPECS: [CategorySpec; 11] = [
    CategorySpec {
        category: Category::BrandPrimary,
        weight: 0.30,
        text_l: LightnessPolicy::Absolute(0.45, 0.65),
        text_c: (0.15, 0.35),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.85, 0.97),
        bg_c: (0.0, 0.04),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::DarkUi,
        weight: 0.25,
        text_l: LightnessPolicy::Absolute(0.80, 0.97),
        text_c: (0.0, 0.10),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.10, 0.25),
        bg_c: (0.0, 0.08),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::LightUi,
        weight: 0.25,
        text_l: LightnessPolicy::Absolute(0.15, 0.35),
        text_c: (0.0, 0.08),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.90, 0.99),
        bg_c: (0.0, 0.04),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Accent,
        weight: 0.10,
        text_l: LightnessPolicy::Absolute(0.55, 0.75),
        text_c: (0.20, 0.37),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.90, 0.99),
        bg_c: (0.0, 0.03),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Pastel,
        weight: 0.10,
        text_l: LightnessPolicy::Absolute(0.20, 0.40),
        text_c: (0.03, 0.12),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.80, 0.95),
        bg_c: (0.03, 0.10),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::BrightYellowOnWhite),
        weight: 0.0,
        text_l: LightnessPolicy::Absolute(0.93, 0.975),
        text_c: (0.17, 0.22),
        text_hue: HuePolicy::Band(100.0, 115.0),
        bg_l: (0.985, 1.0),
        bg_c: (0.0, 0.01),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::PureBlueOnBlack),
        weight: 0.0,
        text_l: LightnessPolicy::Absolute(0.35, 0.50),
        text_c: (0.24, 0.31),
        text_hue: HuePolicy::Band(250.0, 268.0),
        bg_l: (0.0, 0.10),
        bg_c: (0.0, 0.02),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::MidGrayOnGray),
        weight: 0.0,
        text_l: LightnessPolicy::OffsetFromBg(-0.06, 0.06),
        text_c: (0.0, 0.04),
        text_hue: HuePolicy::Weighted,
        bg_l: (0.46, 0.62),
        bg_c: (0.0, 0.04),
        bg_hue: HuePolicy::Weighted,
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::NeonPinkOnDarkPurple),
        weight: 0.0,
        text_l: LightnessPolicy::Absolute(0.68, 0.78),
        text_c: (0.22, 0.30),
        text_hue: HuePolicy::Band(330.0, 355.0),
        bg_l: (0.12, 0.22),
        bg_c: (0.06, 0.14),
        bg_hue: HuePolicy::Band(290.0, 325.0),
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::RedOnGreen),
        weight: 0.0,
        text_l: LightnessPolicy::OffsetFromBg(-0.07, 0.0),
        text_c: (0.16, 0.24),
        text_hue: HuePolicy::Band(20.0, 40.0),
        bg_l: (0.58, 0.68),
        bg_c: (0.12, 0.20),
        bg_hue: HuePolicy::Band(135.0, 160.0),
    },
    CategorySpec {
        category: Category::Edge(EdgeCase::OrangeOnYellow),
        weight: 0.0,
        text_l: LightnessPolicy::Absolute(0.70, 0.80),
        text_c: (0.12, 0.18),
        text_hue: HuePolicy::Band(50.0, 70.0),
        bg_l: (0.90, 0.97),
        bg_c: (0.10, 0.15),
        bg_hue: HuePolicy::Band(95.0, 115.0),
    },
];

pub fn spec_for(category: Category) -> &'static CategorySpec {
    CATEGORY_SPECS
        .iter()
        .find(|s| s.category == category)
        .expect("every category has a spec")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("invalid pair count {0}: must be positive")]
    InvalidCount(usize),
}

/// Draws a hue from the global family distribution: pick a family by
/// weight, then uniform within its band.
pub fn sample_hue(rng: &mut SplitMix64) -> f64 {
    let u = rng.next_f64();
    let mut acc = 0.0;
    for &(_, weight, lo, hi) in &HUE_FAMILIES {
        acc += weight;
        if u < acc {
            return rng.gen_range(lo, hi);
        }
    }
    // weights sum to 1; float dust can leave u marginally above
    let (_, _, lo, hi) = HUE_FAMILIES[HUE_FAMILIES.len() - 1];
    rng.gen_range(lo, hi)
}

fn sample_hue_policy(policy: HuePolicy, rng: &mut SplitMix64) -> f64 {
    match policy {
        HuePolicy::Weighted => sample_hue(rng),
        HuePolicy::Band(lo, hi) => rng.gen_range(lo, hi),
    }
}

/// Generates one pair from a category spec. Draw order is fixed
/// (background first, then text) so streams stay reproducible.
pub fn gen_pair(spec: &CategorySpec, rng: &mut SplitMix64) -> ColorPair {
    let bg_h = sample_hue_policy(spec.bg_hue, rng);
    let bg_l = rng.gen_range(spec.bg_l.0, spec.bg_l.1);
    let bg_c = rng.gen_range(spec.bg_c.0, spec.bg_c.1);
    let (bg, _) = oklch_to_rgb(OklchColor::new(bg_l, bg_c, bg_h));

    let text_h = sample_hue_policy(spec.text_hue, rng);
    let text_l = match spec.text_l {
        LightnessPolicy::Absolute(lo, hi) => rng.gen_range(lo, hi),
        LightnessPolicy::OffsetFromBg(lo, hi) => (bg_l + rng.gen_range(lo, hi)).clamp(0.0, 1.0),
    };
    let text_c = rng.gen_range(spec.text_c.0, spec.text_c.1);
    let (text, _) = oklch_to_rgb(OklchColor::new(text_l, text_c, text_h));

    ColorPair {
        text,
        bg,
        category: spec.category,
        initial_ratio: contrast_ratio(text, bg),
    }
}

/// Exact per-category pair counts for a dataset of `count` pairs: 10% edge
/// cases split evenly across the six scenarios, the rest shared among the
/// weighted categories by largest-remainder apportionment.
pub fn composition(count: usize) -> Vec<(Category, usize)> {
    let edge_total = (count + 5) / 10;
    let weighted_total = count - edge_total;

    let weighted: Vec<&CategorySpec> = CATEGORY_SPECS.iter().filter(|s| s.weight > 0.0).collect();
    let mut counts: Vec<(Category, usize)> = Vec::new();
    let mut remainders: Vec<(usize, f64)> = Vec::new();
    let mut assigned = 0;
    for (i, spec) in weighted.iter().enumerate() {
        let exact = spec.weight * weighted_total as f64;
        let floor = exact.floor() as usize;
        assigned += floor;
        counts.push((spec.category, floor));
        remainders.push((i, exact - floor as f64));
    }
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut leftover = weighted_total - assigned;
    for (i, _) in remainders {
        if leftover == 0 {
            break;
        }
        counts[i].1 += 1;
        leftover -= 1;
    }

    let base = edge_total / 6;
    let extra = edge_total % 6;
    for (i, edge) in EdgeCase::ALL.iter().enumerate() {
        counts.push((Category::Edge(*edge), base + usize::from(i < extra)));
    }
    counts
}

/// Generates `count` pairs deterministically for `seed`. Pair `i` always
/// consumes RNG stream `(seed, i)`, so two runs with the same arguments are
/// byte-identical.
pub fn gen_dataset(seed: u64, count: usize) -> Result<Vec<ColorPair>, DatasetError> {
    if count == 0 {
        return Err(DatasetError::InvalidCount(count));
    }
    let mut pairs = Vec::with_capacity(count);
    let mut index: u64 = 0;
    for (category, n) in composition(count) {
        let spec = spec_for(category);
        for _ in 0..n {
            let mut rng = SplitMix64::stream(seed, index);
            pairs.push(gen_pair(spec, &mut rng));
            index += 1;
        }
    }
    Ok(pairs)
}

/// Serialized form of one dataset row; the schema for both export formats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub index: usize,
    pub category: Category,
    pub text_hex: String,
    pub bg_hex: String,
    pub initial_ratio: f64,
}

impl DatasetRecord {
    pub fn from_pair(index: usize, pair: &ColorPair) -> Self {
        Self {
            index,
            category: pair.category,
            text_hex: pair.text.to_hex(),
            bg_hex: pair.bg.to_hex(),
            initial_ratio: pair.initial_ratio,
        }
    }
}

/// CSV export: header `index,category,text_hex,bg_hex,initial_ratio`, one
/// row per pair, ratios printed with six decimals.
pub fn dataset_to_csv(pairs: &[ColorPair]) -> String {
    let mut out = String::from("index,category,text_hex,bg_hex,initial_ratio\n");
    for (i, p) in pairs.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{:.6}\n",
            i,
            p.category,
            p.text.to_hex(),
            p.bg.to_hex(),
            p.initial_ratio
        ));
    }
    out
}

/// JSON-lines export: one [`DatasetRecord`] object per line.
pub fn dataset_to_jsonl(pairs: &[ColorPair]) -> String {
    let mut out = String::new();
    for (i, p) in pairs.iter().enumerate() {
        let record = DatasetRecord::from_pair(i, p);
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}
