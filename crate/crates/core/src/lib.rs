//! Hue-preserving WCAG contrast correction in the OKLCH color space.
//!
//! The crate fixes inaccessible text/background color pairs by adjusting the
//! text color's lightness and chroma while leaving its hue untouched, so the
//! corrected color keeps its identity ("yellow stays yellow"). Three modes
//! trade perceptual fidelity against success rate:
//!
//! - mode 0 (strict): single-shot optimization, total change capped at
//!   ΔE2000 ≤ 5.0
//! - mode 1 (recursive, the default): compounds steps of ΔE ≤ 3.0 for up to
//!   10 iterations, re-anchoring the budget at each step
//! - mode 2 (relaxed): extends the recursion to 15 iterations and races it
//!   against a single shot with budget up to ΔE ≤ 15.0
//!
//! Supporting machinery: bidirectional sRGB ↔ OKLCH conversion with explicit
//! gamut handling, WCAG 2.1 contrast metrics, CIEDE2000 perceptual distance,
//! a deterministic generator of realistic web color pairs, and a benchmark
//! harness that aggregates per-mode success and ΔE statistics.

pub mod dataset;
pub mod delta_e;
pub mod eval;
pub mod lab;
pub mod oklch;
pub mod optimizer;
pub mod rgb;
pub mod rng;
pub mod wcag;

pub use dataset::{gen_dataset, Category, ColorPair, EdgeCase};
pub use delta_e::delta_e_2000;
pub use eval::{run_benchmark, BenchmarkReport, CategoryStats, ReportFormat};
pub use oklch::{in_gamut, oklch_to_rgb, rgb_to_oklch, GamutStatus, OklchColor};
pub use optimizer::{make_readable, FixResult, Mode, ModeConfig};
pub use rgb::{format_hex, parse_hex, ParseColorError, RgbColor};
pub use wcag::{contrast_ratio, passes, relative_luminance, SizeClass, WcagLevel, WcagTarget};
