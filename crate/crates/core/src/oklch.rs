//! Bidirectional sRGB ↔ OKLCH conversion with explicit gamut handling.
//!
//! OKLCH is the cylindrical form of the Oklab color space (Ottosson 2020):
//! lightness `L`, chroma `C` and hue angle `h`. The conversion goes
//! sRGB bytes → linear RGB → LMS → Oklab → cylindrical and back. Colors that
//! have no sRGB representation are mapped back into gamut by reducing chroma
//! at fixed lightness and hue.

use serde::{Deserialize, Serialize};

use crate::rgb::RgbColor;

/// Chroma below which a color is treated as achromatic and its hue pinned to 0.
pub const ACHROMATIC_CHROMA: f64 = 1e-6;

/// Channel tolerance for the continuous in-gamut test, in linear RGB.
pub const GAMUT_EPSILON: f64 = 1e-6;

/// Bisection tolerance for gamut chroma clipping.
const CHROMA_CLIP_TOLERANCE: f64 = 1e-5;

/// A color in OKLCH coordinates: `l` in [0, 1], `c ≥ 0` (sRGB tops out
/// around 0.37), `h` in degrees [0, 360).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OklchColor {
    pub l: f64,
    pub c: f64,
    pub h: f64,
}

impl OklchColor {
    /// Builds a color with normalized coordinates: hue wrapped into
    /// [0, 360), negative chroma clamped to 0, and hue pinned to 0 when the
    /// color is achromatic (`c` < 1e-6).
    pub fn new(l: f64, c: f64, h: f64) -> Self {
        let c = c.max(0.0);
        let h = if c < ACHROMATIC_CHROMA {
            0.0
        } else {
            h.rem_euclid(360.0)
        };
        Self { l, c, h }
    }

    pub fn is_achromatic(&self) -> bool {
        self.c < ACHROMATIC_CHROMA
    }
}

/// Outcome of mapping an OKLCH color to sRGB.
///
/// `clipped_chroma` is the chroma actually used; it equals the requested
/// chroma when the color was representable as-is and is strictly smaller
/// when chroma clipping was needed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GamutStatus {
    pub in_gamut: bool,
    pub clipped_chroma: f64,
}

// sRGB transfer function (IEC 61966-2-1). The decode threshold 0.04045 is
// the standard's value; no 8-bit channel lands between 0.03928 and 0.04045,
// so the choice cannot change any result on byte inputs.
pub(crate) fn srgb_decode(v: f64) -> f64 {
    if v <= 0.04045 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

pub(crate) fn srgb_encode(v: f64) -> f64 {
    if v <= 0.0031308 {
        12.92 * v
    } else {
        1.055 * v.powf(1.0 / 2.4) - 0.055
    }
}

/// Linear sRGB → Oklab (Ottosson 2020 published matrices).
pub(crate) fn linear_srgb_to_oklab(r: f64, g: f64, b: f64) -> (f64, f64, f64) {
    let l = 0.4122214708 * r + 0.5363325363 * g + 0.0514459929 * b;
    let m = 0.2119034982 * r + 0.6806995451 * g + 0.1073969566 * b;
    let s = 0.0883024619 * r + 0.2817188376 * g + 0.6299787005 * b;

    let l_ = l.cbrt();
    let m_ = m.cbrt();
    let s_ = s.cbrt();

    (
        0.2104542553 * l_ + 0.7936177850 * m_ - 0.0040720468 * s_,
        1.9779984951 * l_ - 2.4285922050 * m_ + 0.4505937099 * s_,
        0.0259040371 * l_ + 0.7827717662 * m_ - 0.8086757660 * s_,
    )
}

/// Oklab → linear sRGB (inverse Ottosson matrices). Output channels may
/// fall outside [0, 1] for out-of-gamut inputs.
pub(crate) fn oklab_to_linear_srgb(l: f64, a: f64, b: f64) -> (f64, f64, f64) {
    let l_ = l + 0.3963377774 * a + 0.2158037573 * b;
    let m_ = l - 0.1055613458 * a - 0.0638541728 * b;
    let s_ = l - 0.0894841775 * a - 1.2914855480 * b;

    let l3 = l_ * l_ * l_;
    let m3 = m_ * m_ * m_;
    let s3 = s_ * s_ * s_;

    (
        4.0767416621 * l3 - 3.3077115913 * m3 + 0.2309699292 * s3,
        -1.2684380046 * l3 + 2.6097574011 * m3 - 0.3413193965 * s3,
        -0.0041960863 * l3 - 0.7034186147 * m3 + 1.7076147010 * s3,
    )
}

/// Converts an 8-bit sRGB color to OKLCH.
pub fn rgb_to_oklch(c: RgbColor) -> OklchColor {
    let r = srgb_decode(c.r as f64 / 255.0);
    let g = srgb_decode(c.g as f64 / 255.0);
    let b = srgb_decode(c.b as f64 / 255.0);
    let (l, a, bb) = linear_srgb_to_oklab(r, g, b);
    let chroma = (a * a + bb * bb).sqrt();
    let hue = bb.atan2(a).to_degrees();
    OklchColor::new(l, chroma, hue)
}

fn oklch_to_linear(c: OklchColor) -> (f64, f64, f64) {
    let h_rad = c.h.to_radians();
    let a = c.c * h_rad.cos();
    let b = c.c * h_rad.sin();
    oklab_to_linear_srgb(c.l, a, b)
}

fn linear_in_gamut(r: f64, g: f64, b: f64) -> bool {
    let lo = -GAMUT_EPSILON;
    let hi = 1.0 + GAMUT_EPSILON;
    r >= lo && r <= hi && g >= lo && g <= hi && b >= lo && b <= hi
}

/// True iff the continuous sRGB image of `c` lies within the unit cube,
/// to a per-channel tolerance of 1e-6 (checked in linear RGB).
pub fn in_gamut(c: OklchColor) -> bool {
    let (r, g, b) = oklch_to_linear(c);
    linear_in_gamut(r, g, b)
}

/// Round-half-away-from-zero quantization of a [0, 1] channel to 8 bits.
fn quantize_channel(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Continuous sRGB image of an OKLCH color after gamut handling: encoded
/// (gamma-compressed) channels in [0, 1] plus the chroma actually used.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ContinuousSrgb {
    pub encoded: [f64; 3],
    pub clipped_chroma: f64,
    pub in_gamut: bool,
}

impl ContinuousSrgb {
    pub fn quantize(&self) -> RgbColor {
        RgbColor::new(
            quantize_channel(self.encoded[0]),
            quantize_channel(self.encoded[1]),
            quantize_channel(self.encoded[2]),
        )
    }
}

pub(crate) fn oklch_to_continuous(c: OklchColor) -> ContinuousSrgb {
    let (r, g, b) = oklch_to_linear(c);
    if linear_in_gamut(r, g, b) {
        return ContinuousSrgb {
            encoded: encode_clamped(r, g, b),
            clipped_chroma: c.c,
            in_gamut: true,
        };
    }
    let clipped = clip_chroma(c);
    let (r, g, b) = oklch_to_linear(OklchColor { c: clipped, ..c });
    ContinuousSrgb {
        encoded: encode_clamped(r, g, b),
        clipped_chroma: clipped,
        in_gamut: false,
    }
}

fn encode_clamped(r: f64, g: f64, b: f64) -> [f64; 3] {
    [
        srgb_encode(r.clamp(0.0, 1.0)),
        srgb_encode(g.clamp(0.0, 1.0)),
        srgb_encode(b.clamp(0.0, 1.0)),
    ]
}

/// Largest chroma `c' ∈ [0, c.c]` such that `(l, c', h)` is in gamut, found
/// by bisection to a tolerance of 1e-5. Lightness and hue are untouched.
pub fn clip_chroma(c: OklchColor) -> f64 {
    if in_gamut(c) {
        return c.c;
    }
    let mut lo = 0.0_f64; // in gamut for any l in [0, 1]
    let mut hi = c.c;
    while hi - lo > CHROMA_CLIP_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if in_gamut(OklchColor { c: mid, ..c }) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Converts OKLCH to 8-bit sRGB, reporting how gamut was handled.
///
/// In-gamut colors quantize directly. Out-of-gamut colors are chroma-clipped
/// (lightness and hue preserved) before quantization; the status carries the
/// chroma that was actually used.
pub fn oklch_to_rgb(c: OklchColor) -> (RgbColor, GamutStatus) {
    let cont = oklch_to_continuous(c);
    (
        cont.quantize(),
        GamutStatus {
            in_gamut: cont.in_gamut,
            clipped_chroma: cont.clipped_chroma,
        },
    )
}
