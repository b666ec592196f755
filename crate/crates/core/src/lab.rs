//! CIELAB coordinates (D65, 2° observer), the input space for CIEDE2000.

use crate::oklch::srgb_decode;
use crate::rgb::RgbColor;

/// A color in CIELAB: `l` in [0, 100], `a`/`b` roughly ±128.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lab {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

// D65 white point, matching sRGB.
const XN: f64 = 0.95047;
const YN: f64 = 1.0;
const ZN: f64 = 1.08883;

fn lab_f(t: f64) -> f64 {
    const DELTA: f64 = 6.0 / 29.0;
    if t > DELTA * DELTA * DELTA {
        t.cbrt()
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

/// Converts an 8-bit sRGB color to CIELAB via XYZ (D65).
pub fn rgb_to_lab(c: RgbColor) -> Lab {
    let r = srgb_decode(c.r as f64 / 255.0);
    let g = srgb_decode(c.g as f64 / 255.0);
    let b = srgb_decode(c.b as f64 / 255.0);

    let x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    let z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

    let fx = lab_f(x / XN);
    let fy = lab_f(y / YN);
    let fz = lab_f(z / ZN);

    Lab {
        l: 116.0 * fy - 16.0,
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_is_l100() {
        let lab = rgb_to_lab(RgbColor::new(255, 255, 255));
        assert!((lab.l - 100.0).abs() < 0.01, "L* = {}", lab.l);
        assert!(lab.a.abs() < 0.01);
        assert!(lab.b.abs() < 0.01);
    }

    #[test]
    fn black_is_l0() {
        let lab = rgb_to_lab(RgbColor::new(0, 0, 0));
        assert!(lab.l.abs() < 1e-9);
        assert!(lab.a.abs() < 1e-9);
        assert!(lab.b.abs() < 1e-9);
    }

    #[test]
    fn grays_are_neutral() {
        for v in [32u8, 119, 200] {
            let lab = rgb_to_lab(RgbColor::new(v, v, v));
            assert!(lab.a.abs() < 0.01, "gray {v} a* = {}", lab.a);
            assert!(lab.b.abs() < 0.01, "gray {v} b* = {}", lab.b);
        }
    }

    #[test]
    fn yellow_is_bright_and_strongly_positive_b() {
        let lab = rgb_to_lab(RgbColor::new(255, 255, 0));
        assert!((lab.l - 97.14).abs() < 0.1, "L* = {}", lab.l);
        assert!(lab.b > 90.0, "b* = {}", lab.b);
        assert!(lab.a < 0.0, "a* = {}", lab.a);
    }
}
