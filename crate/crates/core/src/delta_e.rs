//! CIEDE2000 color difference (ΔE2000).
//!
//! Implements the CIE formula with the full branch structure from Sharma,
//! Wu & Dalal, "The CIEDE2000 Color-Difference Formula: Implementation
//! Notes, Supplementary Test Data, and Mathematical Observations" (2005),
//! with parametric factors kL = kC = kH = 1. Values below 2.0 are generally
//! imperceptible. Note ΔE2000 is not a metric: it is symmetric and zero on
//! identical inputs, but the triangle inequality can fail.

use crate::lab::{rgb_to_lab, Lab};
use crate::rgb::RgbColor;

/// ΔE2000 between two 8-bit sRGB colors (via CIELAB, D65).
pub fn delta_e_2000(a: RgbColor, b: RgbColor) -> f64 {
    delta_e_2000_lab(rgb_to_lab(a), rgb_to_lab(b))
}

/// ΔE2000 between two CIELAB colors.
pub fn delta_e_2000_lab(c1: Lab, c2: Lab) -> f64 {
    const POW7_25: f64 = 6103515625.0; // 25^7

    let chroma1 = (c1.a * c1.a + c1.b * c1.b).sqrt();
    let chroma2 = (c2.a * c2.a + c2.b * c2.b).sqrt();
    let chroma_bar = 0.5 * (chroma1 + chroma2);

    let cb7 = chroma_bar.powi(7);
    let g = 0.5 * (1.0 - (cb7 / (cb7 + POW7_25)).sqrt());

    let a1p = (1.0 + g) * c1.a;
    let a2p = (1.0 + g) * c2.a;
    let c1p = (a1p * a1p + c1.b * c1.b).sqrt();
    let c2p = (a2p * a2p + c2.b * c2.b).sqrt();

    let h1p = hue_prime(c1.b, a1p);
    let h2p = hue_prime(c2.b, a2p);

    let delta_lp = c2.l - c1.l;
    let delta_cp = c2p - c1p;

    let chroma_product = c1p * c2p;
    let delta_hp_angle = if chroma_product == 0.0 {
        0.0
    } else {
        let diff = h2p - h1p;
        if diff.abs() <= 180.0 {
            diff
        } else if diff > 180.0 {
            diff - 360.0
        } else {
            diff + 360.0
        }
    };
    let delta_hp = 2.0 * chroma_product.sqrt() * (delta_hp_angle.to_radians() / 2.0).sin();

    let l_bar = 0.5 * (c1.l + c2.l);
    let cp_bar = 0.5 * (c1p + c2p);

    let hp_bar = if chroma_product == 0.0 {
        h1p + h2p
    } else {
        let sum = h1p + h2p;
        if (h1p - h2p).abs() <= 180.0 {
            0.5 * sum
        } else if sum < 360.0 {
            0.5 * (sum + 360.0)
        } else {
            0.5 * (sum - 360.0)
        }
    };

    let t = 1.0 - 0.17 * (hp_bar - 30.0).to_radians().cos()
        + 0.24 * (2.0 * hp_bar).to_radians().cos()
        + 0.32 * (3.0 * hp_bar + 6.0).to_radians().cos()
        - 0.20 * (4.0 * hp_bar - 63.0).to_radians().cos();

    let l_bar_sq = (l_bar - 50.0) * (l_bar - 50.0);
    let s_l = 1.0 + 0.015 * l_bar_sq / (20.0 + l_bar_sq).sqrt();
    let s_c = 1.0 + 0.045 * cp_bar;
    let s_h = 1.0 + 0.015 * cp_bar * t;

    let delta_theta = 30.0 * (-((hp_bar - 275.0) / 25.0).powi(2)).exp();
    let cpb7 = cp_bar.powi(7);
    let r_c = 2.0 * (cpb7 / (cpb7 + POW7_25)).sqrt();
    let r_t = -r_c * (2.0 * delta_theta).to_radians().sin();

    let term_l = delta_lp / s_l;
    let term_c = delta_cp / s_c;
    let term_h = delta_hp / s_h;

    (term_l * term_l + term_c * term_c + term_h * term_h + r_t * term_c * term_h).sqrt()
}

fn hue_prime(b: f64, a_prime: f64) -> f64 {
    if b == 0.0 && a_prime == 0.0 {
        return 0.0;
    }
    let deg = b.atan2(a_prime).to_degrees();
    if deg < 0.0 {
        deg + 360.0
    } else {
        deg
    }
}
