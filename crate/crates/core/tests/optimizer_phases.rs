//! Interaction between the two search primitives on generated data: the
//! gradient phase must rescue at least some pairs that pure lightness
//! bisection cannot fix within the same budget.

use huefix_core::dataset::gen_dataset;
use huefix_core::delta_e::delta_e_2000;
use huefix_core::oklch::rgb_to_oklch;
use huefix_core::optimizer::{binary_search_lightness, gradient_refine};
use huefix_core::wcag::WcagTarget;

#[test]
fn gradient_rescues_pairs_bisection_cannot_fix() {
    let pairs = gen_dataset(45, 10_000).unwrap();
    let aa = WcagTarget::AA_NORMAL;
    let budget = 5.0;
    let mut rescue = None;
    for pair in &pairs {
        let reference = rgb_to_oklch(pair.text);
        if binary_search_lightness(reference, pair.bg, aa, budget, pair.text).is_some() {
            continue;
        }
        if let Some(cand) = gradient_refine(reference, pair.bg, aa, budget, pair.text) {
            rescue = Some((pair, cand));
            break;
        }
    }
    let (pair, cand) = rescue.expect("no pair in 10,000 where only the gradient phase succeeds");
    assert!(cand.ratio >= 4.5);
    assert!(cand.delta_e <= budget);
    assert!(delta_e_2000(pair.text, cand.rgb) <= budget + 1e-9);
    // joint (L, C) movement, not a pure lightness move
    let reference = rgb_to_oklch(pair.text);
    assert!(
        (cand.oklch.c - reference.c).abs() > 1e-4,
        "rescue should involve chroma motion, got ΔC = {}",
        (cand.oklch.c - reference.c).abs()
    );
}
