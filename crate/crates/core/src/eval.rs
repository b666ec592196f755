//! Benchmark harness: runs a mode over a dataset and aggregates success
//! rates, ΔE2000 distribution, per-category breakdowns and runtime.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{Category, ColorPair};
use crate::optimizer::{make_readable, FixResult, Mode, ModeConfig};
use crate::wcag::WcagTarget;

/// Contrast ratio above which a pair counts as "reasonable": pairs starting
/// at or below 2.0 are near-identical colors that may be impossible to fix
/// inside the sRGB gamut without touching hue.
pub const REASONABLE_RATIO: f64 = 2.0;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("empty input: percentile of no values")]
    EmptyInput,
    #[error("report I/O failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Per-category aggregation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryStats {
    pub category: Category,
    pub pair_count: usize,
    pub success_rate: f64,
    /// Mean ΔE2000 over pairs whose color actually changed; 0 when none did.
    pub mean_delta_e_modified: f64,
}

/// A failing pair that the mode was expected to handle: non-edge category
/// or initial ratio above the reasonable threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureCase {
    pub index: usize,
    pub category: Category,
    pub text_hex: String,
    pub bg_hex: String,
    pub initial_ratio: f64,
    pub achieved_ratio: f64,
}

/// Aggregate results of one mode over one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub mode: Mode,
    pub total_pairs: usize,
    pub success_rate_all: f64,
    /// Success over pairs with initial ρ > 2.0 (1.0 when none exist).
    pub success_rate_reasonable: f64,
    pub reasonable_pairs: usize,
    /// ΔE statistics over *all* pairs, zero-change compliant ones included.
    pub delta_e_median: f64,
    pub delta_e_p90: f64,
    pub delta_e_max: f64,
    pub fraction_under_2: f64,
    pub per_category: Vec<CategoryStats>,
    /// Wall-clock time spent inside the optimizer, summed over pairs.
    pub total_runtime_ns: u64,
    pub per_pair_runtime_ns: f64,
    /// Failures on pairs that are neither edge cases nor unreasonable
    /// (initial ρ > 2.0 and a weighted category). Expected empty for the
    /// recursive modes; populated for inspection when not.
    pub unexpected_failures: Vec<FailureCase>,
}

/// A report plus the raw per-pair results it was computed from.
#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    pub report: BenchmarkReport,
    pub results: Vec<FixResult>,
}

/// Nearest-rank percentile: the value at 1-indexed rank ⌈p·n⌉ of the sorted
/// list (a small epsilon guards the ceiling against float dust).
pub fn percentile(values: &[f64], p: f64) -> Result<f64, EvalError> {
    if values.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    if p <= 0.0 {
        return Ok(sorted[0]);
    }
    let rank = (p * sorted.len() as f64 - 1e-9).ceil() as usize;
    let rank = rank.clamp(1, sorted.len());
    Ok(sorted[rank - 1])
}

/// Runs `make_readable` over every pair, timing only the optimizer calls,
/// and returns both the aggregate report and the per-pair results.
pub fn run_benchmark_detailed(
    pairs: &[ColorPair],
    config: &ModeConfig,
    target: WcagTarget,
) -> BenchmarkRun {
    assert!(!pairs.is_empty(), "benchmark needs at least one pair");
    let mut results = Vec::with_capacity(pairs.len());
    let mut total_runtime_ns: u64 = 0;
    for pair in pairs {
        let started = Instant::now();
        let result = make_readable(pair.text, pair.bg, config, target);
        total_runtime_ns += started.elapsed().as_nanos() as u64;
        results.push(result);
    }
    let report = aggregate(pairs, &results, config.mode, total_runtime_ns);
    BenchmarkRun { report, results }
}

/// Runs `make_readable` over every pair and aggregates the report.
pub fn run_benchmark(
    pairs: &[ColorPair],
    config: &ModeConfig,
    target: WcagTarget,
) -> BenchmarkReport {
    run_benchmark_detailed(pairs, config, target).report
}

fn aggregate(
    pairs: &[ColorPair],
    results: &[FixResult],
    mode: Mode,
    total_runtime_ns: u64,
) -> BenchmarkReport {
    let n = pairs.len();
    let successes = results.iter().filter(|r| r.success).count();

    let mut reasonable = 0usize;
    let mut reasonable_success = 0usize;
    let mut unexpected_failures = Vec::new();
    for (i, (pair, result)) in pairs.iter().zip(results).enumerate() {
        if pair.initial_ratio > REASONABLE_RATIO {
            reasonable += 1;
            if result.success {
                reasonable_success += 1;
            }
        }
        if !result.success && !pair.category.is_edge() && pair.initial_ratio > REASONABLE_RATIO {
            unexpected_failures.push(FailureCase {
                index: i,
                category: pair.category,
                text_hex: pair.text.to_hex(),
                bg_hex: pair.bg.to_hex(),
                initial_ratio: pair.initial_ratio,
                achieved_ratio: result.achieved_ratio,
            });
        }
    }

    let delta_es: Vec<f64> = results.iter().map(|r| r.delta_e_from_original).collect();
    let under_2 = delta_es.iter().filter(|&&d| d < 2.0).count();

    let per_category = Category::ALL
        .iter()
        .filter_map(|&category| {
            let selected: Vec<usize> = pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| p.category == category)
                .map(|(i, _)| i)
                .collect();
            if selected.is_empty() {
                return None;
            }
            let wins = selected.iter().filter(|&&i| results[i].success).count();
            let modified: Vec<f64> = selected
                .iter()
                .filter(|&&i| results[i].color != pairs[i].text)
                .map(|&i| results[i].delta_e_from_original)
                .collect();
            let mean_modified = if modified.is_empty() {
                0.0
            } else {
                modified.iter().sum::<f64>() / modified.len() as f64
            };
            Some(CategoryStats {
                category,
                pair_count: selected.len(),
                success_rate: wins as f64 / selected.len() as f64,
                mean_delta_e_modified: mean_modified,
            })
        })
        .collect();

    BenchmarkReport {
        mode,
        total_pairs: n,
        success_rate_all: successes as f64 / n as f64,
        success_rate_reasonable: if reasonable == 0 {
            1.0
        } else {
            reasonable_success as f64 / reasonable as f64
        },
        reasonable_pairs: reasonable,
        delta_e_median: percentile(&delta_es, 0.5).expect("non-empty"),
        delta_e_p90: percentile(&delta_es, 0.9).expect("non-empty"),
        delta_e_max: delta_es.iter().copied().fold(0.0, f64::max),
        fraction_under_2: under_2 as f64 / n as f64,
        per_category,
        total_runtime_ns,
        per_pair_runtime_ns: total_runtime_ns as f64 / n as f64,
        unexpected_failures,
    }
}

/// Report serialization formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

/// Serializes a report. JSON carries every field and round-trips; CSV is the
/// per-category table (header plus one row per category); text mirrors the
/// familiar success-rate / ΔE-distribution / category / runtime tables.
pub fn write_report(report: &BenchmarkReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut out = String::from("category,pair_count,success_rate,mean_delta_e_modified\n");
            for c in &report.per_category {
                out.push_str(&format!(
                    "{},{},{:.4},{:.4}\n",
                    c.category, c.pair_count, c.success_rate, c.mean_delta_e_modified
                ));
            }
            out
        }
        ReportFormat::Text => text_report(report),
    }
}

/// Writes a serialized report to a file.
pub fn write_report_file(
    report: &BenchmarkReport,
    format: ReportFormat,
    path: &Path,
) -> Result<(), EvalError> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(write_report(report, format).as_bytes())?;
    Ok(())
}

fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Strict => "Mode 0 (strict)",
        Mode::Recursive => "Mode 1 (recursive)",
        Mode::Relaxed => "Mode 2 (relaxed)",
    }
}

fn text_report(r: &BenchmarkReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} — {} pairs\n\n",
        mode_label(r.mode),
        r.total_pairs
    ));
    out.push_str("Success rates\n");
    out.push_str(&format!(
        "  All Pairs              {:>7.2}%\n",
        100.0 * r.success_rate_all
    ));
    out.push_str(&format!(
        "  Reasonable (ρ > 2.0)   {:>7.2}%   ({} pairs)\n\n",
        100.0 * r.success_rate_reasonable,
        r.reasonable_pairs
    ));
    out.push_str("Perceptual change (ΔE2000, all pairs)\n");
    out.push_str(&format!(
        "  Median ΔE              {:>7.2}\n",
        r.delta_e_median
    ));
    out.push_str(&format!(
        "  P90 ΔE                 {:>7.2}\n",
        r.delta_e_p90
    ));
    out.push_str(&format!(
        "  Max ΔE                 {:>7.2}\n",
        r.delta_e_max
    ));
    out.push_str(&format!(
        "  % Under ΔE = 2.0       {:>7.1}%\n\n",
        100.0 * r.fraction_under_2
    ));
    out.push_str("Success rate by category\n");
    for c in &r.per_category {
        out.push_str(&format!(
            "  {:<32} {:>6.1}%   ({} pairs, mean ΔE of modified {:.2})\n",
            c.category.to_string(),
            100.0 * c.success_rate,
            c.pair_count,
            c.mean_delta_e_modified
        ));
    }
    out.push_str("\nRuntime\n");
    out.push_str(&format!(
        "  Total                  {:>10.3} ms\n",
        r.total_runtime_ns as f64 / 1e6
    ));
    out.push_str(&format!(
        "  Per pair               {:>10.4} ms\n",
        r.per_pair_runtime_ns / 1e6
    ));
    if r.unexpected_failures.is_empty() {
        out.push_str("\nUnexpected failures: none\n");
    } else {
        out.push_str(&format!(
            "\nUnexpected failures ({}):\n",
            r.unexpected_failures.len()
        ));
        for f in &r.unexpected_failures {
            out.push_str(&format!(
                "  #{} {} {} on {} (initial ρ {:.2}, achieved {:.2})\n",
                f.index, f.category, f.text_hex, f.bg_hex, f.initial_ratio, f.achieved_ratio
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::gen_dataset;
    use crate::rgb::parse_hex;

    fn tiny_compliant_pairs() -> Vec<ColorPair> {
        ["#000000", "#111111", "#222222"]
            .iter()
            .map(|hex| {
                let text = parse_hex(hex).unwrap();
                let bg = parse_hex("#ffffff").unwrap();
                ColorPair {
                    text,
                    bg,
                    category: Category::LightUi,
                    initial_ratio: crate::wcag::contrast_ratio(text, bg),
                }
            })
            .collect()
    }

    #[test]
    fn percentile_nearest_rank_examples() {
        let zeros = [0.0; 10];
        assert_eq!(percentile(&zeros, 0.9).unwrap(), 0.0);
        let one_to_ten: Vec<f64> = (1..=10).map(|v| v as f64).collect();
        assert_eq!(percentile(&one_to_ten, 0.9).unwrap(), 9.0);
        assert_eq!(percentile(&one_to_ten, 0.5).unwrap(), 5.0);
        assert_eq!(percentile(&one_to_ten, 1.0).unwrap(), 10.0);
        assert!(percentile(&[], 0.5).is_err());
    }

    #[test]
    fn all_compliant_input_gives_rate_one_and_zero_deltas() {
        let pairs = tiny_compliant_pairs();
        let report = run_benchmark(&pairs, &ModeConfig::recursive(), WcagTarget::AA_NORMAL);
        assert_eq!(report.success_rate_all, 1.0);
        assert_eq!(report.delta_e_median, 0.0);
        assert_eq!(report.delta_e_p90, 0.0);
        assert_eq!(report.delta_e_max, 0.0);
        assert_eq!(report.fraction_under_2, 1.0);
        assert!(report.unexpected_failures.is_empty());
    }

    #[test]
    fn json_report_round_trips() {
        let pairs = gen_dataset(45, 60).unwrap();
        let report = run_benchmark(&pairs, &ModeConfig::strict(), WcagTarget::AA_NORMAL);
        let json = write_report(&report, ReportFormat::Json);
        let parsed: BenchmarkReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn csv_report_is_header_plus_category_rows() {
        let pairs = gen_dataset(45, 60).unwrap();
        let report = run_benchmark(&pairs, &ModeConfig::recursive(), WcagTarget::AA_NORMAL);
        let csv = write_report(&report, ReportFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), report.per_category.len() + 1);
        assert!(lines[0].starts_with("category,"));
    }

    #[test]
    fn text_report_has_reasonable_row() {
        let pairs = gen_dataset(45, 60).unwrap();
        let report = run_benchmark(&pairs, &ModeConfig::recursive(), WcagTarget::AA_NORMAL);
        let text = write_report(&report, ReportFormat::Text);
        assert!(text.contains("Reasonable (ρ > 2.0)"));
        assert!(text.contains("Median ΔE"));
    }

    #[test]
    fn runtime_accounting_is_consistent() {
        let pairs = tiny_compliant_pairs();
        let report = run_benchmark(&pairs, &ModeConfig::strict(), WcagTarget::AA_NORMAL);
        let recomputed = report.per_pair_runtime_ns * report.total_pairs as f64;
        assert!((recomputed - report.total_runtime_ns as f64).abs() <= pairs.len() as f64);
    }

    #[test]
    fn category_counts_sum_to_total() {
        let pairs = gen_dataset(45, 200).unwrap();
        let report = run_benchmark(&pairs, &ModeConfig::strict(), WcagTarget::AA_NORMAL);
        let sum: usize = report.per_category.iter().map(|c| c.pair_count).sum();
        assert_eq!(sum, report.total_pairs);
    }

    #[test]
    fn delta_e_quantiles_are_ordered() {
        for config in [ModeConfig::strict(), ModeConfig::recursive(), ModeConfig::relaxed()] {
            let pairs = gen_dataset(45, 150).unwrap();
            let report = run_benchmark(&pairs, &config, WcagTarget::AA_NORMAL);
            assert!(report.delta_e_median <= report.delta_e_p90);
            assert!(report.delta_e_p90 <= report.delta_e_max);
            assert!((0.0..=1.0).contains(&report.success_rate_all));
            assert!((0.0..=1.0).contains(&report.success_rate_reasonable));
        }
    }

    #[test]
    fn relaxed_mode_failures_are_edge_or_unreasonable() {
        // every mode 2 failure must be an edge scenario or start below
        // ρ = 2.0; anything else lands in unexpected_failures
        let pairs = gen_dataset(45, 300).unwrap();
        let report = run_benchmark(&pairs, &ModeConfig::relaxed(), WcagTarget::AA_NORMAL);
        assert!(
            report.unexpected_failures.is_empty(),
            "unexpected mode 2 failures: {:?}",
            report.unexpected_failures
        );
    }
}
