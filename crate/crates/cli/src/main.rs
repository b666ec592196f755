//! `huefix` — fix text colors for WCAG contrast while keeping their hue.
//!
//! Exit codes: 0 success (or accessible), 1 accessibility failure
//! (check failed / color could not be fixed), 2 usage or I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use huefix_core::dataset::{dataset_to_csv, dataset_to_jsonl, gen_dataset, DatasetRecord};
use huefix_core::eval::{run_benchmark, write_report, ReportFormat};
use huefix_core::oklch::rgb_to_oklch;
use huefix_core::optimizer::{make_readable, FixResult, Mode, ModeConfig};
use huefix_core::rgb::{parse_hex, RgbColor};
use huefix_core::wcag::{contrast_ratio, passes, SizeClass, WcagLevel, WcagTarget};

#[derive(Parser)]
#[command(
    name = "huefix",
    about = "WCAG contrast fixing with hue preservation in OKLCH space",
    version,
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Aa,
    Aaa,
}

#[derive(Args, Clone, Copy)]
struct TargetArgs {
    /// WCAG conformance level
    #[arg(long, value_enum, default_value = "aa")]
    level: LevelArg,
    /// Use the large-text thresholds (AA 3.0:1, AAA 4.5:1)
    #[arg(long)]
    large: bool,
}

impl TargetArgs {
    fn target(self) -> WcagTarget {
        WcagTarget::new(
            match self.level {
                LevelArg::Aa => WcagLevel::Aa,
                LevelArg::Aaa => WcagLevel::Aaa,
            },
            if self.large {
                SizeClass::Large
            } else {
                SizeClass::Normal
            },
        )
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BatchFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum DatasetFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the contrast ratio of a text/background color pair
    Check {
        /// Text color (hex, e.g. #ffff00)
        text: String,
        /// Background color (hex)
        bg: String,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Adjust a text color to meet the contrast target
    Fix {
        /// Text color (hex)
        text: String,
        /// Background color (hex)
        bg: String,
        /// Optimization mode: 0 strict, 1 recursive (default), 2 relaxed
        #[arg(long, default_value_t = 1)]
        mode: u8,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Fix every pair in a CSV or JSON-lines file
    Batch {
        /// Input file: dataset CSV/JSONL or a 2-column text_hex,bg_hex CSV
        #[arg(long)]
        input: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        /// Optimization mode: 0 strict, 1 recursive (default), 2 relaxed
        #[arg(long, default_value_t = 1)]
        mode: u8,
        #[arg(long, value_enum, default_value = "csv")]
        format: BatchFormat,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Generate a deterministic color-pair dataset
    GenDataset {
        #[arg(long, default_value_t = 45)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: DatasetFormat,
    },
    /// Generate a dataset, run one mode over it and report the aggregates
    Bench {
        #[arg(long, default_value_t = 45)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        /// Optimization mode: 0 strict, 1 recursive (default), 2 relaxed
        #[arg(long, default_value_t = 1)]
        mode: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: BenchFormat,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        target: TargetArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { text, bg, target } => cmd_check(&text, &bg, target.target()),
        Command::Fix {
            text,
            bg,
            mode,
            target,
        } => cmd_fix(&text, &bg, mode, target.target()),
        Command::Batch {
            input,
            output,
            mode,
            format,
            target,
        } => cmd_batch(&input, output.as_deref(), mode, format, target.target()),
        Command::GenDataset {
            seed,
            count,
            output,
            format,
        } => cmd_gen_dataset(seed, count, output.as_deref(), format),
        Command::Bench {
            seed,
            count,
            mode,
            format,
            output,
            target,
        } => cmd_bench(
            seed,
            count,
            mode,
            format,
            output.as_deref(),
            target.target(),
        ),
    }
}

const EXIT_OK: ExitCode = ExitCode::SUCCESS;
const EXIT_FAIL: ExitCode = ExitCode::FAILURE;

fn exit_usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// Writes to stdout, treating a closed pipe (`huefix … | head`) as a normal
/// early exit rather than an error.
fn emit(content: &str, and_then: ExitCode) -> ExitCode {
    use std::io::Write;
    match std::io::stdout().lock().write_all(content.as_bytes()) {
        Ok(()) => and_then,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => and_then,
        Err(e) => exit_usage(format!("cannot write to stdout: {e}")),
    }
}

fn parse_color_arg(name: &str, value: &str) -> Result<RgbColor, String> {
    parse_hex(value).map_err(|e| format!("argument <{name}>: {e}"))
}

fn parse_mode_arg(mode: u8) -> Result<ModeConfig, String> {
    Mode::from_index(mode)
        .map(ModeConfig::for_mode)
        .ok_or_else(|| format!("argument --mode: {mode} is not one of 0, 1, 2"))
}

fn oklch_display(c: RgbColor) -> String {
    let o = rgb_to_oklch(c);
    format!("oklch({:.4}, {:.4}, {:.2})", o.l, o.c, o.h)
}

fn cmd_check(text_hex: &str, bg_hex: &str, target: WcagTarget) -> ExitCode {
    let (text, bg) = match (
        parse_color_arg("text", text_hex),
        parse_color_arg("bg", bg_hex),
    ) {
        (Ok(t), Ok(b)) => (t, b),
        (Err(e), _) | (_, Err(e)) => return exit_usage(e),
    };
    let ratio = contrast_ratio(text, bg);
    let ok = passes(ratio, target);
    let report = format!(
        "text:   {}  {}\nbg:     {}  {}\nratio:  {ratio:.4}\ntarget: {target}\nresult: {}\n",
        text.to_hex(),
        oklch_display(text),
        bg.to_hex(),
        oklch_display(bg),
        if ok { "PASS" } else { "FAIL" }
    );
    emit(&report, if ok { EXIT_OK } else { EXIT_FAIL })
}

/// One stable machine-parseable line:
/// `fixed=<hex> success=<bool> ratio=<f> delta_e=<f> iterations=<n> hue_drift=<f>`
fn fix_line(result: &FixResult) -> String {
    format!(
        "fixed={} success={} ratio={:.4} delta_e={:.4} iterations={} hue_drift={:.4}",
        result.color.to_hex(),
        result.success,
        result.achieved_ratio,
        result.delta_e_from_original,
        result.iterations_used,
        result.hue_drift_degrees
    )
}

fn cmd_fix(text_hex: &str, bg_hex: &str, mode: u8, target: WcagTarget) -> ExitCode {
    let (text, bg) = match (
        parse_color_arg("text", text_hex),
        parse_color_arg("bg", bg_hex),
    ) {
        (Ok(t), Ok(b)) => (t, b),
        (Err(e), _) | (_, Err(e)) => return exit_usage(e),
    };
    let config = match parse_mode_arg(mode) {
        Ok(c) => c,
        Err(e) => return exit_usage(e),
    };
    let result = make_readable(text, bg, &config, target);
    let line = format!("{}\n", fix_line(&result));
    emit(&line, if result.success { EXIT_OK } else { EXIT_FAIL })
}

struct BatchRow {
    line_number: usize,
    index: usize,
    category: String,
    text: RgbColor,
    bg: RgbColor,
}

fn parse_batch_rows(content: &str) -> (Vec<BatchRow>, Vec<String>) {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let jsonl = content
        .lines()
        .find(|l| !l.trim().is_empty())
        .is_some_and(|l| l.trim_start().starts_with('{'));

    for (number, line) in content.lines().enumerate() {
        let line_number = number + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if jsonl {
            match serde_json::from_str::<DatasetRecord>(trimmed) {
                Ok(record) => match (parse_hex(&record.text_hex), parse_hex(&record.bg_hex)) {
                    (Ok(text), Ok(bg)) => rows.push(BatchRow {
                        line_number,
                        index: record.index,
                        category: record.category.to_string(),
                        text,
                        bg,
                    }),
                    (Err(e), _) | (_, Err(e)) => {
                        warnings.push(format!("row {line_number}: {e}: skipped"));
                    }
                },
                Err(e) => warnings.push(format!(
                    "row {line_number}: invalid JSON record ({e}): skipped"
                )),
            }
            continue;
        }

        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [text, bg] => parse_hex(text)
                .and_then(|t| parse_hex(bg).map(|b| (rows.len(), String::new(), t, b))),
            [index, category, text, bg, ..] => parse_hex(text).and_then(|t| {
                parse_hex(bg).map(|b| {
                    (
                        index.parse::<usize>().unwrap_or(rows.len()),
                        category.to_string(),
                        t,
                        b,
                    )
                })
            }),
            _ => {
                warnings.push(format!(
                    "row {line_number}: expected 2 or 5 comma-separated fields, found {}: skipped",
                    fields.len()
                ));
                continue;
            }
        };
        match parsed {
            Ok((index, category, text, bg)) => rows.push(BatchRow {
                line_number,
                index,
                category,
                text,
                bg,
            }),
            Err(e) => {
                // a header row is expected, don't warn about it
                if number == 0 {
                    continue;
                }
                warnings.push(format!("row {line_number}: {e}: skipped"));
            }
        }
    }
    (rows, warnings)
}

struct BatchSummary {
    rows: usize,
    fixed: usize,
    already_compliant: usize,
    reasonable: usize,
    reasonable_fixed: usize,
}

fn cmd_batch(
    input: &Path,
    output: Option<&Path>,
    mode: u8,
    format: BatchFormat,
    target: WcagTarget,
) -> ExitCode {
    let config = match parse_mode_arg(mode) {
        Ok(c) => c,
        Err(e) => return exit_usage(e),
    };
    let content = match std::fs::read_to_string(input) {
        Ok(c) => c,
        Err(e) => return exit_usage(format!("cannot read {}: {e}", input.display())),
    };
    let (rows, warnings) = parse_batch_rows(&content);
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }

    let results: Vec<FixResult> = rows
        .iter()
        .map(|row| make_readable(row.text, row.bg, &config, target))
        .collect();

    let mut summary = BatchSummary {
        rows: rows.len(),
        fixed: 0,
        already_compliant: 0,
        reasonable: 0,
        reasonable_fixed: 0,
    };
    for (row, result) in rows.iter().zip(&results) {
        let initial = contrast_ratio(row.text, row.bg);
        if result.success {
            summary.fixed += 1;
        }
        if passes(initial, target) {
            summary.already_compliant += 1;
        }
        if initial > 2.0 {
            summary.reasonable += 1;
            if result.success {
                summary.reasonable_fixed += 1;
            }
        }
    }

    let rendered = render_batch(&rows, &results, &summary, format);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                return exit_usage(format!("cannot write {}: {e}", path.display()));
            }
            EXIT_OK
        }
        None => emit(&rendered, EXIT_OK),
    }
}

fn render_batch(
    rows: &[BatchRow],
    results: &[FixResult],
    summary: &BatchSummary,
    format: BatchFormat,
) -> String {
    let rate = |num: usize, den: usize| {
        if den == 0 {
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    match format {
        BatchFormat::Csv => {
            let mut out = String::from(
                "index,category,text_hex,bg_hex,fixed_hex,success,ratio,delta_e,iterations\n",
            );
            for (row, result) in rows.iter().zip(results) {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{:.4},{:.4},{}",
                    row.index,
                    row.category,
                    row.text.to_hex(),
                    row.bg.to_hex(),
                    result.color.to_hex(),
                    result.success,
                    result.achieved_ratio,
                    result.delta_e_from_original,
                    result.iterations_used
                );
            }
            let _ = writeln!(
                out,
                "# summary: rows={} fixed={} success_rate={:.4} already_compliant={} reasonable={} reasonable_success_rate={:.4}",
                summary.rows,
                summary.fixed,
                rate(summary.fixed, summary.rows),
                summary.already_compliant,
                summary.reasonable,
                rate(summary.reasonable_fixed, summary.reasonable),
            );
            out
        }
        BatchFormat::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .zip(results)
                .map(|(row, result)| {
                    serde_json::json!({
                        "index": row.index,
                        "category": row.category,
                        "text_hex": row.text.to_hex(),
                        "bg_hex": row.bg.to_hex(),
                        "fixed_hex": result.color.to_hex(),
                        "success": result.success,
                        "ratio": result.achieved_ratio,
                        "delta_e": result.delta_e_from_original,
                        "iterations": result.iterations_used,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "rows": rows_json,
                "summary": {
                    "rows": summary.rows,
                    "fixed": summary.fixed,
                    "success_rate": rate(summary.fixed, summary.rows),
                    "already_compliant": summary.already_compliant,
                    "reasonable": summary.reasonable,
                    "reasonable_success_rate": rate(summary.reasonable_fixed, summary.reasonable),
                },
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("batch document serializes");
            s.push('\n');
            s
        }
        BatchFormat::Text => {
            let mut out = String::new();
            for (row, result) in rows.iter().zip(results) {
                let _ = writeln!(
                    out,
                    "row {:<5} {} on {} -> {}  {}  ρ {:.2}  ΔE {:.2}",
                    row.line_number,
                    row.text.to_hex(),
                    row.bg.to_hex(),
                    result.color.to_hex(),
                    if result.success { "fixed" } else { "FAILED" },
                    result.achieved_ratio,
                    result.delta_e_from_original,
                );
            }
            let _ = writeln!(
                out,
                "summary: {} rows, {} fixed ({:.1}%), {} already compliant, reasonable success {:.1}%",
                summary.rows,
                summary.fixed,
                100.0 * rate(summary.fixed, summary.rows),
                summary.already_compliant,
                100.0 * rate(summary.reasonable_fixed, summary.reasonable),
            );
            out
        }
    }
}

fn cmd_gen_dataset(
    seed: u64,
    count: usize,
    output: Option<&Path>,
    format: DatasetFormat,
) -> ExitCode {
    let pairs = match gen_dataset(seed, count) {
        Ok(p) => p,
        Err(e) => return exit_usage(e),
    };
    let rendered = match format {
        DatasetFormat::Csv => dataset_to_csv(&pairs),
        DatasetFormat::Jsonl => dataset_to_jsonl(&pairs),
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                return exit_usage(format!("cannot write {}: {e}", path.display()));
            }
            EXIT_OK
        }
        None => emit(&rendered, EXIT_OK),
    }
}

fn cmd_bench(
    seed: u64,
    count: usize,
    mode: u8,
    format: BenchFormat,
    output: Option<&Path>,
    target: WcagTarget,
) -> ExitCode {
    let config = match parse_mode_arg(mode) {
        Ok(c) => c,
        Err(e) => return exit_usage(e),
    };
    let pairs = match gen_dataset(seed, count) {
        Ok(p) => p,
        Err(e) => return exit_usage(e),
    };
    let report = run_benchmark(&pairs, &config, target);
    let rendered = write_report(
        &report,
        match format {
            BenchFormat::Text => ReportFormat::Text,
            BenchFormat::Json => ReportFormat::Json,
            BenchFormat::Csv => ReportFormat::Csv,
        },
    );
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                return exit_usage(format!("cannot write {}: {e}", path.display()));
            }
            EXIT_OK
        }
        None => emit(&rendered, EXIT_OK),
    }
}
