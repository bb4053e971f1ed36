//! Report serialization. JSON and CSV are emitted with fixed field
//! order, rates rendered to 4 decimal places, and a trailing newline,
//! so identical evaluations produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{ChannelRates, EvalError, EvalReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn write_rates(out: &mut String, rates: &ChannelRates) {
    let _ = write!(
        out,
        "{{\"baseline\": {:.4}, \"stem\": {:.4}, \"vowel_plosive\": {:.4}, \"vowel_fricative\": {:.4}, \"fused\": {:.4}}}",
        rates.baseline, rates.stem, rates.vowel_plosive, rates.vowel_fricative, rates.fused
    );
}

/// Render the fixed-schema JSON document.
pub fn render_json(report: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = write!(
        out,
        "  \"meta\": {{\"dict_path\": \"{}\", \"config_digest\": \"{}\", \"timestamp\": \"{}\"}},\n",
        json_escape(&report.meta.dict_path),
        json_escape(&report.meta.config_digest),
        json_escape(&report.meta.timestamp)
    );
    out.push_str("  \"categories\": [\n");
    for (i, cat) in report.categories.iter().enumerate() {
        let _ = write!(
            out,
            "    {{\"category\": \"{}\", \"n_samples\": {}, \"counts\": {{\"baseline\": {}, \"stem\": {}, \"vowel_plosive\": {}, \"vowel_fricative\": {}, \"fused\": {}}}, \"rates\": ",
            json_escape(&cat.category),
            cat.n_samples,
            cat.counts.baseline,
            cat.counts.stem,
            cat.counts.vowel_plosive,
            cat.counts.vowel_fricative,
            cat.counts.fused
        );
        write_rates(&mut out, &cat.rates);
        let _ = write!(out, ", \"oov_samples\": {}}}", cat.oov_samples);
        out.push_str(if i + 1 < report.categories.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    out.push_str("  \"aggregate\": {\"macro\": ");
    write_rates(&mut out, &report.aggregate.macro_rates);
    out.push_str(", \"micro\": ");
    write_rates(&mut out, &report.aggregate.micro_rates);
    out.push_str("}\n}\n");
    out
}

/// Render CSV: one row per category plus an `__aggregate__` row
/// carrying the macro rates.
pub fn render_csv(report: &EvalReport) -> String {
    let mut out = String::from(
        "category,n_samples,baseline,stem,vowel_plosive,vowel_fricative,fused,oov_samples\n",
    );
    let mut total_samples = 0usize;
    let mut total_oov = 0usize;
    for cat in &report.categories {
        let _ = writeln!(
            out,
            "{},{},{:.4},{:.4},{:.4},{:.4},{:.4},{}",
            cat.category,
            cat.n_samples,
            cat.rates.baseline,
            cat.rates.stem,
            cat.rates.vowel_plosive,
            cat.rates.vowel_fricative,
            cat.rates.fused,
            cat.oov_samples
        );
        total_samples += cat.n_samples;
        total_oov += cat.oov_samples;
    }
    let agg = &report.aggregate.macro_rates;
    let _ = writeln!(
        out,
        "__aggregate__,{},{:.4},{:.4},{:.4},{:.4},{:.4},{}",
        total_samples, agg.baseline, agg.stem, agg.vowel_plosive, agg.vowel_fricative, agg.fused, total_oov
    );
    out
}

/// Parse a JSON report produced by [`render_json`].
pub fn parse_json_report(text: &str) -> Result<EvalReport, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn write_report(
    report: &EvalReport,
    format: ReportFormat,
    out: &Path,
) -> Result<(), EvalError> {
    let text = match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Csv => render_csv(report),
    };
    fs::write(out, text).map_err(|source| EvalError::Io {
        path: out.to_path_buf(),
        source,
    })
}
