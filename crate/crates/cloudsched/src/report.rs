//! Tabular output. Times are printed with 2 decimals, percentages with 1.

use std::fmt::Write as _;

use cloudsched_core::metrics::Comparison;
use cloudsched_core::{Policy, PolicyOutcome, SimulationResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    Pretty,
}

impl Format {
    /// Delimiter and file extension for the file-backed formats.
    pub fn delimited(self) -> Option<(u8, &'static str)> {
        match self {
            Format::Csv => Some((b',', "csv")),
            Format::Tsv => Some((b'\t', "tsv")),
            Format::Pretty => None,
        }
    }
}

/// One row of a task-count sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub policy: Policy,
    pub mean_cpu_time: f64,
    pub makespan: f64,
    pub wall_clock_ms: f64,
}

fn t(x: f64) -> String {
    format!("{x:.2}")
}

fn pct(x: f64) -> String {
    format!("{x:.1}")
}

fn table(delimiter: u8, header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .flexible(false)
        .from_writer(Vec::new());
    // Writing into a Vec cannot fail.
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub const RECORD_HEADER: [&str; 6] = [
    "cloudlet_id",
    "datacenter_id",
    "vm_id",
    "cpu_time",
    "start",
    "finish",
];

/// Per-cloudlet rows in arrival order, then a `mean` row under `cpu_time`.
pub fn records_table(result: &SimulationResult, delimiter: u8) -> Vec<u8> {
    let mut rows: Vec<Vec<String>> = result
        .records
        .iter()
        .map(|r| {
            vec![
                r.cloudlet_id.0.to_string(),
                r.datacenter_id.0.to_string(),
                r.vm_id.0.to_string(),
                t(r.cpu_time),
                t(r.start_time),
                t(r.finish_time),
            ]
        })
        .collect();
    rows.push(vec![
        "mean".into(),
        String::new(),
        String::new(),
        t(result.mean_cpu_time),
        String::new(),
        String::new(),
    ]);
    table(delimiter, &RECORD_HEADER, &rows)
}

/// Dispatch order with the chosen VM.
pub fn plan_table(outcome: &PolicyOutcome, delimiter: u8) -> Vec<u8> {
    let rows: Vec<Vec<String>> = outcome
        .plan
        .entries
        .iter()
        .enumerate()
        .map(|(i, (c, v))| vec![i.to_string(), c.0.to_string(), v.0.to_string()])
        .collect();
    table(delimiter, &["position", "cloudlet_id", "vm_id"], &rows)
}

pub const COMPARE_HEADER: [&str; 10] = [
    "policy",
    "mode",
    "n_cloudlets",
    "mean_cpu_time",
    "mean_completion_time",
    "makespan",
    "mean_utilization",
    "total_work",
    "improvement_pct",
    "makespan_improvement_pct",
];

pub fn comparison_table(comparison: &Comparison, delimiter: u8) -> Vec<u8> {
    let rows: Vec<Vec<String>> = comparison
        .rows
        .iter()
        .map(|row| {
            let r = &row.report;
            vec![
                r.policy.to_string(),
                r.mode.to_string(),
                r.n_cloudlets.to_string(),
                t(r.mean_cpu_time),
                t(r.mean_completion_time),
                t(r.makespan),
                format!("{:.3}", r.mean_utilization()),
                format!("{:.0}", r.total_work),
                pct(row.improvement_pct),
                pct(row.makespan_improvement_pct),
            ]
        })
        .collect();
    table(delimiter, &COMPARE_HEADER, &rows)
}

/// Whitespace-separated columns for a gnuplot bar chart (`using 0:3:xtic(2)`).
pub fn comparison_plot_data(comparison: &Comparison) -> String {
    let mut out =
        String::from("# index policy headline_time mean_cpu_time mean_completion_time makespan\n");
    for (i, row) in comparison.rows.iter().enumerate() {
        let r = &row.report;
        writeln!(
            out,
            "{i} {} {} {} {} {}",
            r.policy,
            t(r.headline()),
            t(r.mean_cpu_time),
            t(r.mean_completion_time),
            t(r.makespan)
        )
        .expect("writing to a String");
    }
    out
}

pub const SWEEP_HEADER: [&str; 4] = ["n", "policy", "mean_cpu_time", "makespan"];

/// The deterministic part of a sweep. Timing lives in [`sweep_timing_table`].
pub fn sweep_table(rows: &[SweepRow], delimiter: u8) -> Vec<u8> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.policy.to_string(),
                t(r.mean_cpu_time),
                t(r.makespan),
            ]
        })
        .collect();
    table(delimiter, &SWEEP_HEADER, &rows)
}

pub fn sweep_timing_table(rows: &[SweepRow], delimiter: u8) -> Vec<u8> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.policy.to_string(),
                format!("{:.3}", r.wall_clock_ms),
            ]
        })
        .collect();
    table(delimiter, &["n", "policy", "wall_clock_ms"], &rows)
}

/// Left-aligned console table.
pub fn pretty(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, &mut header.iter().copied());
    for row in rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

/// Renders delimited bytes produced above as a console table.
pub fn pretty_from_delimited(bytes: &[u8], delimiter: u8) -> String {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .from_reader(bytes);
    let header: Vec<String> = rdr
        .headers()
        .map(|h| h.iter().map(str::to_owned).collect())
        .unwrap_or_default();
    let rows: Vec<Vec<String>> = rdr
        .records()
        .filter_map(Result::ok)
        .map(|r| r.iter().map(str::to_owned).collect())
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    pretty(&header, &rows)
}
