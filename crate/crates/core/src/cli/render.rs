use std::fmt::Write as _;

use serde::Serialize;

use crate::bench::{Algorithm, Category, Report, SpeedUpTable};

/// Row label in the style `AES(10 KB)`, `RSA(501 B)` or bare `PAILLIER`.
pub fn row_label(algorithm: Algorithm, input_size: Option<usize>) -> String {
    match input_size {
        None => algorithm.tag().to_owned(),
        Some(s) if s >= 1024 && s % 1024 == 0 => format!("{}({} KB)", algorithm, s / 1024),
        Some(s) => format!("{}({} B)", algorithm, s),
    }
}

/// Rows grouped per algorithm, each block closed by its average line.
pub fn bench_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Environment: {}", report.environment_label);
    for (&algorithm, &avg) in &report.per_algorithm_average_ms {
        let _ = writeln!(
            out,
            "\n{:<16}{:>10}{:>10}{:>10}{:>10}{:>10}{:>18}",
            "Input",
            "Sample 1",
            "Sample 2",
            "Sample 3",
            "Sample 4",
            "Sample 5",
            "Average Time(ms)"
        );
        for row in report.rows.iter().filter(|r| r.case.algorithm == algorithm) {
            let _ = write!(out, "{:<16}", row_label(algorithm, row.case.input_size));
            for s in row.samples_ms {
                let _ = write!(out, "{s:>10}");
            }
            let _ = writeln!(out, "{:>18}", row.average_ms);
        }
        let _ = writeln!(out, "{algorithm} Average Total Execution Time(ms): {avg}");
    }
    out
}

pub fn compare_table(table: &SpeedUpTable) -> String {
    let local = format!("{} (ms)", table.local_label);
    let cloud = format!("{} (ms)", table.cloud_label);
    let w1 = local.len().max(12) + 2;
    let w2 = cloud.len().max(12) + 2;
    let mut out = String::new();
    let _ = writeln!(out, "{:<10}{:>w1$}{:>w2$}{:>16}", "Algorithm", local, cloud, "Speed-Up Ratio");
    for e in &table.entries {
        let _ = writeln!(
            out,
            "{:<10}{:>w1$}{:>w2$}{:>16}",
            e.algorithm.tag(),
            e.local_avg_ms,
            e.cloud_avg_ms,
            e.ratio.to_string()
        );
    }
    for (a, reason) in &table.skipped {
        let _ = writeln!(out, "skipped {a}: {reason}");
    }
    out
}

pub fn compare_csv(table: &SpeedUpTable) -> String {
    let mut w = csv_writer();
    w.write_record(["algorithm", "local_avg_ms", "cloud_avg_ms", "speedup"])
        .expect("in-memory write");
    for e in &table.entries {
        w.write_record([
            e.algorithm.tag().to_owned(),
            e.local_avg_ms.to_string(),
            e.cloud_avg_ms.to_string(),
            e.ratio.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

#[derive(Serialize)]
struct CompareJson<'a> {
    local_label: &'a str,
    cloud_label: &'a str,
    entries: Vec<EntryJson>,
    skipped: Vec<SkippedJson>,
}

#[derive(Serialize)]
struct EntryJson {
    algorithm: Algorithm,
    local_avg_ms: u64,
    cloud_avg_ms: u64,
    // text keeps both decimals, e.g. "1.10"
    speedup: String,
}

#[derive(Serialize)]
struct SkippedJson {
    algorithm: Algorithm,
    reason: String,
}

pub fn compare_json(table: &SpeedUpTable) -> String {
    let doc = CompareJson {
        local_label: &table.local_label,
        cloud_label: &table.cloud_label,
        entries: table
            .entries
            .iter()
            .map(|e| EntryJson {
                algorithm: e.algorithm,
                local_avg_ms: e.local_avg_ms,
                cloud_avg_ms: e.cloud_avg_ms,
                speedup: e.ratio.to_string(),
            })
            .collect(),
        skipped: table
            .skipped
            .iter()
            .map(|(a, reason)| SkippedJson {
                algorithm: *a,
                reason: reason.to_string(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

/// One point of an input-size curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlotPoint {
    pub series: String,
    pub input_size: usize,
    pub avg_ms: u64,
}

/// Points of `algorithm` from every report; homomorphic rows sit at size 0.
pub fn plot_points(reports: &[Report], algorithm: Algorithm) -> Vec<PlotPoint> {
    let mut points: Vec<PlotPoint> = reports
        .iter()
        .flat_map(|r| {
            r.rows.iter().filter(move |row| row.case.algorithm == algorithm).map(move |row| PlotPoint {
                series: r.environment_label.clone(),
                input_size: match algorithm.category() {
                    Category::Homomorphic => 0,
                    _ => row.case.input_size.unwrap_or(0),
                },
                avg_ms: row.average_ms,
            })
        })
        .collect();
    points.sort();
    points
}

pub fn plot_csv(points: &[PlotPoint]) -> String {
    let mut w = csv_writer();
    w.write_record(["series", "input_size", "avg_ms"]).expect("in-memory write");
    for p in points {
        w.write_record([p.series.clone(), p.input_size.to_string(), p.avg_ms.to_string()])
            .expect("in-memory write");
    }
    finish(w)
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}
