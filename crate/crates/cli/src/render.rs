//! Report rendering: census tables as CSV or aligned text, sequence tables as CSV.

use std::fmt::Write;

use stratifold::{CensusReport, SequenceTable};

fn cell(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One line per row, then a `total` line per `b` and a `grand total` line.
/// With `b_filter`, only that `b` is shown and the grand total is its total.
pub fn census_csv(report: &CensusReport, b_filter: Option<usize>) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "b", "row", "count", "formula", "constructive", "brute"])?;
    let n = report.n.to_string();
    for b in shown(report, b_filter) {
        for row in report.rows_for(b) {
            w.write_record([
                n.as_str(),
                &b.to_string(),
                &row.descriptor,
                &row.count.to_string(),
                &cell(row.formula),
                &cell(row.constructive),
                &cell(row.brute),
            ])?;
        }
        w.write_record([
            n.as_str(),
            &b.to_string(),
            "total",
            &report.total_for(b).to_string(),
            "",
            "",
            "",
        ])?;
    }
    w.write_record([
        n.as_str(),
        "",
        "grand total",
        &grand_total(report, b_filter).to_string(),
        "",
        "",
        "",
    ])?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn census_text(report: &CensusReport, b_filter: Option<usize>) -> String {
    let mut out = String::new();
    writeln!(out, "census n={} engine={}", report.n, report.engine).unwrap();
    let width = report
        .rows
        .iter()
        .map(|r| r.descriptor.len())
        .max()
        .unwrap_or(0)
        .max(12);
    for b in shown(report, b_filter) {
        writeln!(out, "b={b}").unwrap();
        for row in report.rows_for(b) {
            writeln!(out, "  {:<width$}  {:>8}", row.descriptor, row.count).unwrap();
        }
        writeln!(out, "  {:<width$}  {:>8}", "total", report.total_for(b)).unwrap();
    }
    writeln!(
        out,
        "{:<w$}  {:>8}",
        "grand total",
        grand_total(report, b_filter),
        w = width + 2
    )
    .unwrap();
    if report.agrees() {
        out.push_str("engines agree\n");
    } else {
        for d in &report.disagreements {
            writeln!(out, "disagreement: {d}").unwrap();
        }
    }
    out
}

fn shown(report: &CensusReport, b_filter: Option<usize>) -> Vec<usize> {
    match b_filter {
        Some(b) => vec![b],
        None => report.totals.keys().copied().collect(),
    }
}

fn grand_total(report: &CensusReport, b_filter: Option<usize>) -> u64 {
    match b_filter {
        Some(b) => report.total_for(b),
        None => report.grand_total,
    }
}

pub fn tables_csv(table: &SequenceTable) -> String {
    let mut out = String::from("n,R,M,U\n");
    for row in table.rows() {
        writeln!(
            out,
            "{},{},{},{}",
            row.n, row.rooted, row.birooted, row.unrooted_mark
        )
        .unwrap();
    }
    out
}
