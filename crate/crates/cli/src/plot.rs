//! gnuplot scripts for sweep CSV files.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

use clap::ValueEnum;

use crate::error::{usage, Failure};
use crate::grid::format_m;
use crate::sweep::CSV_HEADER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    /// `E` against `ξ`, one curve per `(N, m)`.
    Fig1,
    /// `E` against `N`, one curve per `(m, ξ)`.
    Fig2,
    /// Rotated variances against `ξ` for one `m`.
    Fig3,
}

/// Distinct grid values found in a sweep CSV.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct CsvSummary {
    pub atoms: BTreeSet<u32>,
    pub two_m: BTreeSet<i32>,
    pub xi: Vec<f64>,
}

pub fn summarize(path: &Path) -> Result<CsvSummary, Failure> {
    let file = std::fs::File::open(path).map_err(|source| Failure::MissingInput {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(file);
    let header = reader
        .headers()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(usage(format!("{}: not a sweep CSV", path.display())));
    }
    let mut summary = CsvSummary::default();
    for record in reader.records() {
        let record = record.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let bad = |i: usize| usage(format!("{}: bad value '{}'", path.display(), field(i)));
        summary.atoms.insert(field(0).parse().map_err(|_| bad(0))?);
        summary.two_m.insert(field(1).parse().map_err(|_| bad(1))?);
        let xi: f64 = field(2).parse().map_err(|_| bad(2))?;
        if !summary.xi.contains(&xi) {
            summary.xi.push(xi);
        }
    }
    summary.xi.sort_by(f64::total_cmp);
    Ok(summary)
}

const PREAMBLE: &str = "set datafile separator ','\nset key outside right\nset grid\n";

fn plot_lines(data: &str, curves: &[(String, String)]) -> String {
    let parts: Vec<String> = curves
        .iter()
        .map(|(using, title)| {
            format!("'{data}' every ::1 using {using} with lines title '{title}'")
        })
        .collect();
    format!("plot {}\n", parts.join(", \\\n     "))
}

pub fn script(
    style: Style,
    data: &Path,
    summary: &CsvSummary,
    fig3_two_m: Option<i32>,
) -> Result<String, Failure> {
    let data = data.display().to_string().replace('\'', "''");
    let mut out = String::from(PREAMBLE);
    let curves: Vec<(String, String)> = match style {
        Style::Fig1 => {
            let _ = writeln!(out, "set xlabel 'xi'\nset ylabel 'E'\nset logscale y");
            summary
                .atoms
                .iter()
                .flat_map(|&n| summary.two_m.iter().map(move |&m| (n, m)))
                .map(|(n, m)| {
                    (
                        format!("3:(($1=={n} && $2=={m}) ? $8 : 1/0)"),
                        format!("N = {n}, m = {}", format_m(m)),
                    )
                })
                .collect()
        }
        Style::Fig2 => {
            let _ = writeln!(out, "set xlabel 'N'\nset ylabel 'E'");
            summary
                .two_m
                .iter()
                .flat_map(|&m| summary.xi.iter().map(move |&xi| (m, xi)))
                .map(|(m, xi)| {
                    (
                        format!("1:(($2=={m} && abs($3-{xi})<1e-9) ? $8 : 1/0)"),
                        format!("m = {}, xi = {xi}", format_m(m)),
                    )
                })
                .collect()
        }
        Style::Fig3 => {
            let two_m = match fig3_two_m {
                Some(m) if summary.two_m.contains(&m) => m,
                Some(m) => return Err(usage(format!("CSV has no rows with m = {}", format_m(m)))),
                None => *summary
                    .two_m
                    .iter()
                    .next()
                    .ok_or_else(|| usage("CSV has no rows"))?,
            };
            let _ = writeln!(out, "set xlabel 'xi'\nset ylabel 'variance'");
            let mut curves = Vec::new();
            for &n in &summary.atoms {
                let sel = format!("($1=={n} && $2=={two_m})");
                let label = format!("N = {n}, m = {}", format_m(two_m));
                curves.push((format!("3:({sel} ? $4 : 1/0)"), format!("Var-Jx, {label}")));
                curves.push((format!("3:({sel} ? $5 : 1/0)"), format!("Var-Jy, {label}")));
                curves.push((
                    format!("3:({sel} ? {n}/4.0 : 1/0)"),
                    format!("N/4, N = {n}"),
                ));
            }
            curves
        }
    };
    if curves.is_empty() {
        return Err(usage("CSV has no rows"));
    }
    out.push_str(&plot_lines(&data, &curves));
    Ok(out)
}
