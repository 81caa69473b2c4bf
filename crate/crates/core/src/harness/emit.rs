use std::io::{self, Write};
use std::str::FromStr;

use super::tables::{Cell, Report, TableId, FIRST_NODE_BETAS, TABLE_TAU_EXPONENTS};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

const DASH: &str = "-";

/// `%g`-style rendering with 6 significant digits.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (5 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_line(cell: &Cell) -> String {
    let r = cell.measured_r.map_or(DASH.to_string(), format_g);
    let err = cell.error.map_or(String::new(), format_g);
    format!(
        "{},{},{},{},{},{},{},{},{}",
        cell.scheme,
        format_g(cell.alpha),
        cell.m,
        format_g(cell.beta),
        format_g(cell.xi),
        format_g(cell.tau),
        r,
        format_g(cell.theoretical_order),
        err
    )
}

fn write_csv(report: &Report, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "scheme,alpha,m,beta,xi,tau,measured_R,theoretical_order,error")?;
    for cell in &report.cells {
        writeln!(out, "{}", csv_line(cell))?;
    }
    Ok(())
}

fn r2(cell: &Cell) -> String {
    cell.measured_r.map_or(DASH.to_string(), |r| format!("{r:.2}"))
}

fn write_markdown(report: &Report, out: &mut dyn Write) -> io::Result<()> {
    match report.table {
        Some(TableId::FirstNode) => {
            write!(out, "| alpha | tau |")?;
            for beta in FIRST_NODE_BETAS {
                write!(out, " error (beta={beta}) | R (beta={beta}) |")?;
            }
            writeln!(out)?;
            writeln!(out, "|---|---|{}", "---|---|".repeat(FIRST_NODE_BETAS.len()))?;
            let table = TableId::FirstNode;
            for &alpha in table.alphas() {
                for e in TABLE_TAU_EXPONENTS {
                    write!(out, "| {alpha} | 2^-{e} |")?;
                    let tau = (-(e as f64)).exp2();
                    for beta in FIRST_NODE_BETAS {
                        let cell = report.cells.iter().find(|c| {
                            (c.alpha - alpha).abs() < 1e-12 && c.tau == tau && (c.beta - beta).abs() < 1e-12
                        });
                        match cell {
                            Some(c) => {
                                let err = c.error.map_or(DASH.to_string(), |v| format!("{v:.4e}"));
                                write!(out, " {err} | {} |", r2(c))?;
                            }
                            None => write!(out, " {DASH} | {DASH} |")?,
                        }
                    }
                    writeln!(out)?;
                }
            }
        }
        Some(table) => {
            write!(out, "| alpha \\ m+beta |")?;
            for total in table.totals() {
                write!(out, " {total:.1} |")?;
            }
            writeln!(out)?;
            writeln!(out, "|---|{}", "---|".repeat(table.totals().len()))?;
            for &alpha in table.alphas() {
                write!(out, "| {alpha} |")?;
                for &total in table.totals() {
                    let entry = report.cell(alpha, total).map_or(DASH.to_string(), r2);
                    write!(out, " {entry} |")?;
                }
                writeln!(out)?;
            }
        }
        None => {
            writeln!(out, "| scheme | alpha | m | beta | xi | tau | R | m+beta-alpha |")?;
            writeln!(out, "|---|---|---|---|---|---|---|---|")?;
            for c in &report.cells {
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    c.scheme,
                    format_g(c.alpha),
                    c.m,
                    format_g(c.beta),
                    format_g(c.xi),
                    format_g(c.tau),
                    r2(c),
                    format_g(c.theoretical_order)
                )?;
            }
        }
    }
    Ok(())
}

/// Writes `report` to `out`. Output depends only on the report's contents.
pub fn emit(report: &Report, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(report, out),
        Format::Markdown => write_markdown(report, out),
    }
}
