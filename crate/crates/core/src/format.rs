//! Instance files and solution output.
//!
//! An instance file is UTF-8 text with one point per line, either `<decimal>`
//! or `<decimal> <multiplicity>`. Everything after `#` is a comment and blank
//! lines are ignored. Decimals may carry a sign and up to nine fractional
//! digits; the instance scale is the largest number of fractional digits used.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    format_fixed, CompressedInstance, CountProfile, CutValue, Instance, Problem, MAX_ABS_SCALED,
    MAX_SCALE_EXP,
};

/// Upper limit on the expanded point count of a parsed file.
pub const MAX_PARSED_POINTS: usize = 10_000_000;

/// A decimal literal as `mantissa * 10^-digits`.
fn parse_decimal(token: &str, line: usize) -> Result<(i128, u32)> {
    let malformed = || Error::Parse { line, message: format!("malformed number `{token}`") };
    let (neg, body) = match token.as_bytes().first() {
        Some(b'-') => (true, &token[1..]),
        Some(b'+') => (false, &token[1..]),
        _ => (false, token),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty() && frac_part.is_empty() || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(malformed());
    }
    let frac = frac_part.trim_end_matches('0');
    if frac.len() > MAX_SCALE_EXP as usize {
        return Err(Error::Precision { line, max: MAX_SCALE_EXP });
    }
    let int = int_part.trim_start_matches('0');
    // 2^40 has 13 digits; anything with more integer digits is out of range.
    if int.len() > 13 {
        return Err(Error::Range { line });
    }
    let mut mantissa: i128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        mantissa = mantissa * 10 + (b - b'0') as i128;
    }
    Ok((if neg { -mantissa } else { mantissa }, frac.len() as u32))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut points: Vec<(usize, i128, u32, usize)> = Vec::new();
    let mut total: usize = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (value, count) = match tokens.as_slice() {
            [v] => (*v, 1),
            [v, m] => {
                let m: usize = m.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("malformed multiplicity `{m}`"),
                })?;
                if m == 0 {
                    return Err(Error::Parse { line, message: "multiplicity must be positive".into() });
                }
                (*v, m)
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `<decimal> [multiplicity]`, got {} fields", tokens.len()),
                })
            }
        };
        let (mantissa, digits) = parse_decimal(value, line)?;
        total = total.saturating_add(count);
        if total > MAX_PARSED_POINTS {
            return Err(Error::Parse { line, message: format!("more than {MAX_PARSED_POINTS} points") });
        }
        points.push((line, mantissa, digits, count));
    }
    if points.is_empty() {
        return Err(Error::InstanceEmpty);
    }
    let scale_exp = points.iter().map(|p| p.2).max().unwrap();
    let mut coords = Vec::with_capacity(total);
    for (line, mantissa, digits, count) in points {
        let scaled = mantissa * 10i128.pow(scale_exp - digits);
        if scaled.unsigned_abs() > MAX_ABS_SCALED as u128 {
            return Err(Error::Range { line });
        }
        coords.extend(std::iter::repeat_n(scaled as i64, count));
    }
    Instance::new(coords, scale_exp)
}

/// One line per point, in instance order.
pub fn render_instance(instance: &Instance) -> String {
    let mut out = String::with_capacity(instance.len() * 8);
    for &c in instance.coords() {
        out.push_str(&format_fixed(c as i128, instance.scale_exp()));
        out.push('\n');
    }
    out
}

/// One line per distinct value, `<decimal> <multiplicity>` when repeated.
pub fn render_compressed(ci: &CompressedInstance) -> String {
    let mut out = String::new();
    for (&x, &m) in ci.xs().iter().zip(ci.mult()) {
        out.push_str(&format_fixed(x as i128, ci.scale_exp()));
        if m > 1 {
            out.push_str(&format!(" {m}"));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Everything printed for one solved problem.
#[derive(Debug, Clone)]
pub struct SolveReport<'a> {
    pub problem: Problem,
    pub ci: &'a CompressedInstance,
    pub value: CutValue,
    /// First-set size. `None` for max-cut without an assignment, where
    /// either side could be called first.
    pub k: Option<usize>,
    /// Absent in value-only mode.
    pub profile: Option<&'a CountProfile>,
    pub elapsed_ns: Option<u128>,
}

#[derive(Serialize)]
struct JsonAssignment {
    x: String,
    count_first: usize,
    count_second: usize,
}

#[derive(Serialize)]
struct JsonSolution {
    problem: &'static str,
    n: usize,
    k: Option<usize>,
    value: String,
    assignment: Option<Vec<JsonAssignment>>,
    elapsed_ns: Option<u128>,
}

pub fn render_solution(report: &SolveReport<'_>, format: OutputFormat) -> String {
    let ci = report.ci;
    let scale = ci.scale_exp();
    let rows: Option<Vec<JsonAssignment>> = report.profile.map(|profile| {
        ci.xs()
            .iter()
            .zip(ci.mult())
            .zip(profile.counts())
            .map(|((&x, &m), &a)| JsonAssignment {
                x: format_fixed(x as i128, scale),
                count_first: a,
                count_second: m - a,
            })
            .collect()
    });
    match format {
        OutputFormat::Json => {
            let doc = JsonSolution {
                problem: report.problem.name(),
                n: ci.n(),
                k: report.k,
                value: report.value.to_decimal(scale),
                assignment: rows,
                elapsed_ns: report.elapsed_ns,
            };
            let mut s = serde_json::to_string(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            s.push_str(&format!("problem: {}\n", report.problem.name()));
            s.push_str(&format!("n: {}\n", ci.n()));
            if let Some(k) = report.k {
                s.push_str(&format!("sizes: {} / {}\n", k, ci.n() - k));
            }
            s.push_str(&format!("value: {}\n", report.value.to_decimal(scale)));
            if let Some(rows) = rows {
                s.push_str("x\tfirst\tsecond\n");
                for row in rows {
                    s.push_str(&format!("{}\t{}\t{}\n", row.x, row.count_first, row.count_second));
                }
            }
            if let Some(ns) = report.elapsed_ns {
                s.push_str(&format!("elapsed_ns: {ns}\n"));
            }
            s
        }
    }
}
