//! File formats and renderers.

mod instance_file;
mod report;
mod solution;
mod svg;

pub use instance_file::{load_instance, parse_instance, read_instance, render_instance, save_instance, write_instance};
pub use report::render_report;
pub use solution::{
    parse_solution, read_solution, render_solution, validate_solution, write_solution, Solution,
};
pub use svg::{render_svg, SvgOptions};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// 17 significant digits: exact for every finite `f64`.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::malformed(line, format!("`{tok}` is not a finite number"))),
    }
}

pub(crate) struct Header<'a> {
    pub line: usize,
    pub key: &'a str,
    pub value: &'a str,
}

type Body<'a> = Vec<(usize, &'a str)>;

/// Splits a file into `key: value` header entries and numbered body rows.
/// Comment lines (`#`) and blank lines are skipped; line numbers are 1-based.
pub(crate) fn split_header<'a>(text: &'a str, magic: &str) -> Result<(Vec<Header<'a>>, Body<'a>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, first)) if first == magic => {}
        _ => return Err(Error::malformed(1, format!("missing `{magic}` signature"))),
    }
    let mut header = Vec::new();
    let mut in_body = false;
    let mut body = Vec::new();
    for (line, l) in lines {
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if in_body {
            body.push((line, l));
        } else if l == "---" {
            in_body = true;
        } else {
            let (key, value) = l
                .split_once(':')
                .ok_or_else(|| Error::malformed(line, "header lines must read `key: value`"))?;
            header.push(Header { line, key: key.trim(), value: value.trim() });
        }
    }
    if !in_body {
        return Err(Error::malformed(0, "missing `---` separator before the aircraft rows"));
    }
    Ok((header, body))
}
