//! Candidate resolutions: one adjusted velocity per aircraft.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::analysis::{analyze, ComplexityReport};
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::instance::Instance;

use super::{fmt_f64, parse_f64, split_header, Header, FORMAT_VERSION};

const MAGIC: &str = "# tdgen solution";

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Free-form reference to the instance, usually its file name.
    pub instance: String,
    pub velocities: Vec<(usize, Vec3)>,
}

impl Solution {
    /// The nominal velocities of `instance`, i.e. "change nothing".
    pub fn identity(instance: &Instance, reference: &str) -> Self {
        Solution {
            instance: reference.to_string(),
            velocities: instance.aircraft.iter().map(|a| (a.id, a.v_hat)).collect(),
        }
    }
}

pub fn render_solution(solution: &Solution) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(s, "instance: {}", solution.instance);
    let _ = writeln!(s, "n: {}", solution.velocities.len());
    let _ = writeln!(s, "---");
    let _ = writeln!(s, "# id vx vy vz");
    for (id, v) in &solution.velocities {
        let _ = writeln!(s, "{id} {} {} {}", fmt_f64(v.x), fmt_f64(v.y), fmt_f64(v.z));
    }
    s
}

pub fn write_solution<W: Write>(solution: &Solution, mut out: W) -> Result<usize> {
    let text = render_solution(solution);
    out.write_all(text.as_bytes())?;
    Ok(text.len())
}

pub fn read_solution<R: Read>(mut input: R) -> Result<Solution> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    parse_solution(&text)
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let (header, body) = split_header(text, MAGIC)?;
    let mut instance = String::new();
    let mut n = None;
    let mut version_seen = false;
    for Header { line, key, value } in header {
        match key {
            "format_version" => {
                if value != FORMAT_VERSION.to_string() {
                    return Err(Error::VersionMismatch { found: value.to_string(), expected: FORMAT_VERSION });
                }
                version_seen = true;
            }
            "instance" => instance = value.to_string(),
            "n" => n = Some(value.parse::<usize>().map_err(|_| Error::malformed(line, "`n` expects a count"))?),
            other => return Err(Error::malformed(line, format!("unknown header key `{other}`"))),
        }
    }
    if !version_seen {
        return Err(Error::malformed(0, "header lacks `format_version`"));
    }
    let mut velocities = Vec::new();
    let mut last_line = 0;
    for (line, row) in body {
        last_line = line;
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::malformed(line, format!("expected 4 columns, found {}", fields.len())));
        }
        let id = fields[0]
            .parse::<usize>()
            .map_err(|_| Error::malformed(line, format!("bad aircraft id `{}`", fields[0])))?;
        let v = Vec3::new(parse_f64(fields[1], line)?, parse_f64(fields[2], line)?, parse_f64(fields[3], line)?);
        velocities.push((id, v));
    }
    if let Some(n) = n {
        if n != velocities.len() {
            return Err(Error::malformed(
                last_line,
                format!("header declares n = {n} but the body has {} rows", velocities.len()),
            ));
        }
    }
    Ok(Solution { instance, velocities })
}

/// Re-analyzes `instance` with the solution's velocities in place of the
/// nominal ones. The solution must cover exactly the instance's aircraft.
pub fn validate_solution(instance: &Instance, solution: &Solution) -> Result<ComplexityReport> {
    let expected: BTreeSet<usize> = instance.aircraft.iter().map(|a| a.id).collect();
    let mut given = BTreeSet::new();
    for (id, _) in &solution.velocities {
        if !given.insert(*id) {
            return Err(Error::IdMismatch(format!("aircraft {id} appears twice")));
        }
    }
    if given != expected {
        let missing: Vec<_> = expected.difference(&given).collect();
        let extra: Vec<_> = given.difference(&expected).collect();
        return Err(Error::IdMismatch(format!("missing {missing:?}, unexpected {extra:?}")));
    }
    let adjusted = instance.with_velocities(&solution.velocities)?;
    Ok(analyze(&adjusted))
}
