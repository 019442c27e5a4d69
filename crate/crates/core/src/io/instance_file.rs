//! Plain-text instance files.
//!
//! ```text
//! # tdgen instance
//! format_version: 1
//! dimension: 2D
//! n: 2
//! safety_distance: 5
//! scenario: circle
//! seed: 0
//! generator_version: 0.1.0
//! param.radius: 100
//! ---
//! # id x y z vx vy vz
//! 0 1.0000000000000000e2 0.0000000000000000e0 ...
//! ```
//!
//! Header lines are `key: value`; generation parameters use the `param.`
//! prefix and keep their order. Numeric rows carry 17 significant digits,
//! which reproduces every `f64` exactly.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::instance::{Aircraft, Dimension, Instance, Metadata, ScenarioKind};

use super::{fmt_f64, parse_f64, split_header, Header, FORMAT_VERSION};

const MAGIC: &str = "# tdgen instance";

pub fn render_instance(instance: &Instance) -> String {
    let md = &instance.metadata;
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(s, "dimension: {}", instance.dimension);
    let _ = writeln!(s, "n: {}", instance.n());
    let _ = writeln!(s, "safety_distance: {}", instance.safety_distance);
    let _ = writeln!(s, "scenario: {}", md.scenario);
    match md.seed {
        Some(seed) => {
            let _ = writeln!(s, "seed: {seed}");
        }
        None => {
            let _ = writeln!(s, "seed: none");
        }
    }
    let _ = writeln!(s, "generator_version: {}", md.generator_version);
    let optional = [
        ("requested_conflicts", md.requested_conflicts),
        ("achieved_conflicts", md.achieved_conflicts),
        ("escalations", md.escalations),
        ("unmet_targets", md.unmet_targets),
    ];
    for (key, value) in optional {
        if let Some(v) = value {
            let _ = writeln!(s, "{key}: {v}");
        }
    }
    for (k, v) in &md.params {
        let _ = writeln!(s, "param.{k}: {v}");
    }
    let _ = writeln!(s, "---");
    let _ = writeln!(s, "# id x y z vx vy vz");
    for a in &instance.aircraft {
        let _ = writeln!(
            s,
            "{} {} {} {} {} {} {}",
            a.id,
            fmt_f64(a.p_hat.x),
            fmt_f64(a.p_hat.y),
            fmt_f64(a.p_hat.z),
            fmt_f64(a.v_hat.x),
            fmt_f64(a.v_hat.y),
            fmt_f64(a.v_hat.z)
        );
    }
    s
}

/// Writes the instance and returns the number of bytes written.
pub fn write_instance<W: Write>(instance: &Instance, mut out: W) -> Result<usize> {
    let text = render_instance(instance);
    out.write_all(text.as_bytes())?;
    Ok(text.len())
}

pub fn read_instance<R: Read>(mut input: R) -> Result<Instance> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    parse_instance(&text)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<usize> {
    let file = std::fs::File::create(path)?;
    write_instance(instance, std::io::BufWriter::new(file))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    read_instance(std::fs::File::open(path)?)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let (header, body) = split_header(text, MAGIC)?;
    let mut dimension = None;
    let mut n = None;
    let mut safety_distance = None;
    let mut md = Metadata::new(ScenarioKind::Custom, None);
    let mut scenario_seen = false;
    let mut version_seen = false;

    for Header { line, key, value } in header {
        if let Some(param) = key.strip_prefix("param.") {
            md.params.push((param.to_string(), value.to_string()));
            continue;
        }
        let count = |v: &str| v.parse::<usize>().map_err(|_| Error::malformed(line, format!("`{key}` expects a count")));
        match key {
            "format_version" => {
                if value != FORMAT_VERSION.to_string() {
                    return Err(Error::VersionMismatch { found: value.to_string(), expected: FORMAT_VERSION });
                }
                version_seen = true;
            }
            "dimension" => dimension = Some(value.parse::<Dimension>().map_err(|e| Error::malformed(line, e))?),
            "n" => n = Some(count(value)?),
            "safety_distance" => safety_distance = Some(parse_f64(value, line)?),
            "scenario" => {
                md.scenario = value.parse().map_err(|e: String| Error::malformed(line, e))?;
                scenario_seen = true;
            }
            "seed" => {
                md.seed = match value {
                    "none" => None,
                    v => Some(v.parse().map_err(|_| Error::malformed(line, "`seed` expects an unsigned integer"))?),
                }
            }
            "generator_version" => md.generator_version = value.to_string(),
            "requested_conflicts" => md.requested_conflicts = Some(count(value)?),
            "achieved_conflicts" => md.achieved_conflicts = Some(count(value)?),
            "escalations" => md.escalations = Some(count(value)?),
            "unmet_targets" => md.unmet_targets = Some(count(value)?),
            other => return Err(Error::malformed(line, format!("unknown header key `{other}`"))),
        }
    }

    let missing = |what: &str| Error::malformed(0, format!("header lacks `{what}`"));
    if !version_seen {
        return Err(missing("format_version"));
    }
    if !scenario_seen {
        return Err(missing("scenario"));
    }
    let dimension = dimension.ok_or_else(|| missing("dimension"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let safety_distance = safety_distance.ok_or_else(|| missing("safety_distance"))?;

    let mut aircraft = Vec::with_capacity(n);
    let mut last_line = 0;
    for (line, row) in body {
        last_line = line;
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(Error::malformed(line, format!("expected 7 columns, found {}", fields.len())));
        }
        let id = fields[0]
            .parse::<usize>()
            .map_err(|_| Error::malformed(line, format!("bad aircraft id `{}`", fields[0])))?;
        let mut v = [0.0; 6];
        for (slot, tok) in v.iter_mut().zip(&fields[1..]) {
            *slot = parse_f64(tok, line)?;
        }
        let p_hat = Vec3::new(v[0], v[1], v[2]);
        let v_hat = Vec3::new(v[3], v[4], v[5]);
        if dimension == Dimension::TwoD && (p_hat.z != 0.0 || v_hat.z != 0.0) {
            return Err(Error::malformed(line, format!("aircraft {id} has a nonzero z component in a 2D instance")));
        }
        aircraft.push(Aircraft { id, p_hat, v_hat });
    }
    if aircraft.len() != n {
        return Err(Error::malformed(
            last_line,
            format!("header declares n = {n} but the body has {} rows", aircraft.len()),
        ));
    }
    Instance::new(dimension, aircraft, safety_distance, md).map_err(|e| match e {
        Error::InvalidParameter { reason, .. } => Error::malformed(last_line, reason),
        other => other,
    })
}
