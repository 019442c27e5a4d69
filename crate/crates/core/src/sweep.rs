//! Parameter sweeps over pseudo-random instances.
//!
//! Each cell `(n, den)` requests `n_c = round(den · n(n-1)/2)` conflicts and
//! generates one instance per `(width, offset, repetition)` configuration,
//! with `max_c = round(4·n_c/n) + offset`. Conflicts are always recounted
//! from the generated instance.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::analysis::analyze;
use crate::congestion::{
    default_margin, gen_pseudorandom, resolve_congestion_params, round_count, CongestionSpec, PseudoRandomConfig,
    SectorBox, DEFAULT_MAX_TRIALS,
};
use crate::error::{ensure, Error, Result};
use crate::instance::Dimension;
use crate::io::{parse_f64, split_header, FORMAT_VERSION};
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub dimension: Dimension,
    pub n_values: Vec<usize>,
    pub densities: Vec<f64>,
    /// Offsets `t` added to `round(4·n_c/n)` to obtain `max_c`.
    pub offsets: Vec<usize>,
    /// Square (2D) or cube (3D) side lengths, NM.
    pub widths: Vec<f64>,
    pub seeds_per_cell: usize,
    pub master_seed: u64,
    pub max_trials: usize,
}

impl SweepConfig {
    /// Desk-scale defaults: n up to 30, two densities, two offsets, four widths.
    pub fn desk(dimension: Dimension) -> Self {
        let widths = match dimension {
            Dimension::TwoD => vec![150.0, 200.0, 250.0, 300.0],
            Dimension::ThreeD => vec![50.0, 70.0, 100.0, 150.0],
        };
        SweepConfig {
            dimension,
            n_values: vec![10, 15, 20, 25, 30],
            densities: vec![0.05, 0.10],
            offsets: vec![1, 2],
            widths,
            seeds_per_cell: 1,
            master_seed: 1,
            max_trials: DEFAULT_MAX_TRIALS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(!self.n_values.is_empty(), "n_values", "must not be empty")?;
        ensure(!self.densities.is_empty(), "densities", "must not be empty")?;
        ensure(!self.offsets.is_empty(), "offsets", "must not be empty")?;
        ensure(!self.widths.is_empty(), "widths", "must not be empty")?;
        ensure(self.seeds_per_cell >= 1, "seeds_per_cell", "must be at least 1")?;
        ensure(self.n_values.iter().all(|&n| n >= 2), "n_values", "every n must be at least 2")?;
        ensure(
            self.densities.iter().all(|d| *d > 0.0 && *d <= 1.0),
            "densities",
            "every density must lie in (0, 1]",
        )?;
        ensure(self.widths.iter().all(|w| *w > 0.0 && w.is_finite()), "widths", "must be positive")?;
        for &n in &self.n_values {
            for &den in &self.densities {
                if requested_conflicts(n, den) == 0 {
                    return Err(Error::param(
                        "densities",
                        format!("density {den} rounds to zero conflicts for n = {n}"),
                    ));
                }
            }
        }
        Ok(())
    }
}

pub fn requested_conflicts(n: usize, den: f64) -> usize {
    round_count(den * (n * (n - 1)) as f64 / 2.0)
}

/// `round(4·n_c/n) + offset`, capped at `n - 1`.
pub fn cap_for(n: usize, n_c: usize, offset: usize) -> usize {
    (round_count(4.0 * n_c as f64 / n as f64) + offset).clamp(1, n - 1)
}

/// One generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub n: usize,
    pub den: f64,
    pub n_c: usize,
    pub width: f64,
    pub offset: usize,
    pub max_c: usize,
    pub rep: usize,
    pub seed: u64,
    /// Conflicts recounted by the analyzer.
    pub achieved: usize,
    /// Conflicts reported by the generator.
    pub generator_achieved: usize,
    pub mean_separation: Option<f64>,
    pub mean_duration: Option<f64>,
}

impl InstanceRecord {
    /// `100·|n_c - n'_c| / n_c`.
    pub fn relative_difference_pct(&self) -> f64 {
        100.0 * (self.n_c as f64 - self.achieved as f64).abs() / self.n_c as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub den: f64,
    pub n_c: usize,
    pub configurations: usize,
    /// Percent.
    pub mean_relative_difference: f64,
    /// Percent.
    pub min_relative_difference: f64,
    pub min_attained: usize,
    /// Mean over instances of their average minimal separation, NM.
    pub mean_separation: Option<f64>,
    /// Mean over instances of their average conflict duration, minutes.
    pub mean_duration: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub dimension: Dimension,
    pub records: Vec<InstanceRecord>,
    pub cells: Vec<CellSummary>,
}

struct Job {
    n: usize,
    den_idx: usize,
    den: f64,
    width: f64,
    offset: usize,
    rep: usize,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let mut jobs = Vec::new();
    for &n in &config.n_values {
        for (den_idx, &den) in config.densities.iter().enumerate() {
            for &width in &config.widths {
                for &offset in &config.offsets {
                    for rep in 0..config.seeds_per_cell {
                        jobs.push(Job { n, den_idx, den, width, offset, rep });
                    }
                }
            }
        }
    }

    let records = jobs
        .par_iter()
        .map(|job| run_job(config, job))
        .collect::<Result<Vec<_>>>()?;
    let cells = summarize(&records);
    Ok(SweepResult { dimension: config.dimension, records, cells })
}

fn run_job(config: &SweepConfig, job: &Job) -> Result<InstanceRecord> {
    let n_c = requested_conflicts(job.n, job.den);
    let max_c = cap_for(job.n, n_c, job.offset);
    let congestion = resolve_congestion_params(job.n, CongestionSpec { n_c: Some(n_c), p_c: None, max_c: Some(max_c) })?;
    let margin = default_margin(job.width);
    let sector = match config.dimension {
        Dimension::TwoD => SectorBox::square(job.width, margin),
        Dimension::ThreeD => SectorBox::cube(job.width, margin),
    };
    let dim_tag = match config.dimension {
        Dimension::TwoD => 2,
        Dimension::ThreeD => 3,
    };
    let seed = derive_seed(
        config.master_seed,
        &[dim_tag, job.n as u64, job.den_idx as u64, job.width.to_bits(), job.offset as u64, job.rep as u64],
    );
    let mut pr = PseudoRandomConfig::new(congestion, sector, seed);
    pr.max_trials = config.max_trials;
    let instance = gen_pseudorandom(&pr)?;
    let report = analyze(&instance);
    Ok(InstanceRecord {
        n: job.n,
        den: job.den,
        n_c,
        width: job.width,
        offset: job.offset,
        max_c,
        rep: job.rep,
        seed,
        achieved: report.n_conflicts,
        generator_achieved: instance.metadata.achieved_conflicts.unwrap_or(0),
        mean_separation: report.mean_min_separation,
        mean_duration: report.mean_duration,
    })
}

/// Aggregates records into per-cell statistics. The result does not depend
/// on the order of `records`.
pub fn summarize(records: &[InstanceRecord]) -> Vec<CellSummary> {
    let mut sorted: Vec<&InstanceRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (a.n, a.den.to_bits(), a.width.to_bits(), a.offset, a.rep)
            .cmp(&(b.n, b.den.to_bits(), b.width.to_bits(), b.offset, b.rep))
    });

    let mut cells: Vec<CellSummary> = Vec::new();
    for group in sorted.chunk_by(|a, b| a.n == b.n && a.den == b.den) {
        let rel: Vec<f64> = group.iter().map(|r| r.relative_difference_pct()).collect();
        let min = rel.iter().copied().fold(f64::INFINITY, f64::min);
        let seps: Vec<f64> = group.iter().filter_map(|r| r.mean_separation).collect();
        let durs: Vec<f64> = group.iter().filter_map(|r| r.mean_duration).collect();
        cells.push(CellSummary {
            n: group[0].n,
            den: group[0].den,
            n_c: group[0].n_c,
            configurations: group.len(),
            mean_relative_difference: rel.iter().sum::<f64>() / rel.len() as f64,
            min_relative_difference: min,
            min_attained: rel.iter().filter(|&&r| r == min).count(),
            mean_separation: mean(&seps),
            mean_duration: mean(&durs),
        });
    }
    cells
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn opt2(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

/// Human-readable table, one row per cell.
pub fn render_summary(result: &SweepResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# tdgen sweep summary ({})", result.dimension);
    let _ = writeln!(
        s,
        "{:>4} {:>5} {:>5} {:>7} {:>12} {:>12} {:>10} {:>10}",
        "n", "den", "n_c", "configs", "mean_rel_%", "min_rel_%(k)", "sep_nm", "dur_min"
    );
    for c in &result.cells {
        let min = format!("{:.2}({})", c.min_relative_difference, c.min_attained);
        let _ = writeln!(
            s,
            "{:>4} {:>5.2} {:>5} {:>7} {:>12.2} {:>12} {:>10} {:>10}",
            c.n,
            c.den,
            c.n_c,
            c.configurations,
            c.mean_relative_difference,
            min,
            opt2(c.mean_separation),
            opt2(c.mean_duration)
        );
    }
    s
}

/// Machine-readable per-instance log with exact floating-point values.
pub fn render_log(result: &SweepResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# tdgen sweep log");
    let _ = writeln!(s, "format_version: {FORMAT_VERSION}");
    let _ = writeln!(s, "dimension: {}", result.dimension);
    let _ = writeln!(s, "---");
    let _ = writeln!(s, "# n den n_c width t max_c rep seed achieved generator_achieved mean_sep_nm mean_dur_min");
    let exact = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| format!("{v:.16e}"));
    for r in &result.records {
        let _ = writeln!(
            s,
            "{} {} {} {} {} {} {} {} {} {} {} {}",
            r.n,
            r.den,
            r.n_c,
            r.width,
            r.offset,
            r.max_c,
            r.rep,
            r.seed,
            r.achieved,
            r.generator_achieved,
            exact(r.mean_separation),
            exact(r.mean_duration)
        );
    }
    s
}

const LOG_MAGIC: &str = "# tdgen sweep log";

/// Reads a log produced by [`render_log`].
pub fn parse_log(text: &str) -> Result<SweepResult> {
    let (headers, rows) = split_header(text, LOG_MAGIC)?;
    let mut dimension = None;
    for h in headers {
        match h.key {
            "format_version" => {
                if h.value != FORMAT_VERSION.to_string() {
                    return Err(Error::VersionMismatch { found: h.value.to_string(), expected: FORMAT_VERSION });
                }
            }
            "dimension" => {
                dimension = Some(h.value.parse::<Dimension>().map_err(|e| Error::malformed(h.line, e))?);
            }
            other => return Err(Error::malformed(h.line, format!("unknown header key `{other}`"))),
        }
    }
    let dimension = dimension.ok_or_else(|| Error::malformed(1, "missing dimension"))?;

    let mut records = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let t: Vec<&str> = row.split_whitespace().collect();
        if t.len() != 12 {
            return Err(Error::malformed(line, format!("expected 12 columns, found {}", t.len())));
        }
        let int = |i: usize| t[i].parse::<usize>().map_err(|e| Error::malformed(line, format!("`{}`: {e}", t[i])));
        let opt = |i: usize| if t[i] == "none" { Ok(None) } else { parse_f64(t[i], line).map(Some) };
        records.push(InstanceRecord {
            n: int(0)?,
            den: parse_f64(t[1], line)?,
            n_c: int(2)?,
            width: parse_f64(t[3], line)?,
            offset: int(4)?,
            max_c: int(5)?,
            rep: int(6)?,
            seed: t[7].parse::<u64>().map_err(|e| Error::malformed(line, format!("`{}`: {e}", t[7])))?,
            achieved: int(8)?,
            generator_achieved: int(9)?,
            mean_separation: opt(10)?,
            mean_duration: opt(11)?,
        });
    }
    let cells = summarize(&records);
    Ok(SweepResult { dimension, records, cells })
}
