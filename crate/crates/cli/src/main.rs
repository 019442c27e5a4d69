//! Command-line front end: scenario generation, analysis, validation,
//! plotting and parameter sweeps.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tdgen::congestion::{
    default_margin, gen_pseudorandom, gen_random, resolve_congestion_params, BorderConfig, CongestionSpec,
    PseudoRandomConfig, RandomParams, SectorBox, SpeedRange, DEFAULT_MAX_TRIALS,
};
use tdgen::io::{load_instance, read_solution, render_instance, render_report, render_svg, validate_solution, SvgOptions};
use tdgen::scenario::{
    gen_circle, gen_cubic, gen_grid, gen_polyhedral, gen_rhomboidal, gen_sphere, CircleParams, HorizontalPlane,
    PolyhedralParams, RhomboidalParams, SphereParams, SpherePlacement, VerticalPlane,
};
use tdgen::sweep::{render_log, render_summary, run_sweep, SweepConfig};
use tdgen::{analyze, Dimension, Error, Instance, DEFAULT_SAFETY_DISTANCE};

/// Relative `--out` paths are resolved against this directory when it is set.
const OUT_DIR_VAR: &str = "TDGEN_OUT_DIR";

mod exit {
    pub const IO: u8 = 1;
    pub const PARAMETER: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const MALFORMED: u8 = 4;
    pub const CONFLICT: u8 = 5;
}

#[derive(Parser)]
#[command(name = "tdgen", version, about = "Benchmark instances for aircraft tactical deconfliction")]
struct Cli {
    /// Log progress and warnings to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Aircraft on a circle (or an arc of it) flying toward the center.
    Circle(CircleArgs),
    /// Aircraft on a sphere (or a patch of it) flying toward the center.
    Sphere(SphereArgs),
    /// Horizontal and sloped trails crossing in a plane.
    Rhomboidal(RhomboidalArgs),
    /// Stacked horizontal and vertical trail planes.
    Polyhedral(PolyhedralArgs),
    /// Rhomboidal layout with orthogonal trails.
    Grid(GridArgs),
    /// Polyhedral layout with orthogonal trails and planes.
    Cubic(CubicArgs),
    /// Uniformly random traffic in an air sector.
    Random(RandomArgs),
    /// Random traffic entering an air sector with a requested congestion.
    PseudoRandom(PseudoRandomArgs),
    /// Report conflicts, separations and durations of an instance.
    Analyze(AnalyzeArgs),
    /// Check a solution file against an instance.
    Validate(ValidateArgs),
    /// Draw an instance as SVG.
    Plot(PlotArgs),
    /// Run a congestion-accuracy sweep of pseudo-random instances.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Common {
    /// Speed, NM/h.
    #[arg(long, default_value_t = 480.0)]
    speed: f64,
    /// Half-width of the random heading deviation, degrees.
    #[arg(long, default_value_t = 0.0)]
    deviation: f64,
    /// Safety distance, NM.
    #[arg(long, default_value_t = DEFAULT_SAFETY_DISTANCE)]
    dmin: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CircleArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// NM.
    #[arg(long, default_value_t = 100.0)]
    radius: f64,
    /// Degrees.
    #[arg(long, default_value_t = 0.0)]
    sector_start: f64,
    /// Degrees; 360 is the full circle.
    #[arg(long, default_value_t = 360.0)]
    sector_width: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Placement {
    Lattice,
    Random,
}

#[derive(Args)]
struct SphereArgs {
    #[arg(long, default_value_t = 15)]
    n: usize,
    #[arg(long, default_value_t = 100.0)]
    radius: f64,
    /// Start of the azimuth range, degrees.
    #[arg(long, default_value_t = 0.0)]
    sector_start: f64,
    /// Width of the azimuth range, degrees.
    #[arg(long, default_value_t = 360.0)]
    sector_width: f64,
    /// Polar bounds from the z-axis, degrees.
    #[arg(long, default_value_t = 0.0)]
    phi_min: f64,
    #[arg(long, default_value_t = 180.0)]
    phi_max: f64,
    #[arg(long, value_enum, default_value_t = Placement::Lattice)]
    placement: Placement,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TrailCounts {
    /// Number of horizontal trails.
    #[arg(long, default_value_t = 5)]
    mx: usize,
    /// Number of sloped trails.
    #[arg(long, default_value_t = 5)]
    my: usize,
    /// Aircraft per horizontal trail.
    #[arg(long, default_value_t = 1)]
    nx: usize,
    /// Aircraft per sloped trail.
    #[arg(long, default_value_t = 1)]
    ny: usize,
    /// Distance between parallel trails, NM.
    #[arg(long, default_value_t = 20.0)]
    trail_sep: f64,
    /// Distance between consecutive aircraft on a trail, NM.
    #[arg(long, default_value_t = 20.0)]
    aircraft_sep: f64,
}

#[derive(Args)]
struct RhomboidalArgs {
    /// Slope of the sloped trails, degrees.
    #[arg(long, default_value_t = 120.0)]
    alpha: f64,
    #[command(flatten)]
    trails: TrailCounts,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    trails: TrailCounts,
    #[command(flatten)]
    common: Common,
}

/// Per-plane values are comma lists; a single value applies to every plane.
#[derive(Args)]
struct PlaneArgs {
    /// Number of horizontal planes.
    #[arg(long, default_value_t = 2)]
    hp: usize,
    /// Number of vertical planes.
    #[arg(long, default_value_t = 1)]
    vp: usize,
    #[arg(long, default_value = "3")]
    mx: String,
    #[arg(long, default_value = "3")]
    my: String,
    #[arg(long, default_value = "1")]
    nx: String,
    #[arg(long, default_value = "1")]
    ny: String,
    /// Trails per vertical plane.
    #[arg(long, default_value = "2")]
    mz: String,
    /// Aircraft per vertical trail.
    #[arg(long, default_value = "1")]
    nz: String,
    #[arg(long, default_value_t = 10.0)]
    plane_sep_h: f64,
    #[arg(long, default_value_t = 20.0)]
    plane_sep_v: f64,
    /// Trail spacing in horizontal planes, NM.
    #[arg(long, default_value_t = 20.0)]
    trail_sep: f64,
    /// Trail spacing in vertical planes, NM.
    #[arg(long, default_value_t = 20.0)]
    trail_sep_v: f64,
    #[arg(long, default_value_t = 20.0)]
    aircraft_sep: f64,
}

#[derive(Args)]
struct PolyhedralArgs {
    /// Slope per horizontal plane, degrees.
    #[arg(long, default_value = "120")]
    alpha: String,
    /// Angle per vertical plane, degrees.
    #[arg(long, default_value = "60")]
    beta: String,
    #[command(flatten)]
    planes: PlaneArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CubicArgs {
    #[command(flatten)]
    planes: PlaneArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SectorArgs {
    #[arg(long, default_value = "2D")]
    dim: Dimension,
    /// Sector width along x, NM; also the default for the other axes.
    #[arg(long, default_value_t = 200.0)]
    width: f64,
    #[arg(long)]
    width_y: Option<f64>,
    /// Sector height for 3D instances, NM.
    #[arg(long)]
    width_z: Option<f64>,
    /// Minimum speed, NM/h.
    #[arg(long, default_value_t = 400.0)]
    vmin: f64,
    /// Maximum speed, NM/h.
    #[arg(long, default_value_t = 500.0)]
    vmax: f64,
}

impl SectorArgs {
    fn sector(&self, margin: f64) -> SectorBox {
        SectorBox {
            width_x: self.width,
            width_y: self.width_y.unwrap_or(self.width),
            width_z: match self.dim {
                Dimension::TwoD => None,
                Dimension::ThreeD => Some(self.width_z.unwrap_or(self.width)),
            },
            margin,
        }
    }

    fn speed(&self) -> SpeedRange {
        SpeedRange { min: self.vmin, max: self.vmax }
    }
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[command(flatten)]
    sector: SectorArgs,
    #[arg(long, default_value_t = DEFAULT_SAFETY_DISTANCE)]
    dmin: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PseudoRandomArgs {
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Requested number of conflicting pairs.
    #[arg(long)]
    nc: Option<usize>,
    /// Probability that an aircraft is in conflict.
    #[arg(long)]
    pc: Option<f64>,
    /// Maximum conflicts per aircraft.
    #[arg(long)]
    maxc: Option<usize>,
    #[command(flatten)]
    sector: SectorArgs,
    /// Depth of the placement band, NM; a tenth of the smallest width by default.
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long, default_value = "all")]
    borders: BorderConfig,
    #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
    max_trials: usize,
    /// Minimum distance between initial positions, NM; the safety distance by default.
    #[arg(long)]
    min_spacing: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SAFETY_DISTANCE)]
    dmin: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    instance: PathBuf,
    /// Mark conflicting pairs.
    #[arg(long)]
    highlight: bool,
    /// Arrow length in minutes of flight.
    #[arg(long, default_value_t = 6.0)]
    arrow_minutes: f64,
    /// 3D view azimuth, degrees.
    #[arg(long, default_value_t = -60.0)]
    azimuth: f64,
    /// 3D view elevation, degrees.
    #[arg(long, default_value_t = 25.0)]
    elevation: f64,
    #[arg(long, default_value_t = 800)]
    size: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "2D")]
    dim: Dimension,
    /// Comma list of aircraft counts.
    #[arg(long)]
    n: Option<String>,
    /// Comma list of conflict densities.
    #[arg(long)]
    den: Option<String>,
    /// Comma list of offsets added to round(4·n_c/n) to obtain max_c.
    #[arg(long)]
    offsets: Option<String>,
    /// Comma list of sector widths, NM.
    #[arg(long)]
    width: Option<String>,
    #[arg(long, default_value_t = 1)]
    seeds_per_cell: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
    max_trials: usize,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Summary table; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-instance log.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Conflicts(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::PARAMETER,
            CliError::Conflicts(_) => exit::CONFLICT,
            CliError::Core(e) => match e {
                Error::InvalidParameter { .. } => exit::PARAMETER,
                Error::Infeasible(_) => exit::INFEASIBLE,
                Error::Malformed { .. }
                | Error::VersionMismatch { .. }
                | Error::IdMismatch(_)
                | Error::UnknownAircraft(_) => exit::MALFORMED,
                Error::Io(_) => exit::IO,
            },
        }
    }
}

fn list<T: FromStr>(name: &str, text: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| CliError::Usage(format!("--{name}: `{t}`: {e}"))))
        .collect()
}

/// A comma list with one entry per plane, or a single entry for all of them.
fn per_plane<T: FromStr + Clone>(name: &str, text: &str, planes: usize) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    let values = list::<T>(name, text)?;
    match values.len() {
        1 => Ok(vec![values[0].clone(); planes]),
        k if k == planes => Ok(values),
        k => Err(CliError::Usage(format!("--{name} has {k} values for {planes} planes"))),
    }
}

fn output_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let path = output_path(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&path, text)?;
            log::info!("wrote {}", path.display());
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_instance(instance: &Instance, out: Option<&Path>) -> Result<(), CliError> {
    emit(out, &render_instance(instance))
}

fn polyhedral(planes: &PlaneArgs, alpha: &str, beta: &str, common: &Common) -> Result<PolyhedralParams, CliError> {
    let hp = planes.hp;
    let vp = planes.vp;
    let alphas = per_plane::<f64>("alpha", alpha, hp)?;
    let mx = per_plane::<usize>("mx", &planes.mx, hp)?;
    let my = per_plane::<usize>("my", &planes.my, hp)?;
    let nx = per_plane::<usize>("nx", &planes.nx, hp)?;
    let ny = per_plane::<usize>("ny", &planes.ny, hp)?;
    let betas = per_plane::<f64>("beta", beta, vp)?;
    let mz = per_plane::<usize>("mz", &planes.mz, vp)?;
    let nz = per_plane::<usize>("nz", &planes.nz, vp)?;
    Ok(PolyhedralParams {
        horizontal: (0..hp)
            .map(|h| HorizontalPlane { alpha: alphas[h], m_x: mx[h], m_y: my[h], n_x: nx[h], n_y: ny[h] })
            .collect(),
        vertical: (0..vp).map(|v| VerticalPlane { beta: betas[v], m_z: mz[v], n_z: nz[v] }).collect(),
        plane_sep_h: planes.plane_sep_h,
        plane_sep_v: planes.plane_sep_v,
        trail_sep_h: planes.trail_sep,
        trail_sep_v: planes.trail_sep_v,
        aircraft_sep: planes.aircraft_sep,
        speed: common.speed,
        deviation_range: common.deviation,
        safety_distance: common.dmin,
        seed: common.seed,
    })
}

fn rhomboidal(alpha: f64, t: &TrailCounts, common: &Common) -> RhomboidalParams {
    RhomboidalParams {
        m_x: t.mx,
        m_y: t.my,
        n_x: t.nx,
        n_y: t.ny,
        alpha,
        trail_sep: t.trail_sep,
        aircraft_sep: t.aircraft_sep,
        speed: common.speed,
        deviation_range: common.deviation,
        safety_distance: common.dmin,
        seed: common.seed,
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Circle(a) => {
            let params = CircleParams {
                n: a.n,
                radius: a.radius,
                sector_start: a.sector_start,
                sector_width: a.sector_width,
                speed: a.common.speed,
                deviation_range: a.common.deviation,
                safety_distance: a.common.dmin,
                seed: a.common.seed,
            };
            emit_instance(&gen_circle(&params)?, a.common.out.as_deref())
        }
        Command::Sphere(a) => {
            let params = SphereParams {
                n: a.n,
                radius: a.radius,
                theta_start: a.sector_start,
                theta_width: a.sector_width,
                phi_min: a.phi_min,
                phi_max: a.phi_max,
                speed: a.common.speed,
                deviation_range: a.common.deviation,
                placement: match a.placement {
                    Placement::Lattice => SpherePlacement::Lattice,
                    Placement::Random => SpherePlacement::Random,
                },
                safety_distance: a.common.dmin,
                seed: a.common.seed,
            };
            emit_instance(&gen_sphere(&params)?, a.common.out.as_deref())
        }
        Command::Rhomboidal(a) => {
            emit_instance(&gen_rhomboidal(&rhomboidal(a.alpha, &a.trails, &a.common))?, a.common.out.as_deref())
        }
        Command::Grid(a) => emit_instance(&gen_grid(&rhomboidal(90.0, &a.trails, &a.common))?, a.common.out.as_deref()),
        Command::Polyhedral(a) => {
            let params = polyhedral(&a.planes, &a.alpha, &a.beta, &a.common)?;
            emit_instance(&gen_polyhedral(&params)?, a.common.out.as_deref())
        }
        Command::Cubic(a) => {
            let params = polyhedral(&a.planes, "90", "90", &a.common)?;
            emit_instance(&gen_cubic(&params)?, a.common.out.as_deref())
        }
        Command::Random(a) => {
            let mut params = RandomParams::new(a.n, a.sector.sector(0.0), a.seed);
            params.speed = a.sector.speed();
            params.safety_distance = a.dmin;
            emit_instance(&gen_random(&params)?, a.out.as_deref())
        }
        Command::PseudoRandom(a) => {
            let sector = a.sector.sector(0.0);
            let smallest = [Some(sector.width_x), Some(sector.width_y), sector.width_z]
                .into_iter()
                .flatten()
                .fold(f64::INFINITY, f64::min);
            let sector = SectorBox { margin: a.margin.unwrap_or_else(|| default_margin(smallest)), ..sector };
            let congestion = resolve_congestion_params(a.n, CongestionSpec { n_c: a.nc, p_c: a.pc, max_c: a.maxc })?;
            for w in &congestion.warnings {
                eprintln!("warning: {w}");
            }
            let mut cfg = PseudoRandomConfig::new(congestion, sector, a.seed);
            cfg.borders = a.borders;
            cfg.speed = a.sector.speed();
            cfg.max_trials = a.max_trials;
            cfg.safety_distance = a.dmin;
            cfg.min_spacing = a.min_spacing.unwrap_or(a.dmin);
            let instance = gen_pseudorandom(&cfg)?;
            if let (Some(req), Some(got)) = (instance.metadata.requested_conflicts, instance.metadata.achieved_conflicts) {
                if req != got {
                    eprintln!("note: requested {req} conflicts, generated {got}");
                }
            }
            emit_instance(&instance, a.out.as_deref())
        }
        Command::Analyze(a) => {
            let instance = load_instance(&a.instance)?;
            emit(a.out.as_deref(), &render_report(&analyze(&instance)))
        }
        Command::Validate(a) => {
            let instance = load_instance(&a.instance)?;
            let solution = read_solution(fs::File::open(&a.solution)?)?;
            let report = validate_solution(&instance, &solution)?;
            emit(a.out.as_deref(), &render_report(&report))?;
            if report.is_conflict_free() {
                eprintln!("conflict-free");
                Ok(())
            } else {
                Err(CliError::Conflicts(report.n_conflicts))
            }
        }
        Command::Plot(a) => {
            let instance = load_instance(&a.instance)?;
            let opts = SvgOptions {
                width: a.size,
                height: a.size,
                arrow_minutes: a.arrow_minutes,
                highlight_conflicts: a.highlight,
                view_azimuth: a.azimuth,
                view_elevation: a.elevation,
            };
            emit(a.out.as_deref(), &render_svg(&instance, &opts))
        }
        Command::Sweep(a) => {
            let mut cfg = SweepConfig::desk(a.dim);
            if let Some(t) = &a.n {
                cfg.n_values = list("n", t)?;
            }
            if let Some(t) = &a.den {
                cfg.densities = list("den", t)?;
            }
            if let Some(t) = &a.offsets {
                cfg.offsets = list("offsets", t)?;
            }
            if let Some(t) = &a.width {
                cfg.widths = list("width", t)?;
            }
            cfg.seeds_per_cell = a.seeds_per_cell;
            cfg.max_trials = a.max_trials;
            cfg.master_seed = a.seed;
            let result = run_sweep(&cfg)?;
            if let Some(path) = &a.log {
                emit(Some(path), &render_log(&result))?;
            }
            emit(a.out.as_deref(), &render_summary(&result))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "error",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Core(err) => eprintln!("error: {err}"),
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Conflicts(k) => eprintln!("{k} conflicts remain"),
            }
            ExitCode::from(e.code())
        }
    }
}
