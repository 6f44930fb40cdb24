//! The `hzl` command line.
//!
//! Every command prints (or writes to `--out DIR/report.json`) a JSON report
//! wrapped in an [`report::Envelope`] that echoes the parsed configuration.
//! Exit codes: 0 when the checks pass, 2 when an audit or a predicted
//! minimum fails, 3 for invalid input, 4 for numerical failures.

pub mod report;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens, ZeroCensus, DEDUP_RELATIVE, DEFAULT_DENSITY};
use crate::perturb::{self, Mode, PerturbationPlan, Selector, Step, SweepRow};
use crate::portrait::{self, Markers, PortraitSpec};
use crate::random;
use crate::rational::RationalFunction;
use report::Envelope;

#[derive(Debug, Parser, Serialize)]
#[command(name = "hzl", version, about = "Zeros of rational harmonic functions R(z) - conj(z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Audited census of the zeros.
    Zeros(ZerosArgs),
    /// Add a pole and compare the zeros before and after.
    Perturb(PerturbArgs),
    /// Run a sequence of constant and pole steps.
    Pipeline(PipelineArgs),
    /// Rotate the residue through a list of angles.
    Sweep(SweepArgs),
    /// Render a phase portrait.
    Portrait(PortraitArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FunctionArgs {
    /// Rational function as inline JSON `{"num": [[re, im], ...], "den": [...]}` or a path to such a file.
    #[arg(long = "fn", value_name = "JSON|PATH")]
    pub function: Option<String>,
    /// Circular lens `z^(d-1) / (z^d - r^d)`.
    #[arg(long, value_name = "d=D,r=R")]
    pub rhie: Option<String>,
    /// Random regular rational function of the given degree.
    #[arg(long, value_name = "DEGREE")]
    pub random: Option<usize>,
    /// Random degree-two function fitted through five random zeros.
    #[arg(long)]
    pub fitted: bool,
    /// Seed for the random instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CensusArgs {
    /// Newton seeds per unit length.
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    pub density: f64,
    /// Center of the search disk, `re,im` or `a+bi`.
    #[arg(long)]
    pub center: Option<String>,
    /// Radius of the search disk.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Relative distance under which two zeros are merged.
    #[arg(long, default_value_t = DEDUP_RELATIVE)]
    pub dedup: f64,
    /// Density doublings after a failed audit.
    #[arg(long, default_value_t = 3)]
    pub max_retries: usize,
    /// Run single-threaded.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Directory for `report.json` and images; without it the report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render portraits into the output directory.
    #[arg(long)]
    pub portrait: bool,
    /// Portrait size in pixels.
    #[arg(long, default_value = "512x512")]
    pub pixels: String,
}

#[derive(Debug, Args, Serialize)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub census: CensusArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub census: CensusArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Pole position: a point (`0`, `re,im`, `a+bi`) or a selector such as `leftmost-reversing`.
    #[arg(long)]
    pub at: String,
    /// Modulus of the residue; chosen automatically when omitted.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Argument of the residue.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub eps_theta: f64,
    /// Use `(1 - eps) R + eps / (z - z0)` instead of `R + eps / (z - z0)`.
    #[arg(long)]
    pub convex: bool,
    /// Order of the added pole.
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    /// Radius of the disk in which created zeros are counted.
    #[arg(long)]
    pub near_radius: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct PipelineArgs {
    /// File with `function` and `steps`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Steps as inline JSON or a path, used with the function flags.
    #[arg(long)]
    pub steps: Option<String>,
    #[command(flatten)]
    pub census: CensusArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub census: CensusArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Zero of order n >= 3 at which the pole is added.
    #[arg(long)]
    pub at: String,
    /// Residue modulus; defaults to half of eps_sharp.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Comma-separated angles; a `pi` suffix multiplies by pi.
    #[arg(long, default_value = "0,0.1pi,0.2pi,pi")]
    pub thetas: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PortraitArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub census: CensusArgs,
    /// Image file to write.
    #[arg(long)]
    pub output: PathBuf,
    /// Window center; defaults to the census disk center.
    #[arg(long = "window-center")]
    pub window_center: Option<String>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long, default_value = "512x512")]
    pub pixels: String,
    #[arg(long)]
    pub no_markers: bool,
    #[arg(long)]
    pub no_shading: bool,
}

/// A finished command: the report text and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub ok: bool,
    pub out: Option<PathBuf>,
}

/// `re,im`, `a+bi`, `bi` or a plain real number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim().replace(' ', "");
    let bad = || Error::InvalidArgument(format!("cannot parse complex number {s:?}"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(num(re)?, num(im)?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(num(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(t),
    };
    match split {
        Some(k) => Ok(Complex64::new(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_angle(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse angle {s:?}"));
    match s.strip_suffix("pi") {
        Some("") => Ok(PI),
        Some("-") => Ok(-PI),
        Some(k) => k.parse::<f64>().map(|k| k * PI).map_err(|_| bad()),
        None => s.parse().map_err(|_| bad()),
    }
}

fn parse_pixels(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("pixels must look like 512x512, got {s:?}"));
    let (w, h) = s.split_once('x').ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn parse_rhie(s: &str) -> Result<RationalFunction> {
    let mut d = None;
    let mut r = None;
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("bad --rhie entry {part:?}")))?;
        let bad = || Error::InvalidArgument(format!("bad value in --rhie entry {part:?}"));
        match k.trim() {
            "d" => d = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
            "r" => r = Some(v.trim().parse::<f64>().map_err(|_| bad())?),
            other => return Err(Error::InvalidArgument(format!("unknown --rhie key {other:?}"))),
        }
    }
    match (d, r) {
        (Some(d), Some(r)) => RationalFunction::rhie_base(d, r),
        _ => Err(Error::InvalidArgument("--rhie needs d=..,r=..".into())),
    }
}

/// Inline JSON when the text starts with `{` or `[`, otherwise a file.
fn read_json_arg(s: &str) -> Result<String> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(s.to_string())
    } else {
        Ok(std::fs::read_to_string(s)?)
    }
}

impl FunctionArgs {
    fn given(&self) -> usize {
        self.function.is_some() as usize + self.rhie.is_some() as usize + self.random.is_some() as usize + self.fitted as usize
    }

    pub fn load(&self, opts: &CensusOptions) -> Result<RationalFunction> {
        match self.given() {
            0 => return Err(Error::InvalidArgument("no function given (use --fn, --rhie, --random or --fitted)".into())),
            1 => {}
            _ => return Err(Error::InvalidArgument("give exactly one of --fn, --rhie, --random, --fitted".into())),
        }
        if let Some(s) = &self.function {
            return Ok(serde_json::from_str(&read_json_arg(s)?)?);
        }
        if let Some(s) = &self.rhie {
            return parse_rhie(s);
        }
        let mut rng = random::rng(self.seed);
        if let Some(d) = self.random {
            return random::random_regular(&mut rng, d, opts).map(|(r, _)| r);
        }
        random::fitted_degree_two(&mut rng, opts).map(|(r, _)| r)
    }
}

impl CensusArgs {
    pub fn options(&self) -> Result<CensusOptions> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
            }
        };
        positive("density", self.density)?;
        positive("dedup", self.dedup)?;
        if let Some(r) = self.radius {
            positive("radius", r)?;
        }
        Ok(CensusOptions {
            center: self.center.as_deref().map(parse_complex).transpose()?,
            radius: self.radius,
            density: self.density,
            dedup_relative: self.dedup,
            max_retries: self.max_retries,
            parallel: !self.sequential,
            extra_seeds: Vec::new(),
        })
    }
}

/// Square window around the zeros and poles of a census, with margin.
fn default_window(f: &HarmonicLens, census: &ZeroCensus) -> (Complex64, f64) {
    let points: Vec<Complex64> = census
        .zeros
        .iter()
        .map(|z| z.location)
        .chain(f.rational().poles().iter().map(|p| p.location))
        .collect();
    if points.is_empty() {
        return (census.center, 2.0 * census.radius);
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in &points {
        lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let side = 1.3 * (hi.re - lo.re).max(hi.im - lo.im).max(0.5);
    (0.5 * (lo + hi), side)
}

fn render_census(f: &HarmonicLens, census: &ZeroCensus, pixels: &str, path: &Path, parallel: bool) -> Result<()> {
    let (w, h) = parse_pixels(pixels)?;
    let (center, side) = default_window(f, census);
    let aspect = h as f64 / w as f64;
    let mut spec = PortraitSpec::new(center, side, side * aspect, w, h);
    spec.markers = Markers::from_census(f, census)?;
    spec.parallel = parallel;
    portrait::render(f, &spec)?.write_png(path)
}

fn portrait_dir(output: &OutputArgs) -> Result<Option<&Path>> {
    match (&output.out, output.portrait) {
        (_, false) => Ok(None),
        (Some(dir), true) => {
            std::fs::create_dir_all(dir)?;
            Ok(Some(dir))
        }
        (None, true) => Err(Error::InvalidArgument("--portrait needs --out".into())),
    }
}

fn finish<C: Serialize, R: Serialize>(command: &str, config: &C, seed: u64, ok: bool, result: &R, out: &Option<PathBuf>) -> Result<Outcome> {
    let json = Envelope::new(command, config, seed, ok, result).to_json()?;
    if let Some(dir) = out {
        report::write_into(dir, "report.json", &json)?;
    }
    Ok(Outcome {
        json,
        ok,
        out: out.clone(),
    })
}

#[derive(Serialize)]
struct ZerosResult<'a> {
    function: &'a RationalFunction,
    degree: usize,
    count: usize,
    preserving: usize,
    reversing: usize,
    trusted: bool,
    extremal: bool,
    census: &'a ZeroCensus,
}

pub fn cmd_zeros(args: &ZerosArgs) -> Result<Outcome> {
    let opts = args.census.options()?;
    let r = args.function.load(&opts)?;
    let f = HarmonicLens::new(r)?;
    let census = f.find_zeros(&opts)?;
    if let Some(dir) = portrait_dir(&args.output)? {
        render_census(&f, &census, &args.output.pixels, &dir.join("portrait.png"), opts.parallel)?;
    }
    let result = ZerosResult {
        function: f.rational(),
        degree: f.degree(),
        count: census.count(),
        preserving: census.count_sense(crate::harmonic::Sense::Preserving),
        reversing: census.count_sense(crate::harmonic::Sense::Reversing),
        trusted: census.trusted(),
        extremal: census.extremal(),
        census: &census,
    };
    finish("zeros", args, args.function.seed, census.trusted(), &result, &args.output.out)
}

#[derive(Serialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
enum PerturbResult {
    /// Zero with `R'(z0) = 0`, real residue.
    Local {
        near_radius: f64,
        created_near: i64,
        report: Box<perturb::VerifyReport>,
    },
    /// Any other point, or a pole of higher order.
    ArbitraryPoint { report: Box<perturb::AnywhereReport> },
    /// Zero with `R'(z0) = 0` and a rotated residue.
    RotatedResidue {
        plan: PerturbationPlan,
        created_near: i64,
        row: SweepRow,
    },
}

/// `--at` as a point or a selector against the current census.
fn resolve_at(at: &str, f: &HarmonicLens, opts: &CensusOptions) -> Result<Complex64> {
    if let Ok(z) = parse_complex(at) {
        let sel = Selector::Point(z);
        return match f.find_zeros(opts) {
            Ok(census) => sel.resolve(f, &census),
            Err(_) => Ok(z),
        };
    }
    let sel: Selector = at.parse()?;
    let census = f.find_zeros(opts)?;
    sel.resolve(f, &census)
}

/// The point is a zero where `R'` vanishes, so the local theorem applies.
fn is_critical_zero(f: &HarmonicLens, z0: Complex64) -> bool {
    perturb::plan(f, z0, None).is_ok()
}

pub fn cmd_perturb(args: &PerturbArgs) -> Result<Outcome> {
    let opts = args.census.options()?;
    let f = HarmonicLens::new(args.function.load(&opts)?)?;
    let z0 = resolve_at(&args.at, &f, &opts)?;
    let mode = if args.convex { Mode::Convex } else { Mode::Additive };
    if let Some(eps) = args.eps {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
        }
    }
    if let Some(r) = args.near_radius {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("near radius must be positive, got {r}")));
        }
    }
    let critical = args.order == 1 && is_critical_zero(&f, z0);
    let (result, ok, before, after) = if critical && args.eps_theta == 0.0 {
        let plan = perturb::plan(&f, z0, args.eps)?;
        let report = perturb::apply_and_verify(&f, &plan, mode, &opts)?;
        let near_radius = args.near_radius.unwrap_or(2.0 * plan.radii.outer);
        let created_near = report.diff.created_near(&report.before, &report.after, near_radius);
        // beyond eps_sharp the theorem predicts nothing; only the audits count
        let ok = report.audits_ok && (report.minima_met || !plan.within_guarantee);
        let before = report.before.clone();
        let after = Some((HarmonicLens::new(report.perturbed.clone())?, report.after.clone()));
        let result = PerturbResult::Local {
            near_radius,
            created_near,
            report: Box::new(report),
        };
        (result, ok, before, after)
    } else if critical {
        if args.convex {
            return Err(Error::InvalidArgument("a rotated residue needs the additive form".into()));
        }
        if args.near_radius.is_some() {
            return Err(Error::InvalidArgument(
                "--near-radius is fixed at 2 eta sqrt(eps) for a rotated residue".into(),
            ));
        }
        let plan = perturb::plan(&f, z0, args.eps)?;
        let rows = perturb::residue_sweep(&f, z0, plan.eps, &[args.eps_theta], &opts)?;
        let row = rows.into_iter().next().expect("one angle in, one row out");
        let ok = row.audit_ok;
        let before = f.find_zeros(&opts)?;
        // z0 is the only zero of f in the disk and is consumed
        let created_near = row.near_count as i64 - (before.in_disk(z0, row.near_radius).count() as i64 - 1);
        (PerturbResult::RotatedResidue { plan, created_near, row }, ok, before, None)
    } else {
        if args.convex {
            return Err(Error::UnsupportedCase(
                "the convex form is only available at zeros where R' vanishes".into(),
            ));
        }
        let eps = match args.eps {
            Some(e) => e,
            None => perturb::suggest_eps(&f, &f.find_zeros(&opts)?, z0)?,
        };
        let residue = Complex64::from_polar(eps, args.eps_theta);
        let report = perturb::perturb_anywhere_with(&f, z0, residue, args.order, args.near_radius, &opts)?;
        let ok = report.minimum_met;
        let g = HarmonicLens::new(f.rational().add_pole(z0, residue, args.order)?)?;
        let before = report.before.clone();
        let after = report.after.clone();
        (PerturbResult::ArbitraryPoint { report: Box::new(report) }, ok, before, Some((g, after)))
    };
    if let Some(dir) = portrait_dir(&args.output)? {
        render_census(&f, &before, &args.output.pixels, &dir.join("before.png"), opts.parallel)?;
        if let Some((g, after)) = &after {
            render_census(g, after, &args.output.pixels, &dir.join("after.png"), opts.parallel)?;
        }
    }
    finish("perturb", args, args.function.seed, ok, &result, &args.output.out)
}

#[derive(Debug, Deserialize)]
struct PipelineFile {
    function: RationalFunction,
    steps: Vec<Step>,
}

#[derive(Serialize)]
struct PipelineResult {
    stages: Vec<perturb::PipelineStage>,
    counts: Vec<usize>,
    all_extremal: bool,
}

pub fn cmd_pipeline(args: &PipelineArgs) -> Result<Outcome> {
    let opts = args.census.options()?;
    let (start, steps) = match &args.config {
        Some(path) => {
            if args.function.given() > 0 || args.steps.is_some() {
                return Err(Error::InvalidArgument("--config excludes --fn/--rhie/--random/--fitted/--steps".into()));
            }
            let file: PipelineFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            (file.function, file.steps)
        }
        None => {
            let steps = match &args.steps {
                Some(s) => serde_json::from_str(&read_json_arg(s)?)?,
                None => Vec::new(),
            };
            (args.function.load(&opts)?, steps)
        }
    };
    let stages = perturb::iterate_pipeline(&start, &steps, &opts)?;
    if let Some(dir) = portrait_dir(&args.output)? {
        for stage in &stages {
            let f = HarmonicLens::new(stage.function.clone())?;
            let path = dir.join(format!("stage{}.png", stage.index));
            render_census(&f, &stage.census, &args.output.pixels, &path, opts.parallel)?;
        }
    }
    let ok = stages.iter().all(|s| s.census.trusted());
    let result = PipelineResult {
        counts: stages.iter().map(|s| s.census.count()).collect(),
        all_extremal: stages.iter().all(|s| s.extremal),
        stages,
    };
    finish("pipeline", args, args.function.seed, ok, &result, &args.output.out)
}

#[derive(Serialize)]
struct SweepResult {
    #[serde(with = "crate::serde_complex")]
    z0: Complex64,
    eps: f64,
    rows: Vec<SweepRow>,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Outcome> {
    let opts = args.census.options()?;
    let f = HarmonicLens::new(args.function.load(&opts)?)?;
    let z0 = resolve_at(&args.at, &f, &opts)?;
    let thetas = args.thetas.split(',').map(parse_angle).collect::<Result<Vec<_>>>()?;
    let eps = perturb::plan(&f, z0, args.eps)?.eps;
    let rows = perturb::residue_sweep(&f, z0, eps, &thetas, &opts)?;
    let ok = rows.iter().all(|r| r.audit_ok);
    if args.output.portrait {
        return Err(Error::InvalidArgument("sweep writes no portraits; use perturb --eps-theta".into()));
    }
    finish("sweep", args, args.function.seed, ok, &SweepResult { z0, eps, rows }, &args.output.out)
}

#[derive(Serialize)]
struct PortraitResult {
    path: String,
    width: usize,
    height: usize,
    spec: PortraitSpec,
    zeros: usize,
    poles: usize,
    critical_points: usize,
}

pub fn cmd_portrait(args: &PortraitArgs) -> Result<Outcome> {
    let opts = args.census.options()?;
    let f = HarmonicLens::new(args.function.load(&opts)?)?;
    let (w, h) = parse_pixels(&args.pixels)?;
    let census = if args.no_markers { None } else { Some(f.find_zeros(&opts)?) };
    let (dc, side) = match &census {
        Some(c) => default_window(&f, c),
        None => {
            let (c, r) = f.default_domain();
            (c, r)
        }
    };
    let center = args.window_center.as_deref().map(parse_complex).transpose()?.unwrap_or(dc);
    let width = args.width.unwrap_or(side);
    let height = args.height.unwrap_or(width * h as f64 / w as f64);
    let mut spec = PortraitSpec::new(center, width, height, w, h);
    spec.shading = !args.no_shading;
    spec.parallel = opts.parallel;
    if let Some(c) = &census {
        spec.markers = Markers::from_census(&f, c)?;
    }
    let img = portrait::render(&f, &spec)?;
    if let Some(parent) = args.output.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    img.write_png(&args.output)?;
    let result = PortraitResult {
        path: args.output.display().to_string(),
        width: img.width,
        height: img.height,
        zeros: spec.markers.zeros.len(),
        poles: spec.markers.poles.len(),
        critical_points: spec.markers.critical.len(),
        spec,
    };
    let ok = census.as_ref().is_none_or(|c| c.trusted());
    finish("portrait", args, args.function.seed, ok, &result, &None)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Zeros(a) => cmd_zeros(a),
        Command::Perturb(a) => cmd_perturb(a),
        Command::Pipeline(a) => cmd_pipeline(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Portrait(a) => cmd_portrait(a),
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(threads) = std::env::var("HZL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        crate::par::set_thread_cap(threads);
    }
    match run(&cli) {
        Ok(outcome) => {
            match &outcome.out {
                Some(dir) => eprintln!("report written to {}", dir.join("report.json").display()),
                None => print!("{}", outcome.json),
            }
            if outcome.ok {
                0
            } else {
                eprintln!("checks failed; see the report");
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            report::exit_code(&e)
        }
    }
}
