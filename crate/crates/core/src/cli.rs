//! The `impact-series` command line.
//!
//! Four subcommands: `predict` (analytic singles and joint), `simulate`
//! (one Monte Carlo run), `compare` (QM against RNL over a phase grid) and
//! `validate-oracle` (rederive the amplitude tables from a geometry file).
//!
//! Exit codes: 0 success, 2 argument or contract error, 3 oracle mismatch.
//!
//! # Output records
//!
//! `simulate` and `compare` emit one row per run. CSV columns, in order:
//!
//! ```text
//! label,model,ordering,subensemble,alpha,beta,gamma,seed,events,
//! accepted,rejected,r_pp,r_pm,r_mp,r_mm,acceptance_rate,
//! e_value,e_std_error,e_analytic_qm,e_analytic_causal,e_analytic_model,
//! side1_plus_mc,side2_plus_mc,side1_plus_analytic,side2_plus_analytic
//! ```
//!
//! JSON is `{"rows": [...]}` with one object per row using the same field
//! names. Angles are radians at full precision; derived quantities are
//! rounded to 6 significant digits. Undefined analytic values are empty in
//! CSV and `null` in JSON.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::amplitudes::PhaseSettings;
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_e, linspace, run, scan_phases, PhaseAxis, RunConfig, ScanPoint};
use crate::oracle::{validate, validation_grid, Geometry, SplitterConvention};
use crate::pathspace::{Outcome, Subensemble, TimeOrdering};
use crate::theories::{predict_for, Prediction, Side, TheoryKind, TheoryModel};

#[derive(Debug, Parser)]
#[command(
    name = "impact-series",
    version,
    about = "Two-photon impact-series interferometer predictions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print analytic singles (and the joint distribution where defined).
    Predict(PredictArgs),
    /// Emulate one run and estimate E.
    Simulate(SimulateArgs),
    /// Scan one phase and compare QM with RNL.
    Compare(CompareArgs),
    /// Rederive the amplitude tables from splitter wiring.
    ValidateOracle(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Qm,
    Causal,
    Rnl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Spacelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SubensembleArg {
    #[value(name = "L")]
    Long,
    #[value(name = "l")]
    Short,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PredictFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Alpha,
    Beta,
    Gamma,
}

/// An angle as typed: plain numbers follow `--degrees`, forms such as
/// `pi/2` or `-3pi/4` are always radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Plain(f64),
    Radians(f64),
}

impl Angle {
    pub fn to_radians(self, degrees: bool) -> f64 {
        match self {
            Angle::Plain(v) if degrees => v.to_radians(),
            Angle::Plain(v) | Angle::Radians(v) => v,
        }
    }
}

pub fn parse_angle(s: &str) -> std::result::Result<Angle, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() {
            Ok(Angle::Plain(v))
        } else {
            Err(format!("angle `{s}` is not finite"))
        };
    }
    let bad = || format!("cannot parse angle `{s}` (use a number or forms like pi, -pi/2, 3pi/4)");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (s, 1.0),
    };
    let coeff = num
        .strip_suffix("pi")
        .ok_or_else(bad)?
        .trim_end_matches('*');
    let k = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(Angle::Radians(k * PI / den))
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    /// Phase on photon 1's long arm.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: Angle,
    /// Phase on the long arm of photon 2's first interferometer.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: Angle,
    /// Phase on the long arm of photon 2's second interferometer.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub gamma: Angle,
    /// Read plain-number angles as degrees.
    #[arg(long)]
    pub degrees: bool,
}

impl PhaseArgs {
    pub fn settings(&self) -> PhaseSettings {
        PhaseSettings::new(
            self.alpha.to_radians(self.degrees),
            self.beta.to_radians(self.degrees),
            self.gamma.to_radians(self.degrees),
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Time ordering of the impacts.
    #[arg(long, value_enum, default_value = "spacelike")]
    pub ordering: OrderingArg,
}

impl ModelArgs {
    pub fn model(&self) -> TheoryModel {
        let kind = match self.model {
            ModelArg::Qm => TheoryKind::Qm,
            ModelArg::Causal => TheoryKind::Causal,
            ModelArg::Rnl => TheoryKind::Rnl,
        };
        TheoryModel {
            kind,
            ordering: ordering(self.ordering),
        }
    }
}

fn ordering(o: OrderingArg) -> TimeOrdering {
    match o {
        OrderingArg::One => TimeOrdering::Ordering1,
        OrderingArg::Two => TimeOrdering::Ordering2,
        OrderingArg::Spacelike => TimeOrdering::Spacelike,
    }
}

fn subensemble(s: SubensembleArg) -> Subensemble {
    match s {
        SubensembleArg::Long => Subensemble::DL,
        SubensembleArg::Short => Subensemble::Dl,
    }
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub phases: PhaseArgs,
    #[arg(long, value_enum, default_value = "L")]
    pub subensemble: SubensembleArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: PredictFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub phases: PhaseArgs,
    /// Emitted photon pairs.
    #[arg(long, default_value_t = 1_000_000)]
    pub events: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "L")]
    pub subensemble: SubensembleArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: RecordFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Base phases; the scanned one is overridden by the grid.
    #[command(flatten)]
    pub phases: PhaseArgs,
    #[arg(long, value_enum, default_value = "alpha")]
    pub axis: AxisArg,
    /// Grid as `start:stop:count`, endpoints included.
    #[arg(long, default_value = "0:2pi:13", allow_hyphen_values = true)]
    pub grid: String,
    /// Emitted pairs per grid point and model.
    #[arg(long, default_value_t = 100_000)]
    pub events: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: RecordFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Geometry file; the bundled default wiring when omitted.
    #[arg(long)]
    pub geometry: Option<PathBuf>,
    /// Transmission amplitude as `re,im`.
    #[arg(
        long,
        default_value = "0.7071067811865476,0",
        allow_hyphen_values = true
    )]
    pub t: String,
    /// Reflection amplitude as `re,im`.
    #[arg(
        long,
        default_value = "0,0.7071067811865476",
        allow_hyphen_values = true
    )]
    pub r: String,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `start:stop:count` into radians.
pub fn parse_grid(text: &str, degrees: bool) -> Result<Vec<f64>> {
    let bad = |m: String| Error::InvalidConfig(format!("grid `{text}`: {m}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad("expected start:stop:count".into()));
    };
    let start = parse_angle(start).map_err(bad)?.to_radians(degrees);
    let stop = parse_angle(stop).map_err(bad)?.to_radians(degrees);
    let count: usize = count
        .parse()
        .map_err(|_| bad(format!("count `{count}` is not an integer")))?;
    if count == 0 {
        return Err(bad("count must be at least 1".into()));
    }
    Ok(linspace(start, stop, count))
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidConfig(format!("`{s}` is not a complex number `re,im`"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

/// Rounds to 6 significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// One emitted row of `simulate` or `compare`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRow {
    pub label: String,
    pub model: String,
    pub ordering: String,
    pub subensemble: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub seed: u64,
    pub events: u64,
    pub accepted: u64,
    pub rejected: u64,
    pub r_pp: u64,
    pub r_pm: u64,
    pub r_mp: u64,
    pub r_mm: u64,
    pub acceptance_rate: f64,
    pub e_value: f64,
    pub e_std_error: f64,
    pub e_analytic_qm: f64,
    pub e_analytic_causal: f64,
    pub e_analytic_model: Option<f64>,
    pub side1_plus_mc: f64,
    pub side2_plus_mc: f64,
    pub side1_plus_analytic: Option<f64>,
    pub side2_plus_analytic: Option<f64>,
}

impl OutputRow {
    pub fn from_point(label: &str, p: &ScanPoint) -> Self {
        let c = &p.config;
        let t = &p.tally;
        Self {
            label: label.to_string(),
            model: c.model.kind.to_string(),
            ordering: c.model.ordering.to_string(),
            subensemble: c.target.label().to_string(),
            alpha: c.phases.alpha,
            beta: c.phases.beta,
            gamma: c.phases.gamma,
            seed: c.seed,
            events: c.events,
            accepted: t.accepted,
            rejected: t.rejected,
            r_pp: t.get(Outcome::PP),
            r_pm: t.get(Outcome::PM),
            r_mp: t.get(Outcome::MP),
            r_mm: t.get(Outcome::MM),
            acceptance_rate: sig6(t.acceptance_rate()),
            e_value: sig6(p.estimate.value),
            e_std_error: sig6(p.estimate.std_error),
            e_analytic_qm: sig6(p.estimate.analytic_qm),
            e_analytic_causal: sig6(p.estimate.analytic_causal),
            e_analytic_model: p.estimate.analytic_model.map(sig6),
            side1_plus_mc: sig6(p.mc_side1.p_plus),
            side2_plus_mc: sig6(p.mc_side2.p_plus),
            side1_plus_analytic: p.analytic.side1.map(|s| sig6(s.p_plus)),
            side2_plus_analytic: p.analytic.side2.map(|s| sig6(s.p_plus)),
        }
    }
}

/// Writes rows as CSV with a header line.
pub fn write_csv(rows: &[OutputRow], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Io(io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    rows: &'a [OutputRow],
}

/// Writes rows as `{"rows": [...]}`.
pub fn write_json(rows: &[OutputRow], out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &JsonRecord { rows })
        .map_err(|e| Error::Io(io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

fn write_rows(rows: &[OutputRow], format: RecordFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        RecordFormat::Csv => write_csv(rows, out),
        RecordFormat::Json => write_json(rows, out),
    }
}

/// Runs one simulation and packages it like a scan point.
pub fn simulate_point(config: &RunConfig) -> Result<ScanPoint> {
    let tally = run(config)?;
    let estimate = estimate_e(&tally, config)?;
    Ok(ScanPoint {
        angle: config.phases.alpha,
        config: *config,
        tally,
        estimate,
        mc_side1: tally.singles(Side::Side1).ok_or(Error::EmptyTally)?,
        mc_side2: tally.singles(Side::Side2).ok_or(Error::EmptyTally)?,
        analytic: predict_for(&config.model, config.target, &config.phases)?,
    })
}

fn formula(model: &TheoryModel, sub: Subensemble, side: Side) -> &'static str {
    match (model.kind, sub, side) {
        (TheoryKind::Qm, Subensemble::DL, Side::Side1) => "qm: 1/2 - cos(alpha+beta)/3",
        (TheoryKind::Qm, Subensemble::DL, Side::Side2) => "qm: 1/2 + cos(beta-gamma)/3",
        (TheoryKind::Qm, Subensemble::Dl, Side::Side1) => "qm: 1/2 + cos(alpha+beta)/3",
        (TheoryKind::Qm, _, _) => "qm: marginal of summed amplitudes",
        (_, _, Side::Side1) => "causal: sum of probabilities, 1/2",
        (_, _, Side::Side2) => "causal: |A(LL)|^2 + |A(Ll)+A(lL)|^2 = 1/2 + cos(beta-gamma)/3",
    }
}

fn write_prediction(
    model: &TheoryModel,
    sub: Subensemble,
    phases: &PhaseSettings,
    pred: &Prediction,
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(
        out,
        "model        {} (ordering {})",
        model.kind, model.ordering
    )?;
    writeln!(out, "subensemble  {}", sub.label())?;
    writeln!(
        out,
        "phases       alpha={} beta={} gamma={} (rad)",
        phases.alpha, phases.beta, phases.gamma
    )?;
    for side in [Side::Side1, Side::Side2] {
        let n = if side == Side::Side1 { 1 } else { 2 };
        match pred.side(side) {
            Some(s) => writeln!(
                out,
                "side{n}        P(D{n}+)={:.6} P(D{n}-)={:.6}  [{}]",
                sig6(s.p_plus),
                sig6(s.p_minus),
                formula(model, sub, side)
            )?,
            None => writeln!(
                out,
                "side{n}        undefined  [model leaves this side open]"
            )?,
        }
    }
    match &pred.joint {
        Some(j) => {
            write!(out, "joint       ")?;
            for o in Outcome::ALL {
                write!(out, " P({o})={:.6}", sig6(j.get(o)))?;
            }
            writeln!(out, "  [|sum of path-pair amplitudes|^2]")?;
        }
        None => writeln!(out, "joint        undefined")?,
    }
    Ok(())
}

#[derive(Serialize)]
struct PredictionRecord<'a> {
    model: String,
    ordering: String,
    subensemble: &'static str,
    phases: &'a PhaseSettings,
    side1_plus: Option<f64>,
    side2_plus: Option<f64>,
    joint: Option<[f64; 4]>,
}

/// Outcome of a command that completed without error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ValidationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ValidationFailed => 3,
        }
    }
}

fn with_output(
    path: &Option<PathBuf>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut file = io::BufWriter::new(File::create(p)?);
            f(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

/// Executes a parsed command line, writing results to `stdout` unless the
/// command names an output file.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Predict(a) => {
            let model = a.model.model();
            let sub = subensemble(a.subensemble);
            let phases = a.phases.settings();
            let pred = predict_for(&model, sub, &phases)?;
            with_output(&a.out, stdout, |out| match a.format {
                PredictFormat::Text => write_prediction(&model, sub, &phases, &pred, out),
                PredictFormat::Json => {
                    let rec = PredictionRecord {
                        model: model.kind.to_string(),
                        ordering: model.ordering.to_string(),
                        subensemble: sub.label(),
                        phases: &phases,
                        side1_plus: pred.side1.map(|s| sig6(s.p_plus)),
                        side2_plus: pred.side2.map(|s| sig6(s.p_plus)),
                        joint: pred.joint.map(|j| j.p.map(sig6)),
                    };
                    serde_json::to_writer_pretty(&mut *out, &rec)
                        .map_err(|e| Error::Io(io::Error::other(e)))?;
                    writeln!(out)?;
                    Ok(())
                }
            })?;
            Ok(Status::Ok)
        }
        Command::Simulate(a) => {
            let mut config = RunConfig::new(a.model.model(), a.phases.settings(), a.events, a.seed);
            config.target = subensemble(a.subensemble);
            let point = simulate_point(&config)?;
            let rows = [OutputRow::from_point("simulate", &point)];
            with_output(&a.out, stdout, |out| write_rows(&rows, a.format, out))?;
            Ok(Status::Ok)
        }
        Command::Compare(a) => {
            let grid = parse_grid(&a.grid, a.phases.degrees)?;
            let axis = match a.axis {
                AxisArg::Alpha => PhaseAxis::Alpha,
                AxisArg::Beta => PhaseAxis::Beta,
                AxisArg::Gamma => PhaseAxis::Gamma,
            };
            let base = a.phases.settings();
            let qm = scan_phases(&TheoryModel::qm(), axis, &grid, base, a.events, a.seed)?;
            let rnl = scan_phases(&TheoryModel::rnl(), axis, &grid, base, a.events, a.seed)?;
            let rows: Vec<OutputRow> = qm
                .iter()
                .zip(&rnl)
                .flat_map(|(q, r)| {
                    [
                        OutputRow::from_point(&format!("{axis}={}", q.angle), q),
                        OutputRow::from_point(&format!("{axis}={}", r.angle), r),
                    ]
                })
                .collect();
            with_output(&a.out, stdout, |out| write_rows(&rows, a.format, out))?;
            Ok(Status::Ok)
        }
        Command::ValidateOracle(a) => {
            let conv = SplitterConvention::new(parse_complex(&a.t)?, parse_complex(&a.r)?)?;
            let geometry = match &a.geometry {
                Some(p) => Geometry::load(p)?,
                None => Geometry::default_setup(),
            };
            let report = validate(&geometry, &conv, &validation_grid(), a.tolerance)?;
            with_output(&a.out, stdout, |out| {
                writeln!(out, "{report}")?;
                Ok(())
            })?;
            Ok(if report.passed() {
                Status::Ok
            } else {
                Status::ValidationFailed
            })
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
