//! First-principles rederivation of the amplitude tables.
//!
//! A geometry wires named 50/50 splitters together with arms (short or
//! long, optionally carrying one of the three phase shifters) and ends in
//! the four detectors. Each photon is traced from its source through every
//! splitter port; the amplitude of a trace is the product of its splitter
//! factors and arm phases, and the joint amplitude of a path pair is the
//! product of the two photons' trace amplitudes.
//!
//! Derived tables are compared against the tabulated ones only through
//! global-phase-free quantities: entry ratios inside a table and detection
//! probabilities.
//!
//! # Geometry format
//!
//! Plain text, one statement per line, `#` starts a comment:
//!
//! ```text
//! source <1|2> <splitter> <in-port>
//! link <splitter> <out-port> <splitter> <in-port> <short|long|fiber> [alpha|beta|gamma]
//! detect <splitter> <out-port> <D1+|D1-|D2+|D2->
//! dump <splitter> <out-port>
//! ```
//!
//! Ports are 0 or 1. Leaving a splitter through the port with the same
//! index as the entry port is a transmission, switching is a reflection.
//! A `fiber` link connects two splitters without being an interferometer
//! arm. Every output port of every splitter must be linked, detected or
//! dumped.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::amplitudes::{amp_joint, amp_single, Amplitude, PhaseSettings};
use crate::error::{Error, Result};
use crate::pathspace::{members, Arm, Arm2Path, Outcome, PathPair, Sign, Subensemble};
use crate::theories::{causal_singles_side2, qm_joint};

/// Wiring of the default setup.
pub const DEFAULT_GEOMETRY: &str = include_str!("../geometry/default.geom");

/// Transmission and reflection amplitudes of a lossless splitter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitterConvention {
    t: Complex64,
    r: Complex64,
}

impl SplitterConvention {
    const TOL: f64 = 1e-9;

    pub fn new(t: Complex64, r: Complex64) -> Result<Self> {
        let power = t.norm_sqr() + r.norm_sqr();
        if (power - 1.0).abs() > Self::TOL {
            return Err(Error::NonUnitary(format!("|t|^2 + |r|^2 = {power}")));
        }
        let cross = t * r.conj() + r * t.conj();
        if cross.norm() > Self::TOL {
            return Err(Error::NonUnitary(format!("t r* + r t* = {cross}")));
        }
        Ok(Self { t, r })
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn r(&self) -> Complex64 {
        self.r
    }
}

impl Default for SplitterConvention {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            t: Complex64::new(h, 0.0),
            r: Complex64::new(0.0, h),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TraceElement {
    SplitterTransmit,
    SplitterReflect,
    PhaseShift(f64),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PathTrace {
    pub elements: Vec<TraceElement>,
}

/// Product of the per-element factors along `trace`.
pub fn trace_amplitude(trace: &PathTrace, conv: &SplitterConvention) -> Amplitude {
    trace
        .elements
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, el| {
            acc * match *el {
                TraceElement::SplitterTransmit => conv.t,
                TraceElement::SplitterReflect => conv.r,
                TraceElement::PhaseShift(phi) => Complex64::from_polar(1.0, phi),
            }
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseSymbol {
    Alpha,
    Beta,
    Gamma,
}

impl PhaseSymbol {
    fn value(self, phases: &PhaseSettings) -> f64 {
        match self {
            PhaseSymbol::Alpha => phases.alpha,
            PhaseSymbol::Beta => phases.beta,
            PhaseSymbol::Gamma => phases.gamma,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Detector {
    pub photon: u8,
    pub sign: Sign,
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}{}", self.photon, self.sign.symbol())
    }
}

impl FromStr for Detector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (photon, sign) = match s {
            "D1+" => (1, Sign::Plus),
            "D1-" => (1, Sign::Minus),
            "D2+" => (2, Sign::Plus),
            "D2-" => (2, Sign::Minus),
            _ => return Err(format!("unknown detector `{s}`")),
        };
        Ok(Self { photon, sign })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum PortTarget {
    Link {
        to: String,
        port: u8,
        arm: Option<Arm>,
        phase: Option<PhaseSymbol>,
    },
    Detect(Detector),
    Dump,
}

/// Port wiring of the two photons' interferometers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Geometry {
    sources: BTreeMap<u8, (String, u8)>,
    outputs: HashMap<(String, u8), PortTarget>,
    splitters: Vec<String>,
}

impl Geometry {
    pub fn parse(text: &str) -> Result<Self> {
        let mut g = Geometry::default();
        let mut inputs: HashSet<(String, u8)> = HashSet::new();
        let mut detectors: HashSet<Detector> = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::GeometryParse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            let port = |w: &str| -> Result<u8> {
                match w {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    _ => Err(err(format!("port must be 0 or 1, got `{w}`"))),
                }
            };
            match words.as_slice() {
                ["source", photon, splitter, p] => {
                    let photon = match *photon {
                        "1" => 1,
                        "2" => 2,
                        other => return Err(err(format!("photon must be 1 or 2, got `{other}`"))),
                    };
                    let p = port(p)?;
                    if !inputs.insert((splitter.to_string(), p)) {
                        return Err(err(format!("input port {splitter}:{p} fed twice")));
                    }
                    if g.sources
                        .insert(photon, (splitter.to_string(), p))
                        .is_some()
                    {
                        return Err(err(format!("photon {photon} has two sources")));
                    }
                    g.note_splitter(splitter);
                }
                ["link", from, fp, to, tp, arm, rest @ ..] => {
                    let arm = match *arm {
                        "short" => Some(Arm::Short),
                        "long" => Some(Arm::Long),
                        "fiber" => None,
                        other => {
                            return Err(err(format!(
                                "arm must be short, long or fiber, got `{other}`"
                            )))
                        }
                    };
                    let phase = match rest {
                        [] => None,
                        ["alpha"] => Some(PhaseSymbol::Alpha),
                        ["beta"] => Some(PhaseSymbol::Beta),
                        ["gamma"] => Some(PhaseSymbol::Gamma),
                        _ => return Err(err(format!("unexpected trailing `{}`", rest.join(" ")))),
                    };
                    let (fp, tp) = (port(fp)?, port(tp)?);
                    if !inputs.insert((to.to_string(), tp)) {
                        return Err(err(format!("input port {to}:{tp} fed twice")));
                    }
                    let target = PortTarget::Link {
                        to: to.to_string(),
                        port: tp,
                        arm,
                        phase,
                    };
                    g.assign(from, fp, target).map_err(err)?;
                    g.note_splitter(to);
                }
                ["detect", from, fp, det] => {
                    let det: Detector = det.parse().map_err(err)?;
                    if !detectors.insert(det) {
                        return Err(err(format!("detector {det} declared twice")));
                    }
                    g.assign(from, port(fp)?, PortTarget::Detect(det))
                        .map_err(err)?;
                }
                ["dump", from, fp] => {
                    g.assign(from, port(fp)?, PortTarget::Dump).map_err(err)?;
                }
                _ => return Err(err(format!("cannot parse `{content}`"))),
            }
        }
        g.check()?;
        Ok(g)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn default_setup() -> Self {
        Self::parse(DEFAULT_GEOMETRY).expect("bundled geometry is valid")
    }

    fn note_splitter(&mut self, name: &str) {
        if !self.splitters.iter().any(|s| s == name) {
            self.splitters.push(name.to_string());
        }
    }

    fn assign(
        &mut self,
        splitter: &str,
        port: u8,
        target: PortTarget,
    ) -> std::result::Result<(), String> {
        self.note_splitter(splitter);
        let key = (splitter.to_string(), port);
        if self.outputs.contains_key(&key) {
            return Err(format!("output port {splitter}:{port} assigned twice"));
        }
        self.outputs.insert(key, target);
        Ok(())
    }

    fn check(&self) -> Result<()> {
        for photon in [1, 2] {
            if !self.sources.contains_key(&photon) {
                return Err(Error::Geometry(format!("photon {photon} has no source")));
            }
        }
        for s in &self.splitters {
            for p in [0, 1] {
                if !self.outputs.contains_key(&(s.clone(), p)) {
                    return Err(Error::Geometry(format!("dangling output port {s}:{p}")));
                }
            }
        }
        Ok(())
    }

    /// Every route of `photon` from its source to one of its detectors.
    fn routes(&self, photon: u8) -> Result<Vec<Route>> {
        let (splitter, port) = self.sources[&photon].clone();
        let mut out = Vec::new();
        let mut stack = vec![(splitter, port, Route::default())];
        while let Some((splitter, in_port, route)) = stack.pop() {
            if route.steps.len() > 4 * self.splitters.len() {
                return Err(Error::Geometry(format!(
                    "photon {photon} loops through {splitter}"
                )));
            }
            for out_port in [0u8, 1] {
                let mut next = route.clone();
                next.steps.push(Step::Splitter {
                    transmit: out_port == in_port,
                });
                match &self.outputs[&(splitter.clone(), out_port)] {
                    PortTarget::Dump => {}
                    PortTarget::Detect(det) => {
                        if det.photon != photon {
                            return Err(Error::Geometry(format!("photon {photon} reaches {det}")));
                        }
                        next.detector = Some(det.sign);
                        out.push(next);
                    }
                    PortTarget::Link {
                        to,
                        port,
                        arm,
                        phase,
                    } => {
                        next.arms.extend(*arm);
                        if let Some(sym) = phase {
                            next.steps.push(Step::Phase(*sym));
                        }
                        stack.push((to.clone(), *port, next));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Raw amplitudes of every path of both photons.
    pub fn derive_tables(
        &self,
        conv: &SplitterConvention,
        phases: &PhaseSettings,
    ) -> Result<DerivedTables> {
        let mut photon1: BTreeMap<(Arm, Sign), Amplitude> = BTreeMap::new();
        for route in self.routes(1)? {
            let arm = match route.arms.as_slice() {
                [a] => *a,
                arms => {
                    return Err(Error::Geometry(format!(
                        "photon 1 route crosses {} arms",
                        arms.len()
                    )))
                }
            };
            let key = (arm, route.detector.expect("finished route"));
            if photon1
                .insert(key, trace_amplitude(&route.trace(phases), conv))
                .is_some()
            {
                return Err(Error::Geometry(format!(
                    "two photon-1 routes share label {}{:?}",
                    arm.symbol(),
                    key.1
                )));
            }
        }
        let mut single: BTreeMap<(Arm2Path, Sign), Amplitude> = BTreeMap::new();
        for route in self.routes(2)? {
            let path = match route.arms.as_slice() {
                [a, b] => Arm2Path::new(*a, *b),
                arms => {
                    return Err(Error::Geometry(format!(
                        "photon 2 route crosses {} arms",
                        arms.len()
                    )))
                }
            };
            let key = (path, route.detector.expect("finished route"));
            if single
                .insert(key, trace_amplitude(&route.trace(phases), conv))
                .is_some()
            {
                return Err(Error::Geometry(format!(
                    "two photon-2 routes share label {path}"
                )));
            }
        }

        let mut joint = BTreeMap::new();
        for (&(arm, sigma), &a1) in &photon1 {
            for (&(path, omega), &a2) in &single {
                joint.insert(
                    (PathPair::new(arm, path), Outcome::new(sigma, omega)),
                    a1 * a2,
                );
            }
        }
        Ok(DerivedTables { joint, single })
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Splitter { transmit: bool },
    Phase(PhaseSymbol),
}

#[derive(Clone, Debug, Default)]
struct Route {
    steps: Vec<Step>,
    arms: Vec<Arm>,
    detector: Option<Sign>,
}

impl Route {
    fn trace(&self, phases: &PhaseSettings) -> PathTrace {
        let elements = self
            .steps
            .iter()
            .map(|s| match *s {
                Step::Splitter { transmit: true } => TraceElement::SplitterTransmit,
                Step::Splitter { transmit: false } => TraceElement::SplitterReflect,
                Step::Phase(sym) => TraceElement::PhaseShift(sym.value(phases)),
            })
            .collect();
        PathTrace { elements }
    }
}

/// Unnormalized amplitudes derived from a geometry.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DerivedTables {
    pub joint: BTreeMap<(PathPair, Outcome), Amplitude>,
    pub single: BTreeMap<(Arm2Path, Sign), Amplitude>,
}

/// Keyed entries of one table, in canonical order.
pub type TableEntries = Vec<(String, Amplitude)>;

fn renormalize(entries: TableEntries) -> TableEntries {
    let norm: f64 = entries
        .iter()
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return entries;
    }
    entries.into_iter().map(|(k, a)| (k, a / norm)).collect()
}

impl DerivedTables {
    /// Joint entries of a central subensemble, scaled as if its three pairs
    /// were the whole experiment. Missing entries count as zero.
    pub fn joint_table(&self, sub: Subensemble) -> TableEntries {
        let entries = members(sub)
            .into_iter()
            .flat_map(|p| Outcome::ALL.map(|o| (p, o)))
            .map(|(p, o)| {
                (
                    format!("A{o}{p}"),
                    self.joint.get(&(p, o)).copied().unwrap_or_default(),
                )
            })
            .collect();
        renormalize(entries)
    }

    /// Photon-2 entries for `Ll`, `lL`, `LL`, scaled as if only those three
    /// paths existed.
    pub fn single_table(&self) -> TableEntries {
        renormalize(single_entries(|path, s| {
            self.single.get(&(path, s)).copied().unwrap_or_default()
        }))
    }
}

const SINGLE_PATHS: [Arm2Path; 3] = [
    Arm2Path::LONG_SHORT,
    Arm2Path::SHORT_LONG,
    Arm2Path::LONG_LONG,
];

fn single_entries(mut f: impl FnMut(Arm2Path, Sign) -> Amplitude) -> TableEntries {
    SINGLE_PATHS
        .iter()
        .flat_map(|&p| Sign::ALL.map(|s| (p, s)))
        .map(|(p, s)| (format!("A{}({p})", s.symbol()), f(p, s)))
        .collect()
}

/// Tabulated entries in the same order as [`DerivedTables::joint_table`].
pub fn reference_joint_table(sub: Subensemble, phases: &PhaseSettings) -> Result<TableEntries> {
    members(sub)
        .into_iter()
        .flat_map(|p| Outcome::ALL.map(|o| (p, o)))
        .map(|(p, o)| Ok((format!("A{o}{p}"), amp_joint(p, o, phases)?)))
        .collect()
}

/// Tabulated entries in the same order as [`DerivedTables::single_table`].
pub fn reference_single_table(phases: &PhaseSettings) -> TableEntries {
    single_entries(|p, s| amp_single(p, s, phases).expect("tabulated path"))
}

/// Outcome of one comparison over the whole phase grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub table: String,
    pub check: String,
    pub max_deviation: f64,
    /// First entry that exceeded the tolerance, if any.
    pub first_mismatch: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub grid_points: usize,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{} {:<10} {:<14} max_dev={:.3e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.table,
                c.check,
                c.max_deviation
            )?;
            if let Some(m) = &c.first_mismatch {
                write!(f, " first_mismatch={m}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} ({} grid points, tolerance {:e})",
            if self.passed() {
                "oracle matches tables"
            } else {
                "oracle disagrees with tables"
            },
            self.grid_points,
            self.tolerance
        )
    }
}

struct Accumulator {
    table: String,
    check: String,
    tolerance: f64,
    max_deviation: f64,
    first_mismatch: Option<String>,
}

impl Accumulator {
    fn new(table: &str, check: &str, tolerance: f64) -> Self {
        Self {
            table: table.into(),
            check: check.into(),
            tolerance,
            max_deviation: 0.0,
            first_mismatch: None,
        }
    }

    fn observe(&mut self, deviation: f64, entry: impl FnOnce() -> String) {
        // NaN counts as a mismatch
        if (deviation.is_nan() || deviation > self.tolerance) && self.first_mismatch.is_none() {
            self.first_mismatch = Some(entry());
        }
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = deviation;
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            passed: self.first_mismatch.is_none(),
            table: self.table,
            check: self.check,
            max_deviation: self.max_deviation,
            first_mismatch: self.first_mismatch,
        }
    }
}

/// Ratios of each entry to the first entry of the same table. Tables whose
/// first entry vanishes compare raw values instead.
fn ratio_deviations(derived: &TableEntries, reference: &TableEntries, acc: &mut Accumulator) {
    let d0 = derived[0].1;
    let r0 = reference[0].1;
    for ((key, d), (_, r)) in derived.iter().zip(reference) {
        let dev = if d0.norm() > 0.0 {
            (d / d0 - r / r0).norm()
        } else {
            f64::INFINITY
        };
        acc.observe(dev, || format!("{key}/{}", derived[0].0));
    }
}

fn magnitude_deviations(derived: &TableEntries, reference: &TableEntries, acc: &mut Accumulator) {
    for ((key, d), (_, r)) in derived.iter().zip(reference) {
        acc.observe((d.norm() - r.norm()).abs(), || key.clone());
    }
}

/// Default phase grid used by [`validate`]: five values per phase.
pub fn validation_grid() -> Vec<PhaseSettings> {
    let steps = [0.0, 1.1, 2.3, -0.7, std::f64::consts::PI];
    let mut out = Vec::with_capacity(steps.len().pow(3));
    for &a in &steps {
        for &b in &steps {
            for &g in &steps {
                out.push(PhaseSettings::new(a, b, g));
            }
        }
    }
    out
}

/// Compares the geometry's derived tables with the tabulated amplitudes
/// at every point of `grid`.
pub fn validate(
    geometry: &Geometry,
    conv: &SplitterConvention,
    grid: &[PhaseSettings],
    tolerance: f64,
) -> Result<ValidationReport> {
    let tables = [
        ("L", Some(Subensemble::DL)),
        ("l", Some(Subensemble::Dl)),
        ("single", None),
    ];
    let mut ratio: Vec<Accumulator> = tables
        .iter()
        .map(|(n, _)| Accumulator::new(n, "ratios", tolerance))
        .collect();
    let mut magnitude: Vec<Accumulator> = tables
        .iter()
        .map(|(n, _)| Accumulator::new(n, "magnitudes", tolerance))
        .collect();
    let mut prob: Vec<Accumulator> = tables
        .iter()
        .map(|(n, _)| Accumulator::new(n, "probabilities", tolerance))
        .collect();

    for phases in grid {
        let derived = geometry.derive_tables(conv, phases)?;
        for (i, (_, sub)) in tables.iter().enumerate() {
            let (d, r) = match sub {
                Some(s) => (derived.joint_table(*s), reference_joint_table(*s, phases)?),
                None => (derived.single_table(), reference_single_table(phases)),
            };
            ratio_deviations(&d, &r, &mut ratio[i]);
            magnitude_deviations(&d, &r, &mut magnitude[i]);
            match sub {
                Some(s) => {
                    let expected = qm_joint(*s, phases)?;
                    for (k, o) in Outcome::ALL.iter().enumerate() {
                        let amp: Amplitude = d[k..].iter().step_by(4).map(|(_, a)| a).sum();
                        let dev = (amp.norm_sqr() - expected.get(*o)).abs();
                        prob[i].observe(dev, || format!("P{o}({})", s.label()));
                    }
                }
                None => {
                    // LL added as a probability, Ll and lL interfering
                    let expected = causal_singles_side2(phases)?;
                    for (k, s) in Sign::ALL.iter().enumerate() {
                        let ll_long = d[4 + k].1.norm_sqr();
                        let mixed = (d[k].1 + d[2 + k].1).norm_sqr();
                        let dev = (ll_long + mixed - expected.get(*s)).abs();
                        prob[i].observe(dev, || format!("P{}(D2)", s.symbol()));
                    }
                }
            }
        }
    }

    let checks = ratio
        .into_iter()
        .zip(magnitude)
        .zip(prob)
        .flat_map(|((a, b), c)| [a.finish(), b.finish(), c.finish()])
        .collect();
    Ok(ValidationReport {
        tolerance,
        grid_points: grid.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn trace_products() {
        let conv = SplitterConvention::default();
        let tt = PathTrace {
            elements: vec![TraceElement::SplitterTransmit; 2],
        };
        assert!(close(trace_amplitude(&tt, &conv), Complex64::new(0.5, 0.0)));
        let tr = PathTrace {
            elements: vec![
                TraceElement::SplitterTransmit,
                TraceElement::SplitterReflect,
            ],
        };
        assert!(close(trace_amplitude(&tr, &conv), Complex64::new(0.0, 0.5)));
        let beta = 0.83;
        let tpr = PathTrace {
            elements: vec![
                TraceElement::SplitterTransmit,
                TraceElement::PhaseShift(beta),
                TraceElement::SplitterReflect,
            ],
        };
        let expected = Complex64::new(0.0, 0.5) * Complex64::from_polar(1.0, beta);
        assert!(close(trace_amplitude(&tpr, &conv), expected));
    }

    #[test]
    fn unitarity_enforced() {
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(
            SplitterConvention::new(one, one),
            Err(Error::NonUnitary(_))
        ));
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        // balanced power but no phase offset between t and r
        assert!(matches!(
            SplitterConvention::new(h, h),
            Err(Error::NonUnitary(_))
        ));
        assert!(SplitterConvention::new(h, Complex64::new(0.0, -FRAC_1_SQRT_2)).is_ok());
        let d = SplitterConvention::default();
        assert!(SplitterConvention::new(d.t(), d.r()).is_ok());
    }

    #[test]
    fn default_geometry_structure() {
        let g = Geometry::default_setup();
        let t = g
            .derive_tables(&SplitterConvention::default(), &PhaseSettings::ZERO)
            .unwrap();
        assert_eq!(t.single.len(), 8);
        assert_eq!(t.joint.len(), 32);
        // five splitters crossed, no phase: all magnitudes (1/√2)^5
        for a in t.joint.values() {
            assert!((a.norm() - FRAC_1_SQRT_2.powi(5)).abs() < 1e-12);
        }
    }

    #[test]
    fn default_geometry_reproduces_ratio_example() {
        let ph = PhaseSettings::new(0.4, 1.3, -0.9);
        let t = Geometry::default_setup()
            .derive_tables(&SplitterConvention::default(), &ph)
            .unwrap();
        let pair = |l| PathPair::parse(l).unwrap();
        let ratio = t.joint[&(pair("l,Ll"), Outcome::PP)] / t.joint[&(pair("L,LL"), Outcome::PP)];
        let expected = -Complex64::from_polar(1.0, -(ph.alpha + ph.gamma));
        assert!(close(ratio, expected));
        let table = t.joint_table(Subensemble::DL);
        for (_, a) in &table {
            assert!((a.norm() - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        }
        let pp = t.joint[&(pair("l,lL"), Outcome::PP)];
        let mm = t.joint[&(pair("l,lL"), Outcome::MM)];
        assert!(close(pp, mm));
    }

    #[test]
    fn default_geometry_validates() {
        let report = validate(
            &Geometry::default_setup(),
            &SplitterConvention::default(),
            &validation_grid(),
            1e-9,
        )
        .unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn separate_entrance_geometry_only_matches_small_subensemble() {
        let g = Geometry::parse(include_str!("../geometry/separate-entrance.geom")).unwrap();
        let report =
            validate(&g, &SplitterConvention::default(), &validation_grid(), 1e-9).unwrap();
        let status = |table: &str, check: &str| {
            report
                .checks
                .iter()
                .find(|c| c.table == table && c.check == check)
                .unwrap()
                .passed
        };
        assert!(!status("L", "ratios") && !status("L", "probabilities"));
        assert!(!status("single", "ratios"));
        assert!(status("l", "ratios") && status("l", "probabilities"));
        // magnitudes alone cannot tell the wirings apart
        assert!(status("L", "magnitudes") && status("single", "magnitudes"));
    }

    #[test]
    fn miswired_geometry_fails_with_named_entry() {
        let g = Geometry::parse(include_str!("../geometry/miswired.geom")).unwrap();
        let report =
            validate(&g, &SplitterConvention::default(), &validation_grid(), 1e-9).unwrap();
        assert!(!report.passed());
        let failed = report.checks.iter().find(|c| !c.passed).unwrap();
        assert!(failed.first_mismatch.is_some());
    }

    #[test]
    fn swapped_detectors_fail() {
        let text = DEFAULT_GEOMETRY
            .replace("detect BS22 0 D2+", "detect BS22 0 D2#")
            .replace("detect BS22 1 D2-", "detect BS22 1 D2+");
        let text = text.replace("D2#", "D2-");
        let g = Geometry::parse(&text).unwrap();
        let report =
            validate(&g, &SplitterConvention::default(), &validation_grid(), 1e-9).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn parse_errors() {
        let dangling = DEFAULT_GEOMETRY.replace("detect BS11 1 D1-", "");
        assert!(
            matches!(Geometry::parse(&dangling), Err(Error::Geometry(m)) if m.contains("BS11:1"))
        );
        let twice = format!("{DEFAULT_GEOMETRY}\ndump BS22 0\n");
        assert!(matches!(
            Geometry::parse(&twice),
            Err(Error::GeometryParse { .. })
        ));
        assert!(matches!(
            Geometry::parse("source 3 S 0"),
            Err(Error::GeometryParse { line: 1, .. })
        ));
        assert!(matches!(
            Geometry::parse("link A 0 B 2 short"),
            Err(Error::GeometryParse { .. })
        ));
        assert!(matches!(
            Geometry::parse("bogus"),
            Err(Error::GeometryParse { .. })
        ));
        assert!(matches!(
            Geometry::parse("source 1 S 0"),
            Err(Error::Geometry(_))
        ));
    }
}
