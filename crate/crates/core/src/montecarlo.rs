//! Event-level emulation of a run with coincidence post-selection.
//!
//! Each emitted pair first lands in one of the four arrival-time classes
//! with weights 1/8, 3/8, 3/8, 1/8 (one, three, three and one of the eight
//! equiprobable path pairs). Pairs outside the target class are rejected
//! by the coincidence window; accepted pairs draw a joint outcome from the
//! model's distribution and bump one of the four counters.
//!
//! # Reproducibility
//!
//! Events are generated in fixed blocks of [`BLOCK_EVENTS`]. Block `k` uses
//! ChaCha8 seeded with `seed_from_u64(seed)` and switched to stream `k`.
//! Blocks run in parallel and their tallies are summed, so a tally depends
//! only on the configuration and never on the number of worker threads.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitudes::PhaseSettings;
use crate::error::{Error, Result};
use crate::pathspace::{members, Outcome, Subensemble};
use crate::theories::{
    predict_for, qm_joint, JointDistribution, Prediction, Side, SinglesPair, TheoryKind,
    TheoryModel,
};

/// Events per independently seeded block.
pub const BLOCK_EVENTS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: TheoryModel,
    pub phases: PhaseSettings,
    pub events: u64,
    pub seed: u64,
    pub target: Subensemble,
}

impl RunConfig {
    pub fn new(model: TheoryModel, phases: PhaseSettings, events: u64, seed: u64) -> Self {
        Self {
            model,
            phases,
            events,
            seed,
            target: Subensemble::DL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.events == 0 {
            return Err(Error::InvalidConfig("events must be at least 1".into()));
        }
        if !self.phases.is_finite() {
            return Err(Error::InvalidConfig("phases must be finite".into()));
        }
        Ok(())
    }
}

/// Share of emitted pairs in each class, in [`Subensemble::ALL`] order.
pub fn subensemble_weights() -> [f64; 4] {
    let total = 8.0;
    Subensemble::ALL.map(|s| members(s).len() as f64 / total)
}

/// The four coincidence counters plus the window bookkeeping.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceTally {
    /// Counts in outcome order ++, +-, -+, --.
    pub r: [u64; 4],
    pub accepted: u64,
    pub rejected: u64,
}

impl CoincidenceTally {
    pub fn from_counts(r: [u64; 4], rejected: u64) -> Self {
        Self {
            r,
            accepted: r.iter().sum(),
            rejected,
        }
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        self.r[outcome.index()]
    }

    pub fn events(&self) -> u64 {
        self.accepted + self.rejected
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.events() as f64
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.r.iter_mut().zip(other.r) {
            *a += b;
        }
        self.accepted += other.accepted;
        self.rejected += other.rejected;
        self
    }

    /// Observed singles frequencies on one side.
    pub fn singles(&self, side: Side) -> Option<SinglesPair> {
        if self.accepted == 0 {
            return None;
        }
        let plus = match side {
            Side::Side1 => self.get(Outcome::PP) + self.get(Outcome::PM),
            Side::Side2 => self.get(Outcome::PP) + self.get(Outcome::MP),
        };
        Some(SinglesPair::new(side, plus as f64 / self.accepted as f64))
    }
}

impl fmt::Display for CoincidenceTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R++={} R+-={} R-+={} R--={} accepted={} rejected={}",
            self.r[0], self.r[1], self.r[2], self.r[3], self.accepted, self.rejected
        )
    }
}

/// Joint law sampled for accepted events. The causal models only fix
/// singles, so their joint is the product of the two sides with any
/// undefined side split evenly.
pub fn sampling_distribution(config: &RunConfig) -> Result<JointDistribution> {
    match config.model.kind {
        TheoryKind::Qm => qm_joint(config.target, &config.phases),
        TheoryKind::Causal | TheoryKind::Rnl => {
            let pred = predict_for(&config.model, config.target, &config.phases)?;
            let side1 = pred
                .side1
                .unwrap_or_else(|| SinglesPair::uniform(Side::Side1));
            let side2 = pred
                .side2
                .unwrap_or_else(|| SinglesPair::uniform(Side::Side2));
            Ok(JointDistribution::product(&side1, &side2))
        }
    }
}

fn cumulative<const N: usize>(weights: [f64; N]) -> [f64; N] {
    let mut acc = 0.0;
    let mut out = weights.map(|w| {
        acc += w;
        acc
    });
    // guard against rounding leaving the last edge just below 1
    out[N - 1] = f64::INFINITY;
    out
}

fn pick<const N: usize>(edges: &[f64; N], u: f64) -> usize {
    edges.iter().position(|&e| u < e).unwrap_or(N - 1)
}

fn run_block(
    config: &RunConfig,
    joint_edges: &[f64; 4],
    sub_edges: &[f64; 4],
    target: usize,
    block: u64,
) -> CoincidenceTally {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(block);
    let start = block * BLOCK_EVENTS;
    let n = BLOCK_EVENTS.min(config.events - start);

    let mut tally = CoincidenceTally::default();
    for _ in 0..n {
        let sub = pick(sub_edges, rng.gen::<f64>());
        if sub != target {
            tally.rejected += 1;
            continue;
        }
        let o = pick(joint_edges, rng.gen::<f64>());
        tally.r[o] += 1;
        tally.accepted += 1;
    }
    tally
}

/// Emulates `config.events` emitted pairs and tallies the coincidences
/// that fall in the target window.
pub fn run(config: &RunConfig) -> Result<CoincidenceTally> {
    config.validate()?;
    let joint = sampling_distribution(config)?;
    let joint_edges = cumulative(joint.p);
    let sub_edges = cumulative(subensemble_weights());
    let target = Subensemble::ALL
        .iter()
        .position(|&s| s == config.target)
        .expect("target is a subensemble");

    let blocks = config.events.div_ceil(BLOCK_EVENTS);
    let tally = (0..blocks)
        .into_par_iter()
        .map(|b| run_block(config, &joint_edges, &sub_edges, target, b))
        .reduce(CoincidenceTally::default, CoincidenceTally::merge);
    Ok(tally)
}

/// Estimate of the side-1 asymmetry `E` with its references.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateE {
    /// `(R++ + R+- - R-+ - R--) / accepted`.
    pub value: f64,
    /// Binomial standard error of `value`.
    pub std_error: f64,
    /// QM magnitude `(2/3)|cos(alpha + beta)|`.
    pub analytic_qm: f64,
    /// Causal magnitude, always 0.
    pub analytic_causal: f64,
    /// Signed expectation of `value` under the run's own model, when the
    /// model fixes side 1.
    pub analytic_model: Option<f64>,
}

impl EstimateE {
    /// Distance from `expected` in units of the standard error.
    pub fn sigmas_from(&self, expected: f64) -> f64 {
        (self.value - expected).abs() / self.std_error
    }
}

/// Reduces a tally to `E`.
pub fn estimate_e(tally: &CoincidenceTally, config: &RunConfig) -> Result<EstimateE> {
    if tally.accepted == 0 {
        return Err(Error::EmptyTally);
    }
    let n = tally.accepted as f64;
    let plus = (tally.get(Outcome::PP) + tally.get(Outcome::PM)) as f64;
    let minus = (tally.get(Outcome::MP) + tally.get(Outcome::MM)) as f64;
    let p = plus / n;
    let analytic_model = predict_for(&config.model, config.target, &config.phases)
        .ok()
        .and_then(|pred| pred.side1)
        .map(|s| s.p_plus - s.p_minus);
    Ok(EstimateE {
        value: (plus - minus) / n,
        std_error: 2.0 * (p * (1.0 - p) / n).sqrt(),
        analytic_qm: (config.phases.alpha + config.phases.beta).cos().abs() * 2.0 / 3.0,
        analytic_causal: 0.0,
        analytic_model,
    })
}

/// Phase being swept by [`scan_phases`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseAxis {
    Alpha,
    Beta,
    Gamma,
}

impl PhaseAxis {
    pub fn apply(self, base: PhaseSettings, angle: f64) -> PhaseSettings {
        match self {
            PhaseAxis::Alpha => PhaseSettings {
                alpha: angle,
                ..base
            },
            PhaseAxis::Beta => PhaseSettings {
                beta: angle,
                ..base
            },
            PhaseAxis::Gamma => PhaseSettings {
                gamma: angle,
                ..base
            },
        }
    }
}

impl fmt::Display for PhaseAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseAxis::Alpha => "alpha",
            PhaseAxis::Beta => "beta",
            PhaseAxis::Gamma => "gamma",
        })
    }
}

/// One grid point of a phase scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub angle: f64,
    pub config: RunConfig,
    pub tally: CoincidenceTally,
    pub estimate: EstimateE,
    pub mc_side1: SinglesPair,
    pub mc_side2: SinglesPair,
    pub analytic: Prediction,
}

/// SplitMix64 finalizer, used to derive per-point seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the model once per grid angle. Point `i` is seeded with
/// `derive_seed(seed, i)`.
pub fn scan_phases(
    model: &TheoryModel,
    axis: PhaseAxis,
    grid: &[f64],
    base: PhaseSettings,
    events_per_point: u64,
    seed: u64,
) -> Result<Vec<ScanPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("phase grid is empty".into()));
    }
    grid.iter()
        .enumerate()
        .map(|(i, &angle)| {
            let phases = axis.apply(base, angle);
            let config = RunConfig::new(
                *model,
                phases,
                events_per_point,
                derive_seed(seed, i as u64),
            );
            let tally = run(&config)?;
            let estimate = estimate_e(&tally, &config)?;
            Ok(ScanPoint {
                angle,
                config,
                tally,
                estimate,
                mc_side1: tally.singles(Side::Side1).expect("accepted > 0"),
                mc_side2: tally.singles(Side::Side2).expect("accepted > 0"),
                analytic: predict_for(model, config.target, &phases)?,
            })
        })
        .collect()
}

/// `count` evenly spaced angles from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}
