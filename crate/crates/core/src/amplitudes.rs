//! Tabulated probability amplitudes.
//!
//! Three tables, each normalized on its own:
//!
//! * joint amplitudes of the three path pairs in subensemble `L`,
//! * joint amplitudes of the three path pairs in subensemble `l`,
//! * photon-2 single-path amplitudes for `Ll`, `lL` and `LL`.
//!
//! Every entry is a fixed unit coefficient (±1 or ±i) times the table's
//! magnitude times the phase picked up on the long arms the path crosses.
//! `alpha` sits on photon 1's long arm, `beta` and `gamma` on the long arms
//! of photon 2's first and second interferometer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathspace::{classify, Arm, Arm2Path, Outcome, PathPair, Sign, Subensemble};

pub type Amplitude = Complex64;

/// Magnitude of every joint-table entry, `1/(2√3)`.
pub const JOINT_MAGNITUDE: f64 = 0.288_675_134_594_812_9;
/// Magnitude of every single-path entry, `1/√6`.
pub const SINGLE_MAGNITUDE: f64 = 0.408_248_290_463_863;

/// Phases on the three long arms, in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseSettings {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl PhaseSettings {
    pub const ZERO: PhaseSettings = PhaseSettings::new(0.0, 0.0, 0.0);

    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.beta.is_finite() && self.gamma.is_finite()
    }

    /// Total long-arm phase along a path pair.
    pub fn pair_phase(&self, pair: PathPair) -> f64 {
        let p1 = if pair.photon1 == Arm::Long {
            self.alpha
        } else {
            0.0
        };
        p1 + self.path_phase(pair.photon2)
    }

    /// Total long-arm phase along a photon-2 path.
    pub fn path_phase(&self, path: Arm2Path) -> f64 {
        let first = if path.first == Arm::Long {
            self.beta
        } else {
            0.0
        };
        let second = if path.second == Arm::Long {
            self.gamma
        } else {
            0.0
        };
        first + second
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const NEG: Complex64 = Complex64::new(-1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const NEG_I: Complex64 = Complex64::new(0.0, -1.0);

/// Unit coefficients in outcome order ++, +-, -+, --.
fn joint_coefficients(pair: PathPair) -> Option<[Complex64; 4]> {
    use Arm::{Long, Short};
    let c = match (pair.photon1, pair.photon2.first, pair.photon2.second) {
        // subensemble L
        (Short, Long, Short) => [NEG, NEG_I, NEG_I, ONE],
        (Short, Short, Long) => [NEG, I, NEG_I, NEG],
        (Long, Long, Long) => [ONE, NEG_I, NEG_I, NEG],
        // subensemble l
        (Short, Short, Short) => [ONE, I, I, NEG],
        (Long, Short, Long) => [ONE, NEG_I, NEG_I, NEG],
        (Long, Long, Short) => [ONE, I, NEG_I, ONE],
        // satellites have no table
        _ => return None,
    };
    Some(c)
}

fn joint(
    pair: PathPair,
    outcome: Outcome,
    phases: &PhaseSettings,
    expected: Subensemble,
) -> Result<Amplitude> {
    let actual = classify(pair);
    if actual != expected {
        return Err(Error::WrongSubensemble {
            pair,
            expected,
            actual,
        });
    }
    let c = joint_coefficients(pair).expect("central pairs are tabulated");
    Ok(c[outcome.index()] * Complex64::from_polar(JOINT_MAGNITUDE, phases.pair_phase(pair)))
}

/// Joint amplitude for a pair in subensemble `L`.
pub fn amp_joint_big(
    pair: PathPair,
    outcome: Outcome,
    phases: &PhaseSettings,
) -> Result<Amplitude> {
    joint(pair, outcome, phases, Subensemble::DL)
}

/// Joint amplitude for a pair in subensemble `l`.
pub fn amp_joint_small(
    pair: PathPair,
    outcome: Outcome,
    phases: &PhaseSettings,
) -> Result<Amplitude> {
    joint(pair, outcome, phases, Subensemble::Dl)
}

/// Joint amplitude for any pair in the two central subensembles.
pub fn amp_joint(pair: PathPair, outcome: Outcome, phases: &PhaseSettings) -> Result<Amplitude> {
    let sub = classify(pair);
    if !sub.is_central() {
        return Err(Error::SatelliteSubensemble(sub));
    }
    joint(pair, outcome, phases, sub)
}

/// Photon-2 single-path amplitude for detection in `D2(sign)`.
pub fn amp_single(path: Arm2Path, sign: Sign, phases: &PhaseSettings) -> Result<Amplitude> {
    use Arm::{Long, Short};
    let [plus, minus] = match (path.first, path.second) {
        (Long, Short) => [NEG, NEG_I],
        (Short, Long) => [NEG, I],
        (Long, Long) => [NEG, I],
        (Short, Short) => return Err(Error::NoSinglePathAmplitude(path)),
    };
    let c = match sign {
        Sign::Plus => plus,
        Sign::Minus => minus,
    };
    Ok(c * Complex64::from_polar(SINGLE_MAGNITUDE, phases.path_phase(path)))
}
