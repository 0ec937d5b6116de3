//! Prediction rules of the three rival models.
//!
//! * `QM` adds the amplitudes of all three path pairs of a subensemble
//!   before squaring, whatever the time ordering.
//! * `Causal` lets the photon that impacts first ignore everything it
//!   cannot yet know: its singles follow from the sum of probabilities over
//!   alternatives still distinguishable at its impact. Only the first
//!   photon's singles are fixed; the other side is left undefined.
//! * `RNL` applies the causal singles on both sides for every ordering.
//!
//! Each printed closed form has an amplitude-summation twin so the two
//! routes can be checked against each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::amplitudes::{amp_joint, amp_single, Amplitude, PhaseSettings};
use crate::error::{Error, Result};
use crate::pathspace::{members, Arm2Path, Outcome, Sign, Subensemble, TimeOrdering};

/// Joint detection probabilities in outcome order ++, +-, -+, --.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    pub p: [f64; 4],
}

impl JointDistribution {
    pub fn new(p: [f64; 4]) -> Self {
        Self { p }
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 4] }
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.p[outcome.index()]
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Joint law of two independent sides.
    pub fn product(side1: &SinglesPair, side2: &SinglesPair) -> Self {
        let mut p = [0.0; 4];
        for o in Outcome::ALL {
            p[o.index()] = side1.get(o.sigma) * side2.get(o.omega);
        }
        Self { p }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Detectors D1, photon 1.
    Side1,
    /// Detectors D2, photon 2.
    Side2,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Side1 => "side 1",
            Side::Side2 => "side 2",
        })
    }
}

/// Singles probabilities on one side of the setup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SinglesPair {
    pub p_plus: f64,
    pub p_minus: f64,
    pub side: Side,
}

impl SinglesPair {
    pub fn new(side: Side, p_plus: f64) -> Self {
        Self {
            p_plus,
            p_minus: 1.0 - p_plus,
            side,
        }
    }

    pub fn uniform(side: Side) -> Self {
        Self::new(side, 0.5)
    }

    pub fn get(&self, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => self.p_plus,
            Sign::Minus => self.p_minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoryKind {
    #[serde(rename = "qm")]
    Qm,
    #[serde(rename = "causal")]
    Causal,
    #[serde(rename = "rnl")]
    Rnl,
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryKind::Qm => "qm",
            TheoryKind::Causal => "causal",
            TheoryKind::Rnl => "rnl",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoryModel {
    pub kind: TheoryKind,
    pub ordering: TimeOrdering,
}

impl TheoryModel {
    pub fn new(kind: TheoryKind, ordering: TimeOrdering) -> Result<Self> {
        let model = Self { kind, ordering };
        model.validate()?;
        Ok(model)
    }

    pub fn qm() -> Self {
        Self {
            kind: TheoryKind::Qm,
            ordering: TimeOrdering::Spacelike,
        }
    }

    pub fn rnl() -> Self {
        Self {
            kind: TheoryKind::Rnl,
            ordering: TimeOrdering::Spacelike,
        }
    }

    pub fn causal(ordering: TimeOrdering) -> Result<Self> {
        Self::new(TheoryKind::Causal, ordering)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == TheoryKind::Causal && self.ordering == TimeOrdering::Spacelike {
            return Err(Error::CausalOrdering(self.ordering));
        }
        Ok(())
    }
}

impl fmt::Display for TheoryModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.kind, self.ordering)
    }
}

/// QM joint distribution inside a central subensemble: squared magnitude
/// of the summed amplitudes of its three path pairs.
pub fn qm_joint(sub: Subensemble, phases: &PhaseSettings) -> Result<JointDistribution> {
    if !sub.is_central() {
        return Err(Error::SatelliteSubensemble(sub));
    }
    let pairs = members(sub);
    let mut p = [0.0; 4];
    for o in Outcome::ALL {
        let mut sum = Amplitude::new(0.0, 0.0);
        for &pair in &pairs {
            sum += amp_joint(pair, o, phases)?;
        }
        p[o.index()] = sum.norm_sqr();
    }
    Ok(JointDistribution { p })
}

/// Counts in D2(±) regardless of photon 1.
pub fn marginal_side2(j: &JointDistribution) -> SinglesPair {
    SinglesPair {
        p_plus: j.get(Outcome::PP) + j.get(Outcome::MP),
        p_minus: j.get(Outcome::PM) + j.get(Outcome::MM),
        side: Side::Side2,
    }
}

/// Counts in D1(±) regardless of photon 2.
pub fn marginal_side1(j: &JointDistribution) -> SinglesPair {
    SinglesPair {
        p_plus: j.get(Outcome::PP) + j.get(Outcome::PM),
        p_minus: j.get(Outcome::MP) + j.get(Outcome::MM),
        side: Side::Side1,
    }
}

pub fn marginal(j: &JointDistribution, side: Side) -> SinglesPair {
    match side {
        Side::Side1 => marginal_side1(j),
        Side::Side2 => marginal_side2(j),
    }
}

/// Printed closed forms of the QM singles:
///
/// * `L`, side 2: `1/2 + cos(beta - gamma)/3`
/// * `L`, side 1: `1/2 - cos(alpha + beta)/3`
/// * `l`, side 1: `1/2 + cos(alpha + beta)/3`
pub fn qm_singles_closed_form(
    sub: Subensemble,
    side: Side,
    phases: &PhaseSettings,
) -> Result<SinglesPair> {
    let p_plus = match (sub, side) {
        (Subensemble::DL, Side::Side2) => 0.5 + (phases.beta - phases.gamma).cos() / 3.0,
        (Subensemble::DL, Side::Side1) => 0.5 - (phases.alpha + phases.beta).cos() / 3.0,
        (Subensemble::Dl, Side::Side1) => 0.5 + (phases.alpha + phases.beta).cos() / 3.0,
        _ => return Err(Error::NoClosedForm { sub, side }),
    };
    Ok(SinglesPair::new(side, p_plus))
}

/// Photon 2 impacting first: `LL` stays distinguishable through photon 1
/// and is added as a probability, `Ll` and `lL` interfere.
pub fn causal_singles_side2(phases: &PhaseSettings) -> Result<SinglesPair> {
    let prob = |sign| -> Result<f64> {
        let ll = amp_single(Arm2Path::LONG_LONG, sign, phases)?;
        let mixed = amp_single(Arm2Path::LONG_SHORT, sign, phases)?
            + amp_single(Arm2Path::SHORT_LONG, sign, phases)?;
        Ok(ll.norm_sqr() + mixed.norm_sqr())
    };
    Ok(SinglesPair {
        p_plus: prob(Sign::Plus)?,
        p_minus: prob(Sign::Minus)?,
        side: Side::Side2,
    })
}

/// Closed form of [`causal_singles_side2`]: `1/2 + cos(beta - gamma)/3`.
pub fn causal_singles_side2_closed_form(phases: &PhaseSettings) -> SinglesPair {
    SinglesPair::new(Side::Side2, 0.5 + (phases.beta - phases.gamma).cos() / 3.0)
}

/// Photon 1 impacting first: equal split, no phase dependence.
pub fn causal_singles_side1() -> SinglesPair {
    SinglesPair::uniform(Side::Side1)
}

/// Sum-of-probabilities route to [`causal_singles_side1`]: every joint
/// amplitude of subensemble `L` squared on its own, no cross terms.
pub fn causal_singles_side1_incoherent(phases: &PhaseSettings) -> Result<SinglesPair> {
    let mut p = [0.0; 2];
    for pair in members(Subensemble::DL) {
        for o in Outcome::ALL {
            let idx = if o.sigma == Sign::Plus { 0 } else { 1 };
            p[idx] += amp_joint(pair, o, phases)?.norm_sqr();
        }
    }
    Ok(SinglesPair {
        p_plus: p[0],
        p_minus: p[1],
        side: Side::Side1,
    })
}

/// Predicted singles and, where the model defines it, joint distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub side1: Option<SinglesPair>,
    pub side2: Option<SinglesPair>,
    pub joint: Option<JointDistribution>,
}

impl Prediction {
    pub fn side(&self, side: Side) -> Option<SinglesPair> {
        match side {
            Side::Side1 => self.side1,
            Side::Side2 => self.side2,
        }
    }
}

/// Prediction for the central subensemble `L`.
pub fn predict(model: &TheoryModel, phases: &PhaseSettings) -> Result<Prediction> {
    predict_for(model, Subensemble::DL, phases)
}

/// Prediction for a chosen subensemble. QM accepts both central classes;
/// the causal models only speak about `L`.
pub fn predict_for(
    model: &TheoryModel,
    sub: Subensemble,
    phases: &PhaseSettings,
) -> Result<Prediction> {
    model.validate()?;
    match model.kind {
        TheoryKind::Qm => {
            let joint = qm_joint(sub, phases)?;
            Ok(Prediction {
                side1: Some(marginal_side1(&joint)),
                side2: Some(marginal_side2(&joint)),
                joint: Some(joint),
            })
        }
        TheoryKind::Causal | TheoryKind::Rnl if sub != Subensemble::DL => {
            Err(Error::CausalSubensemble {
                model: if model.kind == TheoryKind::Causal {
                    "causal"
                } else {
                    "rnl"
                },
                sub,
            })
        }
        TheoryKind::Causal => {
            let (side1, side2) = match model.ordering {
                TimeOrdering::Ordering1 => (None, Some(causal_singles_side2(phases)?)),
                TimeOrdering::Ordering2 => (Some(causal_singles_side1()), None),
                TimeOrdering::Spacelike => unreachable!("rejected by validate"),
            };
            Ok(Prediction {
                side1,
                side2,
                joint: None,
            })
        }
        TheoryKind::Rnl => Ok(Prediction {
            side1: Some(causal_singles_side1()),
            side2: Some(causal_singles_side2(phases)?),
            joint: None,
        }),
    }
}
