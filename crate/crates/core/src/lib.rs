//! Analytic predictions and Monte Carlo emulation for a two-photon
//! impact-series interferometer.
//!
//! Photon 1 crosses one unbalanced interferometer; photon 2 crosses two in
//! series. Coincidence timing selects the path pairs whose length
//! difference equals one long arm, and inside that window three models
//! disagree about photon 1's singles:
//!
//! | model  | side-1 `P(+)`               | side-2 `P(+)`               |
//! |--------|-----------------------------|-----------------------------|
//! | QM     | `1/2 - cos(alpha+beta)/3`   | `1/2 + cos(beta-gamma)/3`   |
//! | causal | `1/2` (photon 1 first)      | `1/2 + cos(beta-gamma)/3` (photon 2 first) |
//! | RNL    | `1/2`                       | `1/2 + cos(beta-gamma)/3`   |
//!
//! The side-1 asymmetry `E` therefore reaches `2/3` under QM at
//! `alpha + beta = n pi` and vanishes for the causal models.
//!
//! Modules:
//!
//! * [`pathspace`]: path pairs, outcomes and arrival-time classes.
//! * [`amplitudes`]: tabulated joint and single-path amplitudes.
//! * [`theories`]: the three prediction rules.
//! * [`montecarlo`]: seeded event generation, post-selection and `E`.
//! * [`oracle`]: rederives the tables from beam-splitter wiring.
//! * [`cli`]: the `impact-series` command line.

pub mod amplitudes;
pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod pathspace;
pub mod theories;

pub use amplitudes::{Amplitude, PhaseSettings};
pub use error::{Error, Result};
pub use montecarlo::{
    estimate_e, run, scan_phases, CoincidenceTally, EstimateE, PhaseAxis, RunConfig,
};
pub use pathspace::{
    classify, enumerate_path_pairs, members, Outcome, PathPair, Subensemble, TimeOrdering,
};
pub use theories::{
    predict, JointDistribution, Prediction, Side, SinglesPair, TheoryKind, TheoryModel,
};
