//! Path and outcome vocabulary of the impact-series setup.
//!
//! Photon 1 crosses one unbalanced interferometer (short arm `l`, long arm
//! `L`) and photon 2 crosses two of them in series, so a detected pair is
//! labelled by one arm for photon 1 and two arms for photon 2. Pairs are
//! grouped by the difference between the two photons' travelled lengths,
//! which is what the coincidence electronics can resolve.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One arm of an unbalanced interferometer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Arm {
    Short,
    Long,
}

impl Arm {
    pub const ALL: [Arm; 2] = [Arm::Short, Arm::Long];

    pub fn symbol(self) -> char {
        match self {
            Arm::Short => 'l',
            Arm::Long => 'L',
        }
    }

    /// Number of long arms, used by the symbolic length bookkeeping.
    fn longs(self) -> i32 {
        match self {
            Arm::Short => 0,
            Arm::Long => 1,
        }
    }
}

/// Photon 1's single arm.
pub type Arm1 = Arm;

/// Photon 2's arms through its first and second interferometer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arm2Path {
    pub first: Arm,
    pub second: Arm,
}

impl Arm2Path {
    pub const SHORT_SHORT: Arm2Path = Arm2Path::new(Arm::Short, Arm::Short);
    pub const SHORT_LONG: Arm2Path = Arm2Path::new(Arm::Short, Arm::Long);
    pub const LONG_SHORT: Arm2Path = Arm2Path::new(Arm::Long, Arm::Short);
    pub const LONG_LONG: Arm2Path = Arm2Path::new(Arm::Long, Arm::Long);

    /// Canonical order: ll, lL, Ll, LL.
    pub const ALL: [Arm2Path; 4] = [
        Arm2Path::SHORT_SHORT,
        Arm2Path::SHORT_LONG,
        Arm2Path::LONG_SHORT,
        Arm2Path::LONG_LONG,
    ];

    pub const fn new(first: Arm, second: Arm) -> Self {
        Self { first, second }
    }

    fn longs(self) -> i32 {
        self.first.longs() + self.second.longs()
    }
}

impl fmt::Display for Arm2Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.symbol(), self.second.symbol())
    }
}

/// Joint path label, e.g. `(l,Ll)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathPair {
    pub photon1: Arm1,
    pub photon2: Arm2Path,
}

impl PathPair {
    pub const fn new(photon1: Arm1, photon2: Arm2Path) -> Self {
        Self { photon1, photon2 }
    }

    /// Builds a pair from its textual label, e.g. `"l,Ll"` or `"(L,LL)"`.
    pub fn parse(label: &str) -> Option<Self> {
        let label = label.trim().trim_start_matches('(').trim_end_matches(')');
        let (p1, p2) = label.split_once(',')?;
        let arm = |c: char| match c {
            'l' => Some(Arm::Short),
            'L' => Some(Arm::Long),
            _ => None,
        };
        let mut p1 = p1.trim().chars();
        let photon1 = arm(p1.next()?)?;
        if p1.next().is_some() {
            return None;
        }
        let mut p2 = p2.trim().chars();
        let first = arm(p2.next()?)?;
        let second = arm(p2.next()?)?;
        if p2.next().is_some() {
            return None;
        }
        Some(Self::new(photon1, Arm2Path::new(first, second)))
    }

    /// Photon 2's length minus photon 1's length, as `(shorts, longs)`
    /// coefficients of `l` and `L`.
    pub fn length_difference(self) -> (i32, i32) {
        let longs = self.photon2.longs() - self.photon1.longs();
        let shorts = (2 - self.photon2.longs()) - (1 - self.photon1.longs());
        (shorts, longs)
    }
}

impl fmt::Display for PathPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.photon1.symbol(), self.photon2)
    }
}

/// Arrival-time class of a path pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subensemble {
    /// Difference `2L - l`.
    D2Ll,
    /// Difference `L`; the central peak selected by the coincidence window.
    DL,
    /// Difference `l`.
    Dl,
    /// Difference `2l - L`.
    D2lL,
}

impl Subensemble {
    pub const ALL: [Subensemble; 4] = [
        Subensemble::D2Ll,
        Subensemble::DL,
        Subensemble::Dl,
        Subensemble::D2lL,
    ];

    /// Length difference as `(shorts, longs)` coefficients of `l` and `L`.
    pub fn length_difference(self) -> (i32, i32) {
        match self {
            Subensemble::D2Ll => (-1, 2),
            Subensemble::DL => (0, 1),
            Subensemble::Dl => (1, 0),
            Subensemble::D2lL => (2, -1),
        }
    }

    /// Whether interference tables exist for this class.
    pub fn is_central(self) -> bool {
        matches!(self, Subensemble::DL | Subensemble::Dl)
    }

    pub fn label(self) -> &'static str {
        match self {
            Subensemble::D2Ll => "2L-l",
            Subensemble::DL => "L",
            Subensemble::Dl => "l",
            Subensemble::D2lL => "2l-L",
        }
    }
}

impl fmt::Display for Subensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Detector sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Joint detection: `sigma` for D1, `omega` for D2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Outcome {
    pub sigma: Sign,
    pub omega: Sign,
}

impl Outcome {
    pub const PP: Outcome = Outcome::new(Sign::Plus, Sign::Plus);
    pub const PM: Outcome = Outcome::new(Sign::Plus, Sign::Minus);
    pub const MP: Outcome = Outcome::new(Sign::Minus, Sign::Plus);
    pub const MM: Outcome = Outcome::new(Sign::Minus, Sign::Minus);

    /// Order used by every table and counter: ++, +-, -+, --.
    pub const ALL: [Outcome; 4] = [Outcome::PP, Outcome::PM, Outcome::MP, Outcome::MM];

    pub const fn new(sigma: Sign, omega: Sign) -> Self {
        Self { sigma, omega }
    }

    /// Position in [`Outcome::ALL`].
    pub fn index(self) -> usize {
        match (self.sigma, self.omega) {
            (Sign::Plus, Sign::Plus) => 0,
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => 2,
            (Sign::Minus, Sign::Minus) => 3,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sigma.symbol(), self.omega.symbol())
    }
}

/// Relative timing of the beam-splitter impacts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TimeOrdering {
    /// Photon 2's last impact (BS22) precedes photon 1's impact (BS11).
    Ordering1,
    /// Photon 1's impact (BS11) precedes photon 2's first impact (BS21).
    Ordering2,
    /// Impacts are spacelike separated.
    Spacelike,
}

impl fmt::Display for TimeOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeOrdering::Ordering1 => "1",
            TimeOrdering::Ordering2 => "2",
            TimeOrdering::Spacelike => "spacelike",
        })
    }
}

/// All eight path pairs, photon 1 first (l before L), then photon 2 in
/// the order ll, lL, Ll, LL.
pub fn enumerate_path_pairs() -> Vec<PathPair> {
    Arm::ALL
        .iter()
        .flat_map(|&a| Arm2Path::ALL.iter().map(move |&p| PathPair::new(a, p)))
        .collect()
}

/// Arrival-time class of `pair`, from the symbolic length difference.
pub fn classify(pair: PathPair) -> Subensemble {
    let diff = pair.length_difference();
    Subensemble::ALL
        .into_iter()
        .find(|s| s.length_difference() == diff)
        .expect("every length difference of a path pair is tabulated")
}

/// Path pairs of class `s`, in canonical order.
pub fn members(s: Subensemble) -> Vec<PathPair> {
    enumerate_path_pairs()
        .into_iter()
        .filter(|&p| classify(p) == s)
        .collect()
}
