//! Prints the tabulated amplitudes at chosen phases and checks that each
//! joint table is complete on its own.
//!
//! ```bash
//! cargo run -p impact-series --example amplitude_tables -- 0.3 1.2 -0.5
//! ```

use impact_series::amplitudes::{amp_joint, amp_single, Amplitude};
use impact_series::pathspace::{members, Arm2Path, Outcome, Sign, Subensemble};
use impact_series::PhaseSettings;

fn fmt(a: Amplitude) -> String {
    format!("{:+.4}{:+.4}i", a.re, a.im)
}

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("phase in radians"))
        .collect();
    let ph = match args.as_slice() {
        [a, b, g] => PhaseSettings::new(*a, *b, *g),
        [] => PhaseSettings::ZERO,
        _ => panic!("usage: amplitude_tables [alpha beta gamma]"),
    };
    println!("alpha={} beta={} gamma={}\n", ph.alpha, ph.beta, ph.gamma);

    for sub in [Subensemble::DL, Subensemble::Dl] {
        println!("subensemble {}", sub.label());
        for pair in members(sub) {
            let row: Vec<String> = Outcome::ALL
                .iter()
                .map(|&o| format!("A{o}={}", fmt(amp_joint(pair, o, &ph).unwrap())))
                .collect();
            println!("  {:<8} {}", pair.to_string(), row.join("  "));
        }
        let total: f64 = Outcome::ALL
            .iter()
            .map(|&o| {
                members(sub)
                    .iter()
                    .map(|&p| amp_joint(p, o, &ph).unwrap())
                    .sum::<Amplitude>()
                    .norm_sqr()
            })
            .sum();
        println!("  sum over outcomes of |sum of amplitudes|^2 = {total:.12}\n");
    }

    println!("photon 2 single paths");
    for path in [
        Arm2Path::LONG_SHORT,
        Arm2Path::SHORT_LONG,
        Arm2Path::LONG_LONG,
    ] {
        let row: Vec<String> = Sign::ALL
            .iter()
            .map(|&s| format!("A{}={}", s.symbol(), fmt(amp_single(path, s, &ph).unwrap())))
            .collect();
        println!("  {:<3} {}", path.to_string(), row.join("  "));
    }
}
