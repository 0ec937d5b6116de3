//! Emulates one run per model at the maximal-contrast setting and
//! estimates E from the coincidence counters.
//!
//! ```bash
//! cargo run --release -p impact-series --example coincidence_run -- 1000000 42
//! ```

use impact_series::montecarlo::{estimate_e, run, RunConfig};
use impact_series::{PhaseSettings, TheoryModel, TimeOrdering};

fn main() {
    let mut args = std::env::args().skip(1);
    let events: u64 = args
        .next()
        .map_or(1_000_000, |a| a.parse().expect("event count"));
    let seed: u64 = args.next().map_or(42, |a| a.parse().expect("seed"));

    let models = [
        TheoryModel::qm(),
        TheoryModel::causal(TimeOrdering::Ordering1).unwrap(),
        TheoryModel::causal(TimeOrdering::Ordering2).unwrap(),
        TheoryModel::rnl(),
    ];
    for model in models {
        let cfg = RunConfig::new(model, PhaseSettings::ZERO, events, seed);
        let tally = run(&cfg).unwrap();
        let e = estimate_e(&tally, &cfg).unwrap();
        println!("{:<16} {tally}", model.to_string());
        println!(
            "{:<16} acceptance={:.5} E={:+.5} ± {:.5}  (QM |E|={:.4}, causal |E|={})",
            "",
            tally.acceptance_rate(),
            e.value,
            e.std_error,
            e.analytic_qm,
            e.analytic_causal
        );
    }
}
