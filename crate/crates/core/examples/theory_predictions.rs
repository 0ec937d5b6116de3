//! Side-by-side singles predictions of QM, the causal model under both
//! time orderings, and RNL.
//!
//! ```bash
//! cargo run -p impact-series --example theory_predictions
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use impact_series::theories::predict;
use impact_series::{PhaseSettings, SinglesPair, TheoryModel, TimeOrdering};

fn cell(s: Option<SinglesPair>) -> String {
    s.map_or_else(|| "   -   ".to_string(), |s| format!("{:.4}", s.p_plus))
}

fn main() {
    let models = [
        ("qm", TheoryModel::qm()),
        (
            "causal/1",
            TheoryModel::causal(TimeOrdering::Ordering1).unwrap(),
        ),
        (
            "causal/2",
            TheoryModel::causal(TimeOrdering::Ordering2).unwrap(),
        ),
        ("rnl", TheoryModel::rnl()),
    ];
    let settings = [
        ("alpha+beta=0", PhaseSettings::ZERO),
        ("alpha+beta=pi/2", PhaseSettings::new(FRAC_PI_2, 0.0, 0.0)),
        ("alpha+beta=pi", PhaseSettings::new(PI, 0.0, 0.0)),
        ("beta-gamma=pi", PhaseSettings::new(0.0, PI, 0.0)),
    ];

    println!("{:<18} {:<9} P(D1+)  P(D2+)  E", "phases", "model");
    for (label, ph) in settings {
        for (name, model) in &models {
            let pred = predict(model, &ph).unwrap();
            let e = pred
                .side1
                .map_or("   -".into(), |s| format!("{:+.4}", s.p_plus - s.p_minus));
            println!(
                "{label:<18} {name:<9} {}  {}  {e}",
                cell(pred.side1),
                cell(pred.side2)
            );
        }
        println!();
    }
}
