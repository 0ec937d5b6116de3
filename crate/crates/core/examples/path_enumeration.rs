//! Lists the eight path pairs and groups them by arrival-time class.
//!
//! ```bash
//! cargo run -p impact-series --example path_enumeration
//! ```

use impact_series::montecarlo::subensemble_weights;
use impact_series::pathspace::{classify, enumerate_path_pairs, members, Subensemble};

fn main() {
    println!("path pair   class   (shorts, longs) of the length difference");
    for pair in enumerate_path_pairs() {
        let (s, l) = pair.length_difference();
        println!(
            "{:<10}  {:<6}  ({s:+}, {l:+})",
            pair.to_string(),
            classify(pair).label()
        );
    }

    println!();
    for (sub, w) in Subensemble::ALL.iter().zip(subensemble_weights()) {
        let labels: Vec<String> = members(*sub).iter().map(ToString::to_string).collect();
        println!(
            "class {:<5} weight {w:.3}  {}",
            sub.label(),
            labels.join(" ")
        );
    }
}
