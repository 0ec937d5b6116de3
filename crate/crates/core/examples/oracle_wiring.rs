//! Rederives the amplitude tables from three splitter wirings: the default
//! one, a negative control with a misplaced phase shifter, and a variant
//! with a separate entrance splitter for photon 2's second interferometer.
//!
//! ```bash
//! cargo run -p impact-series --example oracle_wiring
//! ```

use impact_series::oracle::{validate, validation_grid, Geometry, SplitterConvention};

fn main() {
    let wirings = [
        ("default", include_str!("../geometry/default.geom")),
        ("miswired", include_str!("../geometry/miswired.geom")),
        (
            "separate-entrance",
            include_str!("../geometry/separate-entrance.geom"),
        ),
    ];
    let conv = SplitterConvention::default();
    for (name, text) in wirings {
        let geometry = Geometry::parse(text).unwrap();
        let report = validate(&geometry, &conv, &validation_grid(), 1e-9).unwrap();
        println!("== {name}\n{report}\n");
    }
}
