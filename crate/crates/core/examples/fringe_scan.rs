//! Scans alpha over one period and prints the side-1 fringe for QM and RNL,
//! analytic and simulated, as CSV suitable for plotting.
//!
//! ```bash
//! cargo run --release -p impact-series --example fringe_scan > fringe.csv
//! ```

use std::f64::consts::TAU;

use impact_series::montecarlo::{linspace, scan_phases, PhaseAxis};
use impact_series::{PhaseSettings, TheoryModel};

fn main() {
    let grid = linspace(0.0, TAU, 25);
    let qm = scan_phases(
        &TheoryModel::qm(),
        PhaseAxis::Alpha,
        &grid,
        PhaseSettings::ZERO,
        200_000,
        7,
    )
    .unwrap();
    let rnl = scan_phases(
        &TheoryModel::rnl(),
        PhaseAxis::Alpha,
        &grid,
        PhaseSettings::ZERO,
        200_000,
        7,
    )
    .unwrap();

    println!("alpha,qm_analytic,qm_mc,rnl_analytic,rnl_mc,e_qm,e_rnl");
    for (q, r) in qm.iter().zip(&rnl) {
        println!(
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            q.angle,
            q.analytic.side1.unwrap().p_plus,
            q.mc_side1.p_plus,
            r.analytic.side1.unwrap().p_plus,
            r.mc_side1.p_plus,
            q.estimate.value,
            r.estimate.value,
        );
    }
}
