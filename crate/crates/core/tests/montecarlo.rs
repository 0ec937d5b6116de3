use std::f64::consts::PI;

use impact_series::montecarlo::{estimate_e, run, scan_phases, PhaseAxis, RunConfig};
use impact_series::theories::predict;
use impact_series::{PhaseSettings, Side, TheoryModel, TimeOrdering};

fn models() -> [TheoryModel; 4] {
    [
        TheoryModel::qm(),
        TheoryModel::causal(TimeOrdering::Ordering1).unwrap(),
        TheoryModel::causal(TimeOrdering::Ordering2).unwrap(),
        TheoryModel::rnl(),
    ]
}

/// 12 points mixing all three phases.
fn phase_grid() -> Vec<PhaseSettings> {
    (0..12)
        .map(|i| {
            let x = i as f64 * PI / 6.0;
            PhaseSettings::new(x, 0.5 * x - 0.3, 1.7 - x)
        })
        .collect()
}

#[test]
fn marginals_within_four_sigma_of_analytic() {
    // 266_667 emitted pairs give about 1e5 accepted ones
    let events = 266_667;
    for model in models() {
        for (i, ph) in phase_grid().into_iter().enumerate() {
            let cfg = RunConfig::new(model, ph, events, 1000 + i as u64);
            let tally = run(&cfg).unwrap();
            let n = tally.accepted as f64;
            assert!(n > 95_000.0, "{model}: {n}");
            let pred = predict(&model, &ph).unwrap();
            for side in [Side::Side1, Side::Side2] {
                let Some(expected) = pred.side(side) else {
                    continue;
                };
                let observed = tally.singles(side).unwrap().p_plus;
                let se = (expected.p_plus * (1.0 - expected.p_plus) / n).sqrt();
                let z = (observed - expected.p_plus).abs() / se;
                assert!(
                    z < 4.0,
                    "{model} {side} at {ph:?}: observed {observed}, expected {}, z={z}",
                    expected.p_plus
                );
            }
        }
    }
}

#[test]
fn undefined_side_is_even() {
    // the causal completion splits the undefined side evenly
    let ph = PhaseSettings::new(0.0, 0.0, 0.0);
    let c1 = TheoryModel::causal(TimeOrdering::Ordering1).unwrap();
    let cfg = RunConfig::new(c1, ph, 400_000, 5);
    let t = run(&cfg).unwrap();
    let p = t.singles(Side::Side1).unwrap().p_plus;
    let se = (0.25 / t.accepted as f64).sqrt();
    assert!((p - 0.5).abs() < 4.0 * se, "{p}");
}

#[test]
fn e_contrast_at_multiples_of_pi() {
    for n in 0..3 {
        let ph = PhaseSettings::new(n as f64 * PI - 0.8, 0.8, 0.2);
        let qm_cfg = RunConfig::new(TheoryModel::qm(), ph, 800_000, 11 + n);
        let rnl_cfg = RunConfig::new(TheoryModel::rnl(), ph, 800_000, 21 + n);
        let qm = estimate_e(&run(&qm_cfg).unwrap(), &qm_cfg).unwrap();
        let rnl = estimate_e(&run(&rnl_cfg).unwrap(), &rnl_cfg).unwrap();
        let contrast = qm.value.abs() - rnl.value.abs();
        let combined = (qm.std_error.powi(2) + rnl.std_error.powi(2)).sqrt();
        assert!(
            (contrast - 2.0 / 3.0).abs() < 4.0 * combined,
            "n={n}: {contrast} ± {combined}"
        );
        assert!((qm.analytic_qm - 2.0 / 3.0).abs() < 1e-12);
        // sign flips with n: E = -(2/3)cos(alpha + beta)
        let signed = qm.analytic_model.unwrap();
        assert!((signed + 2.0 / 3.0 * (n as f64 * PI).cos()).abs() < 1e-12);
        assert!(qm.sigmas_from(signed) < 4.0);
    }
}

#[test]
fn scan_is_reproducible_and_tracks_fringe() {
    let grid: Vec<f64> = (0..7).map(|i| i as f64 * PI / 3.0).collect();
    let a = scan_phases(
        &TheoryModel::qm(),
        PhaseAxis::Alpha,
        &grid,
        PhaseSettings::ZERO,
        100_000,
        8,
    )
    .unwrap();
    let b = scan_phases(
        &TheoryModel::qm(),
        PhaseAxis::Alpha,
        &grid,
        PhaseSettings::ZERO,
        100_000,
        8,
    )
    .unwrap();
    assert_eq!(a, b);
    for p in &a {
        let expected = 0.5 - p.angle.cos() / 3.0;
        let analytic = p.analytic.side1.unwrap().p_plus;
        assert!((analytic - expected).abs() < 1e-12);
        let n = p.tally.accepted as f64;
        assert!(
            (p.mc_side1.p_plus - expected).abs() < 4.0 * (expected * (1.0 - expected) / n).sqrt()
        );
    }
}
