mod common;

use biphoton::analysis::{compare_decay, estimate_params_from_eit, EstimateOptions};
use biphoton::medium::{self_susceptibility, MediumParams, PathlengthMode, PumpMode};
use biphoton::specfun::{erfcx, faddeeva, Complex64};
use biphoton::spectra::{biphoton_spectrum, eit_exact, fwm_exact, DetuningGrid, RealSpectrum};
use biphoton::temporal::{
    coupling_power_presets, default_transform_grid, filtered_amplitude, transform_spectrum, FilterSpec,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn spectra_match_direct_quadrature() {
    let p = MediumParams::new(3.5, 0.05, 350.0);
    let grid = DetuningGrid::linspace(1.2, 17).unwrap();
    let eit = eit_exact(&p, &grid, PathlengthMode::BiphotonQuarter).unwrap();
    let fwm = fwm_exact(&p, &grid, PumpMode::ExactPumpDenominator).unwrap();
    let overall = biphoton_spectrum(&p, &grid, true, PumpMode::ExactPumpDenominator)
        .unwrap()
        .intensity();
    for (k, &d) in grid.points().iter().enumerate() {
        assert!(rel(eit.values[k], common::eit(&p, d, PathlengthMode::BiphotonQuarter)) < 1e-9);
        assert!(rel(fwm.values[k], common::fwm(&p, d, true)) < 1e-9);
        assert!(rel(overall.values[k], common::overall(&p, d)) < 1e-9);
    }
}

#[test]
fn self_susceptibility_matches_quadrature_far_from_resonance() {
    let p = MediumParams::new(2.0, 0.03, 200.0).with_gamma_doppler(20.0);
    for d in [-40.0, -3.0, 0.7, 25.0] {
        let s = self_susceptibility(&p, d).unwrap();
        let q = common::self_term(&p, d);
        assert!((s - q).norm() < 1e-10 * q.norm(), "δ={d}: {s} vs {q}");
    }
}

#[test]
fn faddeeva_and_erfcx_reference_tables() {
    for row in common::read_table("faddeeva_reference.csv") {
        let exact = Complex64::new(row[2], row[3]);
        let w = faddeeva(Complex64::new(row[0], row[1])).unwrap();
        assert!((w - exact).norm() < 1e-12 * exact.norm(), "z = {} + {}i", row[0], row[1]);
    }
    for row in common::read_table("erfcx_reference.csv") {
        assert!(rel(erfcx(row[0]), row[1]) < 1e-12, "x = {}", row[0]);
    }
}

#[test]
fn transform_matches_riemann_sum() {
    let p = coupling_power_presets()[0].params;
    let grid = default_transform_grid();
    let f = filtered_amplitude(&p, &grid, FilterSpec::etalon_mhz(35.0), true, PumpMode::ExactPumpDenominator)
        .unwrap();
    let w = transform_spectrum(&f).unwrap();
    for target in [1.0, 30.0, 90.0] {
        let i = w.times.partition_point(|t| *t < target);
        let direct = common::riemann_g2(grid.points(), &f.values, w.times[i]);
        assert!(rel(w.values[i] * w.raw_peak, direct) < 1e-9);
    }
}

#[test]
fn etalon_barely_changes_decay_time() {
    let p = coupling_power_presets()[0].params;
    let grid = default_transform_grid();
    let with = compare_decay(&p, &grid, FilterSpec::etalon_mhz(35.0), true, PumpMode::ExactPumpDenominator).unwrap();
    let without = compare_decay(&p, &grid, FilterSpec::None, true, PumpMode::ExactPumpDenominator).unwrap();
    assert!(rel(with.fit.tau, without.fit.tau) < 0.03, "{} vs {}", with.fit.tau, without.fit.tau);
}

#[test]
fn decay_time_is_stable_under_grid_refinement() {
    let p = coupling_power_presets()[3].params;
    let base = compare_decay(
        &p,
        &default_transform_grid(),
        FilterSpec::etalon_mhz(35.0),
        true,
        PumpMode::ExactPumpDenominator,
    )
    .unwrap();
    let fine = DetuningGrid::for_transform(800.0, 1 << 18).unwrap();
    let refined = compare_decay(&p, &fine, FilterSpec::etalon_mhz(35.0), true, PumpMode::ExactPumpDenominator).unwrap();
    assert!(rel(base.fit.tau, refined.fit.tau) < 5e-3);
}

#[test]
fn quartered_power_ratios_double_the_rabi_frequency() {
    let presets = coupling_power_presets();
    let grid = DetuningGrid::linspace(1.5, 601).unwrap();
    let spectra: Vec<RealSpectrum> = presets
        .iter()
        .map(|pr| eit_exact(&pr.params, &grid, PathlengthMode::ClassicalProbeHalf).unwrap())
        .collect();
    let ratios = [1.0, 2.0, 4.0, 8.0, 16.0];
    let quartered: Vec<f64> = ratios.iter().map(|r| r / 4.0).collect();
    let options = EstimateOptions::default();
    let a = estimate_params_from_eit(&spectra, 360.0, &ratios, &options).unwrap();
    let b = estimate_params_from_eit(&spectra, 360.0, &quartered, &options).unwrap();
    assert!(rel(b.omega_c0, 2.0 * a.omega_c0) < 1e-8);
    for (x, y) in a.gammas.iter().zip(&b.gammas) {
        assert!(rel(*x, *y) < 1e-8);
    }
}
