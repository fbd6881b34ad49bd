// FWM spectrum with the pump factor inside the Doppler average and with the
// far-detuned constant, against the complex-Lorentzian approximation.

use biphoton::analysis::fit_lorentzian;
use biphoton::medium::{MediumParams, PumpMode};
use biphoton::spectra::{fwm_analytic, fwm_exact, DetuningGrid};

fn run_example() -> biphoton::Result<()> {
    let grid = DetuningGrid::linspace(2.0, 801)?;
    for omega_c in [2.5, 3.5, 5.0] {
        let p = MediumParams::new(omega_c, 0.05, 350.0);
        let exact = fwm_exact(&p, &grid, PumpMode::ExactPumpDenominator)?;
        let constant = fwm_exact(&p, &grid, PumpMode::ConstantPumpRatio)?;
        let approx = fwm_analytic(&p, &grid)?;
        let mid = grid.len() / 2;
        println!(
            "Ω_c = {omega_c}: FWHM {:.4} Γ (Γ_FWM {:.4}), peak exact/constant/analytic {:.4e} {:.4e} {:.4e}, valid {}",
            fit_lorentzian(&exact)?.fwhm,
            approx.gamma_fwm,
            exact.values[mid],
            constant.values[mid],
            approx.spectrum.values[mid],
            approx.valid
        );
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
