// Overall biphoton spectrum |F(δ)|² and the effect of the phase-matching sinc.

use biphoton::analysis::{fit_lorentzian, numeric_width, ProfileKind};
use biphoton::medium::{MediumParams, PumpMode};
use biphoton::spectra::{biphoton_spectrum, DetuningGrid};

fn run_example() -> biphoton::Result<()> {
    let grid = DetuningGrid::linspace(1.0, 801)?;
    for omega_c in [2.5, 3.5, 5.0] {
        let p = MediumParams::new(omega_c, 0.05, 350.0);
        let with = biphoton_spectrum(&p, &grid, true, PumpMode::ExactPumpDenominator)?.intensity();
        let without = biphoton_spectrum(&p, &grid, false, PumpMode::ExactPumpDenominator)?.intensity();
        println!(
            "Ω_c = {omega_c}: FWHM with sinc {:.4} Γ, without {:.4} Γ; Γ_BI {:.4}, Γ_EIT {:.4}",
            fit_lorentzian(&with)?.fwhm,
            fit_lorentzian(&without)?.fwhm,
            numeric_width(&p, ProfileKind::Overall)?,
            numeric_width(&p, ProfileKind::Eit)?
        );
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
