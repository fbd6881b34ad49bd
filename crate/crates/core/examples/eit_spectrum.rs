// Biphoton EIT spectrum: exact Doppler-averaged transmission next to its
// exponential and Lorentzian approximations.

use biphoton::analysis::{fit_lorentzian, profile_distance};
use biphoton::medium::{MediumParams, PathlengthMode};
use biphoton::spectra::{eit_analytic, eit_exact, validity_metrics, DetuningGrid};

fn run_example() -> biphoton::Result<()> {
    let grid = DetuningGrid::linspace(1.5, 601)?;
    for omega_c in [2.5, 3.5, 5.0] {
        let p = MediumParams::new(omega_c, 0.05, 350.0);
        let exact = eit_exact(&p, &grid, PathlengthMode::BiphotonQuarter)?;
        let approx = eit_analytic(&p, &grid, PathlengthMode::BiphotonQuarter)?;
        let fit = fit_lorentzian(&exact)?;
        let s = approx.summary;
        println!(
            "Ω_c = {omega_c}: peak {:.4} (analytic {:.4}), FWHM {:.4} Γ (Γ_EIT {:.4}, Γ_L {:.4}), distance {:.2e}",
            exact.max(),
            s.peak,
            fit.fwhm,
            s.gamma_eit,
            s.gamma_l,
            profile_distance(&approx.exponential, &approx.lorentzian)?
        );
        let v = validity_metrics(&p)?;
        println!("    x = {:.3}, analytic widths trusted: {}", v.x, v.analytic_widths_trusted);
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
