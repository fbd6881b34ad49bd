// Biphoton wave packets at the five coupling powers: FFT of the filtered
// spectrum, exponential fit, and the analytic 1/Γ_BI.

use biphoton::analysis::compare_decay;
use biphoton::medium::PumpMode;
use biphoton::temporal::{coupling_power_presets, default_transform_grid, FilterSpec};
use biphoton::units::to_physical_time;

fn run_example() -> biphoton::Result<()> {
    let grid = default_transform_grid();
    println!("power   Ω_c     γ       fitted τ   1/Γ_BI");
    for preset in coupling_power_presets() {
        let p = preset.params;
        let c = compare_decay(&p, &grid, FilterSpec::etalon_mhz(35.0), true, PumpMode::ExactPumpDenominator)?;
        println!(
            "{:>4} mW {:.3}  {:.3}  {:>6.0} ns  {:>6.0} ns",
            preset.power_mw,
            p.omega_c,
            p.gamma,
            to_physical_time(c.fit.tau),
            to_physical_time(c.analytic_tau)
        );
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
