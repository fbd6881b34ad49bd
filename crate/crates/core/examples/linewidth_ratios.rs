// Γ_EIT/Γ_BI and Γ_FWM/Γ_BI along Ω_c² for three optical depths.

use biphoton::analysis::linewidth_ratio_curves;
use biphoton::medium::MediumParams;

fn run_example() -> biphoton::Result<()> {
    let oc2 = [1.0, 4.0, 9.0, 16.0, 25.0];
    let curves = linewidth_ratio_curves(&[200.0, 350.0, 500.0], &[0.05], &oc2, &MediumParams::new(1.0, 0.05, 350.0))?;
    for c in curves {
        let fmt = |v: &[f64]| v.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(" ");
        println!("α_s = {:>3}, γ = {}: EIT/BI {}   FWM/BI {}", c.alpha_s, c.gamma, fmt(&c.eit_over_bi), fmt(&c.fwm_over_bi));
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
