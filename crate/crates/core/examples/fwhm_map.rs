// Percentage difference between numeric and analytic EIT widths on a small
// (Ω_c², γ) grid.

use biphoton::analysis::{fwhm_diff_map, ProfileKind};
use biphoton::medium::MediumParams;

fn run_example() -> biphoton::Result<()> {
    let oc2 = [1.0, 4.0, 16.0, 64.0];
    let gammas = [0.01, 0.05, 0.1];
    let base = MediumParams::new(1.0, 0.05, 350.0);
    let m = fwhm_diff_map(ProfileKind::Eit, &oc2, &gammas, &base)?;
    println!("γ \\ Ω_c²  {}", oc2.map(|v| format!("{v:>7}")).join(""));
    for (g, row) in gammas.iter().zip(&m.signed_percent_diff) {
        println!("{g:<9} {}", row.iter().map(|v| format!("{v:>6.2}%")).collect::<String>());
    }
    println!("failed cells: {}", m.failed_cells);
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
