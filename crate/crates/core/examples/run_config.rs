// Parse a unit-annotated config the way the CLI does and emit a CSV/JSON pair.

use std::path::Path;

use biphoton::cli::output::emit;
use biphoton::cli::output::Table;
use biphoton::cli::RunConfig;
use biphoton::spectra::eit_exact;

const CONFIG: &str = r#"
[medium]
omega_c = "21 MHz"
gamma = "300 kHz"
alpha_s = 350
delta_p = "-2.0 GHz"

[grid]
span = "2 Gamma"
points = 5
"#;

fn run_example() -> biphoton::Result<()> {
    let config = RunConfig::parse(Path::new("inline.toml"), CONFIG)?;
    println!("Ω_c = {} Γ, γ = {} Γ, Δ_p = {:.1} Γ", config.params.omega_c, config.params.gamma, config.params.delta_p);
    let grid = config.spectrum_grid(&config.params)?;
    let t = eit_exact(&config.params, &grid, config.pathlength)?;
    let table = Table::new()
        .with("delta_gamma_units", grid.points().to_vec())
        .with("value", t.values);
    print!("{}", table.to_csv());

    let dir = std::env::temp_dir().join("biphoton_run_config_example");
    for path in emit(&dir.join("eit"), "spectrum", &config, serde_json::json!({}), Some(&table))? {
        println!("wrote {}", path.display());
    }
    let bad = RunConfig::parse(Path::new("inline.toml"), "[medium]\nomega_c = 2\n");
    println!("{}", bad.unwrap_err());
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
