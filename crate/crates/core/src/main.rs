use clap::Parser;

use biphoton::cli::{exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli, &mut std::io::stdout().lock()) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
