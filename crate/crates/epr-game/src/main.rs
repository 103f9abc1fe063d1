use clap::Parser;

use epr_game::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {}", err.message);
        std::process::exit(i32::from(err.code));
    }
}
