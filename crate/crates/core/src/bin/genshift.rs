use clap::Parser;

use genshift::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("genshift: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
