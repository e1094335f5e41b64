use clap::Parser;

use lpa::cli::{run, Cli};

fn main() {
    match run(Cli::parse()) {
        Ok(out) => println!("{out}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
