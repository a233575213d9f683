use clap::Parser;

use momtools::cli::{run, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&argv);
    match run(&cli, &argv) {
        Ok(written) => {
            if !cli.quiet {
                print!("{}", written.outcome.report);
            }
        }
        Err(e) => {
            eprintln!("momtools: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
