use acsv_cli::{run, RunConfig};
use clap::Parser;
use std::io::Write;

fn main() {
    let config = RunConfig::parse();
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.status);
}
