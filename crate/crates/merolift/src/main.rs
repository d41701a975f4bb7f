use clap::Parser;
use merolift::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
