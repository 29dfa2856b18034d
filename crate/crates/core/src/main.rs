use clap::Parser;
use lattice_lab::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
