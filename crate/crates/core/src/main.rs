use clap::Parser;

use lossy_acoustics::cli::{self, Args};

fn main() {
    let args = Args::parse();
    std::process::exit(cli::run(&args));
}
