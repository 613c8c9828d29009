use clap::Parser;

use oneplace_cli::app::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let result = run(cli);
    if !result.body.is_empty() {
        println!("{}", result.body);
    }
    std::process::exit(result.exit_code);
}
