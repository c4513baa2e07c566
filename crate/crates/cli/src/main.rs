use clap::Parser;
use samejulia_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    println!("{}", serde_json::to_string(&outcome.document).expect("JSON document"));
    std::process::exit(outcome.code);
}
