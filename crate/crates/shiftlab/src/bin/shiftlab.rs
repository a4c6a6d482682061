use clap::Parser;
use shiftlab::cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(doc) => println!("{}", render(&doc)),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(code);
        }
    }
}
