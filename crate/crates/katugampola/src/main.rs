use clap::Parser;

fn main() {
    let cli = katugampola::cli::Cli::parse();
    if let Err(err) = katugampola::cli::run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(2);
    }
}
