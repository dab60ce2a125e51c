use clap::Parser;

fn main() {
    let cli = circumlab_cli::Cli::parse();
    std::process::exit(circumlab_cli::run(cli));
}
