use clap::Parser;
use motionsynth::Cli;

fn main() {
    let cli = Cli::parse();
    let code = motionsynth::run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code as i32);
}
