use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = nabla_kit_cli::app::Cli::parse();
    std::process::exit(nabla_kit_cli::app::run(cli));
}
