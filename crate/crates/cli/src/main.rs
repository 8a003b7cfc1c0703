use clap::Parser;
use hermicode::cli::{run, Cli, EXIT_CHECK_FAILED, EXIT_USAGE};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_CHECK_FAILED
            }
        }
    };
    std::process::exit(code);
}
