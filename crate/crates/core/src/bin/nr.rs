use clap::Parser;
use numrange::cli::{configure_threads, run, Cli, EXIT_OK};

fn main() {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli));
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            std::process::exit(EXIT_OK);
        }
        Err(e) => {
            eprintln!("nr: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
