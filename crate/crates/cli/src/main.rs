mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Limit(a) => commands::limit(&a),
        Command::List(a) => commands::list(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qident: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
