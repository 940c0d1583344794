use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use setclass::script::{self, help, Session};

/// Finite set-class calculator: run scripts of class definitions, operators,
/// closures, hierarchies, Stone spaces and assertions.
#[derive(Parser)]
#[command(name = "setclass", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script (`-` reads standard input) and print its transcript.
    Run { script: PathBuf },
    /// List script commands, or describe one.
    Help { command: Option<String> },
}

/// A closed pipe on the reading end is not an error worth reporting.
fn print_lines(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { script } => {
            let result = if script.as_os_str() == "-" {
                let mut text = String::new();
                if let Err(e) = std::io::stdin().read_to_string(&mut text) {
                    eprintln!("error: cannot read standard input: {e}");
                    return ExitCode::from(2);
                }
                Session::new(".").run(&text)
            } else {
                script::run_script(&script)
            };
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(result.transcript.as_bytes());
            ExitCode::from(result.exit_code as u8)
        }
        Command::Help { command: None } => {
            print_lines(&help::overview());
            ExitCode::SUCCESS
        }
        Command::Help { command: Some(cmd) } => match help::entry(&cmd) {
            Some(lines) => {
                print_lines(&lines);
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: no help for `{cmd}`");
                ExitCode::from(2)
            }
        },
    }
}
