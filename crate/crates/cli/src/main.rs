mod args;
mod commands;
mod input;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// A proven negative: infeasible, not isomorphic, rejected.
    Negative = 1,
    InputError = 2,
    Aborted = 3,
}

#[derive(Debug)]
pub struct CliError(String);

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

/// What a command produced: the main body, an optional stderr note and,
/// for `family`, the files of a bundle directory.
pub struct Output {
    pub body: String,
    pub exit: Exit,
    pub note: Option<String>,
    pub bundle: Option<Vec<(String, String)>>,
}

impl Output {
    pub fn new(body: String, exit: Exit) -> Self {
        Output { body, exit, note: None, bundle: None }
    }
}

pub fn is_json_path(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = &cli.global;
    match &cli.command {
        Command::Square { input } => commands::square(opts, input),
        Command::Analyze { input } => commands::analyze(opts, input),
        Command::CountC4 { input } => commands::count_c4_cmd(opts, input),
        Command::Realize { input, all, limit } => commands::realize(opts, input, *all, *limit),
        Command::Family { input, k } => commands::family(opts, input, *k),
        Command::DoubleCover { input } => commands::double_cover(opts, input),
        Command::Union { first, second } => commands::union(opts, first, second),
        Command::Iso { first, second } => commands::iso(opts, first, second),
        Command::Similar { first, second } => commands::similar(opts, first, second),
    }
}

fn write_output(cli: &Cli, output: &Output) -> Result<(), CliError> {
    let Some(path) = &cli.global.out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(output.body.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::input(format!("stdout: {e}")));
    };
    let io_err = |e: std::io::Error| CliError::input(format!("{}: {e}", path.display()));
    match &output.bundle {
        Some(files) if !is_json_path(path) => {
            std::fs::create_dir_all(path).map_err(io_err)?;
            for (name, content) in files {
                std::fs::write(path.join(name), content).map_err(io_err)?;
            }
            Ok(())
        }
        _ => std::fs::write(path, &output.body).map_err(io_err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|output| {
        // A bundle is written only for a successful family.
        if output.exit != Exit::Success && output.bundle.is_some() {
            print!("{}", output.body);
        } else {
            write_output(&cli, &output)?;
        }
        Ok(output)
    });
    match result {
        Ok(output) => {
            if let Some(note) = &output.note {
                eprintln!("{note}");
            }
            ExitCode::from(output.exit as u8)
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(Exit::InputError as u8)
        }
    }
}
