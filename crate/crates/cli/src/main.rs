use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rgroups_cli::builtins::run_builtin;
use rgroups_cli::documents::{double_coset_report, emit_chartable, load_group, render_double_cosets};
use rgroups_cli::pipeline::run_scenario;
use rgroups_cli::report::{emit_report, Format};
use rgroups_cli::scenario::{load_scenario, read_file};
use rgroups_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "rgroups", version, about = "R-groups and component parameterization for disconnected reductive groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a scenario file.
    Run { scenario: PathBuf },
    /// Run a built-in example.
    Builtin {
        name: String,
        /// Parameters as key=value.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
    },
    /// Character table of a group document.
    Chartable { group: PathBuf },
    /// Double cosets of two subgroups of an extended Weyl group.
    Doublecosets { document: PathBuf },
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.to_string()))
        .ok_or_else(|| format!("expected key=value, got {s:?}"))
}

fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Run { scenario } => {
            let s = load_scenario(scenario)?;
            Ok(emit_report(&run_scenario(&s)?, cli.format))
        }
        Command::Builtin { name, params } => {
            let params: BTreeMap<String, String> = params.iter().cloned().collect();
            Ok(emit_report(&run_builtin(name, &params)?, cli.format))
        }
        Command::Chartable { group } => {
            let (name, g) = load_group(&read_file(group)?)?;
            emit_chartable(&name, &g, cli.format)
        }
        Command::Doublecosets { document } => {
            let r = double_coset_report(&read_file(document)?)?;
            Ok(render_double_cosets(&r, cli.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|text| match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
