use std::io::{self, IsTerminal};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use qubitlab_cli::commands::{run, Cli, Command, GameMode};
use qubitlab_cli::output::{Format, Report, Table};
use qubitlab_cli::session::run_session;
use qubitlab_core::quoin::to_jsonl;

fn play(cli: &Cli) -> Result<Report, ExitCode> {
    let Command::Game { mode: GameMode::Play { game } } = &cli.command else { unreachable!() };
    if !io::stdin().is_terminal() || !io::stdout().is_terminal() {
        eprintln!("game play is interactive and needs a terminal; use `game simulate` for batch runs");
        return Err(ExitCode::from(2));
    }
    let config = game.config();
    let summary = run_session(game.strategy(), &config, cli.seed, io::stdin().lock(), io::stdout().lock())
        .map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(1)
        })?;
    if let Some(path) = &game.transcript {
        if let Err(e) = std::fs::write(path, to_jsonl(&summary.records)) {
            eprintln!("error: writing {}: {e}", path.display());
            return Err(ExitCode::from(1));
        }
    }
    let payload = json!({ "games": summary.records.len(), "wins": summary.wins(), "ledger": summary.ledger, "seed": cli.seed });
    let mut table = Table::new(&["games", "wins", "ledger", "seed"]);
    table.push(vec![
        summary.records.len().to_string(),
        summary.wins().to_string(),
        summary.ledger.to_string(),
        cli.seed.to_string(),
    ]);
    Ok(Report {
        command: "game play",
        payload: payload.as_object().cloned().unwrap_or_default(),
        table,
        text: String::new(),
        verified: None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = if matches!(cli.command, Command::Game { mode: GameMode::Play { .. } }) {
        match play(&cli) {
            Ok(r) if cli.format == Format::Text => return if r.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) },
            Ok(r) => r,
            Err(code) => return code,
        }
    } else {
        match run(&cli) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
    };
    if let Err(e) = report.render(cli.format, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
