mod args;
mod bench;
mod gen;
mod manifest;
mod reduce;
mod solve;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command};
use manifest::{strip_manifest, Run, RunManifest};

/// Runs one command; the boolean is the YES / PASS outcome where there is one.
fn execute(cli: &Cli, run: &mut Run) -> Result<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(kind) => gen::run(kind, g, run).map(|()| true),
        Command::Reduce(a) => reduce::run(a, g, run).map(|()| true),
        Command::Solve(a) => solve::run(a, g, run),
        Command::Verify(mode) => verify::run(mode, g, run),
        Command::Bench(suite) => bench::run(suite, g, run).map(|()| true),
        Command::Replay { .. } => bail!("replay cannot be nested"),
    }
}

#[derive(Serialize)]
struct ReplayEntry {
    path: String,
    matches: bool,
}

fn replay(path: &std::path::Path) -> Result<bool> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let recorded: RunManifest = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let argv = std::iter::once("ssbp".to_string()).chain(recorded.command.iter().cloned());
    let cli = Cli::try_parse_from(argv).context("the recorded command no longer parses")?;
    let mut run = Run::quiet();
    execute(&cli, &mut run)?;
    let entries: Vec<ReplayEntry> = recorded
        .outputs
        .iter()
        .filter(|o| o.deterministic)
        .map(|o| ReplayEntry {
            path: o.path.clone(),
            matches: run.outputs.iter().any(|n| n.path == o.path && n.sha256 == o.sha256),
        })
        .collect();
    let ok = entries.iter().all(|e| e.matches);
    println!("{}", serde_json::json!({ "status": if ok { "PASS" } else { "FAIL" }, "outputs": entries }));
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Replay { manifest_file } => replay(manifest_file),
        _ => {
            let mut run = Run::new();
            execute(&cli, &mut run).and_then(|ok| {
                if let Some(path) = &cli.global.manifest {
                    let m = run.manifest(strip_manifest(&args), cli.global.seed, serde_json::to_value(&cli)?);
                    let text = serde_json::to_string_pretty(&m)? + "\n";
                    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                }
                Ok(ok)
            })
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
