use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weno_maim::runner::{parse_scheme, run, Mode, RunConfig, RunSummary, TableKind};
use weno_maim::Result;

/// Mapped WENO5 finite-volume solver.
#[derive(Parser)]
#[command(name = "weno", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write its report.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Grid-refinement study against the exact solution.
    Converge {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated, strictly increasing cell counts.
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<usize>>,
    },
    /// Sample a mapping on [0, 1] as omega,g0,g1,g2.
    MapDump {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate an analysis table (appendixA or table1).
    Tables {
        #[arg(long)]
        which: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn config_of(command: Command) -> Result<RunConfig> {
    Ok(match command {
        Command::Solve { config } => RunConfig {
            mode: Mode::Solve,
            ..RunConfig::load(&config)?
        },
        Command::Converge { config, grids } => {
            let mut cfg = RunConfig::load(&config)?;
            cfg.mode = Mode::Converge;
            if let Some(g) = grids {
                // reuse the config parser's validation
                let text = g.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
                cfg.grids = RunConfig::parse(&format!("grids = {text}"))?.grids;
            }
            cfg
        }
        Command::MapDump { scheme, points, out } => RunConfig {
            mode: Mode::MapDump,
            scheme: parse_scheme(&scheme)?,
            points,
            output: out,
            ..RunConfig::default()
        },
        Command::Tables { which, out } => RunConfig {
            mode: Mode::Tables,
            table: which.parse::<TableKind>()?,
            output: out,
            ..RunConfig::default()
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match config_of(cli.command).and_then(|cfg| run(&cfg)) {
        Ok(RunSummary::BlewUp(b)) => {
            eprintln!("blow-up at t = {}: {}", b.time, b.reason);
            ExitCode::from(2)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
