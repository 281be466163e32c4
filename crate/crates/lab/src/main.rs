use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stepbias::{load_config, run_experiment, LabError};

#[derive(Parser)]
#[command(name = "stepbias", version, about = "Step-size experiments on quadratic and kernel problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Overrides `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse and validate a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style { color: !no_color && std::io::stderr().is_terminal() }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn execute(cli: Cli, style: &Style) -> Result<(), LabError> {
    match cli.command {
        Command::Validate { config } => {
            let cfg = load_config(&config)?;
            println!("{} {} ({})", style.paint("32", "ok"), config.display(), cfg.experiment.as_str());
        }
        Command::Run { config, output_dir, seed } => {
            let mut cfg = load_config(&config)?;
            if let Some(dir) = output_dir {
                cfg.output_dir = dir;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let manifest = run_experiment(&cfg)?;
            for file in &manifest.files {
                println!("{}  {}  {}", file.sha256, file.bytes, cfg.output_dir.join(&file.name).display());
            }
            println!("{} {} (seed {})", style.paint("32", "done"), manifest.experiment, manifest.seed);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let style = Style::detect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors count as validation failures; help and version succeed.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli, &style) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{} {e}", style.paint("31", "error:"));
            ExitCode::from(e.exit_code())
        }
    }
}
