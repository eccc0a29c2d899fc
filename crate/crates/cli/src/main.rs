use clap::{Parser, Subcommand};
use decohere_cli::{demos, run_config, validate, CliError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "decohere", version, about = "Decoherence laboratory experiment runner")]
struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, env = "DECOHERE_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write its outputs.
    Run {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a config against the schema.
    Validate {
        #[arg(short, long)]
        config: PathBuf,
    },
    /// Run (or print) one of the canned experiments.
    Demo {
        #[arg(value_parser = demos::NAMES)]
        name: String,
        /// Output directory; defaults to `demo-<name>`.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Print the config instead of running it.
        #[arg(long)]
        print: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn report_error(e: &CliError) {
    eprintln!("error: {e}");
    if let CliError::Validation(diags) = e {
        for d in diags {
            eprintln!("  {d}");
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, out } => {
            let text = read(&config)?;
            let base = config.parent().unwrap_or(Path::new("."));
            let report = run_config(&text, base, &out)?;
            println!("{} finished in {:.3}s; wrote {}", report.kind, report.wall_time_s, out.display());
            Ok(())
        }
        Command::Validate { config } => {
            let diags = validate(&read(&config)?);
            if diags.is_empty() {
                println!("ok");
                Ok(())
            } else {
                Err(CliError::Validation(diags))
            }
        }
        Command::Demo { name, out, print } => {
            let text = demos::config(&name).expect("clap restricts demo names");
            if print {
                print!("{text}");
                return Ok(());
            }
            let out = out.unwrap_or_else(|| PathBuf::from(format!("demo-{name}")));
            let report = run_config(text, Path::new("."), &out)?;
            println!("{name}: {}", serde_json::to_string(&report.result).unwrap_or_default());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(&e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
