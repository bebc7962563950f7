use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use realform::cli::{self, CliError, OutputFormat, PresetChoice, RunConfig};

/// Exact structure tables of real semisimple Lie algebras from Satake diagrams.
#[derive(Parser)]
#[command(name = "realform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full structure table in the basis B.
    Table(Common),
    /// Iwasawa n-algebra: raw and normalized tables, class, center, group law.
    Iwasawa(Common),
    /// Invariant checks on one form, or on the whole catalog when --form is omitted.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Reference table: heisenberg, quaternionic or octonionic.
        #[arg(long)]
        against: Option<String>,
        /// Largest complex rank of the catalog sweep.
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
    },
    /// Product of two points of N in exponential coordinates.
    Nmul {
        #[command(flatten)]
        common: Common,
        /// Comma-separated rational coordinates, e.g. 1,0,-1/2.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Catalog names and their parameters.
    CatalogList(Common),
}

#[derive(Args)]
struct Common {
    /// Catalog name (AIV, split-E6, ...) or path to a diagram file.
    #[arg(long)]
    form: Option<String>,
    /// Integer parameter of the catalog family.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Preset::Paper)]
    preset: Preset,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Paper,
    Raw,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            form: self.form.clone(),
            n: self.n,
            format: match self.format {
                Format::Json => OutputFormat::Json,
                Format::Text => OutputFormat::Text,
            },
            seed: self.seed,
            preset: match self.preset {
                Preset::Paper => PresetChoice::Paper,
                Preset::Raw => PresetChoice::Raw,
            },
            against: None,
            max_rank: 6,
        }
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Table(c) => emit(&cli::cmd_table(&c.config())?, &c.output).map(|_| true),
        Command::Iwasawa(c) => emit(&cli::cmd_iwasawa(&c.config())?, &c.output).map(|_| true),
        Command::Nmul { common, x, y } => emit(&cli::cmd_nmul(&common.config(), &x, &y)?, &common.output).map(|_| true),
        Command::CatalogList(c) => emit(&cli::cmd_catalog_list(&c.config()), &c.output).map(|_| true),
        Command::Verify { common, against, max_rank } => {
            let cfg = RunConfig { against, max_rank, ..common.config() };
            let report = cli::cmd_verify(&cfg)?;
            emit(&report.body, &common.output)?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(cli::EXIT_VERIFY_FAILED as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
