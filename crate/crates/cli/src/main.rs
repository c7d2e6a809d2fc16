use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qfg::chars::TableCache;
use qfg::run::{self, Format, RunConfig, RunOptions, RunReport};
use qfg::{Error, Result};

#[derive(Parser)]
#[command(name = "qfg", version, about = "Wedderburn decompositions of Iwasawa algebras Q^F(H x| Z_p)")]
struct Cli {
    /// Report format: `human` tables or the structured `doc` (JSON).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Character-table cache directory.
    #[arg(long, global = true, env = "QFG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the character-table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Include wall-clock timings in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Doc,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose and check the structural invariants.
    Decompose { config: PathBuf },
    /// Decompose and run every verification suite enabled in the config.
    Verify { config: PathBuf },
    /// The Sophie Germain example for the prime p.
    SophieGermain { p: u64 },
    /// Randomised ring-law checks for truncated skew power series.
    SkewCheck { p: u64, k: u32, d: usize, seed: u64 },
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("qfg"))
}

fn read_config(path: &PathBuf) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    RunConfig::from_toml(&text)
}

fn execute(cli: &Cli, opts: &RunOptions) -> Result<(RunReport, Option<Format>)> {
    Ok(match &cli.command {
        Command::Decompose { config } => {
            let cfg = read_config(config)?;
            (run::run_decompose(&cfg, opts)?, cfg.format)
        }
        Command::Verify { config } => {
            let cfg = read_config(config)?;
            (run::run_verify(&cfg, opts)?, cfg.format)
        }
        Command::SophieGermain { p } => (run::sophie_germain(*p, opts)?, None),
        Command::SkewCheck { p, k, d, seed } => (run::skew_check(*p, *k, *d, *seed)?, None),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(default_cache_dir).map(TableCache::new)
    };
    let opts = RunOptions {
        cache,
        timings: cli.timings,
    };
    match execute(&cli, &opts) {
        Ok((report, cfg_format)) => {
            let format = match cli.format {
                Some(FormatArg::Human) => Format::Human,
                Some(FormatArg::Doc) => Format::Doc,
                None => cfg_format.unwrap_or(Format::Human),
            };
            match format {
                Format::Human => print!("{}", run::render_human(&report)),
                Format::Doc => print!("{}", report.to_doc()),
            }
            if !report.passed {
                for c in report.failures() {
                    eprintln!("failed: {} {}: expected {}, got {}", c.suite, c.name, c.expected, c.actual);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(run::exit_code(&err) as u8)
        }
    }
}
