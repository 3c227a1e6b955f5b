use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use inplace_tft::oracle::CountingAllocator;
use inplace_tft::{RingConfig, DEFAULT_MODULUS};
use inplace_tft_cli::{
    cmd_bench, cmd_itft, cmd_multiply, cmd_tft, selftest, CliError, RingOverrides,
};

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

/// In-place truncated Fourier transforms and polynomial products over prime fields.
#[derive(Parser)]
#[command(name = "tft", version)]
struct Cli {
    /// Prime modulus (overrides the file header).
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// Primitive 2^K-th root of unity; requires --k.
    #[arg(long, global = true)]
    root: Option<u64>,
    /// Exponent K of the root given with --root.
    #[arg(long, global = true)]
    k: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Forward truncated transform of a coefficient file.
    Tft { input: PathBuf, output: PathBuf },
    /// Inverse truncated transform of a coefficient file.
    Itft { input: PathBuf, output: PathBuf },
    /// Product of two coefficient files.
    Multiply {
        a: PathBuf,
        b: PathBuf,
        output: PathBuf,
    },
    /// CSV of operation counts and timings for every length in a range.
    Bench {
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        #[arg(long, default_value_t = 1024)]
        nmax: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Oracle, round-trip and space checks at reduced sizes.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Break one level of the root chain to prove the checks notice.
        #[arg(long, hide = true)]
        corrupt_root_level: Option<u32>,
    },
}

fn ring_from_flags(o: RingOverrides) -> Result<RingConfig, CliError> {
    let modulus = o.modulus.unwrap_or(DEFAULT_MODULUS);
    Ok(match (o.root, o.k) {
        (Some(root), Some(k)) => RingConfig::new(modulus, root, k)?,
        (None, None) => RingConfig::from_modulus(modulus)?,
        _ => {
            return Err(CliError::Config(
                "--root and --k must be given together".into(),
            ))
        }
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let overrides = RingOverrides {
        modulus: cli.modulus,
        root: cli.root,
        k: cli.k,
    };
    match cli.command {
        Command::Tft { input, output } => cmd_tft(&input, &output, overrides),
        Command::Itft { input, output } => cmd_itft(&input, &output, overrides),
        Command::Multiply { a, b, output } => cmd_multiply(&a, &b, &output, overrides),
        Command::Bench { nmin, nmax, trials } => {
            let cfg = ring_from_flags(overrides)?;
            cmd_bench(&cfg, nmin, nmax, trials, &mut io::stdout().lock())
        }
        Command::Selftest {
            seed,
            corrupt_root_level,
        } => {
            let mut cfg = ring_from_flags(overrides)?;
            if let Some(level) = corrupt_root_level {
                let level = level.min(cfg.max_level());
                cfg = cfg.with_corrupted_level(level);
            }
            selftest::run(&cfg, seed, &mut |msg| println!("{msg}"))?;
            println!("selftest passed (seed {seed})");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tft: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
