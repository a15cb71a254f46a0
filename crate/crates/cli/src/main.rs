//! `morsekit`: exact spectral coefficients, correlations and Möbius
//! experiments for Morse and Toeplitz sequences.
//!
//! Exit codes: 0 success, 1 a checked invariant failed, 2 usage or input
//! error (including capacity errors).

mod args;
mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use morsekit::arith::DEFAULT_SIEVE_LIMIT;
use morsekit::Error;

use args::{Nat, NatList, NatRange, SeqArg};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "morsekit", version, about = "Thue-Morse spectral coefficients and Möbius-correlation experiments")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest Möbius sieve a command may build.
    #[arg(long, global = true, default_value_t = Nat(DEFAULT_SIEVE_LIMIT), value_parser = parse_nat)]
    sieve_limit: Nat,
    #[command(subcommand)]
    command: Command,
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse()
}

impl std::fmt::Display for Nat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact σ̂(k) for one k or a range A..B.
    Sigma {
        k: NatRange,
        /// Only odd k within the range.
        #[arg(long)]
        odd: bool,
    },
    /// 2-adic valuation reports for odd K; exits 1 if the bound fails anywhere.
    Valuations { k: NatRange },
    /// Whether σ̂(2K+1) = σ̂(2L+1).
    Equiv { k: Nat, l: Nat },
    /// Smallest odd t with |σ̂(tr)| != |σ̂(ts)|.
    Disjoint {
        r: Nat,
        s: Nat,
        #[arg(long, default_value_t = Nat(morsekit::spectral::DEFAULT_WITNESS_BOUND))]
        bound: Nat,
    },
    /// Empirical correlation (1/N) Σ m_{n+k} m_n of a sequence.
    Correlate { seq: SeqArg, k: NatRange, n: Nat },
    /// Correlations at shifts s·q_k for a Thue-Morse type spec.
    Stabilize {
        spec: SeqArg,
        s: Nat,
        #[arg(long, default_value = "0,1,2,3,4,5")]
        levels: NatList,
        #[arg(long, default_value_t = Nat(1 << 16))]
        n: Nat,
    },
    /// Möbius-weighted averages (1/N) Σ f(T^k w) μ(k) at checkpoints.
    Orthogonality {
        seq: SeqArg,
        n: Nat,
        #[arg(long)]
        checkpoints: Option<NatList>,
        /// Indicator of this word instead of (-1)^{w(0)}.
        #[arg(long)]
        indicator: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
    },
    /// Row decomposition of the Möbius sum along a Toeplitz skeleton.
    Rows {
        n: Nat,
        #[arg(long)]
        stage: u32,
        #[arg(long, default_value = "thue-toeplitz")]
        seq: SeqArg,
        /// Indicator of this word instead of (-1)^{w(0)}.
        #[arg(long)]
        indicator: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
    },
    /// The non-regular Toeplitz counterexample and its inequality chain.
    Counterexample {
        n: Nat,
        #[arg(long, default_value_t = Nat(5))]
        base: Nat,
        #[arg(long)]
        checkpoints: Option<NatList>,
    },
    /// Stage skeleton B_n ? B_n ? ... of a Toeplitz construction.
    Toeplitz {
        /// Construction family; only `thue` is built in.
        family: String,
        #[arg(long)]
        stage: u32,
        #[arg(long, default_value_t = Nat(64))]
        horizon: Nat,
    },
    /// Bits w[start, start+length) of a sequence.
    Generate {
        seq: SeqArg,
        length: Nat,
        #[arg(long, default_value_t = Nat(0))]
        start: Nat,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Construction(_) | Error::SearchExhausted(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match commands::dispatch(&cli.command, cli.sieve_limit.0) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = out.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match out.violation {
        Some(v) => {
            eprintln!("invariant violated: {v}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
