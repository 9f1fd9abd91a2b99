//! `equidim` command-line tool.
//!
//! Exit codes: 0 on success, 1 for unreadable or invalid input, 2 for
//! internal errors, including a failed verification.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equidim::decomp::InputOrder;
use equidim::{Backend, Error, PrimeField, DEFAULT_PRIME};
use equidim_cli::{gen_ps, gen_sos, run, RunConfig, SystemFile, VerifyLevel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(
    name = "equidim",
    version,
    about = "Equidimensional decomposition of polynomial systems over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Gb,
    Witness,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Degree,
    Support,
    Asis,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyArg {
    None,
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose the system in FILE ('-' for standard input) and print a JSON report.
    Run {
        file: PathBuf,
        /// Field characteristic; must agree with the file's `char` line if it has one.
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[arg(long, value_enum, default_value = "witness")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "degree")]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "none")]
        verify: VerifyArg,
        /// Use the plain recursive remove instead of the iterative variant.
        #[arg(long)]
        classic_remove: bool,
    },
    /// Print the pseudo-singularity system Ps(N).
    GenPs {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        characteristic: u32,
    },
    /// Print the sum-of-squares system sos(S, N).
    GenSos {
        s: usize,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "char", default_value_t = DEFAULT_PRIME)]
        characteristic: u32,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidArgument(_) | Error::Field(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn field(p: u32) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(|e| Failure::Input(e.to_string()))
}

fn execute(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Run {
            file,
            characteristic,
            backend,
            order,
            seed,
            verify,
            classic_remove,
        } => {
            let text = read_input(&file)?;
            let declares_char = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .any(|l| l.starts_with("char ") || l.starts_with("char\t"));
            let mut system = SystemFile::parse(&text)?;
            if let Some(p) = characteristic {
                field(p)?;
                if declares_char && system.characteristic != p {
                    return Err(Failure::Input(format!(
                        "--char {p} conflicts with the file's characteristic {}",
                        system.characteristic
                    )));
                }
                system.characteristic = p;
                system.parsed()?;
            }
            let config = RunConfig {
                backend: match backend {
                    BackendArg::Gb => Backend::Gb,
                    BackendArg::Witness => Backend::Witness,
                },
                order: match order {
                    OrderArg::Degree => InputOrder::ByDegree,
                    OrderArg::Support => InputOrder::BySupport,
                    OrderArg::Asis => InputOrder::AsIs,
                },
                seed,
                classic_remove,
                verify: match verify {
                    VerifyArg::None => VerifyLevel::None,
                    VerifyArg::Fast => VerifyLevel::Fast,
                    VerifyArg::Full => VerifyLevel::Full,
                },
            };
            let report = run(&system, &config)?;
            let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Internal(e.to_string()))?;
            if report.verification.as_ref().is_some_and(|v| !v.passed) {
                println!("{json}");
                return Err(Failure::Internal("verification failed".into()));
            }
            Ok(json)
        }
        Command::GenPs {
            n,
            seed,
            characteristic,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(gen_ps(n, field(characteristic)?, &mut rng)?.to_text())
        }
        Command::GenSos {
            s,
            n,
            seed,
            characteristic,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(gen_sos(s, n, field(characteristic)?, &mut rng)?.to_text())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(out) => {
            let out = out.trim_end();
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
