//! `operad-forge`: run one computation on an input file and print a
//! deterministic report.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sha2::{Digest, Sha256};

use commands::{Command, Flags};
use report::{Format, Report};

const AFTER_HELP: &str = "\
Input files use the line-oriented format described in grammar.ebnf.

Exit codes: 0 when every verdict passes, 1 when the mathematics says no
(a check fails, the Jacobi identity fails, a prolongation is obstructed),
2 for usage, parse and validation errors.

Environment:
  OPERAD_FORGE_THREADS  worker threads, a positive integer (default 1).
                        Reports do not depend on it.";

#[derive(Debug, Parser)]
#[command(name = "operad-forge", version, about = "Exact computations with operads, deformations and PBW", after_help = AFTER_HELP)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input file.
    spec: PathBuf,
    /// Degree (or arity) bound for the computation.
    #[arg(long = "max-deg")]
    max_deg: Option<usize>,
    /// Deformation levels to build.
    #[arg(long)]
    levels: Option<usize>,
    /// Cohomological index.
    #[arg(long = "i")]
    i: Option<usize>,
    /// Internal degree.
    #[arg(long = "j", allow_hyphen_values = true)]
    j: Option<i64>,
    /// Ground ring, overriding the ring block: rationals, integers, prime:p, QQ, ZZ or Fp.
    #[arg(long, value_parser = input::parse_ring)]
    ring: Option<operad_forge::linalg::GroundRing>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Cli {
    /// The command line without paths, so that the echo depends only on
    /// what is computed.
    fn echo(&self) -> String {
        let mut s = self.command.name().to_string();
        if let Some(d) = self.max_deg {
            s += &format!(" --max-deg {d}");
        }
        if let Some(l) = self.levels {
            s += &format!(" --levels {l}");
        }
        if let Some(i) = self.i {
            s += &format!(" --i {i}");
        }
        if let Some(j) = self.j {
            s += &format!(" --j {j}");
        }
        if let Some(r) = self.ring {
            s += &format!(" --ring {r}");
        }
        s
    }
}

fn threads() -> Result<usize, String> {
    match std::env::var("OPERAD_FORGE_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(e) => Err(format!("OPERAD_FORGE_THREADS: {e}")),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(format!("OPERAD_FORGE_THREADS must be a positive integer, got {v:?}")),
        },
    }
}

fn fail(code: &str, message: &str, exit: u8) -> ExitCode {
    eprintln!("error {code}: {message}");
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let n = match threads() {
        Ok(n) => n,
        Err(e) => return fail("E_USAGE", &e, 2),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        return fail("E_USAGE", &e.to_string(), 2);
    }
    let (spec, bytes) = match input::parse_spec(&cli.spec, cli.ring) {
        Ok(x) => x,
        Err(e) => return fail(e.code(), &e.to_string(), 2),
    };
    let digest = hex::encode(Sha256::digest(&bytes));
    let flags = Flags { max_deg: cli.max_deg, levels: cli.levels, i: cli.i, j: cli.j };
    let mut report = Report::new(cli.echo(), digest);
    if let Err(e) = commands::run(cli.command, &spec, &flags, &mut report) {
        return fail(e.code, &e.message, e.exit_code() as u8);
    }
    let text = report.render(cli.format);
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            return fail("E_USAGE", &format!("cannot write {}: {e}", path.display()), 2);
        }
    }
    ExitCode::from(if report.passed() { 0 } else { 1 })
}
