use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dtn::format::{parse, Document};
use dtn::report::{self, Kind, Report};
use dtn::{fixtures, ConditionV, Config, Error, Result};

/// Workbench for finite doctrines and their completions.
///
/// Exit codes: 0 pass, 1 violation, 2 malformed input, 3 resource cap.
#[derive(Parser)]
#[command(name = "dtn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest fiber that may be materialized.
    #[arg(long, global = true, default_value_t = Config::default().cap_fibers)]
    cap_fibers: usize,
    /// Largest candidate enumeration.
    #[arg(long, global = true, default_value_t = Config::default().cap_enum)]
    cap_enum: u64,
    /// Reading of the totality condition on functional relations.
    #[arg(long, global = true, value_enum, default_value = "strict")]
    condition_v: ConditionArg,
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document and verify its elementary existential structure.
    Check { path: PathBuf },
    /// Build a completion and emit it.
    Complete {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Where to write the completed doctrine; printed after the report otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the comparison harnesses.
    Compare { path: PathBuf },
    /// Print the acceptance numbers for the shipped fixtures.
    Demo,
    /// Check the universal property against an exact category.
    Universal {
        path: PathBuf,
        /// A document whose base is the target; `terminal` for the one-arrow category.
        /// Defaults to T(P).
        #[arg(long)]
        target: Option<String>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ConditionArg {
    Strict,
    Alt,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Gr,
    Tp,
    Er,
    Qp,
}

const TERMINAL: &str = "base { objects 1; terminal 1; product 1 1 = 1 id_1 id_1; }";

/// Reads a document; `fixtures/NAME` falls back to the built-in fixture when no such file exists.
fn load(path: &Path, cfg: &Config) -> Result<Document> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let builtin = path
                .strip_prefix("fixtures")
                .ok()
                .and_then(|p| p.to_str())
                .and_then(|n| fixtures::source(n.trim_end_matches(".dtn")));
            match builtin {
                Some(src) => src.to_string(),
                None => return Err(Error::MalformedPresentation(format!("cannot read {}: {e}", path.display()))),
            }
        }
    };
    parse(&text, cfg)
}

fn run(cli: &Cli, cfg: &Config) -> (Report, Option<String>) {
    let (name, subject) = match &cli.command {
        Command::Check { path } => ("check", path.display().to_string()),
        Command::Complete { path, .. } => ("complete", path.display().to_string()),
        Command::Compare { path } => ("compare", path.display().to_string()),
        Command::Universal { path, .. } => ("universal", path.display().to_string()),
        Command::Demo => ("demo", String::new()),
    };
    let result = (|| -> Result<(Report, Option<String>)> {
        match &cli.command {
            Command::Check { path } => Ok((report::check(&load(path, cfg)?, &subject, cfg)?, None)),
            Command::Compare { path } => Ok((report::compare(&load(path, cfg)?, &subject, cfg)?, None)),
            Command::Complete { path, kind, out } => {
                let kind = match kind {
                    KindArg::Gr => Kind::Gr,
                    KindArg::Tp => Kind::Tp,
                    KindArg::Er => Kind::Er,
                    KindArg::Qp => Kind::Qp,
                };
                let (r, emitted) = report::complete(&load(path, cfg)?, &subject, kind, cfg)?;
                match out {
                    Some(out) => {
                        std::fs::write(out, emitted).map_err(|e| {
                            Error::MalformedPresentation(format!("cannot write {}: {e}", out.display()))
                        })?;
                        Ok((r, None))
                    }
                    None => Ok((r, Some(emitted))),
                }
            }
            Command::Universal { path, target } => {
                let doc = load(path, cfg)?;
                let x = match target.as_deref() {
                    None => None,
                    Some("terminal") => Some(parse(TERMINAL, cfg)?.base),
                    Some(t) => Some(load(Path::new(t), cfg)?.base),
                };
                Ok((report::universal(&doc, &subject, x.as_ref(), cfg)?, None))
            }
            Command::Demo => unreachable!("demo prints text directly"),
        }
    })();
    result.unwrap_or_else(|e| (Report::from_error(name, &subject, &e), None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config {
        cap_fibers: cli.cap_fibers,
        cap_enum: cli.cap_enum,
        condition_v: match cli.condition_v {
            ConditionArg::Strict => ConditionV::Strict,
            ConditionArg::Alt => ConditionV::Alt,
        },
    };
    if let Command::Demo = cli.command {
        return match report::demo(&cfg) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("demo: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        };
    }
    let (r, emitted) = run(&cli, &cfg);
    if cli.json {
        println!("{}", r.json());
    } else {
        print!("{}", r.human());
        if let Some(doc) = emitted {
            println!();
            print!("{doc}");
        }
    }
    ExitCode::from(r.exit_code as u8)
}
