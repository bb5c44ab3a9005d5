use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lg_cli::{config, execute, explain::explain, prepare, report_path, Mode, Report, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};

#[derive(Parser)]
#[command(name = "lgverify", about = "Exact verification of local gamma factor identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a configuration and write a JSON report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Run only these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the anchor, conventions and both sides of one case.
    Explain {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        case: String,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { config: path, suites, seed, report } => {
            let run = match config::load(&path).and_then(|c| prepare(c, &suites, seed)) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return code(EXIT_CONFIG);
                }
            };
            let rep = match execute(&run, Mode::Parallel) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return code(EXIT_FAIL);
                }
            };
            let dir = std::env::var("REPORT_DIR").ok();
            let out = report_path(report.as_deref(), dir.as_deref());
            if let Err(e) = rep.write(&out) {
                eprintln!("error: {e}");
                return code(EXIT_FAIL);
            }
            for (suite, cases) in &rep.suites {
                let failed = cases.iter().filter(|c| !c.passed()).count();
                println!("{suite:<15} {:>5} cases {:>4} failed", cases.len(), failed);
            }
            println!("report: {}", out.display());
            code(if rep.all_passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Explain { report, case } => match Report::read(&report).and_then(|r| explain(&r, &case)) {
            Ok(text) => {
                print!("{text}");
                code(EXIT_PASS)
            }
            Err(e) => {
                eprintln!("{e}");
                code(EXIT_CONFIG)
            }
        },
    }
}
