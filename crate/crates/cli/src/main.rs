//! `allowance-lab`: run allowance-attack scenarios, enumerate transaction
//! orderings, rebuild the strategy comparison matrix, and replay exported
//! traces.
//!
//! Exit codes: 0 when every verdict is Safe/Pass, 1 when the oracle reports
//! a violation or a replay diverges, 2 for scenario/usage errors, 3 for I/O
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use allowance_lab::compliance::{build_matrix, scenario_verdict};
use allowance_lab::interleave::{
    enumerate_interleavings, sample_interleavings, DEFAULT_ENUMERATION_BOUND,
};
use allowance_lab::scenario::{attack_pending_set, run_scenario, InterleaveSpec, Scenario};
use allowance_lab::strategy::StrategyName;
use allowance_lab::trace::{parse_jsonl, replay};
use allowance_lab_cli::{dsl, output};

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "allowance-lab",
    about = "Simulate ERC20 allowance strategies under front-running and rebuild their compliance matrix",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file and print the trace and the oracle verdict.
    Run {
        file: PathBuf,
        /// Write the executed trace as line-delimited JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Execute every ordering of a scenario's racing transactions.
    Enumerate { file: PathBuf },
    /// Evaluate all strategies and print the comparison matrix.
    Matrix {
        /// Where the structured report is written.
        #[arg(long, default_value = "matrix-report.json")]
        out: PathBuf,
    },
    /// List the strategy catalog in report order.
    ListStrategies,
    /// Re-execute an exported trace and verify receipts and state hashes.
    Replay { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, export } => cmd_run(&file, export.as_deref()),
        Command::Enumerate { file } => cmd_enumerate(&file),
        Command::Matrix { out } => cmd_matrix(&out),
        Command::ListStrategies => {
            for name in StrategyName::ALL {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Replay { file } => cmd_replay(&file),
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, ExitCode> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(ExitCode::from(EXIT_IO));
        }
    };
    dsl::parse_scenario(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })
}

fn cmd_run(file: &Path, export: Option<&Path>) -> ExitCode {
    let scenario = match load_scenario(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let trace = match run_scenario(&scenario) {
        Ok(trace) => trace,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    print!("{}", output::render_trace(&trace));
    if let Some(path) = export {
        if let Err(e) = std::fs::write(path, trace.to_jsonl()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_IO);
        }
        println!("trace exported to {}", path.display());
    }
    match scenario_verdict(&scenario, &trace) {
        Ok(verdict) => {
            println!("verdict: {verdict}");
            if verdict.is_violated() {
                ExitCode::from(EXIT_VIOLATED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_enumerate(file: &Path) -> ExitCode {
    let scenario = match load_scenario(file) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let set = match attack_pending_set(&scenario) {
        Ok(set) => set,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let traces = match scenario.interleave.unwrap_or(InterleaveSpec::Exhaustive) {
        InterleaveSpec::Exhaustive => {
            enumerate_interleavings(&set.setup, &set.pending, DEFAULT_ENUMERATION_BOUND)
        }
        InterleaveSpec::Sample { count, seed } => {
            sample_interleavings(&set.setup, &set.pending, count, seed)
        }
    };
    let traces = match traces {
        Ok(traces) => traces,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    println!("orderings: {}", traces.len());
    let mut violated = 0usize;
    for (i, trace) in traces.iter().enumerate() {
        match scenario_verdict(&scenario, trace) {
            Ok(verdict) => {
                if verdict.is_violated() {
                    violated += 1;
                }
                println!("[{i}] {verdict}");
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    println!("violating: {violated}/{}", traces.len());
    if violated > 0 {
        ExitCode::from(EXIT_VIOLATED)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_matrix(out: &Path) -> ExitCode {
    let report = build_matrix();
    print!("{}", report.render_table());
    if let Err(e) = std::fs::write(out, report.to_json_string()) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::from(EXIT_IO);
    }
    println!("report written to {}", out.display());
    ExitCode::SUCCESS
}

fn cmd_replay(file: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_IO);
        }
    };
    let (header, records) = match parse_jsonl(&text) {
        Ok(parsed) => parsed,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match replay(&header, &records) {
        Ok(trace) => {
            println!(
                "hashes verified: {} transactions, final state {}",
                trace.steps.len(),
                trace.final_state.hash()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("replay mismatch: {e}");
            ExitCode::from(EXIT_VIOLATED)
        }
    }
}
