use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use daywatch::check::run_checks;
use daywatch::report::to_pretty;
use daywatch::sweep::{sweep_json, sweep_text};
use daywatch::{
    batch_exit_code, emit_batch, parse_records, run_batch, sweep, InputFormat, OutputFormat,
    Record, SweepSpec, EXIT_DEGRADED, EXIT_FAILURE, EXIT_OK, EXIT_UNPARSEABLE,
};
use daywatch_core::{Field, RunConfig, UpLogMode, DEFAULT_EQUALITY_TOLERANCE};

#[derive(Parser)]
#[command(
    name = "daywatch",
    version,
    about = "Day-ahead prognostic watch for an electric power system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every record of a CSV or JSON file
    Run {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "json")]
        output: OutputFormat,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Vary one parameter of the first record over a uniform grid
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// One of t6_1, t6_2, t16, t24, k_c, c_0, delta
        #[arg(long)]
        param: Field,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "json")]
        output: OutputFormat,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the built-in oracle suite
    Check,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// csv or json; guessed from the file extension when omitted
    #[arg(long)]
    format: Option<InputFormat>,
}

#[derive(Args)]
struct ConfigArgs {
    /// Relative tolerance for probability equalities in the grid-state rule
    #[arg(long, default_value_t = DEFAULT_EQUALITY_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value = "strict")]
    up_log_mode: UpLogMode,
}

enum Failure {
    Usage(String),
    Unparseable(String),
}

fn config(args: &ConfigArgs) -> Result<RunConfig, Failure> {
    RunConfig::new(args.tolerance, args.up_log_mode).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(args: &InputArgs) -> Result<Vec<Record>, Failure> {
    let format = match args.format.or_else(|| InputFormat::from_path(&args.input)) {
        Some(f) => f,
        None => {
            return Err(Failure::Usage(format!(
                "cannot infer the format of {}; pass --format csv|json",
                args.input.display()
            )))
        }
    };
    let text = read(&args.input)?;
    let records = parse_records(&text, format)
        .map_err(|e| Failure::Unparseable(format!("{}: {e}", args.input.display())))?;
    for (i, r) in records.iter().enumerate() {
        for w in r.params.range_warnings() {
            eprintln!("warning: record {}: {w}", i + 1);
        }
    }
    Ok(records)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Unparseable(format!("{}: {e}", path.display())))
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Run {
            input,
            output,
            config: c,
        } => {
            let cfg = config(&c)?;
            let records = load(&input)?;
            let reports = run_batch(&records, &cfg);
            println!("{}", emit_batch(&records, &reports, output).trim_end());
            Ok(batch_exit_code(&reports))
        }
        Command::Sweep {
            input,
            param,
            from,
            to,
            steps,
            output,
            config: c,
        } => {
            let cfg = config(&c)?;
            let spec = SweepSpec::new(param, from, to, steps)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let records = load(&input)?;
            let Some(base) = records.first() else {
                return Err(Failure::Unparseable(format!(
                    "{}: no record to sweep",
                    input.input.display()
                )));
            };
            if records.len() > 1 {
                eprintln!("note: sweeping the first of {} records", records.len());
            }
            let entries = sweep(&base.params, &spec, &cfg);
            match output {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        to_pretty(&sweep_json(&spec, &entries, base.date.as_deref()))
                    )
                }
                OutputFormat::Text => print!("{}", sweep_text(&spec, &entries)),
            }
            let clean = entries.iter().all(|e| e.status() == "ok");
            Ok(if clean { EXIT_OK } else { EXIT_DEGRADED })
        }
        Command::Check => {
            let outcomes = run_checks();
            for o in &outcomes {
                println!("{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_FAILURE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    let code = match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Unparseable(msg)) => {
            eprintln!("error: {msg}");
            EXIT_UNPARSEABLE
        }
    };
    ExitCode::from(code as u8)
}
