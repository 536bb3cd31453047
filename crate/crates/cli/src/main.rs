//! `relsteer`: single-point evaluation, parameter sweeps, figure presets and
//! the verification suite from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relsteer_core::sweep::{
    emit, evaluate_point, figure_preset, parse_spec, run_sweep, verify, Family, OutputFormat,
    Param, SweepError, SweepSpec, DEFAULT_SEED, PRESET_NAMES,
};
use relsteer_core::{r_from_physical, PhysicalModeParams};

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "relsteer",
    version,
    about = "Entropic steering of accelerated, locally filtered qubit pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one parameter point and print its steering report as JSON.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Run a sweep described by a configuration file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Output file; defaults to `output_path` from the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; defaults to `output` from the configuration.
        #[arg(long)]
        format: Option<OutputFormat>,
    },
    /// Run a named figure preset.
    Figure {
        preset: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Run every oracle cross-check suite.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    #[command(allow_negative_numbers = true)]
    /// Convert proper acceleration and mode frequency to the acceleration parameter r.
    Convert {
        /// Proper acceleration in m/s².
        #[arg(long)]
        acceleration: f64,
        /// Mode frequency in rad/s.
        #[arg(long)]
        omega: f64,
        /// Speed of light in m/s.
        #[arg(long, default_value_t = PhysicalModeParams::SPEED_OF_LIGHT)]
        c_light: f64,
    },
}

#[derive(Debug, clap::Args)]
struct EvalArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    r_a: Option<f64>,
    #[arg(long)]
    r_b: Option<f64>,
    /// Equal filter strength on both qubits.
    #[arg(long, conflicts_with_all = ["alpha_a", "alpha_b"])]
    alpha: Option<f64>,
    #[arg(long)]
    alpha_a: Option<f64>,
    #[arg(long)]
    alpha_b: Option<f64>,
    #[arg(long, conflicts_with = "q")]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    c11: Option<f64>,
    #[arg(long)]
    c22: Option<f64>,
    #[arg(long)]
    c33: Option<f64>,
}

impl EvalArgs {
    fn spec(&self) -> SweepSpec {
        let mut spec = SweepSpec::new(self.family);
        let given = [
            (Param::RA, self.r_a),
            (Param::RB, self.r_b),
            (Param::Alpha, self.alpha),
            (Param::AlphaA, self.alpha_a),
            (Param::AlphaB, self.alpha_b),
            (Param::P, self.p),
            (Param::Q, self.q),
            (Param::C11, self.c11),
            (Param::C22, self.c22),
            (Param::C33, self.c33),
        ];
        for (param, value) in given {
            if let Some(v) = value {
                spec.set_fixed(param, v);
            }
        }
        spec
    }
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Verification,
    Io(String),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

fn write_rows(spec: &SweepSpec, format: OutputFormat, out: &Path) -> Result<(), Failure> {
    let rows = run_sweep(spec)?;
    emit(&rows, format, out)?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Eval(args) => {
            let row = evaluate_point(&args.spec())?;
            let report = row.report.ok_or_else(|| {
                Failure::Validation(format!("point is not evaluable: {:?}", row.status()))
            })?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Command::Sweep { spec, out, format } => {
            let text = fs::read_to_string(&spec)
                .map_err(|e| Failure::Io(format!("{}: {e}", spec.display())))?;
            let parsed = parse_spec(&text)
                .map_err(|e| Failure::Validation(format!("{}: {e}", spec.display())))?;
            let out = out.or_else(|| parsed.output_path.clone()).ok_or_else(|| {
                Failure::Validation("no output file: pass --out or set output_path".into())
            })?;
            write_rows(&parsed, format.unwrap_or(parsed.output), &out)?;
        }
        Command::Figure {
            preset,
            out,
            format,
        } => {
            let spec = figure_preset(&preset).map_err(|e| {
                Failure::Validation(format!("{e}; known presets: {}", PRESET_NAMES.join(", ")))
            })?;
            write_rows(&spec, format, &out)?;
        }
        Command::Verify { seed } => {
            let report = verify(seed);
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Convert {
            acceleration,
            omega,
            c_light,
        } => {
            let r = PhysicalModeParams::new(acceleration, omega, c_light)
                .and_then(|pm| r_from_physical(&pm))
                .map_err(|e| Failure::Validation(e.to_string()))?;
            println!("{r}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFICATION),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
