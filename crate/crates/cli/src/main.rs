//! Command-line front end for the Gaussian teleportation simulator.
//!
//! Exit codes: 0 success, 1 a reference-value check failed, 2 argument or
//! scenario-file parse error, 3 unphysical parameters, 4 I/O failure.

mod anchors;
mod error;
mod plot;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cvteleport_core::{
    classical_fidelity_sweep, extract_params, fidelity_squeezed_thermal, QuadPair, SweepAxis,
};

use error::CliError;
use report::{fmt_sig9, run_scenario, Report, Value};
use scenario::Scenario;

#[derive(Parser)]
#[command(name = "cvteleport", version, about = "Gaussian teleportation simulator")]
struct Cli {
    /// Override the scenario's random seed (Monte-Carlo runs only).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file and print its report.
    Run {
        /// Path to a `key = value` scenario file.
        scenario: PathBuf,
        /// Also write the report as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check every published reference value and print a PASS/FAIL table.
    ReproducePaper,
    /// Sweep the classical-channel fidelity over an input parameter.
    SweepFig4 {
        /// Which input parameter varies.
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// The other input parameter, held fixed (dB).
        #[arg(long = "fixed-db", allow_negative_numbers = true)]
        fixed_db: f64,
        /// Abscissa range in dB as LO:HI.
        #[arg(long, value_parser = parse_range)]
        range: (f64, f64),
        /// Number of sweep points (at least 2).
        #[arg(long)]
        steps: usize,
        /// CSV output file.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG chart of the sweep.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Overlap of two diagonal squeezed-thermal states given in dB.
    Fidelity {
        #[arg(long = "in-x-db", allow_negative_numbers = true)]
        in_x_db: f64,
        #[arg(long = "in-p-db", allow_negative_numbers = true)]
        in_p_db: f64,
        #[arg(long = "out-x-db", allow_negative_numbers = true)]
        out_x_db: f64,
        #[arg(long = "out-p-db", allow_negative_numbers = true)]
        out_p_db: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    /// Mixedness in dB varies.
    Tau,
    /// Antisqueezed factor in dB varies.
    Antisqueeze,
}

impl From<AxisArg> for SweepAxis {
    fn from(axis: AxisArg) -> Self {
        match axis {
            AxisArg::Tau => SweepAxis::TauDb,
            AxisArg::Antisqueeze => SweepAxis::AntisqueezeDb,
        }
    }
}

fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got '{text}'"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("range start '{lo}' is not a number"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("range end '{hi}' is not a number"))?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Run { scenario, csv } => {
            let mut scn = Scenario::load(&scenario)?;
            if let Some(seed) = cli.seed {
                scn.seed = seed;
            }
            let report = run_scenario(&scn)?;
            // Everything is computed before any output file is created, so a
            // failing run leaves no partial artifacts behind.
            if let Some(path) = &csv {
                std::fs::write(path, report.csv()).map_err(|e| CliError::io(path, e))?;
            }
            print!("{}", report.human_table());
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproducePaper => {
            let rows = anchors::build_rows()?;
            print!("{}", anchors::render_table(&rows));
            if rows.iter().all(|r| r.pass) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::SweepFig4 {
            axis,
            fixed_db,
            range,
            steps,
            out,
            plot: plot_out,
        } => {
            let axis = SweepAxis::from(axis);
            let rows = classical_fidelity_sweep(axis, fixed_db, range, steps)?;
            let mut csv = String::from("abscissa_db,fidelity\n");
            for (x, f) in &rows {
                csv.push_str(&fmt_sig9(*x));
                csv.push(',');
                csv.push_str(&fmt_sig9(*f));
                csv.push('\n');
            }
            let svg = plot_out.as_ref().map(|_| plot::render_sweep(&rows, axis));
            std::fs::write(&out, csv).map_err(|e| CliError::io(&out, e))?;
            if let (Some(path), Some(svg)) = (plot_out, svg) {
                std::fs::write(&path, svg).map_err(|e| CliError::io(&path, e))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fidelity {
            in_x_db,
            in_p_db,
            out_x_db,
            out_p_db,
        } => {
            let input = QuadPair::from_db(in_x_db, in_p_db)?;
            let output = QuadPair::from_db(out_x_db, out_p_db)?;
            let input_params = extract_params(&input)?;
            let output_params = extract_params(&output)?;
            let overlap = fidelity_squeezed_thermal(&input_params, &output_params);

            let mut report = Report::new();
            report.push_pair("input", &input)?;
            report.push_pair("output", &output)?;
            report.push_num("input_squeeze_r", input_params.r());
            report.push_num("input_mixedness_tau", input_params.tau());
            report.push_num("output_squeeze_r", output_params.r());
            report.push_num("output_mixedness_tau", output_params.tau());
            report.push("method", Value::Text(overlap.method.to_string()));
            report.push_num("fidelity", overlap.value);
            print!("{}", report.human_table());
            Ok(ExitCode::SUCCESS)
        }
    }
}
