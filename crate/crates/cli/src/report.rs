//! Report assembly and rendering. A report is an ordered list of
//! (quantity, value) rows; the same rows back both the human-readable table
//! and the machine CSV, so the two can never disagree.

use std::fmt::Write as _;

use cvteleport_core::{
    check_variance_ordering, duan_sum, estimate_variances, extract_params,
    fidelity_gaussian_oracle, fidelity_squeezed_thermal, fidelity_vacuum, run_shots,
    squeezed_thermal_state, teleport_network, teleport_variances_analytic, to_db, QuadPair,
    Result as CoreResult, SqueezedThermalParams,
};
use num_complex::Complex64;

use crate::error::CliError;
use crate::scenario::{InputSpec, RunMode, Scenario};

/// Format with nine significant digits, enough to reproduce an f64 check to
/// well below every tolerance used here, while staying stable across runs.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let decimals = (8 - x.abs().log10().floor() as i64).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

pub enum Value {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Num(x) => fmt_sig9(*x),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

pub struct Report {
    rows: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report { rows: Vec::new() }
    }

    pub fn push(&mut self, quantity: &str, value: Value) {
        self.rows.push((quantity.to_string(), value));
    }

    pub fn push_num(&mut self, quantity: &str, value: f64) {
        self.push(quantity, Value::Num(value));
    }

    /// A linear variance row followed by its decibel companion.
    fn push_sigma(&mut self, prefix: &str, sigma: f64) -> CoreResult<()> {
        self.push_num(prefix, sigma);
        self.push_num(&format!("{prefix}_db"), to_db(sigma)?);
        Ok(())
    }

    pub fn push_pair(&mut self, prefix: &str, pair: &QuadPair) -> CoreResult<()> {
        self.push_sigma(&format!("{prefix}_sigma_x"), pair.sigma_x())?;
        self.push_sigma(&format!("{prefix}_sigma_p"), pair.sigma_p())
    }

    #[cfg(test)]
    pub fn get(&self, quantity: &str) -> Option<String> {
        self.rows
            .iter()
            .find(|(q, _)| q == quantity)
            .map(|(_, v)| v.render())
    }

    /// Two-column table for people.
    pub fn human_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|(q, _)| q.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (q, v) in &self.rows {
            let _ = writeln!(out, "{q:<width$}  {}", v.render());
        }
        out
    }

    /// Machine CSV: header plus one row per quantity, LF line ends.
    pub fn csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        for (q, v) in &self.rows {
            let _ = writeln!(out, "{q},{}", v.render());
        }
        out
    }
}

/// Execute a scenario and assemble its report.
pub fn run_scenario(scenario: &Scenario) -> Result<Report, CliError> {
    let mut report = Report::new();
    report.push("mode", Value::Text(scenario.mode.name().to_string()));

    let input_pair = scenario.input_pair()?;
    let input_state = scenario.input_state()?;
    let config = scenario.config()?;

    report.push_pair("input", &input_pair)?;
    let input_params = extract_params(&input_pair)?;
    report.push_num("input_squeeze_r", input_params.r());
    report.push_num("input_mixedness_tau", input_params.tau());

    // Predicted or sampled output of the channel.
    let (output_pair, sampled) = match scenario.mode {
        RunMode::Analytic => (teleport_variances_analytic(&input_pair, &config)?, None),
        RunMode::Network => {
            let out = teleport_network(&input_state, &config)?;
            (out.mode_variances(0)?, None)
        }
        RunMode::Montecarlo => {
            let shots = scenario.shots.expect("checked by the schema");
            let records = run_shots(&input_state, &config, shots, scenario.seed)?;
            let estimate = estimate_variances(&records)?;
            (estimate.pair()?, Some(estimate))
        }
    };
    report.push_pair("output", &output_pair)?;
    if let Some(estimate) = &sampled {
        report.push_num("output_se_x", estimate.se_x);
        report.push_num("output_se_p", estimate.se_p);
        report.push("shots", Value::Text(estimate.shots.to_string()));
        report.push("seed", Value::Text(scenario.seed.to_string()));
    }

    // Fidelity of the prediction against the input, by every applicable route.
    if matches!(scenario.input, InputSpec::Vacuum) {
        report.push_num("fidelity_vacuum", fidelity_vacuum(&output_pair)?.value);
    }
    let output_params = extract_params(&output_pair)?;
    report.push_num(
        "fidelity_squeezed_thermal",
        fidelity_squeezed_thermal(&input_params, &output_params).value,
    );
    let in_state = state_of(&input_params)?;
    let out_state = state_of(&output_params)?;
    report.push_num(
        "fidelity_general_oracle",
        fidelity_gaussian_oracle(&in_state, &out_state)?.value,
    );

    // Resource quality and the squeezed-vs-vacuum variance ordering.
    report.push_num("resource_duan_sum", duan_sum(&config.resource_state()?)?);
    let vacuum_out = teleport_variances_analytic(&QuadPair::new(0.25, 0.25)?, &config)?;
    let (x_below, p_above) = check_variance_ordering(&vacuum_out, &output_pair);
    report.push("ordering_x_below_vacuum_run", Value::Bool(x_below));
    report.push("ordering_p_above_vacuum_run", Value::Bool(p_above));

    // Comparison against observed output variances, when provided.
    if let Some((x_db, p_db)) = scenario.measured {
        let measured = QuadPair::from_db(x_db, p_db)?;
        report.push_pair("measured", &measured)?;
        let measured_params = extract_params(&measured)?;
        report.push_num(
            "fidelity_vs_measured",
            fidelity_squeezed_thermal(&input_params, &measured_params).value,
        );
    }

    Ok(report)
}

fn state_of(params: &SqueezedThermalParams) -> CoreResult<cvteleport_core::GaussianState> {
    squeezed_thermal_state(params.r(), params.tau(), 0.0, Complex64::new(0.0, 0.0))
}
