//! Plain-text scenario files: one `key = value` pair per line, `#` comments.
//!
//! The parser is strict. Unknown keys, duplicate keys, bad literals, and
//! schema violations are all reported with the file, line, and column, so a
//! typo cannot silently fall back to a default.

use std::collections::HashMap;
use std::path::Path;

use cvteleport_core::{
    extract_params, from_db, squeezed_thermal_state, visibility_correct, GaussianState, QuadPair,
    Result as CoreResult, SqueezedThermalParams, TeleportConfig,
};
use num_complex::Complex64;

use crate::error::CliError;

const KNOWN_KEYS: &[&str] = &[
    "input.kind",
    "input.sigma_x_db",
    "input.sigma_p_db",
    "input.r",
    "input.tau_db",
    "input.visibility",
    "resource.epr_enabled",
    "resource.r_minus",
    "resource.r_plus",
    "resource.x_leg",
    "resource.p_leg",
    "gains.g_x",
    "gains.g_p",
    "run.mode",
    "run.shots",
    "run.seed",
    "measured.sigma_x_db",
    "measured.sigma_p_db",
];

/// How the input state is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputSpec {
    Vacuum,
    /// Observed quadrature variances in dB, optionally with the homodyne
    /// visibility needed to undo detection loss.
    ObservedDb {
        x_db: f64,
        p_db: f64,
        visibility: Option<f64>,
    },
    /// Direct squeeze parameter and mixedness (power dB).
    Params { r: f64, tau_db: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceSpec {
    pub epr_enabled: bool,
    pub r_minus: f64,
    pub r_plus: f64,
    pub legs: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Analytic,
    Network,
    Montecarlo,
}

impl RunMode {
    pub fn name(&self) -> &'static str {
        match self {
            RunMode::Analytic => "analytic",
            RunMode::Network => "network",
            RunMode::Montecarlo => "montecarlo",
        }
    }
}

/// A fully validated scenario, ready to execute.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub input: InputSpec,
    pub resource: ResourceSpec,
    pub g_x: f64,
    pub g_p: f64,
    pub mode: RunMode,
    pub shots: Option<usize>,
    pub seed: u64,
    /// Observed output variances in dB to compare the prediction against.
    pub measured: Option<(f64, f64)>,
}

struct RawEntry {
    value: String,
    line: usize,
    /// 1-based column where the value text starts.
    col: usize,
}

struct RawFile<'a> {
    origin: &'a str,
    entries: HashMap<String, RawEntry>,
}

impl<'a> RawFile<'a> {
    fn at(&self, key: &str) -> Option<&RawEntry> {
        self.entries.get(key)
    }

    fn err_at(&self, key: &str, msg: &str) -> CliError {
        match self.entries.get(key) {
            Some(e) => CliError::Parse(format!("{}:{}:{}: {msg}", self.origin, e.line, e.col)),
            None => CliError::Parse(format!("{}: {msg}", self.origin)),
        }
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.at(key) {
            None => Ok(None),
            Some(e) => e.value.parse::<f64>().map(Some).map_err(|_| {
                self.err_at(key, &format!("expected a number for {key}, got '{}'", e.value))
            }),
        }
    }

    fn u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.at(key) {
            None => Ok(None),
            Some(e) => e.value.parse::<u64>().map(Some).map_err(|_| {
                self.err_at(
                    key,
                    &format!("expected a non-negative integer for {key}, got '{}'", e.value),
                )
            }),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.at(key) {
            None => Ok(None),
            Some(e) => e.value.parse::<usize>().map(Some).map_err(|_| {
                self.err_at(
                    key,
                    &format!("expected a non-negative integer for {key}, got '{}'", e.value),
                )
            }),
        }
    }

    fn bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.at(key) {
            None => Ok(None),
            Some(e) => match e.value.as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                other => Err(self.err_at(
                    key,
                    &format!("expected true or false for {key}, got '{other}'"),
                )),
            },
        }
    }

    fn require<T>(&self, key: &str, got: Option<T>) -> Result<T, CliError> {
        got.ok_or_else(|| CliError::Parse(format!("{}: missing required key {key}", self.origin)))
    }

    fn forbid(&self, key: &str, reason: &str) -> Result<(), CliError> {
        match self.at(key) {
            None => Ok(()),
            Some(_) => Err(self.err_at(key, &format!("{key} is not allowed {reason}"))),
        }
    }
}

fn tokenize<'a>(text: &str, origin: &'a str) -> Result<RawFile<'a>, CliError> {
    let mut entries: HashMap<String, RawEntry> = HashMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        // Strip a trailing comment, then surrounding whitespace.
        let uncommented = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if uncommented.trim().is_empty() {
            continue;
        }
        let key_col = uncommented.len() - uncommented.trim_start().len() + 1;
        let Some(eq) = uncommented.find('=') else {
            return Err(CliError::Parse(format!(
                "{origin}:{line_no}:{key_col}: expected 'key = value', got '{}'",
                uncommented.trim()
            )));
        };
        let key = uncommented[..eq].trim();
        if key.is_empty() {
            return Err(CliError::Parse(format!(
                "{origin}:{line_no}:{key_col}: missing key before '='"
            )));
        }
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Parse(format!(
                "{origin}:{line_no}:{key_col}: unknown key '{key}'"
            )));
        }
        let value_slice = &uncommented[eq + 1..];
        let value = value_slice.trim();
        let value_col = eq + 2 + (value_slice.len() - value_slice.trim_start().len());
        if value.is_empty() {
            return Err(CliError::Parse(format!(
                "{origin}:{line_no}:{value_col}: missing value for {key}"
            )));
        }
        if entries.contains_key(key) {
            return Err(CliError::Parse(format!(
                "{origin}:{line_no}:{key_col}: duplicate key '{key}'"
            )));
        }
        entries.insert(
            key.to_string(),
            RawEntry {
                value: value.to_string(),
                line: line_no,
                col: value_col,
            },
        );
    }
    Ok(RawFile { origin, entries })
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let raw = tokenize(text, origin)?;

        let kind = raw.require("input.kind", raw.at("input.kind"))?;
        let input = match kind.value.as_str() {
            "vacuum" => {
                for key in [
                    "input.sigma_x_db",
                    "input.sigma_p_db",
                    "input.r",
                    "input.tau_db",
                    "input.visibility",
                ] {
                    raw.forbid(key, "when input.kind = vacuum")?;
                }
                InputSpec::Vacuum
            }
            "squeezed_thermal" => {
                let x_db = raw.f64("input.sigma_x_db")?;
                let p_db = raw.f64("input.sigma_p_db")?;
                let r = raw.f64("input.r")?;
                let tau_db = raw.f64("input.tau_db")?;
                let visibility = raw.f64("input.visibility")?;
                match (x_db, p_db, r, tau_db) {
                    (Some(x), Some(p), None, None) => InputSpec::ObservedDb {
                        x_db: x,
                        p_db: p,
                        visibility,
                    },
                    (None, None, Some(r), Some(tau_db)) => {
                        raw.forbid(
                            "input.visibility",
                            "with the input.r / input.tau_db route (it corrects observed variances)",
                        )?;
                        InputSpec::Params { r, tau_db }
                    }
                    _ => {
                        return Err(CliError::Parse(format!(
                            "{origin}: a squeezed_thermal input needs either both \
                             input.sigma_x_db and input.sigma_p_db or both input.r \
                             and input.tau_db"
                        )))
                    }
                }
            }
            other => {
                return Err(raw.err_at(
                    "input.kind",
                    &format!("input.kind must be vacuum or squeezed_thermal, got '{other}'"),
                ))
            }
        };

        let epr_enabled = raw.require(
            "resource.epr_enabled",
            raw.bool("resource.epr_enabled")?,
        )?;
        let resource = if epr_enabled {
            let r_minus = raw.f64("resource.r_minus")?.unwrap_or(0.0);
            let r_plus = raw.f64("resource.r_plus")?.unwrap_or(r_minus);
            let legs = match (raw.f64("resource.x_leg")?, raw.f64("resource.p_leg")?) {
                (Some(x), Some(p)) => Some((x, p)),
                (None, None) => None,
                _ => {
                    return Err(CliError::Parse(format!(
                        "{origin}: resource.x_leg and resource.p_leg must be given together"
                    )))
                }
            };
            ResourceSpec {
                epr_enabled,
                r_minus,
                r_plus,
                legs,
            }
        } else {
            for key in [
                "resource.r_minus",
                "resource.r_plus",
                "resource.x_leg",
                "resource.p_leg",
            ] {
                raw.forbid(key, "when resource.epr_enabled = false")?;
            }
            ResourceSpec {
                epr_enabled,
                r_minus: 0.0,
                r_plus: 0.0,
                legs: None,
            }
        };

        let g_x = raw.f64("gains.g_x")?.unwrap_or(1.0);
        let g_p = raw.f64("gains.g_p")?.unwrap_or(1.0);

        let mode_entry = raw.require("run.mode", raw.at("run.mode"))?;
        let mode = match mode_entry.value.as_str() {
            "analytic" => RunMode::Analytic,
            "network" => RunMode::Network,
            "montecarlo" => RunMode::Montecarlo,
            other => {
                return Err(raw.err_at(
                    "run.mode",
                    &format!("run.mode must be analytic, network, or montecarlo, got '{other}'"),
                ))
            }
        };
        let (shots, seed) = if mode == RunMode::Montecarlo {
            let shots = raw.require("run.shots", raw.usize("run.shots")?)?;
            (Some(shots), raw.u64("run.seed")?.unwrap_or(0))
        } else {
            raw.forbid("run.shots", "unless run.mode = montecarlo")?;
            raw.forbid("run.seed", "unless run.mode = montecarlo")?;
            (None, 0)
        };

        let measured = match (
            raw.f64("measured.sigma_x_db")?,
            raw.f64("measured.sigma_p_db")?,
        ) {
            (Some(x), Some(p)) => Some((x, p)),
            (None, None) => None,
            _ => {
                return Err(CliError::Parse(format!(
                    "{origin}: measured.sigma_x_db and measured.sigma_p_db must be given together"
                )))
            }
        };

        Ok(Scenario {
            input,
            resource,
            g_x,
            g_p,
            mode,
            shots,
            seed,
            measured,
        })
    }

    /// True input variances, with any detection loss undone.
    pub fn input_pair(&self) -> CoreResult<QuadPair> {
        match self.input {
            InputSpec::Vacuum => QuadPair::new(0.25, 0.25),
            InputSpec::ObservedDb {
                x_db,
                p_db,
                visibility,
            } => {
                let mut sx = from_db(x_db);
                let mut sp = from_db(p_db);
                if let Some(v) = visibility {
                    sx = visibility_correct(sx, v)?;
                    sp = visibility_correct(sp, v)?;
                }
                QuadPair::new(sx, sp)
            }
            InputSpec::Params { r, tau_db } => {
                let params = SqueezedThermalParams::new(r, from_db(tau_db) / 0.25)?;
                Ok(params.variances())
            }
        }
    }

    /// The input as a zero-mean single-mode state.
    pub fn input_state(&self) -> CoreResult<GaussianState> {
        let pair = self.input_pair()?;
        let params = extract_params(&pair)?;
        squeezed_thermal_state(params.r(), params.tau(), 0.0, Complex64::new(0.0, 0.0))
    }

    /// The validated channel configuration.
    pub fn config(&self) -> CoreResult<TeleportConfig> {
        let mut config = if self.resource.epr_enabled {
            TeleportConfig::quantum(self.resource.r_minus, self.resource.r_plus)
        } else {
            TeleportConfig::classical()
        };
        config = config.with_gains(self.g_x, self.g_p);
        if let Some((x, p)) = self.resource.legs {
            config = config.with_legs(x, p);
        }
        if let InputSpec::ObservedDb {
            visibility: Some(v),
            ..
        } = self.input
        {
            config = config.with_input_visibility(v);
        }
        config.validate()?;
        Ok(config)
    }
}
