//! Overlap metrics between single-mode Gaussian states.
//!
//! Three routes compute the same quantity on their shared domain and are
//! tested against each other: a closed form for vacuum inputs, a closed form
//! for squeezed-thermal pairs in the mixedness parametrization tau =
//! coth(beta/2), and a general determinant-based formula that also covers
//! displaced and rotated states.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, QuadPair};
use crate::teleport::{teleport_variances_analytic, TeleportConfig};

/// Slack below 1 accepted for tau before clamping (rounding in sqrt/products).
const TAU_EXTRACT_TOL: f64 = 1e-8;

/// Squeezing parameter r and mixedness tau = coth(beta/2) of a single-mode
/// squeezed thermal state; variances are e^{-2r}*tau/4 and e^{+2r}*tau/4.
/// tau = 1 is the pure limit (beta -> infinity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedThermalParams {
    r: f64,
    tau: f64,
}

impl SqueezedThermalParams {
    pub fn new(r: f64, tau: f64) -> Result<Self> {
        if !(r.is_finite() && tau.is_finite()) {
            return Err(Error::InvalidArgument("parameters must be finite".into()));
        }
        if tau < 1.0 - 1e-12 {
            return Err(Error::UnphysicalParameter(format!(
                "mixedness tau must be >= 1, got {tau}"
            )));
        }
        Ok(Self { r, tau: tau.max(1.0) })
    }

    pub fn vacuum() -> Self {
        Self { r: 0.0, tau: 1.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Inverse temperature beta = ln((tau+1)/(tau-1)); infinite at tau = 1.
    pub fn beta(&self) -> f64 {
        if self.tau <= 1.0 {
            f64::INFINITY
        } else {
            ((self.tau + 1.0) / (self.tau - 1.0)).ln()
        }
    }

    /// Reconstructed quadrature variances.
    pub fn variances(&self) -> QuadPair {
        let sx = (-2.0 * self.r).exp() * self.tau / 4.0;
        let sp = (2.0 * self.r).exp() * self.tau / 4.0;
        QuadPair::new(sx, sp).expect("tau >= 1 implies positive variances")
    }

    /// Mixedness as a plain power ratio in dB: 10*log10(tau).
    pub fn tau_db(&self) -> f64 {
        10.0 * self.tau.log10()
    }

    /// Antisqueezed factor e^{+2r} as a plain power ratio in dB.
    pub fn antisqueeze_db(&self) -> f64 {
        10.0 * (2.0 * self.r).exp().log10()
    }
}

/// Which closed form produced a fidelity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FidelityMethod {
    /// Vacuum-input closed form.
    Vacuum,
    /// Squeezed-thermal closed form in the tau parametrization.
    SqueezedThermal,
    /// General single-mode Gaussian overlap (determinant form).
    GeneralOracle,
}

impl std::fmt::Display for FidelityMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FidelityMethod::Vacuum => "vacuum",
            FidelityMethod::SqueezedThermal => "squeezed_thermal",
            FidelityMethod::GeneralOracle => "general_oracle",
        })
    }
}

/// A fidelity value together with the method and the extracted parameters of
/// both states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    pub value: f64,
    pub method: FidelityMethod,
    pub input_params: SqueezedThermalParams,
    pub output_params: SqueezedThermalParams,
}

/// Inverts the variance parametrization: r = ln(sp/sx)/4, tau = 4*sqrt(sx*sp).
pub fn extract_params(sigma: &QuadPair) -> Result<SqueezedThermalParams> {
    let (sx, sp) = (sigma.sigma_x(), sigma.sigma_p());
    let tau = 4.0 * (sx * sp).sqrt();
    if tau < 1.0 - TAU_EXTRACT_TOL {
        return Err(Error::UnphysicalState(format!(
            "variance product {:.6e} is below the uncertainty bound 1/16",
            sx * sp
        )));
    }
    SqueezedThermalParams::new(0.25 * (sp / sx).ln(), tau.max(1.0))
}

/// Overlap of a vacuum input with a diagonal-output pair:
/// F = 2 / sqrt((1 + 4*sx)(1 + 4*sp)).
pub fn fidelity_vacuum(out: &QuadPair) -> Result<FidelityReport> {
    let output_params = extract_params(out)?;
    let value =
        2.0 / ((1.0 + 4.0 * out.sigma_x()) * (1.0 + 4.0 * out.sigma_p())).sqrt();
    Ok(FidelityReport {
        value,
        method: FidelityMethod::Vacuum,
        input_params: SqueezedThermalParams::vacuum(),
        output_params,
    })
}

/// Overlap of two zero-mean squeezed thermal states in the tau form:
/// F = 2 / (sqrt(Y) - sqrt(D)) with
/// Y = cosh^2(dr)(ta*tb + 1)^2 - sinh^2(dr)(ta*tb - 1)^2,
/// D = (ta^2 - 1)(tb^2 - 1), dr = r_a - r_b.
/// The form is finite at the pure boundary tau = 1, where the beta
/// parametrization degenerates.
pub fn fidelity_squeezed_thermal(
    a: &SqueezedThermalParams,
    b: &SqueezedThermalParams,
) -> FidelityReport {
    let dr = a.r() - b.r();
    let tt = a.tau() * b.tau();
    let y = dr.cosh().powi(2) * (tt + 1.0).powi(2) - dr.sinh().powi(2) * (tt - 1.0).powi(2);
    let d = ((a.tau() * a.tau() - 1.0) * (b.tau() * b.tau() - 1.0)).max(0.0);
    FidelityReport {
        value: 2.0 / (y.sqrt() - d.sqrt()),
        method: FidelityMethod::SqueezedThermal,
        input_params: *a,
        output_params: *b,
    }
}

/// General single-mode Gaussian overlap. In this convention (vacuum variance
/// 1/4) the closed form reads, with A and B the covariances and delta the
/// mean difference:
///   D = (16 det A - 1)(16 det B - 1),
///   F = 2 exp(-delta^T (A+B)^{-1} delta / 2) / (sqrt(16 det(A+B) + D) - sqrt(D)).
/// On its shared domain this reproduces both closed forms above; those two
/// equivalences pin the convention and are enforced by tests.
pub fn fidelity_gaussian_oracle(a: &GaussianState, b: &GaussianState) -> Result<FidelityReport> {
    if a.n_modes() != 1 || b.n_modes() != 1 {
        return Err(Error::Unsupported(
            "the overlap oracle is single-mode only".into(),
        ));
    }
    let (ca, cb) = (a.cov(), b.cov());
    let det_a = ca[(0, 0)] * ca[(1, 1)] - ca[(0, 1)] * ca[(1, 0)];
    let det_b = cb[(0, 0)] * cb[(1, 1)] - cb[(0, 1)] * cb[(1, 0)];
    let sum = ca + cb;
    let det_sum = sum[(0, 0)] * sum[(1, 1)] - sum[(0, 1)] * sum[(1, 0)];
    let d = ((16.0 * det_a - 1.0) * (16.0 * det_b - 1.0)).max(0.0);
    let y = 16.0 * det_sum + d;
    let dx = b.mean()[0] - a.mean()[0];
    let dp = b.mean()[1] - a.mean()[1];
    let q = (sum[(1, 1)] * dx * dx - 2.0 * sum[(0, 1)] * dx * dp + sum[(0, 0)] * dp * dp)
        / det_sum;
    Ok(FidelityReport {
        value: 2.0 * (-0.5 * q).exp() / (y.sqrt() - d.sqrt()),
        method: FidelityMethod::GeneralOracle,
        input_params: params_of(a),
        output_params: params_of(b),
    })
}

/// Parameters of a general single-mode covariance: tau from the symplectic
/// invariant 4*sqrt(det), r from the principal variances. For diagonal
/// covariances the sign of r follows the p/x ratio; otherwise |r| is taken
/// from the principal-axis ratio.
fn params_of(state: &GaussianState) -> SqueezedThermalParams {
    let c = state.cov();
    let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
    let tau = (4.0 * det.sqrt()).max(1.0);
    let off = c[(0, 1)].abs();
    let r = if off <= 1e-12 * c.amax() {
        0.25 * (c[(1, 1)] / c[(0, 0)]).ln()
    } else {
        let mid = 0.5 * (c[(0, 0)] + c[(1, 1)]);
        let rad = (0.25 * (c[(0, 0)] - c[(1, 1)]).powi(2) + off * off).sqrt();
        0.25 * ((mid + rad) / (mid - rad)).ln()
    };
    SqueezedThermalParams { r, tau }
}

/// Sweep abscissa: which of the two input parameters varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Mixedness tau in dB varies; the antisqueezed factor is fixed.
    TauDb,
    /// Antisqueezed factor e^{+2r} in dB varies; tau is fixed.
    AntisqueezeDb,
}

/// Fidelity of perfect classical teleportation (vacuum resource, unity gain)
/// as a function of the input parameters. Both the abscissa and the fixed
/// value are plain power ratios in dB. Points are evaluated in parallel and
/// returned ordered by abscissa.
pub fn classical_fidelity_sweep(
    axis: SweepAxis,
    fixed_value_db: f64,
    range_db: (f64, f64),
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    let (lo, hi) = range_db;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && lo >= 0.0 && hi <= 60.0) {
        return Err(Error::InvalidArgument(format!(
            "range must satisfy 0 <= lo < hi <= 60 dB, got ({lo}, {hi})"
        )));
    }
    if !(fixed_value_db.is_finite() && (0.0..=60.0).contains(&fixed_value_db)) {
        return Err(Error::InvalidArgument(format!(
            "fixed value must lie in [0, 60] dB, got {fixed_value_db}"
        )));
    }
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let abscissa = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
            let (tau_db, anti_db) = match axis {
                SweepAxis::TauDb => (abscissa, fixed_value_db),
                SweepAxis::AntisqueezeDb => (fixed_value_db, abscissa),
            };
            let tau = 10f64.powf(tau_db / 10.0);
            let anti = 10f64.powf(anti_db / 10.0);
            let input = SqueezedThermalParams::new(0.5 * anti.ln(), tau)?;
            let out_pair =
                teleport_variances_analytic(&input.variances(), &TeleportConfig::classical())?;
            let output = extract_params(&out_pair)?;
            Ok((abscissa, fidelity_squeezed_thermal(&input, &output).value))
        })
        .collect()
}
