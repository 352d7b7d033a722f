//! The teleportation channel over Gaussian states.
//!
//! Two independent implementations of the same channel live here: the
//! closed-form map on quadrature variances, and a full network simulation
//! (resource + balanced splitter + measure-and-feedforward as an affine map)
//! built from the `gaussian` primitives. Tests hold them to each other.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::gaussian::{
    apply_symplectic, make_symplectic, squeezed_thermal_state, vacuum_state, GaussianState,
    OpticalElement, QuadPair,
};

/// Parameters of one teleportation run.
///
/// The entangled resource is characterized by the squeezing parameter
/// `r_minus` (variance factor e^{-2 r_minus} on the squeezed combinations)
/// and the antisqueezing parameter `r_plus` (factor e^{+2 r_plus} on the
/// conjugate combinations); impure squeezers make them differ. The x and p
/// channels may carry individually calibrated squeezed factors via
/// `x_leg`/`p_leg`, overriding e^{-2 r_minus}. With `epr_enabled` false the
/// resource is replaced by vacuum (classical benchmark), equivalent to
/// r_minus = r_plus = 0.
///
/// `input_visibility` is calibration metadata for inferring the input state
/// from observed variances; the channel itself does not use it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportConfig {
    pub r_minus: f64,
    pub r_plus: f64,
    pub g_x: f64,
    pub g_p: f64,
    pub epr_enabled: bool,
    pub input_visibility: f64,
    pub x_leg: Option<f64>,
    pub p_leg: Option<f64>,
}

impl TeleportConfig {
    /// Classical benchmark: vacuum resource, unity gains.
    pub fn classical() -> Self {
        Self {
            r_minus: 0.0,
            r_plus: 0.0,
            g_x: 1.0,
            g_p: 1.0,
            epr_enabled: false,
            input_visibility: 1.0,
            x_leg: None,
            p_leg: None,
        }
    }

    /// Entangled resource with the given squeezing parameters, unity gains.
    pub fn quantum(r_minus: f64, r_plus: f64) -> Self {
        Self {
            r_minus,
            r_plus,
            epr_enabled: true,
            ..Self::classical()
        }
    }

    pub fn with_gains(mut self, g_x: f64, g_p: f64) -> Self {
        self.g_x = g_x;
        self.g_p = g_p;
        self
    }

    /// Per-channel squeezed factors (values of e^{-2r} form), overriding
    /// `r_minus` on each leg.
    pub fn with_legs(mut self, x_leg: f64, p_leg: f64) -> Self {
        self.x_leg = Some(x_leg);
        self.p_leg = Some(p_leg);
        self
    }

    pub fn with_input_visibility(mut self, visibility: f64) -> Self {
        self.input_visibility = visibility;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("g_x", self.g_x), ("g_p", self.g_p)] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} must be finite")));
            }
        }
        if !(self.input_visibility.is_finite()
            && self.input_visibility > 0.0
            && self.input_visibility <= 1.0)
        {
            return Err(Error::InvalidArgument(format!(
                "input visibility must lie in (0, 1], got {}",
                self.input_visibility
            )));
        }
        if !(self.r_minus.is_finite() && self.r_minus >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "r_minus must be >= 0, got {}",
                self.r_minus
            )));
        }
        if !(self.r_plus.is_finite() && self.r_plus >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "r_plus must be >= 0, got {}",
                self.r_plus
            )));
        }
        for (name, leg) in [("x_leg", self.x_leg), ("p_leg", self.p_leg)] {
            if let Some(v) = leg {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "{name} must be a positive variance factor, got {v}"
                    )));
                }
            }
        }
        // Each resource squeezer must itself be a physical state: the product
        // of its squeezed and antisqueezed factors may not drop below one.
        let (e_x, e_p, a) = self.effective_legs();
        if e_x * a < 1.0 - 1e-9 || e_p * a < 1.0 - 1e-9 {
            return Err(Error::UnphysicalParameter(format!(
                "resource violates uncertainty: squeezed factors ({e_x:.6}, {e_p:.6}) \
                 with antisqueezed factor {a:.6}"
            )));
        }
        Ok(())
    }

    /// Effective resource factors (e_x, e_p, a): the squeezed variance
    /// factors on the x and p channels and the shared antisqueezed factor.
    /// Classical configuration returns (1, 1, 1).
    pub fn effective_legs(&self) -> (f64, f64, f64) {
        if !self.epr_enabled {
            return (1.0, 1.0, 1.0);
        }
        let e = (-2.0 * self.r_minus).exp();
        (
            self.x_leg.unwrap_or(e),
            self.p_leg.unwrap_or(e),
            (2.0 * self.r_plus).exp(),
        )
    }

    /// The two-mode resource state this configuration describes.
    pub fn resource_state(&self) -> Result<GaussianState> {
        self.validate()?;
        let (e_x, e_p, a) = self.effective_legs();
        entangled_pair(e_x / 4.0, e_p / 4.0, a / 4.0)
    }
}

/// Two-mode entangled resource from two orthogonally squeezed vacua on a
/// balanced beamsplitter. Pure symmetric squeezers give the canonical pair
/// with Var(x1 - x2) = Var(p1 + p2) = e^{-2 r_minus} / 2.
pub fn make_epr(r_minus: f64, r_plus: f64) -> Result<GaussianState> {
    if !(r_minus.is_finite() && r_minus >= 0.0 && r_plus.is_finite() && r_plus >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "squeezing parameters must be >= 0, got ({r_minus}, {r_plus})"
        )));
    }
    TeleportConfig::quantum(r_minus, r_plus).resource_state()
}

/// Builds the resource from raw variances: mode 0 squeezed along p (variance
/// `p_sq_var`), mode 1 along x (variance `x_sq_var`), both antisqueezed to
/// `anti_var`, then mixed on a balanced splitter. With this orientation the
/// squeezed combinations are exactly x1 - x2 and p1 + p2.
fn entangled_pair(x_sq_var: f64, p_sq_var: f64, anti_var: f64) -> Result<GaussianState> {
    let mode_a = state_from_variances(anti_var, p_sq_var)?;
    let mode_b = state_from_variances(x_sq_var, anti_var)?;
    let bs = make_symplectic(2, OpticalElement::Beamsplitter { transmittance: 0.5 }, &[0, 1])?;
    apply_symplectic(&mode_a.tensor(&mode_b), &bs)
}

/// Diagonal single-mode state with the given variances, built through the
/// squeezed-thermal parametrization (tau = 4*sqrt(sx*sp), r = ln(sp/sx)/4).
fn state_from_variances(sigma_x: f64, sigma_p: f64) -> Result<GaussianState> {
    if !(sigma_x > 0.0 && sigma_p > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "variances must be positive, got ({sigma_x}, {sigma_p})"
        )));
    }
    squeezed_thermal_state(
        0.25 * (sigma_p / sigma_x).ln(),
        4.0 * (sigma_x * sigma_p).sqrt(),
        0.0,
        Complex64::new(0.0, 0.0),
    )
}

/// Normalized inseparability sum Var(x1 - x2) + Var(p1 + p2); the normalizer
/// 2 * 2 * (1/4) equals one, so two independent vacua give exactly 1 and any
/// value below 1 certifies entanglement.
pub fn duan_sum(state: &GaussianState) -> Result<f64> {
    if state.n_modes() != 2 {
        return Err(Error::InvalidArgument(format!(
            "inseparability sum needs exactly 2 modes, got {}",
            state.n_modes()
        )));
    }
    let c = state.cov();
    let vx = c[(0, 0)] + c[(2, 2)] - 2.0 * c[(0, 2)];
    let vp = c[(1, 1)] + c[(3, 3)] + 2.0 * c[(1, 3)];
    Ok(vx + vp)
}

/// Closed-form output variances of the channel:
/// sigma_out = g^2 sigma_in + e_sq (1+g)^2 / 8 + a (1-g)^2 / 8 per quadrature,
/// with e_sq the channel's squeezed factor and a the antisqueezed factor.
pub fn teleport_variances_analytic(input: &QuadPair, config: &TeleportConfig) -> Result<QuadPair> {
    config.validate()?;
    let (e_x, e_p, a) = config.effective_legs();
    let (gx, gp) = (config.g_x, config.g_p);
    let sx = gx * gx * input.sigma_x()
        + e_x * (1.0 + gx).powi(2) / 8.0
        + a * (1.0 - gx).powi(2) / 8.0;
    let sp = gp * gp * input.sigma_p()
        + e_p * (1.0 + gp).powi(2) / 8.0
        + a * (1.0 - gp).powi(2) / 8.0;
    QuadPair::new(sx, sp)
}

/// Full network form of the channel. The sender's balanced splitter mixes the
/// input with resource mode 1; the x outcome is read at the difference port
/// and the p outcome at the sum port, and the receiver displaces resource
/// mode 2 by sqrt(2) times the gain-scaled outcomes. Folding the feedforward
/// into the Heisenberg picture gives the affine output
///   x_out = g_x x_in + (x_2 - g_x x_1),
///   p_out = g_p p_in + (p_2 + g_p p_1),
/// whose statistics this function returns as a single-mode state.
pub fn teleport_network(input: &GaussianState, config: &TeleportConfig) -> Result<GaussianState> {
    if input.n_modes() != 1 {
        return Err(Error::InvalidArgument(format!(
            "input must be a single mode, got {}",
            input.n_modes()
        )));
    }
    let resource = if config.epr_enabled {
        config.resource_state()?
    } else {
        config.validate()?;
        vacuum_state(2)?
    };
    let joint = input.tensor(&resource);
    let bs = make_symplectic(3, OpticalElement::Beamsplitter { transmittance: 0.5 }, &[0, 1])?;
    let mixed = apply_symplectic(&joint, &bs)?;
    // Coordinates after the splitter: (x_sum, p_sum, x_diff, p_diff, x_2, p_2).
    let mut out = DMatrix::zeros(2, 6);
    out[(0, 4)] = 1.0;
    out[(0, 2)] = config.g_x * SQRT_2;
    out[(1, 5)] = 1.0;
    out[(1, 1)] = config.g_p * SQRT_2;
    GaussianState::new(&out * mixed.mean(), &out * mixed.cov() * out.transpose())
}

/// Output-noise ordering between a squeezed-input run and a vacuum-input run:
/// (squeezed x stays below vacuum x, squeezed p exceeds vacuum p).
pub fn check_variance_ordering(vac_out: &QuadPair, sq_out: &QuadPair) -> (bool, bool) {
    (
        sq_out.sigma_x() < vac_out.sigma_x(),
        sq_out.sigma_p() > vac_out.sigma_p(),
    )
}
