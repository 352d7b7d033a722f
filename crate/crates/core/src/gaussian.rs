//! Gaussian states of n optical modes and the Gaussian operations acting on them.
//!
//! Conventions, fixed once here and used everywhere else:
//! quadratures are ordered (x1, p1, ..., xn, pn); the vacuum has quadrature
//! variance 1/4 (hbar = 1/2), and decibel values are 10*log10(sigma / 0.25).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Quadrature variance of the vacuum state; the 0 dB reference.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// Relative tolerance for covariance symmetry checks.
const SYMMETRY_TOL: f64 = 1e-12;
/// Absolute slack below the uncertainty bound 1/4 on symplectic eigenvalues.
const PHYSICALITY_TOL: f64 = 1e-9;
/// Absolute tolerance on the symplectic condition S*Omega*S^T = Omega.
const SYMPLECTIC_TOL: f64 = 1e-12;
/// Slack below 1 accepted for the mixedness parameter tau before clamping.
const TAU_TOL: f64 = 1e-12;

/// One of the two field quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    P,
}

/// A pair of single-mode quadrature variances (x first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPair {
    sigma_x: f64,
    sigma_p: f64,
}

impl QuadPair {
    /// Both variances must be finite and strictly positive.
    pub fn new(sigma_x: f64, sigma_p: f64) -> Result<Self> {
        if !(sigma_x.is_finite() && sigma_x > 0.0 && sigma_p.is_finite() && sigma_p > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "variances must be finite and positive, got ({sigma_x}, {sigma_p})"
            )));
        }
        Ok(Self { sigma_x, sigma_p })
    }

    /// Builds the pair from decibel values relative to the vacuum variance.
    pub fn from_db(x_db: f64, p_db: f64) -> Result<Self> {
        if !(x_db.is_finite() && p_db.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "decibel values must be finite, got ({x_db}, {p_db})"
            )));
        }
        Self::new(from_db(x_db), from_db(p_db))
    }

    pub fn sigma_x(&self) -> f64 {
        self.sigma_x
    }

    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }

    pub fn sigma_x_db(&self) -> f64 {
        10.0 * (self.sigma_x / VACUUM_VARIANCE).log10()
    }

    pub fn sigma_p_db(&self) -> f64 {
        10.0 * (self.sigma_p / VACUUM_VARIANCE).log10()
    }

    /// Uncertainty check for a diagonal single-mode covariance:
    /// sigma_x * sigma_p >= 1/16 (up to the physicality slack).
    pub fn is_physical(&self) -> bool {
        self.sigma_x * self.sigma_p >= 1.0 / 16.0 - PHYSICALITY_TOL
    }
}

/// A Gaussian state: mean vector and covariance matrix over 2n quadratures.
///
/// Construction validates symmetry and the uncertainty principle, so every
/// value of this type is a physical state. All operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Validates shape, symmetry (1e-12 relative), and physicality: every
    /// symplectic eigenvalue of `cov` must be >= 1/4 up to a slack that
    /// grows with the covariance magnitude (the bound cannot be certified
    /// below the eigensolver's resolution for very large entries).
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "mean length must be a positive even number, got {dim}"
            )));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::InvalidArgument(format!(
                "covariance must be {dim}x{dim}, got {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        if mean.iter().any(|v| !v.is_finite()) || cov.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "mean and covariance entries must be finite".into(),
            ));
        }
        let scale = cov.amax().max(1.0);
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (cov[(i, j)] - cov[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::UnphysicalState(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let cov = symmetrize(&cov);
        let nu = symplectic_eigenvalues_unchecked(&cov);
        let nu_min = nu[0];
        let slack = PHYSICALITY_TOL + 64.0 * f64::EPSILON * (dim as f64 * scale).powi(2);
        if nu_min < 0.25 - slack {
            return Err(Error::UnphysicalState(format!(
                "uncertainty violation: smallest symplectic eigenvalue {nu_min:.9e} < 1/4"
            )));
        }
        Ok(Self {
            n_modes: dim / 2,
            mean,
            cov,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Mean (x, p) of one mode.
    pub fn mode_mean(&self, mode: usize) -> Result<(f64, f64)> {
        self.check_mode(mode)?;
        Ok((self.mean[2 * mode], self.mean[2 * mode + 1]))
    }

    /// Diagonal (x, p) variances of one mode. Cross-correlations are ignored,
    /// so this is a complete description only for diagonal covariances.
    pub fn mode_variances(&self, mode: usize) -> Result<QuadPair> {
        self.check_mode(mode)?;
        QuadPair::new(self.cov[(2 * mode, 2 * mode)], self.cov[(2 * mode + 1, 2 * mode + 1)])
    }

    /// Product state of `self` followed by `other` (block-diagonal covariance).
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let d1 = 2 * self.n_modes;
        let d2 = 2 * other.n_modes;
        let mut mean = DVector::zeros(d1 + d2);
        mean.rows_mut(0, d1).copy_from(&self.mean);
        mean.rows_mut(d1, d2).copy_from(&other.mean);
        let mut cov = DMatrix::zeros(d1 + d2, d1 + d2);
        cov.view_mut((0, 0), (d1, d1)).copy_from(&self.cov);
        cov.view_mut((d1, d1), (d2, d2)).copy_from(&other.cov);
        GaussianState {
            n_modes: self.n_modes + other.n_modes,
            mean,
            cov,
        }
    }

    /// Reduced state over `modes`, in the given order.
    pub fn marginal(&self, modes: &[usize]) -> Result<GaussianState> {
        if modes.is_empty() {
            return Err(Error::InvalidArgument("marginal needs at least one mode".into()));
        }
        for (k, &m) in modes.iter().enumerate() {
            self.check_mode(m)?;
            if modes[..k].contains(&m) {
                return Err(Error::InvalidArgument(format!("duplicate mode index {m}")));
            }
        }
        let coords: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let mean = DVector::from_fn(coords.len(), |i, _| self.mean[coords[i]]);
        let cov = DMatrix::from_fn(coords.len(), coords.len(), |i, j| {
            self.cov[(coords[i], coords[j])]
        });
        GaussianState::new(mean, cov)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(Error::InvalidArgument(format!(
                "mode index {mode} out of range for {} modes",
                self.n_modes
            )));
        }
        Ok(())
    }
}

/// A linear transform of the quadratures that preserves the commutation
/// relations: S * Omega * S^T = Omega with per-mode blocks [[0,1],[-1,0]].
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticTransform {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || !dim.is_multiple_of(2) || matrix.ncols() != dim {
            return Err(Error::InvalidArgument(format!(
                "transform must be square with even dimension, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("transform entries must be finite".into()));
        }
        let n = dim / 2;
        let omega = symplectic_form(n);
        let residual = (&matrix * &omega * matrix.transpose() - &omega).amax();
        if residual > SYMPLECTIC_TOL {
            return Err(Error::InvalidArgument(format!(
                "matrix is not symplectic: |S Omega S^T - Omega| = {residual:.3e}"
            )));
        }
        Ok(Self { n_modes: n, matrix })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Single- and two-mode passive/active optical elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpticalElement {
    /// Mixes two modes; `transmittance` = 0.5 is the balanced splitter, which
    /// maps (a, b) to ((a+b)/sqrt(2), (a-b)/sqrt(2)) on both quadratures.
    Beamsplitter { transmittance: f64 },
    /// Phase-space rotation of one mode by `angle` radians.
    Rotation { angle: f64 },
    /// Single-mode squeezer: x scaled by e^{-r}, p by e^{+r}.
    Squeezer { r: f64 },
}

/// Embeds `element` acting on `modes` into an `n_modes`-mode transform.
pub fn make_symplectic(
    n_modes: usize,
    element: OpticalElement,
    modes: &[usize],
) -> Result<SymplecticTransform> {
    if n_modes == 0 {
        return Err(Error::InvalidArgument("n_modes must be positive".into()));
    }
    for (k, &m) in modes.iter().enumerate() {
        if m >= n_modes {
            return Err(Error::InvalidArgument(format!(
                "mode index {m} out of range for {n_modes} modes"
            )));
        }
        if modes[..k].contains(&m) {
            return Err(Error::InvalidArgument(format!("duplicate mode index {m}")));
        }
    }
    let arity = match element {
        OpticalElement::Beamsplitter { .. } => 2,
        _ => 1,
    };
    if modes.len() != arity {
        return Err(Error::InvalidArgument(format!(
            "element needs {arity} mode(s), got {}",
            modes.len()
        )));
    }
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    match element {
        OpticalElement::Beamsplitter { transmittance } => {
            if !(transmittance.is_finite() && (0.0..=1.0).contains(&transmittance)) {
                return Err(Error::UnphysicalParameter(format!(
                    "transmittance must lie in [0, 1], got {transmittance}"
                )));
            }
            let (t, r) = (transmittance.sqrt(), (1.0 - transmittance).sqrt());
            let (a, b) = (modes[0], modes[1]);
            for q in 0..2 {
                let (ia, ib) = (2 * a + q, 2 * b + q);
                m[(ia, ia)] = t;
                m[(ia, ib)] = r;
                m[(ib, ia)] = r;
                m[(ib, ib)] = -t;
            }
        }
        OpticalElement::Rotation { angle } => {
            if !angle.is_finite() {
                return Err(Error::InvalidArgument("angle must be finite".into()));
            }
            let (c, s) = (angle.cos(), angle.sin());
            let i = 2 * modes[0];
            m[(i, i)] = c;
            m[(i, i + 1)] = s;
            m[(i + 1, i)] = -s;
            m[(i + 1, i + 1)] = c;
        }
        OpticalElement::Squeezer { r } => {
            if !r.is_finite() {
                return Err(Error::InvalidArgument("squeezing parameter must be finite".into()));
            }
            let i = 2 * modes[0];
            m[(i, i)] = (-r).exp();
            m[(i + 1, i + 1)] = r.exp();
        }
    }
    SymplecticTransform::new(m)
}

/// mean -> S*mean, cov -> S*cov*S^T; symplectic eigenvalues are preserved.
pub fn apply_symplectic(state: &GaussianState, transform: &SymplecticTransform) -> Result<GaussianState> {
    if transform.n_modes() != state.n_modes() {
        return Err(Error::InvalidArgument(format!(
            "transform acts on {} modes but state has {}",
            transform.n_modes(),
            state.n_modes()
        )));
    }
    let s = transform.matrix();
    GaussianState::new(s * state.mean(), s * state.cov() * s.transpose())
}

/// Shifts the mean of one mode by (Re alpha, Im alpha); covariance unchanged.
pub fn displace(state: &GaussianState, mode: usize, alpha: Complex64) -> Result<GaussianState> {
    state.check_mode(mode)?;
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::InvalidArgument("displacement must be finite".into()));
    }
    let mut mean = state.mean.clone();
    mean[2 * mode] += alpha.re;
    mean[2 * mode + 1] += alpha.im;
    Ok(GaussianState {
        n_modes: state.n_modes,
        mean,
        cov: state.cov.clone(),
    })
}

/// Beam-splitter loss on one mode: mixes it with vacuum at transmittance `eta`.
/// The mode block becomes eta*cov + (1-eta)/4*I, cross-correlations scale by
/// sqrt(eta), and the mode mean scales by sqrt(eta).
pub fn loss_channel(state: &GaussianState, mode: usize, eta: f64) -> Result<GaussianState> {
    state.check_mode(mode)?;
    if !(eta.is_finite() && (0.0..=1.0).contains(&eta)) {
        return Err(Error::InvalidArgument(format!(
            "transmittance must lie in [0, 1], got {eta}"
        )));
    }
    let root = eta.sqrt();
    let (ix, ip) = (2 * mode, 2 * mode + 1);
    let mut mean = state.mean.clone();
    mean[ix] *= root;
    mean[ip] *= root;
    let mut cov = state.cov.clone();
    for j in 0..cov.nrows() {
        if j != ix && j != ip {
            for i in [ix, ip] {
                cov[(i, j)] *= root;
                cov[(j, i)] *= root;
            }
        }
    }
    for (a, b) in [(ix, ix), (ix, ip), (ip, ix), (ip, ip)] {
        cov[(a, b)] *= eta;
    }
    cov[(ix, ix)] += (1.0 - eta) * VACUUM_VARIANCE;
    cov[(ip, ip)] += (1.0 - eta) * VACUUM_VARIANCE;
    GaussianState::new(mean, cov)
}

/// Undoes homodyne-efficiency loss on a measured variance: with eta =
/// visibility^2, returns (sigma_obs - (1-eta)/4) / eta. This is the exact
/// inverse of `loss_channel` on a single variance.
pub fn visibility_correct(sigma_obs: f64, visibility: f64) -> Result<f64> {
    if !(sigma_obs.is_finite() && sigma_obs > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "observed variance must be positive, got {sigma_obs}"
        )));
    }
    if !(visibility.is_finite() && visibility > 0.0 && visibility <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "visibility must lie in (0, 1], got {visibility}"
        )));
    }
    let eta = visibility * visibility;
    let corrected = (sigma_obs - (1.0 - eta) * VACUUM_VARIANCE) / eta;
    if corrected <= 0.0 {
        return Err(Error::InconsistentMeasurement(format!(
            "variance {sigma_obs} is below the efficiency floor of visibility {visibility}"
        )));
    }
    Ok(corrected)
}

/// Variance to decibels relative to the vacuum variance.
pub fn to_db(sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "variance must be positive, got {sigma}"
        )));
    }
    Ok(10.0 * (sigma / VACUUM_VARIANCE).log10())
}

/// Decibels relative to the vacuum variance back to a variance.
pub fn from_db(db: f64) -> f64 {
    VACUUM_VARIANCE * 10f64.powf(db / 10.0)
}

/// Phase-space quasi-probability density of a single-mode state at (x, p).
/// For physical Gaussian states this is an ordinary bivariate normal density:
/// non-negative and normalized to 1.
pub fn wigner_value(state: &GaussianState, point: (f64, f64)) -> Result<f64> {
    if state.n_modes() != 1 {
        return Err(Error::Unsupported(
            "phase-space density evaluation is single-mode only".into(),
        ));
    }
    let c = state.cov();
    let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
    let dx = point.0 - state.mean[0];
    let dp = point.1 - state.mean[1];
    let q = (c[(1, 1)] * dx * dx - 2.0 * c[(0, 1)] * dx * dp + c[(0, 0)] * dp * dp) / det;
    Ok((-0.5 * q).exp() / (2.0 * std::f64::consts::PI * det.sqrt()))
}

/// Conditions the state on an ideal homodyne measurement of one quadrature of
/// one mode. Returns the conditional state over the remaining modes and the
/// marginal variance of the measured quadrature. The conditional covariance
/// does not depend on the outcome; the mean is affine in it. A zero-variance
/// measured coordinate is handled by a generalized inverse (no update).
pub fn homodyne_condition(
    state: &GaussianState,
    mode: usize,
    quadrature: Quadrature,
    outcome: f64,
) -> Result<(GaussianState, f64)> {
    if state.n_modes() < 2 {
        return Err(Error::InvalidArgument(
            "conditioning requires at least two modes".into(),
        ));
    }
    state.check_mode(mode)?;
    if !outcome.is_finite() {
        return Err(Error::InvalidArgument("outcome must be finite".into()));
    }
    let j = 2 * mode + usize::from(quadrature == Quadrature::P);
    let keep: Vec<usize> = (0..2 * state.n_modes())
        .filter(|&c| c != 2 * mode && c != 2 * mode + 1)
        .collect();
    let k = keep.len();
    let sigma_jj = state.cov[(j, j)];
    let v = DVector::from_fn(k, |i, _| state.cov[(keep[i], j)]);
    let mut cov = DMatrix::from_fn(k, k, |a, b| state.cov[(keep[a], keep[b])]);
    let mut mean = DVector::from_fn(k, |i, _| state.mean[keep[i]]);
    if sigma_jj > 0.0 {
        cov -= &v * v.transpose() / sigma_jj;
        mean += &v * ((outcome - state.mean[j]) / sigma_jj);
    }
    Ok((GaussianState::new(mean, cov)?, sigma_jj))
}

/// Ground state of `n` modes: zero mean, covariance I/4.
pub fn vacuum_state(n: usize) -> Result<GaussianState> {
    if n == 0 {
        return Err(Error::InvalidArgument("n_modes must be positive".into()));
    }
    Ok(GaussianState {
        n_modes: n,
        mean: DVector::zeros(2 * n),
        cov: DMatrix::identity(2 * n, 2 * n) * VACUUM_VARIANCE,
    })
}

/// Single-mode squeezed thermal state: principal-axis variances
/// e^{-2r}*tau/4 and e^{+2r}*tau/4 with mixedness tau = coth(beta/2) >= 1,
/// principal axes rotated by `theta`, mean (Re alpha0, Im alpha0).
pub fn squeezed_thermal_state(
    r: f64,
    tau: f64,
    theta: f64,
    alpha0: Complex64,
) -> Result<GaussianState> {
    if !(r.is_finite() && tau.is_finite() && theta.is_finite()) {
        return Err(Error::InvalidArgument(
            "state parameters must be finite".into(),
        ));
    }
    if !(alpha0.re.is_finite() && alpha0.im.is_finite()) {
        return Err(Error::InvalidArgument("displacement must be finite".into()));
    }
    if tau < 1.0 - TAU_TOL {
        return Err(Error::UnphysicalParameter(format!(
            "mixedness tau must be >= 1, got {tau}"
        )));
    }
    let tau = tau.max(1.0);
    let sx = (-2.0 * r).exp() * tau / 4.0;
    let sp = (2.0 * r).exp() * tau / 4.0;
    let (c, s) = (theta.cos(), theta.sin());
    let cov = DMatrix::from_row_slice(
        2,
        2,
        &[
            c * c * sx + s * s * sp,
            c * s * (sx - sp),
            c * s * (sx - sp),
            s * s * sx + c * c * sp,
        ],
    );
    let mean = DVector::from_column_slice(&[alpha0.re, alpha0.im]);
    GaussianState::new(mean, cov)
}

/// Symplectic eigenvalues of a covariance matrix, ascending; one per mode.
/// Physical states have every value >= 1/4.
pub fn symplectic_eigenvalues(cov: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = cov.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || cov.ncols() != dim {
        return Err(Error::InvalidArgument(format!(
            "covariance must be square with even dimension, got {}x{}",
            cov.nrows(),
            cov.ncols()
        )));
    }
    if cov.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("entries must be finite".into()));
    }
    let scale = cov.amax().max(1.0);
    for i in 0..dim {
        for j in (i + 1)..dim {
            if (cov[(i, j)] - cov[(j, i)]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::UnphysicalState(format!(
                    "covariance is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(symplectic_eigenvalues_unchecked(&symmetrize(cov)))
}

/// Core computation: the eigenvalues of C = S^{1/2} (Omega^T S Omega) S^{1/2}
/// are the squared symplectic eigenvalues, each doubled; pairs are averaged.
fn symplectic_eigenvalues_unchecked(cov: &DMatrix<f64>) -> Vec<f64> {
    let n = cov.nrows() / 2;
    let omega = symplectic_form(n);
    let half = psd_sqrt(cov);
    let m = &half * (omega.transpose() * cov * &omega) * &half;
    let eig = nalgebra::SymmetricEigen::new(symmetrize(&m));
    let mut lam: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    lam.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    (0..n).map(|i| 0.5 * (lam[2 * i] + lam[2 * i + 1])).collect()
}

/// Symmetric positive-semidefinite square root; negative rounding dust in the
/// eigenvalues is clamped to zero.
pub(crate) fn psd_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let d = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose()
}

fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        o[(2 * k, 2 * k + 1)] = 1.0;
        o[(2 * k + 1, 2 * k)] = -1.0;
    }
    o
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    0.5 * (m + m.transpose())
}
