//! Shot-level sampling of Gaussian states and of the teleportation channel.
//!
//! Every sample is drawn from a counter-based generator keyed by (seed, shot
//! index), so results are bit-identical across runs and across thread counts;
//! parallelism only changes who computes which shot.

use nalgebra::{Cholesky, DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{make_symplectic, psd_sqrt, vacuum_state, GaussianState, OpticalElement, QuadPair};
use crate::teleport::TeleportConfig;

/// One teleportation shot: the sender's two homodyne outcomes and the
/// receiver's output quadratures after feedforward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotRecord {
    pub alice_x: f64,
    pub alice_p: f64,
    pub bob_x: f64,
    pub bob_p: f64,
}

/// Sample variances of the output quadratures with their standard errors
/// (Gaussian theory: se = variance * sqrt(2/(n-1))).
///
/// The raw fields admit degenerate data (constant records give variance 0);
/// [`VarianceEstimate::pair`] converts to a checked [`QuadPair`] when the
/// estimate is to be fed back into the analytic machinery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceEstimate {
    pub var_x: f64,
    pub var_p: f64,
    pub se_x: f64,
    pub se_p: f64,
    pub shots: usize,
}

impl VarianceEstimate {
    pub fn pair(&self) -> Result<QuadPair> {
        QuadPair::new(self.var_x, self.var_p)
    }
}

/// Generator for one shot: one keystream per shot index under a shared key.
fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// A factor L with L L^T = cov: the Cholesky factor when the covariance is
/// strictly positive definite, else the symmetric square root.
fn sampling_factor(cov: &DMatrix<f64>) -> DMatrix<f64> {
    Cholesky::new(cov.clone())
        .map(|c| c.l())
        .unwrap_or_else(|| psd_sqrt(cov))
}

fn standard_normals(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| rng.sample(StandardNormal))
}

/// Draws `n` phase-space samples of a state. Row i of the result is shot i's
/// quadrature vector (x_1, p_1, ..., x_m, p_m).
pub fn sample_state(state: &GaussianState, n: usize, seed: u64) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let dim = 2 * state.n_modes();
    let factor = sampling_factor(state.cov());
    let mut data = vec![0.0; n * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
        let mut rng = shot_rng(seed, i as u64);
        let v = state.mean() + &factor * standard_normals(&mut rng, dim);
        row.copy_from_slice(v.as_slice());
    });
    Ok(DMatrix::from_row_slice(n, dim, &data))
}

/// Simulates `n` shots of the teleportation channel on a single-mode input.
///
/// Each shot draws the joint (input, resource) vector, mixes the input with
/// resource mode 1 on the balanced splitter, reads x at the difference port
/// and p at the sum port, and displaces resource mode 2 by sqrt(2) times the
/// gain-scaled outcomes, mirroring the affine network map.
pub fn run_shots(
    input: &GaussianState,
    config: &TeleportConfig,
    n: usize,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    if input.n_modes() != 1 {
        return Err(Error::InvalidArgument(format!(
            "input must be a single mode, got {}",
            input.n_modes()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one shot".into()));
    }
    let resource = if config.epr_enabled {
        config.resource_state()?
    } else {
        config.validate()?;
        vacuum_state(2)?
    };
    let joint = input.tensor(&resource);
    let bs = make_symplectic(3, OpticalElement::Beamsplitter { transmittance: 0.5 }, &[0, 1])?;
    // Shot vector after the splitter: w = A mu + (A L) z with z standard
    // normal; coordinates (x_sum, p_sum, x_diff, p_diff, x_2, p_2).
    let mixed_mean = bs.matrix() * joint.mean();
    let mixed_factor = bs.matrix() * sampling_factor(joint.cov());
    let (g_x, g_p) = (config.g_x, config.g_p);
    let scale = std::f64::consts::SQRT_2;
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = shot_rng(seed, i as u64);
            let w = &mixed_mean + &mixed_factor * standard_normals(&mut rng, 6);
            let (alice_x, alice_p) = (w[2], w[1]);
            ShotRecord {
                alice_x,
                alice_p,
                bob_x: w[4] + g_x * scale * alice_x,
                bob_p: w[5] + g_p * scale * alice_p,
            }
        })
        .collect())
}

/// Unbiased sample variances of the output quadratures.
pub fn estimate_variances(records: &[ShotRecord]) -> Result<VarianceEstimate> {
    let n = records.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "variance estimation needs at least 2 records, got {n}"
        )));
    }
    let nf = n as f64;
    let (sum_x, sum_p) = records
        .iter()
        .fold((0.0, 0.0), |(sx, sp), r| (sx + r.bob_x, sp + r.bob_p));
    let (mean_x, mean_p) = (sum_x / nf, sum_p / nf);
    let (ss_x, ss_p) = records.iter().fold((0.0, 0.0), |(sx, sp), r| {
        (sx + (r.bob_x - mean_x).powi(2), sp + (r.bob_p - mean_p).powi(2))
    });
    let var_x = ss_x / (nf - 1.0);
    let var_p = ss_p / (nf - 1.0);
    let rel = (2.0 / (nf - 1.0)).sqrt();
    Ok(VarianceEstimate {
        var_x,
        var_p,
        se_x: var_x * rel,
        se_p: var_p * rel,
        shots: n,
    })
}

/// Estimates the channel gains from the displacement transfer: the mean
/// output quadratures divided by the input displacement components. The
/// displacement must have nonzero components on both quadratures.
pub fn estimate_gain(records: &[ShotRecord], alpha0: Complex64) -> Result<(f64, f64)> {
    if records.is_empty() {
        return Err(Error::InvalidArgument(
            "gain estimation needs at least 1 record".into(),
        ));
    }
    if alpha0.re == 0.0 || alpha0.im == 0.0 {
        return Err(Error::InvalidArgument(
            "gain estimation needs a displacement with nonzero x and p components".into(),
        ));
    }
    let nf = records.len() as f64;
    let (sum_x, sum_p) = records
        .iter()
        .fold((0.0, 0.0), |(sx, sp), r| (sx + r.bob_x, sp + r.bob_p));
    Ok((sum_x / nf / alpha0.re, sum_p / nf / alpha0.im))
}
