//! Continuous-variable teleportation of Gaussian optical states.
//!
//! The crate provides four layers, each usable on its own:
//!
//! * [`gaussian`]: Gaussian states as (mean, covariance) pairs, symplectic
//!   transforms, displacement, loss, homodyne conditioning, and decibel
//!   conversions at the shot-noise reference (vacuum variance 1/4).
//! * [`teleport`]: the teleportation channel: EPR resource preparation,
//!   the closed-form output-variance map, and an equivalent beamsplitter
//!   network built from `gaussian` primitives.
//! * [`fidelity`]: state-overlap metrics between single-mode Gaussian
//!   states, parameter extraction, and classical-limit fidelity sweeps.
//! * [`montecarlo`]: a shot-level sampling oracle with explicit
//!   measure-and-feedforward, for statistical cross-checks of the
//!   closed-form results.

pub mod error;
pub mod fidelity;
pub mod gaussian;
pub mod montecarlo;
pub mod teleport;

pub use error::{Error, Result};
pub use fidelity::{
    classical_fidelity_sweep, extract_params, fidelity_gaussian_oracle,
    fidelity_squeezed_thermal, fidelity_vacuum, FidelityMethod, FidelityReport,
    SqueezedThermalParams, SweepAxis,
};
pub use gaussian::{
    apply_symplectic, displace, from_db, homodyne_condition, loss_channel, make_symplectic,
    squeezed_thermal_state, symplectic_eigenvalues, to_db, vacuum_state, visibility_correct,
    wigner_value, GaussianState, OpticalElement, QuadPair, Quadrature, SymplecticTransform,
    VACUUM_VARIANCE,
};
pub use montecarlo::{
    estimate_gain, estimate_variances, run_shots, sample_state, ShotRecord, VarianceEstimate,
};
pub use teleport::{
    check_variance_ordering, duan_sum, make_epr, teleport_network, teleport_variances_analytic,
    TeleportConfig,
};
