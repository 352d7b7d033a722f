//! Shared fixtures for the pipeline benchmarks: the reference channel
//! configuration and a representative squeezed input.

use cvteleport_core::{
    squeezed_thermal_state, GaussianState, QuadPair, Result, TeleportConfig,
};
use num_complex::Complex64;

/// Entangled channel at unity gain with the calibrated squeezed legs.
pub fn reference_config() -> TeleportConfig {
    TeleportConfig::quantum(0.3776, 0.3776).with_legs(0.4749223, 0.4999310)
}

/// Squeezed-thermal input at the operating point (r = 0.61, tau = 1.73).
pub fn squeezed_input_pair() -> Result<QuadPair> {
    QuadPair::from_db(-2.92, 7.68)
}

/// The same input as a single-mode state at the origin.
pub fn squeezed_input_state() -> Result<GaussianState> {
    squeezed_thermal_state(0.6102, 1.7298, 0.0, Complex64::new(0.0, 0.0))
}
