//! End-to-end acceptance gate: every reference number the library is
//! expected to reproduce, one test per criterion. Run with `--nocapture` to
//! see the per-criterion report lines.

use cvteleport_core::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(number: u32, what: &str, ok: bool, detail: &str) {
    println!(
        "criterion {number:02} {what}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number:02} {what} failed: {detail}");
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

#[test]
fn criterion_01_classical_vacuum_run() {
    let out = teleport_variances_analytic(
        &QuadPair::new(0.25, 0.25).unwrap(),
        &TeleportConfig::classical(),
    )
    .unwrap();
    let (x_db, p_db) = (out.sigma_x_db(), out.sigma_p_db());
    let ok = (x_db - 4.77).abs() <= 0.01
        && (p_db - 4.77).abs() <= 0.01
        && (x_db - 4.86).abs() <= 0.20
        && (p_db - 4.92).abs() <= 0.20;
    report(
        1,
        "classical vacuum run outputs",
        ok,
        &format!("x {x_db:.4} dB, p {p_db:.4} dB vs 4.77 exact, 4.86/4.92 measured"),
    );
}

#[test]
fn criterion_02_vacuum_input_fidelity() {
    let f = fidelity_vacuum(&QuadPair::from_db(2.90, 3.01).unwrap())
        .unwrap()
        .value;
    let ok = (f - 0.67).abs() <= 0.02 && (f - 0.672).abs() <= 0.001;
    report(2, "vacuum-input fidelity", ok, &format!("{f:.4} vs 0.67 +- 0.02"));
}

#[test]
fn criterion_03_quantum_squeezed_fidelity() {
    let out = extract_params(&QuadPair::from_db(2.03, 8.18).unwrap()).unwrap();
    let corrected = extract_params(&QuadPair::from_db(-2.92, 7.68).unwrap()).unwrap();
    let raw = extract_params(&QuadPair::from_db(-2.66, 7.45).unwrap()).unwrap();
    let f_corr = fidelity_squeezed_thermal(&corrected, &out).value;
    let f_raw = fidelity_squeezed_thermal(&raw, &out).value;
    let ok = (f_corr - 0.845).abs() <= 0.001
        && (f_raw - 0.854).abs() <= 0.001
        && (f_corr - 0.85).abs() <= 0.05
        && (f_raw - 0.85).abs() <= 0.05;
    report(
        3,
        "entangled-run squeezed-state fidelity",
        ok,
        &format!("corrected {f_corr:.4}, uncorrected {f_raw:.4} vs 0.85 +- 0.05"),
    );
}

#[test]
fn criterion_04_classical_squeezed_fidelity() {
    let out = extract_params(&QuadPair::from_db(4.12, 8.92).unwrap()).unwrap();
    let corrected = extract_params(&QuadPair::from_db(-2.92, 7.68).unwrap()).unwrap();
    let raw = extract_params(&QuadPair::from_db(-2.66, 7.45).unwrap()).unwrap();
    let f_corr = fidelity_squeezed_thermal(&corrected, &out).value;
    let f_raw = fidelity_squeezed_thermal(&raw, &out).value;
    // Exact recomputed values are 0.7167 / 0.7268; the reference bar 0.73 +-
    // 0.04 is the binding check.
    let ok = (f_corr - 0.719).abs() <= 0.01
        && (f_raw - 0.727).abs() <= 0.01
        && (f_corr - 0.73).abs() <= 0.04
        && (f_raw - 0.73).abs() <= 0.04;
    report(
        4,
        "classical-run squeezed-state fidelity",
        ok,
        &format!("corrected {f_corr:.4}, uncorrected {f_raw:.4} vs 0.73 +- 0.04"),
    );
}

/// Channel squeezed factors inferred from the vacuum-run outputs by
/// inverting the output-noise formula at unity gain.
fn derived_legs() -> (f64, f64) {
    (
        2.0 * (from_db(2.90) - 0.25),
        2.0 * (from_db(3.01) - 0.25),
    )
}

#[test]
fn criterion_05_expected_quantum_outputs() {
    let (e_x, e_p) = derived_legs();
    let config = TeleportConfig::quantum(0.0, 0.3776).with_legs(e_x, e_p);
    let input = QuadPair::from_db(-2.92, 7.68).unwrap();
    let out = teleport_variances_analytic(&input, &config).unwrap();
    let (x_db, p_db) = (out.sigma_x_db(), out.sigma_p_db());
    let ok = (x_db - 1.65).abs() <= 0.01
        && (p_db - 8.37).abs() <= 0.01
        && (x_db - 1.71).abs() <= 0.58
        && (p_db - 8.24).abs() <= 0.31;
    report(
        5,
        "expected entangled-run outputs from derived resource",
        ok,
        &format!("x {x_db:.4} dB, p {p_db:.4} dB vs 1.71 +- 0.58 / 8.24 +- 0.31"),
    );
}

#[test]
fn criterion_06_variance_ordering() {
    let mut ok = true;
    let mut notes = Vec::new();
    // Measured dB sets: entangled runs and classical runs.
    for (label, vac, sq) in [
        ("measured entangled", (2.90, 3.01), (2.03, 8.18)),
        ("measured classical", (4.86, 4.92), (4.12, 8.92)),
    ] {
        let pair = check_variance_ordering(
            &QuadPair::from_db(vac.0, vac.1).unwrap(),
            &QuadPair::from_db(sq.0, sq.1).unwrap(),
        );
        ok &= pair == (true, true);
        notes.push(format!("{label} {pair:?}"));
    }
    // Analytic runs with the same input pair.
    let input_vac = QuadPair::new(0.25, 0.25).unwrap();
    let input_sq = QuadPair::from_db(-2.92, 7.68).unwrap();
    let (e_x, e_p) = derived_legs();
    for (label, config) in [
        ("analytic classical", TeleportConfig::classical()),
        (
            "analytic entangled",
            TeleportConfig::quantum(0.0, 0.3776).with_legs(e_x, e_p),
        ),
    ] {
        let vac_out = teleport_variances_analytic(&input_vac, &config).unwrap();
        let sq_out = teleport_variances_analytic(&input_sq, &config).unwrap();
        let pair = check_variance_ordering(&vac_out, &sq_out);
        ok &= pair == (true, true);
        notes.push(format!("{label} {pair:?}"));
    }
    report(6, "output-noise ordering", ok, &notes.join(", "));
}

#[test]
fn criterion_07_inseparability_sum() {
    let r = 0.5 * (1.0_f64 / 0.47).ln();
    let entangled = duan_sum(&make_epr(r, r).unwrap()).unwrap();
    let vacua = duan_sum(&vacuum_state(2).unwrap()).unwrap();
    let ok = (entangled - 0.470).abs() <= 0.001 && vacua == 1.0;
    report(
        7,
        "inseparability sum",
        ok,
        &format!("entangled {entangled:.6} vs 0.470 +- 0.001, vacua {vacua} (exact)"),
    );
}

#[test]
fn criterion_08_sweep_anchors() {
    let anti = classical_fidelity_sweep(SweepAxis::AntisqueezeDb, 2.39, (0.0, 10.0), 11).unwrap();
    let tau = classical_fidelity_sweep(SweepAxis::TauDb, 5.06, (0.0, 40.0), 11).unwrap();
    let f_anti0 = anti[0].1;
    let f_tau0 = tau[0].1;
    let f_tau40 = tau.last().unwrap().1;
    let ok = (f_anti0 - 0.841).abs() <= 0.005
        && (f_tau0 - 0.426).abs() <= 0.005
        && f_tau40 > 0.99;
    report(
        8,
        "fidelity sweep anchors",
        ok,
        &format!("antisqueeze 0 dB {f_anti0:.4}, mixedness 0 dB {f_tau0:.4}, 40 dB {f_tau40:.6}"),
    );
}

/// Literal inverse-temperature form of the squeezed-thermal overlap,
/// transcribed independently of the library implementation.
fn beta_form(a: &SqueezedThermalParams, b: &SqueezedThermalParams) -> f64 {
    let (ba, bb) = (a.beta(), b.beta());
    let dr = a.r() - b.r();
    let y = dr.cosh().powi(2) * (0.5 * (ba + bb)).cosh().powi(2)
        - dr.sinh().powi(2) * (0.5 * (ba - bb)).cosh().powi(2);
    2.0 * (0.5 * ba).sinh() * (0.5 * bb).sinh() / (y.sqrt() - 1.0)
}

#[test]
fn criterion_09_route_equivalences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00ac_ce97);
    let mut worst_network = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let mut worst_beta = 0.0f64;
    for _ in 0..1000 {
        // Network pipeline against the closed form.
        let r_minus: f64 = rng.random_range(0.0..2.0);
        let config = TeleportConfig::quantum(r_minus, r_minus + rng.random_range(0.0..1.0))
            .with_gains(rng.random_range(0.0..1.5), rng.random_range(0.0..1.5));
        let state = squeezed_thermal_state(
            rng.random_range(-1.5..1.5),
            rng.random_range(1.0..5.0),
            0.0,
            zero(),
        )
        .unwrap();
        let analytic =
            teleport_variances_analytic(&state.mode_variances(0).unwrap(), &config).unwrap();
        let net = teleport_network(&state, &config).unwrap();
        worst_network = worst_network
            .max((net.cov()[(0, 0)] - analytic.sigma_x()).abs())
            .max((net.cov()[(1, 1)] - analytic.sigma_p()).abs());

        // General overlap oracle against the closed form on diagonal pairs.
        let pa = SqueezedThermalParams::new(
            rng.random_range(-1.5..1.5),
            rng.random_range(1.0..6.0),
        )
        .unwrap();
        let pb = SqueezedThermalParams::new(
            rng.random_range(-1.5..1.5),
            rng.random_range(1.0..6.0),
        )
        .unwrap();
        let sa = squeezed_thermal_state(pa.r(), pa.tau(), 0.0, zero()).unwrap();
        let sb = squeezed_thermal_state(pb.r(), pb.tau(), 0.0, zero()).unwrap();
        let closed = fidelity_squeezed_thermal(&pa, &pb).value;
        let oracle = fidelity_gaussian_oracle(&sa, &sb).unwrap().value;
        worst_oracle = worst_oracle.max((oracle - closed).abs());

        // tau-form against the literal inverse-temperature form.
        let qa = SqueezedThermalParams::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(1.001..20.0),
        )
        .unwrap();
        let qb = SqueezedThermalParams::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(1.001..20.0),
        )
        .unwrap();
        worst_beta = worst_beta
            .max((fidelity_squeezed_thermal(&qa, &qb).value - beta_form(&qa, &qb)).abs());
    }
    let ok = worst_network <= 1e-10 && worst_oracle <= 1e-10 && worst_beta <= 1e-9;
    report(
        9,
        "independent-route equivalences",
        ok,
        &format!(
            "network |d| {worst_network:.2e} <= 1e-10, oracle |d| {worst_oracle:.2e} <= 1e-10, \
             form |d| {worst_beta:.2e} <= 1e-9"
        ),
    );
}

#[test]
fn criterion_10_monte_carlo_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a11);
    let n = 100_000;
    let mut worst_pull = 0.0f64;
    for k in 0..50 {
        let r_minus: f64 = rng.random_range(0.0..1.5);
        let config = TeleportConfig::quantum(r_minus, r_minus + rng.random_range(0.0..0.8))
            .with_gains(rng.random_range(0.2..1.4), rng.random_range(0.2..1.4));
        let input = squeezed_thermal_state(
            rng.random_range(-1.0..1.0),
            rng.random_range(1.0..4.0),
            0.0,
            zero(),
        )
        .unwrap();
        let expect =
            teleport_variances_analytic(&input.mode_variances(0).unwrap(), &config).unwrap();
        let est = estimate_variances(&run_shots(&input, &config, n, 0x0b5e + k).unwrap()).unwrap();
        worst_pull = worst_pull
            .max((est.var_x - expect.sigma_x()).abs() / est.se_x)
            .max((est.var_p - expect.sigma_p()).abs() / est.se_p);
    }
    let within_5se = worst_pull <= 5.0;

    // Gain recovery from a large displacement.
    let alpha = Complex64::new(50.0, 50.0);
    let displaced = displace(&vacuum_state(1).unwrap(), 0, alpha).unwrap();
    let mut gains_ok = true;
    for (g_x, g_p, seed) in [(1.0, 1.0, 7001u64), (0.98, 0.98, 7002), (0.7, 1.2, 7003)] {
        let config = TeleportConfig::quantum(0.3776, 0.3776).with_gains(g_x, g_p);
        let records = run_shots(&displaced, &config, n, seed).unwrap();
        let (gx_hat, gp_hat) = estimate_gain(&records, alpha).unwrap();
        gains_ok &= (gx_hat - g_x).abs() <= 0.01 && (gp_hat - g_p).abs() <= 0.01;
    }

    // Bit-exact reproducibility at a fixed seed.
    let probe = squeezed_thermal_state(0.4, 1.2, 0.0, zero()).unwrap();
    let config = TeleportConfig::quantum(0.5, 0.9);
    let reproducible = run_shots(&probe, &config, 10_000, 42).unwrap()
        == run_shots(&probe, &config, 10_000, 42).unwrap();

    let ok = within_5se && gains_ok && reproducible;
    report(
        10,
        "sampled channel statistics",
        ok,
        &format!(
            "worst variance pull {worst_pull:.2} se (<= 5), gain recovery {gains_ok}, \
             bit-identical rerun {reproducible}"
        ),
    );
}

#[test]
fn criterion_11_visibility_correction() {
    let x_db = to_db(visibility_correct(from_db(-2.66), 0.968).unwrap()).unwrap();
    let p_db = to_db(visibility_correct(from_db(7.45), 0.968).unwrap()).unwrap();
    let ok = (x_db - -2.92).abs() <= 0.02 && (p_db - 7.68).abs() <= 0.02;
    report(
        11,
        "efficiency-corrected input inference",
        ok,
        &format!("x {x_db:.4} dB vs -2.92, p {p_db:.4} dB vs 7.68"),
    );
}
