//! The experiment runners.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use onticlab_core::hidden_model::{
    prepare, project_to_quantum, reconstruct, sharpen, transition_probability, HiddenSpace,
    Preparation, SmearProfile,
};
use onticlab_core::ontic_frame::{
    born_integral, frozen_response_test, ks_distribution, ks_response_cell_average, KsModel,
    OnticGrid, ResponseSampling,
};
use onticlab_core::locality::{
    joint_detection_epistemic, joint_detection_ontic, quantum_joint_prediction, DetectionScenario,
    OntAssignment, Prob,
};
use onticlab_core::qstate::{
    energy_variance, inner_product, EvolutionParams, HermitianOperator, StateVector,
};

use crate::config::{ConfigError, Experiment, ExperimentConfig};
use crate::report::{fmt_f64, ExperimentReport};

/// Runner failure, split by exit code: configuration problems exit 1,
/// numerical failures exit 2.
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Numerical(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<onticlab_core::Error> for RunError {
    fn from(e: onticlab_core::Error) -> Self {
        RunError::Numerical(e.to_string())
    }
}

/// Qubit state drawn uniformly on the Bloch sphere.
pub fn random_qubit(rng: &mut ChaCha8Rng) -> StateVector {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    StateVector::from_bloch(z.acos(), phi)
}

/// Haar-like random state of the given dimension (normalized Gaussian
/// amplitudes).
pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(
                    rand_distr_normal(rng),
                    rand_distr_normal(rng),
                )
            })
            .collect();
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}

// Box-Muller; avoids pulling in rand_distr for a single distribution.
fn rand_distr_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}

fn plus_state() -> StateVector {
    let r = 1.0 / 2.0f64.sqrt();
    StateVector::new(vec![Complex64::new(r, 0.0), Complex64::new(r, 0.0)]).unwrap()
}

/// Dispatch to the named experiment.
pub fn run(experiment: Experiment, cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    match experiment {
        Experiment::BornCheck => born_check(cfg),
        Experiment::Theorem1 => theorem1(cfg),
        Experiment::HiddenRoundtrip => hidden_roundtrip(cfg),
        Experiment::Theorem2 => theorem2(cfg),
        Experiment::SharpenSweep => sharpen_sweep(cfg),
    }
}

/// Number of state pairs checked by `born-check`.
pub const BORN_CHECK_PAIRS: usize = 50;

fn born_check(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let grid = OnticGrid::sphere(cfg.grid_theta, cfg.grid_phi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = ExperimentReport::new(
        "born-check",
        cfg.echo(Experiment::BornCheck),
        vec!["pair_id", "overlap_exact", "born_integral", "abs_error"],
    );
    for pair_id in 0..BORN_CHECK_PAIRS {
        let psi = random_qubit(&mut rng);
        let phi = random_qubit(&mut rng);
        let mu = ks_distribution(&psi, &grid)?;
        let xi = ks_response_cell_average(&phi, &grid)?;
        let integral = born_integral(&xi, &mu)?;
        let exact = inner_product(&phi, &psi)?.norm_sqr();
        rep.push_row(vec![
            pair_id.to_string(),
            fmt_f64(exact),
            fmt_f64(integral),
            fmt_f64((integral - exact).abs()),
        ]);
    }
    Ok(rep)
}

fn theorem1(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let grid = OnticGrid::sphere(cfg.grid_theta, cfg.grid_phi)?;
    let model = KsModel::new(grid, ResponseSampling::Midpoint);
    let psi = plus_state();
    let h = HermitianOperator::from_real_diagonal(&[1.0, -1.0]);
    let var = energy_variance(&psi, &h)?;

    let mut rep = ExperimentReport::new(
        "theorem1",
        cfg.echo(Experiment::Theorem1),
        vec![
            "dt",
            "delta_H_sq",
            "frozen_integral",
            "updated_integral",
            "born_value",
            "deficit",
            "deficit_over_dt2",
        ],
    );
    for dt in [cfg.dt, cfg.dt / 10.0, cfg.dt / 100.0] {
        let params =
            EvolutionParams::new(cfg.hbar, dt).map_err(|e| RunError::Numerical(e.to_string()))?;
        let r = frozen_response_test(&psi, &h, &params, &model)?;
        rep.push_row(vec![
            fmt_f64(dt),
            fmt_f64(var),
            fmt_f64(r.frozen_integral),
            fmt_f64(r.updated_integral),
            fmt_f64(r.born_value),
            fmt_f64(r.deficit),
            fmt_f64(r.deficit / (dt * dt)),
        ]);
    }
    Ok(rep)
}

/// Number of state pairs checked by `hidden-roundtrip`.
pub const HIDDEN_ROUNDTRIP_PAIRS: usize = 100;

fn hidden_roundtrip(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let space = HiddenSpace::new(cfg.qdim, cfg.smear_m)?;
    let profile = SmearProfile::uniform(cfg.smear_m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = ExperimentReport::new(
        "hidden-roundtrip",
        cfg.echo(Experiment::HiddenRoundtrip),
        vec!["pair_id", "qm_overlap_sq", "eq10_value", "abs_error"],
    );
    for pair_id in 0..HIDDEN_ROUNDTRIP_PAIRS {
        let psi = random_state(&mut rng, cfg.qdim);
        let phi = random_state(&mut rng, cfg.qdim);
        let a_psi = prepare(&Preparation::new("psi", psi.clone(), profile.clone()), &space)?;
        let a_phi = prepare(&Preparation::new("phi", phi.clone(), profile.clone()), &space)?;
        // round trip through the embedding isometry must be lossless
        let back = project_to_quantum(&reconstruct(&a_psi)?, &profile, &space)?;
        let fidelity = inner_product(&back, &psi)?.norm();
        if (fidelity - 1.0).abs() > 1e-10 {
            return Err(RunError::Numerical(format!(
                "round-trip fidelity {fidelity} for pair {pair_id}"
            )));
        }
        let eq10 = transition_probability(&a_phi, &a_psi)?;
        let qm = inner_product(&phi, &psi)?.norm_sqr();
        rep.push_row(vec![
            pair_id.to_string(),
            fmt_f64(qm),
            fmt_f64(eq10),
            fmt_f64((eq10 - qm).abs()),
        ]);
    }
    Ok(rep)
}

fn theorem2(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let mut rep = ExperimentReport::new(
        "theorem2",
        cfg.echo(Experiment::Theorem2),
        vec!["mode", "joint_prob", "quantum_pred", "residual"],
    );
    let prob_str = |p: Prob| fmt_f64(*p.numer() as f64 / *p.denom() as f64);

    let ontic = DetectionScenario::balanced(OntAssignment::PsiComplete);
    let joint = joint_detection_ontic(&ontic)?;
    let pred = quantum_joint_prediction(&ontic);
    rep.push_row(vec![
        "psi_complete".into(),
        prob_str(joint),
        prob_str(pred),
        prob_str(joint - pred),
    ]);

    let assignment = OntAssignment::epistemic(BTreeSet::from([0]), BTreeSet::from([1]))?;
    let epistemic = DetectionScenario::balanced(assignment);
    let joint = joint_detection_epistemic(&epistemic)?;
    let pred = quantum_joint_prediction(&epistemic);
    rep.push_row(vec![
        "epistemic".into(),
        prob_str(joint),
        prob_str(pred),
        prob_str(joint - pred),
    ]);
    Ok(rep)
}

fn sharpen_sweep(cfg: &ExperimentConfig) -> Result<ExperimentReport, RunError> {
    let mut rep = ExperimentReport::new(
        "sharpen-sweep",
        cfg.echo(Experiment::SharpenSweep),
        vec!["m", "deviation"],
    );
    let target = StateVector::basis(cfg.qdim, 0).map_err(|e| RunError::Numerical(e.to_string()))?;
    for m in 1..=cfg.smear_m {
        let space = HiddenSpace::new(cfg.qdim, m)?;
        let prep = Preparation::new("P", target.clone(), SmearProfile::uniform(m)?);
        let r = sharpen(&space, &prep)?;
        rep.push_row(vec![m.to_string(), fmt_f64(r.trace_distance_to_complete)]);
    }
    Ok(rep)
}
