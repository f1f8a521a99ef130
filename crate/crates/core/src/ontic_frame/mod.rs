//! Discretized preparation/measurement framework.
//!
//! An [`OnticGrid`] is a quadrature rule over an ontic space Λ: sample
//! points with positive weights summing to the total measure of Λ.
//! Epistemic distributions μ and response functions ξ are tabulated on a
//! grid, and the Born integral is a weighted sum. The framework is generic;
//! the concrete qubit instance on the Bloch sphere lives in [`ks`].

pub mod ks;
pub mod table;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qstate::{self, EvolutionParams, HermitianOperator, StateVector};
use crate::sum::pairwise_map_sum;

pub use ks::{ks_distribution, ks_response, ks_response_cell_average, KsModel, ResponseSampling};
pub use table::{export_model_table, import_model_table};

/// Tolerance on the total grid measure (4π for the unit sphere).
pub const MEASURE_TOL: f64 = 1e-10;

/// Tolerance on the normalization of an epistemic distribution.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// A point of the discretized ontic space; for the qubit instance these are
/// spherical angles of a unit Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn unit_vector(&self) -> [f64; 3] {
        let st = self.theta.sin();
        [st * self.phi.cos(), st * self.phi.sin(), self.theta.cos()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum GridKind {
    /// Midpoint product grid in (theta, phi).
    Product { n_theta: usize, n_phi: usize },
    /// Arbitrary point/weight list, e.g. imported from a table.
    Custom,
}

/// Weighted sample points discretizing the unit sphere.
///
/// The product grid places points at cell midpoints in `(theta, phi)` and
/// weighs each cell with its exact spherical measure
/// `(cos theta_lo - cos theta_hi) * dphi`, so the weights sum to 4π up to
/// rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct OnticGrid {
    kind: GridKind,
    points: Vec<SpherePoint>,
    units: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl OnticGrid {
    /// Product grid with `n_theta * n_phi` cells covering the unit sphere.
    pub fn sphere(n_theta: usize, n_phi: usize) -> Result<Arc<Self>> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidValue(
                "grid resolution must be positive in both directions".into(),
            ));
        }
        let dtheta = std::f64::consts::PI / n_theta as f64;
        let dphi = std::f64::consts::TAU / n_phi as f64;
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for i in 0..n_theta {
            let lo = i as f64 * dtheta;
            let hi = lo + dtheta;
            let w_theta = lo.cos() - hi.cos();
            let theta = lo + dtheta / 2.0;
            for j in 0..n_phi {
                let phi = (j as f64 + 0.5) * dphi;
                points.push(SpherePoint { theta, phi });
                weights.push(w_theta * dphi);
            }
        }
        let grid = Self::assemble(GridKind::Product { n_theta, n_phi }, points, weights)?;
        Ok(Arc::new(grid))
    }

    /// Grid from explicit points and weights (must still cover the sphere).
    pub fn from_points(points: Vec<SpherePoint>, weights: Vec<f64>) -> Result<Arc<Self>> {
        let grid = Self::assemble(GridKind::Custom, points, weights)?;
        Ok(Arc::new(grid))
    }

    fn assemble(kind: GridKind, points: Vec<SpherePoint>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::InvalidValue(format!(
                "points ({}) and weights ({}) must be nonempty and equal in length",
                points.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidValue("all quadrature weights must be positive".into()));
        }
        let total = pairwise_map_sum(weights.len(), |i| weights[i]);
        let full = 4.0 * std::f64::consts::PI;
        if (total - full).abs() > MEASURE_TOL {
            return Err(Error::InvalidValue(format!(
                "grid measure {total} deviates from 4*pi by more than {MEASURE_TOL}"
            )));
        }
        let units = points.iter().map(SpherePoint::unit_vector).collect();
        Ok(Self {
            kind,
            points,
            units,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    /// Cached unit Bloch vectors of the sample points.
    pub fn unit_vectors(&self) -> &[[f64; 3]] {
        &self.units
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Product-grid resolution, if this grid is one.
    pub fn resolution(&self) -> Option<(usize, usize)> {
        match self.kind {
            GridKind::Product { n_theta, n_phi } => Some((n_theta, n_phi)),
            GridKind::Custom => None,
        }
    }

    /// `(theta, phi)` edges of product cell `i` (row-major theta, phi).
    pub(crate) fn cell_edges(&self, i: usize) -> Option<((f64, f64), (f64, f64))> {
        let (n_theta, n_phi) = self.resolution()?;
        let dtheta = std::f64::consts::PI / n_theta as f64;
        let dphi = std::f64::consts::TAU / n_phi as f64;
        let ti = i / n_phi;
        let pj = i % n_phi;
        Some((
            (ti as f64 * dtheta, (ti + 1) as f64 * dtheta),
            (pj as f64 * dphi, (pj + 1) as f64 * dphi),
        ))
    }
}

fn same_grid(a: &Arc<OnticGrid>, b: &Arc<OnticGrid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A nonnegative density μ(ψ|λ) per unit measure, tabulated on a grid.
#[derive(Debug, Clone)]
pub struct EpistemicDistribution {
    values: Vec<f64>,
    grid: Arc<OnticGrid>,
}

impl EpistemicDistribution {
    pub fn new(values: Vec<f64>, grid: Arc<OnticGrid>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::InvalidValue("epistemic density values must be nonnegative".into()));
        }
        Ok(Self { values, grid })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> &Arc<OnticGrid> {
        &self.grid
    }
}

/// A `[0, 1]`-valued response (indicator) function ξ(φ|λ) on a grid.
#[derive(Debug, Clone)]
pub struct ResponseFunction {
    values: Vec<f64>,
    grid: Arc<OnticGrid>,
}

impl ResponseFunction {
    pub fn new(values: Vec<f64>, grid: Arc<OnticGrid>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidValue("response values must lie in [0, 1]".into()));
        }
        Ok(Self { values, grid })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> &Arc<OnticGrid> {
        &self.grid
    }
}

/// Born integral `sum_i w_i xi_i mu_i`, the discretization of
/// `int dlambda xi(phi|lambda) mu(psi|lambda)`.
pub fn born_integral(xi: &ResponseFunction, mu: &EpistemicDistribution) -> Result<f64> {
    if !same_grid(xi.grid(), mu.grid()) {
        return Err(Error::GridMismatch);
    }
    let w = xi.grid().weights();
    let x = xi.values();
    let m = mu.values();
    Ok(pairwise_map_sum(w.len(), |i| w[i] * x[i] * m[i]))
}

/// Total measure of a distribution, `sum_i w_i mu_i`; 1 for a normalized one.
pub fn check_normalization(mu: &EpistemicDistribution) -> f64 {
    let w = mu.grid().weights();
    let m = mu.values();
    pairwise_map_sum(w.len(), |i| w[i] * m[i])
}

/// Grid indices where the density exceeds `threshold`.
pub fn support(mu: &EpistemicDistribution, threshold: f64) -> Result<Vec<usize>> {
    if !(threshold >= 0.0) {
        return Err(Error::InvalidValue(format!(
            "support threshold must be nonnegative, got {threshold}"
        )));
    }
    Ok(mu
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(i, _)| i)
        .collect())
}

/// Intersection of the two supports (threshold 0).
pub fn overlap_region(mu1: &EpistemicDistribution, mu2: &EpistemicDistribution) -> Result<Vec<usize>> {
    if !same_grid(mu1.grid(), mu2.grid()) {
        return Err(Error::GridMismatch);
    }
    Ok(mu1
        .values()
        .iter()
        .zip(mu2.values())
        .enumerate()
        .filter(|(_, (&a, &b))| a > 0.0 && b > 0.0)
        .map(|(i, _)| i)
        .collect())
}

/// An operational model: a grid plus μ and ξ assignments per quantum state.
pub trait OntologicalModel {
    fn grid(&self) -> &Arc<OnticGrid>;
    fn mu_of(&self, psi: &StateVector) -> Result<EpistemicDistribution>;
    fn xi_of(&self, phi: &StateVector) -> Result<ResponseFunction>;
}

/// Outcome of the frozen-response experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenResponseReport {
    /// `int xi(psi(t)) mu(psi(t))` — the response held fixed at time t.
    pub frozen_integral: f64,
    /// `int xi(psi(t+dt)) mu(psi(t))` — the response tracking the evolved state.
    pub updated_integral: f64,
    /// Exact `|<psi(t+dt)|psi(t)>|^2`.
    pub born_value: f64,
    /// `frozen_integral - born_value`.
    pub deficit: f64,
}

/// Evolve `psi` one step and compare the model's frozen and updated response
/// integrals against the exact overlap.
///
/// A model whose response function does not move with the state keeps the
/// integral at its time-t value (≈ 1), while the exact overlap drops by
/// `dt^2 (Delta H)^2 / hbar^2` to leading order; `deficit` is that gap.
pub fn frozen_response_test<M: OntologicalModel + ?Sized>(
    psi: &StateVector,
    h: &HermitianOperator,
    params: &EvolutionParams,
    model: &M,
) -> Result<FrozenResponseReport> {
    let mu = model.mu_of(psi)?;
    let xi_frozen = model.xi_of(psi)?;
    let psi_dt = qstate::evolve(psi, h, params)?;
    let xi_updated = model.xi_of(&psi_dt)?;

    let frozen_integral = born_integral(&xi_frozen, &mu)?;
    let updated_integral = born_integral(&xi_updated, &mu)?;
    let born_value = qstate::inner_product(&psi_dt, psi)?.norm_sqr();
    Ok(FrozenResponseReport {
        frozen_integral,
        updated_integral,
        born_value,
        deficit: frozen_integral - born_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_density(grid: &Arc<OnticGrid>) -> EpistemicDistribution {
        let v = 1.0 / (4.0 * std::f64::consts::PI);
        EpistemicDistribution::new(vec![v; grid.len()], grid.clone()).unwrap()
    }

    #[test]
    fn grid_measure_is_4pi() {
        let grid = OnticGrid::sphere(50, 100).unwrap();
        let total = pairwise_map_sum(grid.len(), |i| grid.weights()[i]);
        assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_degenerate_input() {
        assert!(OnticGrid::sphere(0, 10).is_err());
        assert!(OnticGrid::from_points(vec![], vec![]).is_err());
        let p = SpherePoint { theta: 1.0, phi: 1.0 };
        assert!(OnticGrid::from_points(vec![p], vec![-1.0]).is_err());
        // weights not summing to 4*pi
        assert!(OnticGrid::from_points(vec![p], vec![1.0]).is_err());
    }

    #[test]
    fn normalization_of_uniform_density_is_exact() {
        let grid = OnticGrid::sphere(40, 80).unwrap();
        let mu = uniform_density(&grid);
        assert!((check_normalization(&mu) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_of_zero_density_is_zero() {
        let grid = OnticGrid::sphere(10, 20).unwrap();
        let mu = EpistemicDistribution::new(vec![0.0; grid.len()], grid.clone()).unwrap();
        assert_eq!(check_normalization(&mu), 0.0);
    }

    #[test]
    fn unit_response_reduces_to_normalization() {
        let grid = OnticGrid::sphere(40, 80).unwrap();
        let xi = ResponseFunction::new(vec![1.0; grid.len()], grid.clone()).unwrap();
        let mu = uniform_density(&grid);
        assert!((born_integral(&xi, &mu).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn born_integral_rejects_grid_mismatch() {
        let g1 = OnticGrid::sphere(10, 20).unwrap();
        let g2 = OnticGrid::sphere(12, 20).unwrap();
        let xi = ResponseFunction::new(vec![1.0; g1.len()], g1.clone()).unwrap();
        let mu = uniform_density(&g2);
        assert!(matches!(born_integral(&xi, &mu), Err(Error::GridMismatch)));
    }

    #[test]
    fn response_rejects_out_of_range_values() {
        let grid = OnticGrid::sphere(4, 8).unwrap();
        let mut v = vec![0.5; grid.len()];
        v[0] = 1.5;
        assert!(ResponseFunction::new(v, grid.clone()).is_err());
    }

    #[test]
    fn support_thresholds() {
        let grid = OnticGrid::sphere(4, 8).unwrap();
        let mu = uniform_density(&grid);
        assert_eq!(support(&mu, 0.0).unwrap().len(), grid.len());
        assert!(support(&mu, 1.0).unwrap().is_empty());
        assert!(support(&mu, -0.1).is_err());
    }

    #[test]
    fn overlap_of_identical_distributions_is_full_support() {
        let grid = OnticGrid::sphere(6, 12).unwrap();
        let mu = uniform_density(&grid);
        assert_eq!(overlap_region(&mu, &mu).unwrap().len(), grid.len());
    }
}
