//! Concrete qubit instance on the Bloch sphere.
//!
//! A state with Bloch vector n is assigned the density
//! `mu(lambda) = (1/pi) max(n . lambda, 0)` (renormalized on the grid so the
//! tabulated distribution integrates to exactly 1) and the hemisphere
//! indicator `xi(lambda) = 1 iff n . lambda > 0`. For this pair the Born
//! integral reproduces `|<phi|psi>|^2 = (1 + n_phi . n_psi)/2`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ontic_frame::{
    EpistemicDistribution, OnticGrid, OntologicalModel, ResponseFunction,
};
use crate::qstate::StateVector;
use crate::sum::pairwise_map_sum;

/// How the hemisphere indicator is tabulated on grid cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseSampling {
    /// Sample the indicator at the cell midpoint; values are exactly 0 or 1.
    Midpoint,
    /// Tabulate the fraction of each cell's measure inside the hemisphere;
    /// boundary cells get fractional values, which tightens the quadrature
    /// error of Born integrals by an order of magnitude.
    CellAverage,
}

fn require_qubit(psi: &StateVector) -> Result<[f64; 3]> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    psi.bloch_vector()
}

fn dot(n: &[f64; 3], u: &[f64; 3]) -> f64 {
    n[0] * u[0] + n[1] * u[1] + n[2] * u[2]
}

/// Epistemic density `(1/pi) (n . lambda)_+`, renormalized on the grid.
pub fn ks_distribution(psi: &StateVector, grid: &Arc<OnticGrid>) -> Result<EpistemicDistribution> {
    let n = require_qubit(psi)?;
    let units = grid.unit_vectors();
    let raw: Vec<f64> = units
        .iter()
        .map(|u| {
            let d = dot(&n, u);
            if d > 0.0 {
                d / std::f64::consts::PI
            } else {
                0.0
            }
        })
        .collect();
    let total = pairwise_map_sum(raw.len(), |i| grid.weights()[i] * raw[i]);
    if !(total > 0.0) {
        return Err(Error::InvalidValue("distribution has zero mass on this grid".into()));
    }
    let values = raw.iter().map(|v| v / total).collect();
    EpistemicDistribution::new(values, grid.clone())
}

/// Hemisphere indicator sampled at grid midpoints; a tie `n . lambda = 0`
/// is assigned 0.
pub fn ks_response(phi: &StateVector, grid: &Arc<OnticGrid>) -> Result<ResponseFunction> {
    let n = require_qubit(phi)?;
    let values = grid
        .unit_vectors()
        .iter()
        .map(|u| if dot(&n, u) > 0.0 { 1.0 } else { 0.0 })
        .collect();
    ResponseFunction::new(values, grid.clone())
}

/// Hemisphere indicator tabulated as the covered measure fraction per cell.
///
/// Requires a product grid (cell geometry must be known). Cells whose
/// corners are all safely on one side keep the plain 0/1 value; cells the
/// boundary circle may cross are subsampled on an 8x8 subgrid with exact
/// subcell measures.
pub fn ks_response_cell_average(phi: &StateVector, grid: &Arc<OnticGrid>) -> Result<ResponseFunction> {
    let n = require_qubit(phi)?;
    let (n_theta, n_phi) = grid.resolution().ok_or_else(|| {
        Error::InvalidValue("cell-average sampling requires a product grid".into())
    })?;
    let dtheta = std::f64::consts::PI / n_theta as f64;
    let dphi = std::f64::consts::TAU / n_phi as f64;
    // The dot product varies by at most the angular diameter of a cell.
    let margin = dtheta + dphi;

    let values: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let ((t0, t1), (p0, p1)) = grid.cell_edges(i).expect("product grid");
            let corner = |t: f64, p: f64| {
                let st = t.sin();
                n[0] * st * p.cos() + n[1] * st * p.sin() + n[2] * t.cos()
            };
            let c = [corner(t0, p0), corner(t0, p1), corner(t1, p0), corner(t1, p1)];
            let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if lo > margin {
                return 1.0;
            }
            if hi < -margin {
                return 0.0;
            }
            // boundary cell: 8x8 midpoint subcells with exact measures
            const K: usize = 8;
            let sub_t = (t1 - t0) / K as f64;
            let sub_p = (p1 - p0) / K as f64;
            let mut inside = 0.0;
            let mut total = 0.0;
            for a in 0..K {
                let ta0 = t0 + a as f64 * sub_t;
                let w_t = ta0.cos() - (ta0 + sub_t).cos();
                let tm = ta0 + sub_t / 2.0;
                for b in 0..K {
                    let pm = p0 + (b as f64 + 0.5) * sub_p;
                    let w = w_t * sub_p;
                    total += w;
                    if corner(tm, pm) > 0.0 {
                        inside += w;
                    }
                }
            }
            (inside / total).clamp(0.0, 1.0)
        })
        .collect();
    ResponseFunction::new(values, grid.clone())
}

/// The qubit instance packaged as an [`OntologicalModel`].
#[derive(Debug, Clone)]
pub struct KsModel {
    grid: Arc<OnticGrid>,
    sampling: ResponseSampling,
}

impl KsModel {
    pub fn new(grid: Arc<OnticGrid>, sampling: ResponseSampling) -> Self {
        Self { grid, sampling }
    }

    pub fn sampling(&self) -> ResponseSampling {
        self.sampling
    }
}

impl OntologicalModel for KsModel {
    fn grid(&self) -> &Arc<OnticGrid> {
        &self.grid
    }

    fn mu_of(&self, psi: &StateVector) -> Result<EpistemicDistribution> {
        ks_distribution(psi, &self.grid)
    }

    fn xi_of(&self, phi: &StateVector) -> Result<ResponseFunction> {
        match self.sampling {
            ResponseSampling::Midpoint => ks_response(phi, &self.grid),
            ResponseSampling::CellAverage => ks_response_cell_average(phi, &self.grid),
        }
    }
}
