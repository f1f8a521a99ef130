//! Finite-dimensional Hilbert-space core.
//!
//! States are rays: a [`StateVector`] carries a concrete unit-norm amplitude
//! vector but nothing ever canonicalizes its global phase; comparisons go
//! through phase-invariant functionals (overlap modulus, Fubini–Study
//! distance). Time evolution is exact up to floating point, via the
//! eigendecomposition of the Hermitian generator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the squared norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;

/// Entrywise tolerance on `H - H^dagger`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest dimension accepted on the exact eigendecomposition path.
pub const EIG_DIM_CAP: usize = 64;

/// A unit-norm complex amplitude vector representing a ray.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: DVector<Complex64>,
}

impl StateVector {
    /// Build a state from amplitudes that are already normalized.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::InvalidValue(format!(
                "state dimension must be at least 2, got {}",
                amps.len()
            )));
        }
        let amps = DVector::from_vec(amps);
        let norm_sq = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: NORM_TOL,
            });
        }
        Ok(Self { amps })
    }

    /// Build a state by rescaling arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::InvalidValue(format!(
                "state dimension must be at least 2, got {}",
                amps.len()
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidValue("cannot normalize the zero vector".into()));
        }
        let scaled = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            amps: DVector::from_vec(scaled),
        })
    }

    /// The computational basis state `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidValue(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Self::new(amps)
    }

    /// Qubit state with Bloch angles `(theta, phi)`:
    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::from_polar((theta / 2.0).sin(), phi);
        Self {
            amps: DVector::from_vec(vec![c, s]),
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub(crate) fn vector(&self) -> &DVector<Complex64> {
        &self.amps
    }

    /// Bloch vector of a qubit state: `(2 Re a*b, 2 Im a*b, |a|^2 - |b|^2)`.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        let a = self.amps[0];
        let b = self.amps[1];
        let ab = a.conj() * b;
        Ok([2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()])
    }
}

/// A Hermitian matrix acting as a generator (Hamiltonian).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidValue(format!(
                "operator must be square, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let mut max_dev = 0.0f64;
        for i in 0..mat.nrows() {
            for j in 0..mat.ncols() {
                let dev = (mat[(i, j)] - mat[(j, i)].conj()).norm();
                max_dev = max_dev.max(dev);
            }
        }
        if max_dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { max_dev });
        }
        Ok(Self { mat })
    }

    /// Diagonal operator with the given real spectrum.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut mat = DMatrix::zeros(dim, dim);
        for (k, &e) in diag.iter().enumerate() {
            mat[(k, k)] = Complex64::new(e, 0.0);
        }
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }
}

/// Units of the Schroedinger flow: `hbar` and the time step `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub hbar: f64,
    pub dt: f64,
}

impl EvolutionParams {
    pub fn new(hbar: f64, dt: f64) -> Result<Self> {
        if !(hbar > 0.0) {
            return Err(Error::InvalidValue(format!("hbar must be positive, got {hbar}")));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidValue(format!("dt must be positive, got {dt}")));
        }
        Ok(Self { hbar, dt })
    }

    /// Natural units: `hbar = 1`.
    pub fn with_dt(dt: f64) -> Result<Self> {
        Self::new(1.0, dt)
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `<a|b> = sum_i conj(a_i) b_i`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.vector().dotc(b.vector()))
}

/// `exp(-i H dt / hbar) |psi>` via the eigendecomposition of `H`.
pub fn evolve(psi: &StateVector, h: &HermitianOperator, params: &EvolutionParams) -> Result<StateVector> {
    check_dims(h.dim(), psi.dim())?;
    if h.dim() > EIG_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: h.dim(),
            cap: EIG_DIM_CAP,
        });
    }
    let eig = nalgebra::linalg::SymmetricEigen::try_new(h.matrix().clone(), 1e-14, 0)
        .ok_or(Error::EigenFailure)?;
    // y = V^H psi, phase each eigencomponent, map back.
    let mut y = eig.eigenvectors.adjoint() * psi.vector();
    for (k, yk) in y.iter_mut().enumerate() {
        let phase = -eig.eigenvalues[k] * params.dt / params.hbar;
        *yk *= Complex64::from_polar(1.0, phase);
    }
    let out = &eig.eigenvectors * y;
    StateVector::new(out.iter().copied().collect())
}

/// `<H>_psi` (real by Hermiticity).
pub fn expectation(psi: &StateVector, h: &HermitianOperator) -> Result<f64> {
    check_dims(h.dim(), psi.dim())?;
    let hpsi = h.matrix() * psi.vector();
    Ok(psi.vector().dotc(&hpsi).re)
}

/// `(Delta H)^2_psi = || (H - <H>) psi ||^2`, clamped at zero.
pub fn energy_variance(psi: &StateVector, h: &HermitianOperator) -> Result<f64> {
    let mean = expectation(psi, h)?;
    let mut r = h.matrix() * psi.vector();
    r -= psi.vector() * Complex64::new(mean, 0.0);
    let var = r.iter().map(|c| c.norm_sqr()).sum::<f64>();
    Ok(var.max(0.0))
}

/// Squared infinitesimal Fubini–Study distance, `4 (1 - |<a|b>|^2)`.
///
/// Computed as `4 ||b - <a|b> a||^2`, which is the same quantity for unit
/// vectors but does not cancel catastrophically when the overlap is close
/// to 1. Insensitive to the global phase of either argument.
pub fn fubini_study_dist2(a: &StateVector, b: &StateVector) -> Result<f64> {
    let z = inner_product(a, b)?;
    let mut r = b.vector().clone();
    r -= a.vector() * z;
    Ok(4.0 * r.iter().map(|c| c.norm_sqr()).sum::<f64>())
}

/// Projective-space speed `v = 2 (Delta H)_psi / hbar`.
pub fn evolution_speed(psi: &StateVector, h: &HermitianOperator, params: &EvolutionParams) -> Result<f64> {
    Ok(2.0 * energy_variance(psi, h)?.sqrt() / params.hbar)
}
