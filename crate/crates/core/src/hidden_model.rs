//! Epistemic model with ontic probability amplitudes.
//!
//! The ontic space is an enlarged orthonormal basis of dimension `d * m`:
//! each quantum basis direction `k` owns a cell of `m` hidden sub-levels.
//! A preparation spreads the target's amplitude `c_k` over its cell with a
//! fixed smear profile `s_j`, giving the propensity amplitude
//! `A(lambda_{k,j}) = c_k s_j` with `sum |A|^2 = 1`. Quantum states are
//! recovered as amplitude-weighted averages of the hidden basis states, and
//! the squared amplitude overlap of two preparations reproduces the Born
//! transition probability exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::StateVector;

/// Tolerance on `sum |A|^2 = 1`.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-12;

/// Partition of the enlarged hidden basis into per-direction cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HiddenSpace {
    qdim: usize,
    smear: usize,
}

impl HiddenSpace {
    pub fn new(qdim: usize, smear: usize) -> Result<Self> {
        if qdim < 2 {
            return Err(Error::InvalidValue(format!(
                "quantum dimension must be at least 2, got {qdim}"
            )));
        }
        if smear == 0 {
            return Err(Error::InvalidValue("smear must be at least 1".into()));
        }
        Ok(Self { qdim, smear })
    }

    pub fn qdim(&self) -> usize {
        self.qdim
    }

    pub fn smear(&self) -> usize {
        self.smear
    }

    /// Dimension of the enlarged hidden space, `d * m`.
    pub fn hdim(&self) -> usize {
        self.qdim * self.smear
    }

    /// Hidden indices of the cell owned by quantum direction `k`.
    pub fn cell_of(&self, k: usize) -> Result<std::ops::Range<usize>> {
        if k >= self.qdim {
            return Err(Error::InvalidValue(format!(
                "direction {k} out of range for quantum dimension {}",
                self.qdim
            )));
        }
        Ok(k * self.smear..(k + 1) * self.smear)
    }
}

/// Within-cell spread of a preparation: `m` complex weights with
/// `sum |s_j|^2 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmearProfile {
    weights: Vec<Complex64>,
}

impl SmearProfile {
    pub fn new(weights: Vec<Complex64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidValue("smear profile must be nonempty".into()));
        }
        let norm_sq: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: AMPLITUDE_NORM_TOL,
            });
        }
        Ok(Self { weights })
    }

    /// Uniform profile `s_j = 1/sqrt(m)`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidValue("smear profile must be nonempty".into()));
        }
        let s = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
        Ok(Self {
            weights: vec![s; m],
        })
    }

    /// Gaussian-tapered profile centered on the cell, width `sigma` in
    /// sub-level units, normalized.
    pub fn gaussian(m: usize, sigma: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidValue("smear profile must be nonempty".into()));
        }
        if !(sigma > 0.0) {
            return Err(Error::InvalidValue(format!("sigma must be positive, got {sigma}")));
        }
        let center = (m as f64 - 1.0) / 2.0;
        let raw: Vec<f64> = (0..m)
            .map(|j| (-((j as f64 - center) / sigma).powi(2) / 2.0).exp())
            .collect();
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        Ok(Self {
            weights: raw.iter().map(|v| Complex64::new(v / norm, 0.0)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }
}

/// A preparation procedure: the quantum state it targets plus the profile
/// with which its amplitudes spread over the hidden cells.
#[derive(Debug, Clone)]
pub struct Preparation {
    pub label: String,
    pub target: StateVector,
    pub profile: SmearProfile,
}

impl Preparation {
    pub fn new(label: impl Into<String>, target: StateVector, profile: SmearProfile) -> Self {
        Self {
            label: label.into(),
            target,
            profile,
        }
    }
}

/// Propensity amplitude `A(lambda | P_psi)` over the hidden basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PropensityAmplitude {
    space: HiddenSpace,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PropensityAmplitudeRepr {
    qdim: usize,
    smear: usize,
    values: Vec<[f64; 2]>,
}

impl PropensityAmplitude {
    pub fn new(space: HiddenSpace, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.hdim() {
            return Err(Error::DimensionMismatch {
                expected: space.hdim(),
                found: values.len(),
            });
        }
        let norm_sq: f64 = values.iter().map(|v| v.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: AMPLITUDE_NORM_TOL,
            });
        }
        Ok(Self { space, values })
    }

    pub fn space(&self) -> HiddenSpace {
        self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Hidden indices with nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm_sqr() > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    /// JSON form `{qdim, smear, values: [[re, im], ...]}`; lossless for
    /// finite values.
    pub fn to_json(&self) -> Result<String> {
        let repr = PropensityAmplitudeRepr {
            qdim: self.space.qdim,
            smear: self.space.smear,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        };
        Ok(serde_json::to_string(&repr)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: PropensityAmplitudeRepr = serde_json::from_str(s)?;
        let space = HiddenSpace::new(repr.qdim, repr.smear)?;
        Self::new(
            space,
            repr.values
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

/// Spread a preparation's target over its hidden cells:
/// `A(lambda_{k,j}) = c_k s_j`.
pub fn prepare(prep: &Preparation, space: &HiddenSpace) -> Result<PropensityAmplitude> {
    if prep.target.dim() != space.qdim() {
        return Err(Error::DimensionMismatch {
            expected: space.qdim(),
            found: prep.target.dim(),
        });
    }
    if prep.profile.len() != space.smear() {
        return Err(Error::DimensionMismatch {
            expected: space.smear(),
            found: prep.profile.len(),
        });
    }
    let mut values = Vec::with_capacity(space.hdim());
    for &c in prep.target.amplitudes() {
        for &s in prep.profile.weights() {
            values.push(c * s);
        }
    }
    PropensityAmplitude::new(*space, values)
}

/// Amplitude-weighted average of the hidden basis states, as a unit vector
/// in the enlarged space.
pub fn reconstruct(amp: &PropensityAmplitude) -> Result<StateVector> {
    // constructor has already enforced sum |A|^2 = 1
    StateVector::new(amp.values().to_vec())
}

/// Project a vector of the enlarged space back through the embedding
/// isometry of the given profile: `c_k = sum_j conj(s_j) v_{k,j}`.
pub fn project_to_quantum(
    vector: &StateVector,
    profile: &SmearProfile,
    space: &HiddenSpace,
) -> Result<StateVector> {
    if vector.dim() != space.hdim() {
        return Err(Error::DimensionMismatch {
            expected: space.hdim(),
            found: vector.dim(),
        });
    }
    if profile.len() != space.smear() {
        return Err(Error::DimensionMismatch {
            expected: space.smear(),
            found: profile.len(),
        });
    }
    let v = vector.amplitudes();
    let mut out = Vec::with_capacity(space.qdim());
    for k in 0..space.qdim() {
        let mut c = Complex64::new(0.0, 0.0);
        for (j, &s) in profile.weights().iter().enumerate() {
            c += s.conj() * v[k * space.smear() + j];
        }
        out.push(c);
    }
    StateVector::normalized(out)
}

/// Squared modulus of the amplitude overlap on the shared support:
/// the Born transition probability between the two preparations.
pub fn transition_probability(
    a_phi: &PropensityAmplitude,
    a_psi: &PropensityAmplitude,
) -> Result<f64> {
    if a_phi.space() != a_psi.space() {
        return Err(Error::DimensionMismatch {
            expected: a_phi.space().hdim(),
            found: a_psi.space().hdim(),
        });
    }
    // Terms outside the shared support vanish identically, so the full sum
    // equals the sum restricted to lambda_psi /\ lambda_phi.
    let overlap: Complex64 = a_phi
        .values()
        .iter()
        .zip(a_psi.values())
        .map(|(p, q)| p.conj() * q)
        .sum();
    Ok(overlap.norm_sqr().min(1.0 + 1e-12))
}

/// Condition on a revealed set of hidden indices: zero everything outside,
/// renormalize the rest. Idempotent.
pub fn bayesian_update(
    amp: &PropensityAmplitude,
    revealed_cell: &[usize],
) -> Result<PropensityAmplitude> {
    let hdim = amp.space().hdim();
    if let Some(&bad) = revealed_cell.iter().find(|&&i| i >= hdim) {
        return Err(Error::InvalidValue(format!(
            "revealed index {bad} out of range for hidden dimension {hdim}"
        )));
    }
    let mut keep = vec![false; hdim];
    for &i in revealed_cell {
        keep[i] = true;
    }
    let weight: f64 = amp
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(_, v)| v.norm_sqr())
        .sum();
    if weight <= 0.0 {
        return Err(Error::EmptyPosterior);
    }
    let scale = 1.0 / weight.sqrt();
    let values = amp
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| if keep[i] { v * scale } else { Complex64::new(0.0, 0.0) })
        .collect();
    PropensityAmplitude::new(amp.space(), values)
}

/// How far a preparation sits from the sharp (point-cell) limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpenReport {
    pub m: usize,
    /// Within-cell spread, `1 - max_j |s_j|^2`; 0 in the sharp limit.
    pub trace_distance_to_complete: f64,
}

/// Measure the deviation of a preparation's within-cell spread from the
/// point-cell limit (`m = 1`), where the hidden-state description collapses
/// onto the embedded quantum state itself.
pub fn sharpen(space: &HiddenSpace, prep: &Preparation) -> Result<SharpenReport> {
    if prep.profile.len() != space.smear() {
        return Err(Error::DimensionMismatch {
            expected: space.smear(),
            found: prep.profile.len(),
        });
    }
    let max_w = prep
        .profile
        .weights()
        .iter()
        .map(|s| s.norm_sqr())
        .fold(0.0f64, f64::max);
    Ok(SharpenReport {
        m: space.smear(),
        trace_distance_to_complete: (1.0 - max_w).max(0.0),
    })
}
