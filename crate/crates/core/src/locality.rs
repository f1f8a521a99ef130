//! Exact probability calculus for the two-region detection scenario.
//!
//! A single particle is detected in one of two regions A and B; the
//! particle-plus-detector state has one branch per region. Probabilities
//! are kept in exact rational arithmetic so the 1/4-versus-0 content of the
//! joint-detection comparison is not blurred by floating point.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact probability.
pub type Prob = Ratio<i64>;

/// Which ontic description underlies the scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OntAssignment {
    /// The ontic state is the full entangled state itself.
    PsiComplete,
    /// Two disjoint hidden cells, one per branch.
    Epistemic {
        cell_a: BTreeSet<usize>,
        cell_b: BTreeSet<usize>,
    },
}

impl OntAssignment {
    pub fn mode_name(&self) -> &'static str {
        match self {
            OntAssignment::PsiComplete => "psi_complete",
            OntAssignment::Epistemic { .. } => "epistemic",
        }
    }

    /// Disjoint non-empty cells for the epistemic mode.
    pub fn epistemic(cell_a: BTreeSet<usize>, cell_b: BTreeSet<usize>) -> Result<Self> {
        if cell_a.is_empty() || cell_b.is_empty() {
            return Err(Error::InvalidValue("epistemic cells must be non-empty".into()));
        }
        if !cell_a.is_disjoint(&cell_b) {
            return Err(Error::CellsNotDisjoint);
        }
        Ok(OntAssignment::Epistemic { cell_a, cell_b })
    }
}

/// Two-region detection setup: branch weights `|amplitude|^2` per region
/// plus the ontic assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionScenario {
    pub region_a: String,
    pub region_b: String,
    weight_a: Prob,
    weight_b: Prob,
    assignment: OntAssignment,
}

impl DetectionScenario {
    /// Balanced branches `1/sqrt(2), 1/sqrt(2)` (weights 1/2, 1/2).
    pub fn balanced(assignment: OntAssignment) -> Self {
        Self::with_weights(Prob::new(1, 2), Prob::new(1, 2), assignment)
            .expect("balanced weights are valid")
    }

    /// General branch weights; must be nonnegative and sum to 1.
    pub fn with_weights(weight_a: Prob, weight_b: Prob, assignment: OntAssignment) -> Result<Self> {
        if weight_a < Prob::zero() || weight_b < Prob::zero() {
            return Err(Error::InvalidValue("branch weights must be nonnegative".into()));
        }
        if weight_a + weight_b != Prob::one() {
            return Err(Error::InvalidValue(format!(
                "branch weights must sum to 1, got {} + {}",
                weight_a, weight_b
            )));
        }
        Ok(Self {
            region_a: "A".into(),
            region_b: "B".into(),
            weight_a,
            weight_b,
            assignment,
        })
    }

    pub fn weight_a(&self) -> Prob {
        self.weight_a
    }

    pub fn weight_b(&self) -> Prob {
        self.weight_b
    }

    pub fn assignment(&self) -> &OntAssignment {
        &self.assignment
    }
}

fn expect_mode(scenario: &DetectionScenario, expected: &'static str) -> Result<()> {
    let found = scenario.assignment().mode_name();
    if found != expected {
        return Err(Error::WrongMode {
            expected,
            found: match found {
                "psi_complete" => "psi_complete",
                _ => "epistemic",
            },
        });
    }
    Ok(())
}

/// Joint detection probability when the ontic state is the full entangled
/// state: locality factorization `p(1_A)p(1_B)` with `p(1_X) = |amp_X|^2`.
/// For balanced branches this is exactly 1/4.
pub fn joint_detection_ontic(scenario: &DetectionScenario) -> Result<Prob> {
    expect_mode(scenario, "psi_complete")?;
    Ok(scenario.weight_a() * scenario.weight_b())
}

/// Joint detection probability under disjoint hidden cells: the actual cell
/// fixes the region, so `p(1_B | 1_A, lambda_A /\ lambda_B) = p(1_B |
/// lambda_A) = 0` and the product vanishes exactly.
pub fn joint_detection_epistemic(scenario: &DetectionScenario) -> Result<Prob> {
    expect_mode(scenario, "epistemic")?;
    if let OntAssignment::Epistemic { cell_a, cell_b } = scenario.assignment() {
        if !cell_a.is_disjoint(cell_b) {
            return Err(Error::CellsNotDisjoint);
        }
    }
    Ok(Prob::zero())
}

/// Quantum prediction for simultaneous detection: the entangled state has
/// no component on the both-detectors-fired subspace (the detector states
/// are orthogonal), so the projection is empty and the probability is 0.
pub fn quantum_joint_prediction(_scenario: &DetectionScenario) -> Prob {
    Prob::zero()
}

/// Probability of a single detection in the given region; identical across
/// the ontic, epistemic and quantum computations.
pub fn single_detection_marginal(scenario: &DetectionScenario, region: &str) -> Result<Prob> {
    if region == scenario.region_a {
        Ok(scenario.weight_a())
    } else if region == scenario.region_b {
        Ok(scenario.weight_b())
    } else {
        Err(Error::InvalidValue(format!("unknown region '{region}'")))
    }
}

/// Table of entries `p(event | condition)` keyed by event and conditioning
/// context (which includes the ontic label).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionalProbabilityTable {
    entries: BTreeMap<(String, String), Prob>,
}

impl ConditionalProbabilityTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, event: &str, given: &str, p: Prob) -> Result<()> {
        if p < Prob::zero() || p > Prob::one() {
            return Err(Error::InvalidValue(format!(
                "probability p({event}|{given}) = {p} outside [0, 1]"
            )));
        }
        self.entries.insert((event.to_string(), given.to_string()), p);
        Ok(())
    }

    pub fn get(&self, event: &str, given: &str) -> Option<Prob> {
        self.entries.get(&(event.to_string(), given.to_string())).copied()
    }

    /// Table of the psi-complete model with local conditionals:
    /// `p(1_A|Psi) = p(1_B|Psi) = p(1_B|1_A,Psi) = 1/2`.
    pub fn psi_complete_balanced() -> Self {
        let mut t = Self::new();
        let half = Prob::new(1, 2);
        t.insert("1_A", "Psi", half).unwrap();
        t.insert("1_B", "Psi", half).unwrap();
        t.insert("1_B", "1_A,Psi", half).unwrap();
        t
    }

    /// Table of the epistemic model: the actual cell fixes the region.
    pub fn epistemic_deterministic() -> Self {
        let mut t = Self::new();
        t.insert("1_A", "lambda_A,lambda_B", Prob::one()).unwrap();
        t.insert("1_A", "lambda_A", Prob::one()).unwrap();
        t.insert("1_B", "lambda_A", Prob::zero()).unwrap();
        t.insert("1_B", "1_A,lambda_A,lambda_B", Prob::zero()).unwrap();
        t
    }
}

/// One conditional-independence equation checked by the audit.
#[derive(Debug, Clone, Serialize)]
pub struct AuditEquation {
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: f64,
    pub rhs_value: f64,
    pub residual: f64,
    pub ok: bool,
}

/// Result of [`locality_audit`]; serializes to the JSON report
/// `{mode, equations: [...], born_residual}`.
#[derive(Debug, Clone, Serialize)]
pub struct LocalityAuditReport {
    pub mode: String,
    pub equations: Vec<AuditEquation>,
    /// |joint probability implied by the table - quantum prediction (0)|.
    pub born_residual: f64,
}

impl LocalityAuditReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn ratio_to_f64(p: Prob) -> f64 {
    *p.numer() as f64 / *p.denom() as f64
}

/// Check every conditional-independence equation the assignment mode
/// demands and report residuals, plus the gap between the table's implied
/// joint-detection probability and the quantum prediction.
pub fn locality_audit(
    table: &ConditionalProbabilityTable,
    assignment: &OntAssignment,
) -> Result<LocalityAuditReport> {
    let (required, equations_spec, joint_factors): (Vec<(&str, &str)>, Vec<((&str, &str), (&str, &str))>, ((&str, &str), (&str, &str))) =
        match assignment {
            OntAssignment::PsiComplete => (
                vec![("1_A", "Psi"), ("1_B", "Psi"), ("1_B", "1_A,Psi")],
                vec![(("1_B", "1_A,Psi"), ("1_B", "Psi"))],
                (("1_A", "Psi"), ("1_B", "1_A,Psi")),
            ),
            OntAssignment::Epistemic { cell_a, cell_b } => {
                if !cell_a.is_disjoint(cell_b) {
                    return Err(Error::CellsNotDisjoint);
                }
                (
                    vec![
                        ("1_A", "lambda_A,lambda_B"),
                        ("1_A", "lambda_A"),
                        ("1_B", "lambda_A"),
                        ("1_B", "1_A,lambda_A,lambda_B"),
                    ],
                    vec![
                        (("1_A", "lambda_A,lambda_B"), ("1_A", "lambda_A")),
                        (("1_B", "1_A,lambda_A,lambda_B"), ("1_B", "lambda_A")),
                    ],
                    (("1_A", "lambda_A"), ("1_B", "lambda_A")),
                )
            }
        };

    let missing: Vec<String> = required
        .iter()
        .filter(|(e, g)| table.get(e, g).is_none())
        .map(|(e, g)| format!("p({e}|{g})"))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingEntries(missing));
    }

    let equations = equations_spec
        .into_iter()
        .map(|((le, lg), (re, rg))| {
            let lv = table.get(le, lg).unwrap();
            let rv = table.get(re, rg).unwrap();
            let residual = if lv >= rv { lv - rv } else { rv - lv };
            AuditEquation {
                lhs: format!("p({le}|{lg})"),
                rhs: format!("p({re}|{rg})"),
                lhs_value: ratio_to_f64(lv),
                rhs_value: ratio_to_f64(rv),
                residual: ratio_to_f64(residual),
                ok: lv == rv,
            }
        })
        .collect();

    let ((fe, fg), (se, sg)) = joint_factors;
    let joint = table.get(fe, fg).unwrap() * table.get(se, sg).unwrap();
    Ok(LocalityAuditReport {
        mode: assignment.mode_name().to_string(),
        equations,
        born_residual: ratio_to_f64(joint),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn epistemic_assignment() -> OntAssignment {
        OntAssignment::epistemic(BTreeSet::from([0]), BTreeSet::from([1])).unwrap()
    }

    #[test]
    fn balanced_ontic_joint_is_exactly_one_quarter() {
        let s = DetectionScenario::balanced(OntAssignment::PsiComplete);
        assert_eq!(joint_detection_ontic(&s).unwrap(), Prob::new(1, 4));
    }

    #[test]
    fn single_branch_state_has_zero_joint() {
        let s = DetectionScenario::with_weights(Prob::one(), Prob::zero(), OntAssignment::PsiComplete).unwrap();
        assert_eq!(joint_detection_ontic(&s).unwrap(), Prob::zero());
    }

    #[test]
    fn unbalanced_weights_factorize() {
        let s = DetectionScenario::with_weights(Prob::new(4, 5), Prob::new(1, 5), OntAssignment::PsiComplete).unwrap();
        // 0.8 * 0.2 = 0.16
        assert_eq!(joint_detection_ontic(&s).unwrap(), Prob::new(4, 25));
    }

    #[test]
    fn epistemic_joint_is_exactly_zero() {
        for weights in [(Prob::new(1, 2), Prob::new(1, 2)), (Prob::new(4, 5), Prob::new(1, 5))] {
            let s = DetectionScenario::with_weights(weights.0, weights.1, epistemic_assignment()).unwrap();
            assert_eq!(joint_detection_epistemic(&s).unwrap(), Prob::zero());
        }
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let ontic = DetectionScenario::balanced(OntAssignment::PsiComplete);
        assert!(matches!(joint_detection_epistemic(&ontic), Err(Error::WrongMode { .. })));
        let epi = DetectionScenario::balanced(epistemic_assignment());
        assert!(matches!(joint_detection_ontic(&epi), Err(Error::WrongMode { .. })));
    }

    #[test]
    fn non_disjoint_cells_are_rejected() {
        assert!(matches!(
            OntAssignment::epistemic(BTreeSet::from([0, 1]), BTreeSet::from([1, 2])),
            Err(Error::CellsNotDisjoint)
        ));
    }

    #[test]
    fn quantum_prediction_vanishes_and_marginals_agree() {
        let s = DetectionScenario::balanced(OntAssignment::PsiComplete);
        assert_eq!(quantum_joint_prediction(&s), Prob::zero());
        assert_eq!(single_detection_marginal(&s, "A").unwrap(), Prob::new(1, 2));
        assert_eq!(single_detection_marginal(&s, "B").unwrap(), Prob::new(1, 2));
        assert!(single_detection_marginal(&s, "C").is_err());
    }

    #[test]
    fn audit_psi_complete_local_table() {
        let report = locality_audit(
            &ConditionalProbabilityTable::psi_complete_balanced(),
            &OntAssignment::PsiComplete,
        )
        .unwrap();
        assert_eq!(report.mode, "psi_complete");
        assert!(report.equations.iter().all(|e| e.ok));
        // locality satisfied, Born violated: 1/4 against 0
        assert_eq!(report.born_residual, 0.25);
    }

    #[test]
    fn audit_epistemic_table() {
        let report = locality_audit(
            &ConditionalProbabilityTable::epistemic_deterministic(),
            &epistemic_assignment(),
        )
        .unwrap();
        assert_eq!(report.mode, "epistemic");
        assert!(report.equations.iter().all(|e| e.ok));
        assert_eq!(report.born_residual, 0.0);
    }

    #[test]
    fn audit_flags_locality_violation_with_residual() {
        let mut t = ConditionalProbabilityTable::psi_complete_balanced();
        t.insert("1_B", "1_A,Psi", Prob::zero()).unwrap();
        let report = locality_audit(&t, &OntAssignment::PsiComplete).unwrap();
        let eq = &report.equations[0];
        assert!(!eq.ok);
        assert_eq!(eq.residual, 0.5);
    }

    #[test]
    fn audit_reports_missing_entries() {
        let t = ConditionalProbabilityTable::new();
        match locality_audit(&t, &OntAssignment::PsiComplete) {
            Err(Error::MissingEntries(missing)) => assert_eq!(missing.len(), 3),
            other => panic!("expected MissingEntries, got {other:?}"),
        }
    }

    #[test]
    fn audit_json_shape() {
        let report = locality_audit(
            &ConditionalProbabilityTable::psi_complete_balanced(),
            &OntAssignment::PsiComplete,
        )
        .unwrap();
        let json = report.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["mode"], "psi_complete");
        assert!(v["equations"].as_array().unwrap().len() == 1);
        assert_eq!(v["born_residual"], 0.25);
    }
}
