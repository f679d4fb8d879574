//! Coupling noisy pairs to resource states by Bell measurements, and the
//! outcome classification that turns raw Bell outcomes into a
//! success/failure verdict plus a byproduct correction.
//!
//! Classification tables are derived once from the noiseless engine rather
//! than transcribed: a branch counts as success iff its noiseless post-state
//! has unit fidelity with some Bell state (the correction is the byproduct
//! mapping it back to Φ+); branches the noiseless protocol never produces
//! are failures.

use std::collections::HashMap;

use crate::dense::{bell_state_pure, project_bell, BellBasis, BellOutcome, DenseState, ALL_BELL};
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;

use super::resource::ResourceState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Success,
    Failure,
}

/// Verdict and correction attached to one full set of read-in outcomes.
#[derive(Debug, Clone)]
pub struct ReadInRecord {
    pub outcomes: Vec<BellOutcome>,
    pub verdict: Verdict,
    pub correction: PauliLabel,
}

/// One enumerated read-in branch. `output` is the corrected, renormalized
/// output pair for successful branches of non-negligible probability.
#[derive(Debug, Clone)]
pub struct ReadInBranch {
    pub record: ReadInRecord,
    pub probability: f64,
    pub output: Option<DenseState>,
}

/// Deterministic outcome → (verdict, correction) map for one resource pair,
/// keyed by the 2m Bell outcomes (party A's ports first).
#[derive(Debug, Clone)]
pub struct ClassificationTable {
    arity: usize,
    entries: HashMap<Vec<BellBasis>, (Verdict, PauliLabel)>,
}

impl ClassificationTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &HashMap<Vec<BellBasis>, (Verdict, PauliLabel)> {
        &self.entries
    }

    /// Derive the table from noiseless resources coupled to perfect pairs.
    pub fn derive(res_a: &ResourceState, res_b: &ResourceState) -> Result<Self> {
        let m = check_matching(res_a, res_b)?;
        let pairs = vec![crate::dense::prepare_bell_pairs(1)?; m];
        let mut entries = HashMap::new();
        enumerate(res_a, res_b, &pairs, &mut |outcomes, probability, state| {
            let classification = if probability < 1e-12 {
                (Verdict::Failure, PauliLabel::I)
            } else {
                match bell_state_of(state)? {
                    Some(label) => (Verdict::Success, label.byproduct()),
                    None => {
                        return Err(Error::InvalidState(format!(
                            "noiseless branch {outcomes:?} is neither empty nor a Bell state"
                        )))
                    }
                }
            };
            entries.insert(outcomes.to_vec(), classification);
            Ok(())
        })?;
        Ok(Self { arity: m, entries })
    }

    pub fn classify(&self, outcomes: &[BellBasis]) -> Result<(Verdict, PauliLabel)> {
        self.entries
            .get(outcomes)
            .copied()
            .ok_or(Error::UnknownOutcomePattern)
    }
}

/// Classify a full outcome list against a derived table.
pub fn classify_outcomes(
    table: &ClassificationTable,
    outcomes: &[BellOutcome],
) -> Result<(Verdict, PauliLabel)> {
    let labels: Vec<BellBasis> = outcomes.iter().map(|o| o.label).collect();
    table.classify(&labels)
}

/// Couple m pairs to the two resources by Bell measurements and enumerate
/// all 4^(2m) outcome branches. Successful branches carry their corrected
/// output pair; branch probabilities sum to 1 for normalized inputs.
pub fn read_in(
    res_a: &ResourceState,
    res_b: &ResourceState,
    pairs: &[DenseState],
    table: &ClassificationTable,
) -> Result<Vec<ReadInBranch>> {
    let m = check_matching(res_a, res_b)?;
    if pairs.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: pairs.len(),
        });
    }
    for pair in pairs {
        if pair.qubits() != 2 {
            return Err(Error::DimensionMismatch(
                "read-in pairs must be two-qubit states".into(),
            ));
        }
    }
    let mut branches = Vec::with_capacity(4usize.pow(2 * m as u32));
    enumerate(res_a, res_b, pairs, &mut |outcomes, probability, state| {
        let (verdict, correction) = table.classify(outcomes)?;
        let output = if verdict == Verdict::Success && probability > 1e-14 {
            let corr = crate::pauli::PauliString::single(2, 1, correction)?;
            Some(state.conjugate_pauli(&corr)?.normalized()?)
        } else {
            None
        };
        branches.push(ReadInBranch {
            record: ReadInRecord {
                outcomes: outcomes.iter().map(|&l| BellOutcome::new(l)).collect(),
                verdict,
                correction,
            },
            probability,
            output,
        });
        Ok(())
    })?;
    Ok(branches)
}

/// Success-aggregated view of a read-in: total success probability and the
/// probability-weighted corrected output.
pub fn aggregate_success(branches: &[ReadInBranch]) -> Result<(f64, DenseState)> {
    let mut total = 0.0f64;
    let mut accumulated: Option<DenseState> = None;
    for branch in branches {
        if branch.record.verdict != Verdict::Success {
            continue;
        }
        total += branch.probability;
        if let Some(output) = &branch.output {
            let weighted = output.scaled(branch.probability);
            match &mut accumulated {
                Some(acc) => acc.add_assign(&weighted)?,
                None => accumulated = Some(weighted),
            }
        }
    }
    let state = accumulated
        .ok_or(Error::VanishingSuccess(1e-14))?
        .normalized()?;
    Ok((total, state))
}

fn check_matching(res_a: &ResourceState, res_b: &ResourceState) -> Result<usize> {
    if res_a.arity() != res_b.arity() {
        return Err(Error::ArityMismatch {
            expected: res_a.arity(),
            got: res_b.arity(),
        });
    }
    Ok(res_a.arity())
}

/// Visitor over read-in branches: outcome list, absolute branch
/// probability, post-state on the output ports.
type BranchVisitor<'a> = dyn FnMut(&[BellBasis], f64, &DenseState) -> Result<()> + 'a;

/// Walk every Bell-outcome branch of the read-in. The callback receives the
/// outcome list (A ports first, then B ports), the absolute branch
/// probability, and the renormalized two-qubit post-state on
/// (output_A, output_B). Branches of negligible probability are still
/// enumerated (with a placeholder state; they carry probability 0 and are
/// failures by construction).
fn enumerate(
    res_a: &ResourceState,
    res_b: &ResourceState,
    pairs: &[DenseState],
    callback: &mut BranchVisitor<'_>,
) -> Result<()> {
    let m = res_a.arity();
    let ka = res_a.qubits();
    let kb = res_b.qubits();

    // layout: [resource A][resource B][pair 0][pair 1]…
    let mut joint = res_a.state().tensor(res_b.state())?;
    for pair in pairs {
        joint = joint.tensor(pair)?;
    }

    // measurement list in record order: A ports, then B ports
    let mut measurements = Vec::with_capacity(2 * m);
    for i in 0..m {
        measurements.push((res_a.input_ports()[i], ka + kb + 2 * i));
    }
    for i in 0..m {
        measurements.push((ka + res_b.input_ports()[i], ka + kb + 2 * i + 1));
    }

    let mut outcomes = Vec::with_capacity(2 * m);
    let mut removed: Vec<usize> = Vec::with_capacity(4 * m);
    descend(
        &joint,
        1.0,
        &measurements,
        &mut outcomes,
        &mut removed,
        callback,
    )
}

fn descend(
    state: &DenseState,
    probability: f64,
    remaining: &[(usize, usize)],
    outcomes: &mut Vec<BellBasis>,
    removed: &mut Vec<usize>,
    callback: &mut BranchVisitor<'_>,
) -> Result<()> {
    let Some(&(qa, qb)) = remaining.first() else {
        return callback(outcomes, probability, state);
    };
    let current = |q: usize| -> usize { q - removed.iter().filter(|&&r| r < q).count() };
    let (ca, cb) = (current(qa), current(qb));
    for label in ALL_BELL {
        let (branch_prob, post) = project_bell(state, ca, cb, label)?;
        outcomes.push(label);
        removed.push(qa);
        removed.push(qb);
        if branch_prob < 1e-14 {
            // dead branch: enumerate completions at probability zero so the
            // classification table stays total
            enumerate_dead(remaining.len() - 1, outcomes, callback)?;
        } else {
            let normalized = post.normalized()?;
            descend(
                &normalized,
                probability * branch_prob,
                &remaining[1..],
                outcomes,
                removed,
                callback,
            )?;
        }
        removed.pop();
        removed.pop();
        outcomes.pop();
    }
    Ok(())
}

fn enumerate_dead(
    levels: usize,
    outcomes: &mut Vec<BellBasis>,
    callback: &mut BranchVisitor<'_>,
) -> Result<()> {
    if levels == 0 {
        // dead branches carry no state; hand back a placeholder of the
        // output-pair shape
        let placeholder = DenseState::maximally_mixed(2)?;
        return callback(outcomes, 0.0, &placeholder);
    }
    for label in ALL_BELL {
        outcomes.push(label);
        enumerate_dead(levels - 1, outcomes, callback)?;
        outcomes.pop();
    }
    Ok(())
}

/// Identify a normalized two-qubit state as a Bell state, if it is one.
fn bell_state_of(state: &DenseState) -> Result<Option<BellBasis>> {
    for label in ALL_BELL {
        let f = state.fidelity_with_pure(&bell_state_pure(label))?;
        if (f - 1.0).abs() < 1e-9 {
            return Ok(Some(label));
        }
    }
    Ok(None)
}
