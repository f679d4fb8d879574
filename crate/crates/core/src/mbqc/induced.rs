//! Pattern-level induced maps: the m→1 map a resource pair enacts, tabulated
//! over definite input error patterns.
//!
//! Two successive Bell measurements (pair qubit ↔ port, on each side) reduce
//! to a single twisted Bell projection between the two ports: outcome pair
//! (o, o′) on a pair carrying error E projects the ports onto the Bell state
//! labeled β(o)·β(o′)·E, and the four outcome pairs sharing a product label
//! are indistinguishable downstream. Enumerating product labels instead of
//! raw outcomes keeps the joint system at 2(m+1) qubits, which is what makes
//! the 4→1 comparisons fit the engine budget.

use crate::bell::BellDiagonalState;
use crate::dense::{bell_state_pure, BellBasis, PureState};
use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PAULI_LABELS};
use crate::protocols::PurificationMap;

use super::read_in::Verdict;
use super::resource::ResourceState;

/// An m→1 map tabulated over the 4^m definite input patterns: per pattern,
/// the acceptance probability and the (probability-weighted) output label
/// distribution.
#[derive(Debug, Clone)]
pub struct PatternMap {
    m: usize,
    success: Vec<f64>,
    output: Vec<[f64; 4]>,
}

impl PatternMap {
    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn patterns(&self) -> usize {
        self.success.len()
    }

    pub fn success(&self, pattern: usize) -> f64 {
        self.success[pattern]
    }

    /// Output weights for one pattern; they sum to the pattern's success
    /// probability.
    pub fn output(&self, pattern: usize) -> [f64; 4] {
        self.output[pattern]
    }

    /// Evaluate on Bell-diagonal inputs by mixing patterns.
    pub fn apply(&self, inputs: &[BellDiagonalState]) -> Result<(BellDiagonalState, f64)> {
        if inputs.len() != self.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: inputs.len(),
            });
        }
        let mut success = 0.0f64;
        let mut out = [0.0f64; 4];
        for pattern in 0..self.patterns() {
            let mut w = 1.0f64;
            let mut rest = pattern;
            for input in inputs {
                w *= input.lambda()[rest & 3];
                rest >>= 2;
            }
            if w == 0.0 {
                continue;
            }
            success += w * self.success[pattern];
            for (o, x) in out.iter_mut().zip(self.output[pattern]) {
                *o += w * x;
            }
        }
        Ok((BellDiagonalState::from_unnormalized(out)?, success))
    }

    /// Largest per-pattern deviation (success and output weights) from
    /// another map.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.m != other.m {
            return Err(Error::ArityMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        let mut worst = 0.0f64;
        for pattern in 0..self.patterns() {
            worst = worst.max((self.success[pattern] - other.success[pattern]).abs());
            for l in 0..4 {
                worst = worst.max((self.output[pattern][l] - other.output[pattern][l]).abs());
            }
        }
        Ok(worst)
    }

    /// Tabulate a closed-form purification tree over definite patterns.
    pub fn from_purification_map(map: &PurificationMap) -> Result<Self> {
        let m = map.arity();
        let count = 4usize.pow(m as u32);
        let mut success = vec![0.0f64; count];
        let mut output = vec![[0.0f64; 4]; count];
        for pattern in 0..count {
            let mut inputs = Vec::with_capacity(m);
            let mut rest = pattern;
            for _ in 0..m {
                let mut lambda = [0.0f64; 4];
                lambda[rest & 3] = 1.0;
                inputs.push(BellDiagonalState::new(lambda)?);
                rest >>= 2;
            }
            match map.evaluate(&inputs) {
                Ok(out) => {
                    success[pattern] = out.success_probability;
                    let lam = out.state.lambda();
                    for l in 0..4 {
                        output[pattern][l] = out.success_probability * lam[l];
                    }
                }
                Err(Error::VanishingSuccess(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Self { m, success, output })
    }
}

/// Induced map of a noiseless resource pair, via reduced twisted-Bell
/// enumeration. The per-product-label classification is derived in place
/// from the noiseless run (pattern = all-identity).
pub fn induced_pattern_map(res_a: &ResourceState, res_b: &ResourceState) -> Result<PatternMap> {
    let m = res_a.arity();
    if res_b.arity() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: res_b.arity(),
        });
    }
    let (pure_a, pure_b) = match (res_a.pure(), res_b.pure()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Unsupported(
                "induced maps require noiseless (pure) resources".into(),
            ))
        }
    };
    let joint = pure_a.tensor(pure_b)?;
    let ka = res_a.qubits();
    let port_pairs: Vec<(usize, usize)> = (0..m)
        .map(|i| (res_a.input_ports()[i], ka + res_b.input_ports()[i]))
        .collect();

    // classification over product labels, from the noiseless pattern
    let identity = vec![PauliLabel::I; m];
    let mut table: Vec<(Verdict, PauliLabel)> = Vec::with_capacity(4usize.pow(m as u32));
    walk(&joint, &port_pairs, &identity, &mut |_, weight, state| {
        let entry = if weight < 1e-12 {
            (Verdict::Failure, PauliLabel::I)
        } else {
            let weights = bell_overlap_weights(&state.normalized()?)?;
            let best = (0..4)
                .max_by(|&a, &b| weights[a].total_cmp(&weights[b]))
                .unwrap_or(0);
            if (weights[best] - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidState(
                    "noiseless induced-map branch is not a Bell state".into(),
                ));
            }
            (Verdict::Success, PAULI_LABELS[best])
        };
        table.push(entry);
        Ok(())
    })?;

    let count = 4usize.pow(m as u32);
    let mut success = vec![0.0f64; count];
    let mut output = vec![[0.0f64; 4]; count];
    for pattern in 0..count {
        let labels: Vec<PauliLabel> = (0..m)
            .map(|i| PAULI_LABELS[(pattern >> (2 * i)) & 3])
            .collect();
        let mut branch_index = 0usize;
        walk(&joint, &port_pairs, &labels, &mut |_, weight, state| {
            let (verdict, correction) = table[branch_index];
            branch_index += 1;
            if verdict == Verdict::Success && weight > 1e-14 {
                success[pattern] += weight;
                let raw = bell_overlap_weights(&state.normalized()?)?;
                for l in 0..4 {
                    // applying the correction permutes the labels
                    let corrected = PAULI_LABELS[l] * correction;
                    output[pattern][corrected.index()] += weight * raw[l];
                }
            }
            Ok(())
        })?;
    }
    Ok(PatternMap { m, success, output })
}

/// Visitor over reduced branches: product-label assignment, squared norm,
/// final two-qubit pure state on the output ports.
type ReducedVisitor<'a> = dyn FnMut(&[PauliLabel], f64, &PureState) -> Result<()> + 'a;

/// Recursively project every product-label assignment onto the port pairs.
/// The depth-first enumeration order is fixed, so derivation and evaluation
/// index branches identically.
fn walk(
    joint: &PureState,
    port_pairs: &[(usize, usize)],
    pattern: &[PauliLabel],
    callback: &mut ReducedVisitor<'_>,
) -> Result<()> {
    let mut assignment = vec![PauliLabel::I; port_pairs.len()];
    walk_rec(
        joint,
        port_pairs,
        pattern,
        0,
        &mut assignment,
        &mut Vec::new(),
        callback,
    )
}

#[allow(clippy::too_many_arguments)]
fn walk_rec(
    state: &PureState,
    port_pairs: &[(usize, usize)],
    pattern: &[PauliLabel],
    level: usize,
    assignment: &mut Vec<PauliLabel>,
    removed: &mut Vec<usize>,
    callback: &mut ReducedVisitor<'_>,
) -> Result<()> {
    if level == port_pairs.len() {
        return callback(assignment, state.weight(), state);
    }
    let (qa, qb) = port_pairs[level];
    let current = |q: usize| -> usize { q - removed.iter().filter(|&&r| r < q).count() };
    let (ca, cb) = (current(qa), current(qb));
    for g in PAULI_LABELS {
        // twisted projection: product label g, input error E → Bell label g·E
        let twist = g * pattern[level];
        let bra = BellBasis::from_byproduct(twist).amplitudes();
        let post = state.project_out_pair(ca, cb, &bra)?;
        assignment[level] = g;
        removed.push(qa);
        removed.push(qb);
        walk_rec(
            &post,
            port_pairs,
            pattern,
            level + 1,
            assignment,
            removed,
            callback,
        )?;
        removed.pop();
        removed.pop();
    }
    Ok(())
}

/// Squared overlaps of a normalized two-qubit pure state with the four Bell
/// states, indexed by byproduct label.
fn bell_overlap_weights(state: &PureState) -> Result<[f64; 4]> {
    let mut w = [0.0f64; 4];
    for label in PAULI_LABELS {
        let bell = bell_state_pure(BellBasis::from_byproduct(label));
        w[label.index()] = bell.inner(state)?.norm_sqr();
    }
    Ok(w)
}
