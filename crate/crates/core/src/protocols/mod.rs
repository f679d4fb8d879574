//! m→1 purification steps on Bell-diagonal states.
//!
//! Each protocol variant sits behind the [`PurificationStep`] trait and is
//! registered by name ("deutsch", "bennett", "code-513", "identity"); the
//! analysis layer and the CLI select steps at runtime and compose them into
//! balanced concatenation trees via [`PurificationMap`].

mod bennett;
mod code_step;
mod deutsch;

pub use bennett::BennettStep;
pub use code_step::{AcceptanceMode, CodeStep};
pub use deutsch::DeutschStep;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::bell::BellDiagonalState;
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;

/// Threshold below which a post-selected branch counts as failed.
pub const SUCCESS_FLOOR: f64 = 1e-14;

/// Output of one purification step: the surviving pair and the probability
/// that the step's acceptance test passes.
#[derive(Debug, Clone, Copy)]
pub struct StepOutcome {
    pub state: BellDiagonalState,
    pub success_probability: f64,
}

/// A leaf m→1 purification step in closed form.
pub trait PurificationStep: Send + Sync {
    /// Registry name.
    fn id(&self) -> &'static str;

    /// Number of input pairs consumed per step.
    fn arity(&self) -> usize;

    /// Map m input pairs to one output pair plus a success probability.
    fn evaluate(&self, inputs: &[BellDiagonalState]) -> Result<StepOutcome>;

    fn check_arity(&self, inputs: &[BellDiagonalState]) -> Result<()> {
        if inputs.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: inputs.len(),
            });
        }
        Ok(())
    }
}

/// Pass-through 1→1 "protocol"; useful as the trivial resource in the
/// measurement-based layer.
#[derive(Debug, Default, Clone, Copy)]
pub struct IdentityStep;

impl PurificationStep for IdentityStep {
    fn id(&self) -> &'static str {
        "identity"
    }

    fn arity(&self) -> usize {
        1
    }

    fn evaluate(&self, inputs: &[BellDiagonalState]) -> Result<StepOutcome> {
        self.check_arity(inputs)?;
        Ok(StepOutcome {
            state: inputs[0],
            success_probability: 1.0,
        })
    }
}

/// Name-indexed collection of purification steps.
pub struct Registry {
    steps: BTreeMap<&'static str, Arc<dyn PurificationStep>>,
}

impl Registry {
    pub fn new() -> Self {
        Self {
            steps: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, step: Arc<dyn PurificationStep>) {
        self.steps.insert(step.id(), step);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn PurificationStep>> {
        self.steps
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownProtocol(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.steps.keys().copied()
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

/// The built-in protocol registry.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut r = Registry::new();
        r.register(Arc::new(DeutschStep));
        r.register(Arc::new(BennettStep));
        r.register(Arc::new(CodeStep::five_qubit(AcceptanceMode::Detect)));
        r.register(Arc::new(IdentityStep));
        r
    })
}

/// A balanced concatenation tree over a leaf step: a tree of depth k over an
/// arity-m leaf maps m^(k+1) pairs to one. Intermediate Bell measurements
/// are absorbed into the resource, so levels compose with no noise in
/// between, and the overall success probability is the product over every
/// node of the tree.
#[derive(Clone)]
pub struct PurificationMap {
    step: Arc<dyn PurificationStep>,
    depth: usize,
}

impl PurificationMap {
    pub fn new(step: Arc<dyn PurificationStep>, depth: usize) -> Self {
        Self { step, depth }
    }

    pub fn from_registry(name: &str, depth: usize) -> Result<Self> {
        Ok(Self::new(registry().get(name)?, depth))
    }

    pub fn step(&self) -> &Arc<dyn PurificationStep> {
        &self.step
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Total number of input pairs consumed: m^(depth+1).
    pub fn arity(&self) -> usize {
        self.step.arity().pow(self.depth as u32 + 1)
    }

    /// Number of leaf-step evaluations in the tree: Σ_{ℓ=0}^{depth} m^ℓ.
    pub fn node_count(&self) -> usize {
        let m = self.step.arity();
        (0..=self.depth).map(|l| m.pow(l as u32)).sum()
    }

    /// Evaluate on i.i.d. copies of one input: every node at a level sees
    /// identical inputs, so one evaluation per level suffices, with the
    /// per-node success raised to the node count of that level. Per-node
    /// success is floored inside the step; the product over hundreds of
    /// nodes may legitimately be astronomically small.
    pub fn evaluate_identical(&self, input: &BellDiagonalState) -> Result<StepOutcome> {
        let m = self.step.arity();
        let mut state = *input;
        let mut success = 1.0f64;
        for level in 0..=self.depth {
            let nodes = m.pow((self.depth - level) as u32);
            let out = self.step.evaluate(&vec![state; m])?;
            state = out.state;
            success *= out.success_probability.powi(nodes as i32);
        }
        Ok(StepOutcome {
            state,
            success_probability: success,
        })
    }

    /// General evaluation on m^(depth+1) possibly different inputs.
    pub fn evaluate(&self, inputs: &[BellDiagonalState]) -> Result<StepOutcome> {
        if inputs.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: inputs.len(),
            });
        }
        self.evaluate_rec(inputs, self.depth)
    }

    fn evaluate_rec(&self, inputs: &[BellDiagonalState], depth: usize) -> Result<StepOutcome> {
        if depth == 0 {
            return self.step.evaluate(inputs);
        }
        let m = self.step.arity();
        let chunk = inputs.len() / m;
        let mut states = Vec::with_capacity(m);
        let mut success = 1.0f64;
        for part in inputs.chunks(chunk) {
            let out = self.evaluate_rec(part, depth - 1)?;
            states.push(out.state);
            success *= out.success_probability;
        }
        let out = self.step.evaluate(&states)?;
        Ok(StepOutcome {
            state: out.state,
            success_probability: success * out.success_probability,
        })
    }
}

/// Shared closed form for the two-pair recurrence protocols: propagate the
/// 16 joint error labels through the bilateral CNOT (pair a controls pair
/// b), accept iff the measured pair's label has no X component, and keep
/// pair a's label. `swap_yz` applies the pre-rotation that exchanges the Y
/// and Z labels on every input.
pub(crate) fn two_pair_step(
    a: &BellDiagonalState,
    b: &BellDiagonalState,
    swap_yz: bool,
) -> Result<StepOutcome> {
    let rot = |e: PauliLabel| -> PauliLabel {
        if swap_yz {
            match e {
                PauliLabel::Y => PauliLabel::Z,
                PauliLabel::Z => PauliLabel::Y,
                other => other,
            }
        } else {
            e
        }
    };
    let mut out = [0.0f64; 4];
    let mut success = 0.0f64;
    for ea in crate::pauli::PAULI_LABELS {
        let wa = a.weight(ea);
        if wa == 0.0 {
            continue;
        }
        let ea = rot(ea);
        for eb in crate::pauli::PAULI_LABELS {
            let w = wa * b.weight(eb);
            if w == 0.0 {
                continue;
            }
            let eb = rot(eb);
            // CNOT conjugation on labels: X propagates control→target,
            // Z propagates target→control.
            let (xa, za) = (ea.x_bit(), ea.z_bit());
            let (xb, zb) = (eb.x_bit(), eb.z_bit());
            let kept = PauliLabel::from_bits(xa, za ^ zb);
            let measured_x = xb ^ xa;
            // coincident computational outcomes iff the measured pair
            // carries no X component
            if !measured_x {
                out[kept.index()] += w;
                success += w;
            }
        }
    }
    if success < SUCCESS_FLOOR {
        return Err(Error::VanishingSuccess(SUCCESS_FLOOR));
    }
    Ok(StepOutcome {
        state: BellDiagonalState::from_unnormalized(out)?,
        success_probability: success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_knows_the_builtins() {
        let names: Vec<_> = registry().names().collect();
        assert!(names.contains(&"deutsch"));
        assert!(names.contains(&"bennett"));
        assert!(names.contains(&"code-513"));
        assert!(registry().get("nonsense").is_err());
    }

    #[test]
    fn tree_arity_and_node_count() {
        let map = PurificationMap::from_registry("deutsch", 7).unwrap();
        assert_eq!(map.arity(), 256);
        assert_eq!(map.node_count(), 255);
        let map = PurificationMap::from_registry("code-513", 1).unwrap();
        assert_eq!(map.arity(), 25);
        assert_eq!(map.node_count(), 6);
    }

    #[test]
    fn depth_zero_tree_is_the_leaf_step() {
        let map = PurificationMap::from_registry("deutsch", 0).unwrap();
        let w = BellDiagonalState::werner(0.8).unwrap();
        let via_map = map.evaluate_identical(&w).unwrap();
        let direct = DeutschStep.evaluate(&[w, w]).unwrap();
        assert_eq!(via_map.state.lambda(), direct.state.lambda());
        assert!((via_map.success_probability - direct.success_probability).abs() < 1e-15);
    }

    #[test]
    fn depth_one_tree_matches_manual_composition() {
        let map = PurificationMap::from_registry("deutsch", 1).unwrap();
        let w = BellDiagonalState::werner(0.8).unwrap();
        let via_map = map.evaluate_identical(&w).unwrap();

        let first = DeutschStep.evaluate(&[w, w]).unwrap();
        let second = DeutschStep.evaluate(&[first.state, first.state]).unwrap();
        let expected_success =
            first.success_probability * first.success_probability * second.success_probability;
        assert_eq!(via_map.state.lambda(), second.state.lambda());
        assert!((via_map.success_probability - expected_success).abs() < 1e-15);

        // general evaluation agrees on identical inputs
        let general = map.evaluate(&[w; 4]).unwrap();
        assert_eq!(general.state.lambda(), via_map.state.lambda());
        assert!((general.success_probability - via_map.success_probability).abs() < 1e-15);
    }

    #[test]
    fn tree_success_is_one_on_perfect_inputs() {
        for name in ["deutsch", "bennett", "code-513"] {
            let map = PurificationMap::from_registry(name, 1).unwrap();
            let out = map
                .evaluate_identical(&BellDiagonalState::perfect())
                .unwrap();
            assert!((out.success_probability - 1.0).abs() < 1e-12, "{name}");
            assert!((out.state.fidelity() - 1.0).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn identity_step_passes_through() {
        let s = BellDiagonalState::new([0.6, 0.2, 0.1, 0.1]).unwrap();
        let out = IdentityStep.evaluate(&[s]).unwrap();
        assert_eq!(out.state.lambda(), s.lambda());
        assert_eq!(out.success_probability, 1.0);
    }
}
