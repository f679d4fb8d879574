//! Closed-form protocol steps against the dense circuit oracles.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use mbep_core::bell::BellDiagonalState;
use mbep_core::channel::PauliChannel;
use mbep_core::dense::{bell_diagonal_to_dense, bell_diagonal_weights};
use mbep_core::protocols::{registry, AcceptanceMode, CodeStep};
use mbep_core::verify::{
    bennett_circuit_oracle, code_bilateral_oracle, deutsch_circuit_oracle, random_bell_diagonal,
};

fn assert_close(a: &[f64], b: &[f64], tol: f64, context: &str) {
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() < tol, "{context}: {a:?} vs {b:?}");
    }
}

#[test]
fn deutsch_matches_oracle_on_100_random_inputs() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    let step = registry().get("deutsch").unwrap();
    for _ in 0..100 {
        let a = random_bell_diagonal(&mut rng).unwrap();
        let b = random_bell_diagonal(&mut rng).unwrap();
        let (lam, success) = deutsch_circuit_oracle(&a, &b).unwrap();
        let out = step.evaluate(&[a, b]).unwrap();
        assert_close(&out.state.lambda(), &lam, 1e-10, "deutsch output");
        assert!((out.success_probability - success).abs() < 1e-10);
    }
}

#[test]
fn bennett_matches_oracle_on_100_random_inputs() {
    let mut rng = ChaCha12Rng::seed_from_u64(202);
    let step = registry().get("bennett").unwrap();
    for _ in 0..100 {
        let a = random_bell_diagonal(&mut rng).unwrap();
        let b = random_bell_diagonal(&mut rng).unwrap();
        let (lam, success) = bennett_circuit_oracle(&a, &b).unwrap();
        let out = step.evaluate(&[a, b]).unwrap();
        assert_close(&out.state.lambda(), &lam, 1e-10, "bennett output");
        assert!((out.success_probability - success).abs() < 1e-10);
    }
}

#[test]
fn deutsch_on_two_werner_070_copies_matches_oracle() {
    let w = BellDiagonalState::werner(0.7).unwrap();
    let (lam, success) = deutsch_circuit_oracle(&w, &w).unwrap();
    let out = registry()
        .get("deutsch")
        .unwrap()
        .evaluate(&[w, w])
        .unwrap();
    assert_close(&out.state.lambda(), &lam, 1e-12, "werner 0.7");
    assert!((out.success_probability - success).abs() < 1e-12);
    assert!(out.state.fidelity() > 0.7, "the step purifies at 0.7");
}

#[test]
fn one_sided_dephasing_on_werner_matches_dense_oracle() {
    let w = BellDiagonalState::werner(0.8).unwrap();
    let ch = PauliChannel::dephasing(0.5).unwrap();
    let closed = w.apply_channel_one_sided(&ch);

    let dense = bell_diagonal_to_dense(&w)
        .unwrap()
        .apply_channel(&ch, 1)
        .unwrap();
    let lam = bell_diagonal_weights(&dense, 0, 1).unwrap();
    assert_close(&closed.lambda(), &lam, 1e-12, "dephasing");
}

#[test]
fn code_step_on_five_werner_085_matches_ten_qubit_oracle() {
    let step = CodeStep::five_qubit(AcceptanceMode::Detect);
    let inputs = vec![BellDiagonalState::werner(0.85).unwrap(); 5];
    let (lam, success) = code_bilateral_oracle(step.code(), &inputs).unwrap();
    let out = step.step(&inputs).unwrap();
    assert_close(&out.state.lambda(), &lam, 1e-9, "code werner 0.85");
    assert!((out.success_probability - success).abs() < 1e-9);
}

#[test]
fn code_step_matches_oracle_on_random_bell_diagonal_inputs() {
    let mut rng = ChaCha12Rng::seed_from_u64(303);
    let step = CodeStep::five_qubit(AcceptanceMode::Detect);
    for _ in 0..3 {
        let inputs: Vec<BellDiagonalState> = (0..5)
            .map(|_| random_bell_diagonal(&mut rng).unwrap())
            .collect();
        let (lam, success) = code_bilateral_oracle(step.code(), &inputs).unwrap();
        let out = step.step(&inputs).unwrap();
        assert_close(&out.state.lambda(), &lam, 1e-9, "code random");
        assert!((out.success_probability - success).abs() < 1e-9);
    }
}

#[test]
fn noiseless_deutsch_has_the_maximal_purification_interval() {
    // strict gain everywhere on (1/2, 1) and convergence to a perfect pair
    let step = registry().get("deutsch").unwrap();
    let mut f = 0.505;
    while f < 0.995 {
        let w = BellDiagonalState::werner(f).unwrap();
        let out = step.evaluate(&[w, w]).unwrap();
        assert!(out.state.fidelity() > f, "no gain at F = {f}");
        f += 0.005;
    }
    let mut s = BellDiagonalState::werner(0.52).unwrap();
    for _ in 0..500 {
        s = step.evaluate(&[s, s]).unwrap().state;
    }
    assert!((s.fidelity() - 1.0).abs() < 1e-9);
}

#[test]
fn tree_success_probabilities_multiply() {
    use mbep_core::protocols::PurificationMap;
    let w = BellDiagonalState::werner(0.9).unwrap();
    let tree = PurificationMap::from_registry("deutsch", 2).unwrap();
    let direct = tree.evaluate_identical(&w).unwrap();

    // hand-rolled level-by-level product
    let step = registry().get("deutsch").unwrap();
    let l0 = step.evaluate(&[w, w]).unwrap();
    let l1 = step.evaluate(&[l0.state, l0.state]).unwrap();
    let l2 = step.evaluate(&[l1.state, l1.state]).unwrap();
    let expected =
        l0.success_probability.powi(4) * l1.success_probability.powi(2) * l2.success_probability;
    assert!((direct.success_probability - expected).abs() < 1e-12);
    assert_close(
        &direct.state.lambda(),
        &l2.state.lambda(),
        1e-12,
        "depth-2 state",
    );
}
