//! The measurement-based layer against the closed-form protocol layer.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use mbep_core::bell::BellDiagonalState;
use mbep_core::channel::PauliChannel;
use mbep_core::dense::{bell_diagonal_to_dense, bell_diagonal_weights, BellBasis, BellOutcome};
use mbep_core::mbqc::{
    aggregate_success, build_resource, classify_outcomes, connect, degrade_resource,
    induced_pattern_map, read_in, resource_with_channel, ClassificationTable, Party, PatternMap,
    Verdict,
};
use mbep_core::pauli::PauliLabel;
use mbep_core::protocols::{registry, PurificationMap};
use mbep_core::verify::random_bell_diagonal;

fn deutsch_setup() -> (
    mbep_core::mbqc::ResourceState,
    mbep_core::mbqc::ResourceState,
    ClassificationTable,
) {
    let res_a = build_resource("deutsch", 0, Party::A).unwrap();
    let res_b = build_resource("deutsch", 0, Party::B).unwrap();
    let table = ClassificationTable::derive(&res_a, &res_b).unwrap();
    (res_a, res_b, table)
}

#[test]
fn perfect_read_in_succeeds_with_certainty() {
    let (res_a, res_b, table) = deutsch_setup();
    let pairs = vec![mbep_core::dense::prepare_bell_pairs(1).unwrap(); 2];
    let branches = read_in(&res_a, &res_b, &pairs, &table).unwrap();
    assert_eq!(branches.len(), 256);
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    assert!((total - 1.0).abs() < 1e-10);
    let (success, output) = aggregate_success(&branches).unwrap();
    assert!((success - 1.0).abs() < 1e-10);
    let lam = bell_diagonal_weights(&output, 0, 1).unwrap();
    assert!((lam[0] - 1.0).abs() < 1e-10);
}

#[test]
fn all_phi_plus_outcomes_classify_as_success_with_identity_correction() {
    let (_, _, table) = deutsch_setup();
    let outcomes = vec![BellOutcome::new(BellBasis::PhiPlus); 4];
    let (verdict, correction) = classify_outcomes(&table, &outcomes).unwrap();
    assert_eq!(verdict, Verdict::Success);
    assert_eq!(correction, PauliLabel::I);
}

#[test]
fn classification_depends_only_on_byproduct_products() {
    // outcome pairs (o, o′) acting on the same pair are indistinguishable
    // through their product label; the derived table must respect that
    let (_, _, table) = deutsch_setup();
    for (key, entry) in table.entries() {
        let products: Vec<PauliLabel> = (0..2)
            .map(|i| key[i].byproduct() * key[2 + i].byproduct())
            .collect();
        for (other_key, other_entry) in table.entries() {
            let other_products: Vec<PauliLabel> = (0..2)
                .map(|i| other_key[i].byproduct() * other_key[2 + i].byproduct())
                .collect();
            if products == other_products {
                assert_eq!(entry, other_entry, "{key:?} vs {other_key:?}");
            }
        }
    }
}

#[test]
fn single_psi_plus_outcome_has_a_deterministic_table_verdict() {
    let (_, _, table) = deutsch_setup();
    let mut outcomes = vec![BellOutcome::new(BellBasis::PhiPlus); 4];
    outcomes[0] = BellOutcome::new(BellBasis::PsiPlus);
    let first = classify_outcomes(&table, &outcomes).unwrap();
    let second = classify_outcomes(&table, &outcomes).unwrap();
    assert_eq!(first, second);
    // an X byproduct on the control-pair port flips the coincidence parity,
    // so this branch is a failure in the derived table
    assert_eq!(first.0, Verdict::Failure);
}

#[test]
fn read_in_equals_closed_form_on_50_random_inputs() {
    let (res_a, res_b, table) = deutsch_setup();
    let step = registry().get("deutsch").unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(404);
    for _ in 0..50 {
        let a = random_bell_diagonal(&mut rng).unwrap();
        let b = random_bell_diagonal(&mut rng).unwrap();
        let pairs = vec![
            bell_diagonal_to_dense(&a).unwrap(),
            bell_diagonal_to_dense(&b).unwrap(),
        ];
        let branches = read_in(&res_a, &res_b, &pairs, &table).unwrap();
        let (success, output) = aggregate_success(&branches).unwrap();
        let lam = bell_diagonal_weights(&output, 0, 1).unwrap();
        let closed = step.evaluate(&[a, b]).unwrap();
        assert!((success - closed.success_probability).abs() < 1e-9);
        for (x, y) in lam.iter().zip(closed.state.lambda()) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn degraded_resources_equal_the_closed_form_noise_pipeline() {
    let (res_a, res_b, table) = deutsch_setup();
    let step = registry().get("deutsch").unwrap();
    let p = 0.92;
    let q = 0.85;
    let ch = PauliChannel::lwn(p).unwrap();
    let noisy_a = degrade_resource(&res_a, &ch).unwrap();
    let noisy_b = degrade_resource(&res_b, &ch).unwrap();
    let pair = BellDiagonalState::werner((1.0 + 3.0 * q * q) / 4.0).unwrap();
    let pairs = vec![bell_diagonal_to_dense(&pair).unwrap(); 2];
    let branches = read_in(&noisy_a, &noisy_b, &pairs, &table).unwrap();
    let (success, output) = aggregate_success(&branches).unwrap();
    let lam = bell_diagonal_weights(&output, 0, 1).unwrap();

    // pipeline: move all port noise onto the pairs (q·p composition), run
    // the perfect step, then the output-port noise
    let shifted = pair.apply_lwn_both_sides(p).unwrap();
    assert!((shifted.fidelity() - (1.0 + 3.0 * p * p * q * q) / 4.0).abs() < 1e-12);
    let closed = step.evaluate(&[shifted, shifted]).unwrap();
    let expected = closed.state.apply_lwn_both_sides(p).unwrap();
    assert!((success - closed.success_probability).abs() < 1e-9);
    for (x, y) in lam.iter().zip(expected.lambda()) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn single_port_noise_moves_to_the_coupled_pair_branch_by_branch() {
    let (res_a, res_b, table) = deutsch_setup();
    let mut rng = ChaCha12Rng::seed_from_u64(505);
    let ch = mbep_core::verify::random_channel(&mut rng).unwrap();
    let a = random_bell_diagonal(&mut rng).unwrap();
    let b = random_bell_diagonal(&mut rng).unwrap();
    let pairs = vec![
        bell_diagonal_to_dense(&a).unwrap(),
        bell_diagonal_to_dense(&b).unwrap(),
    ];
    for port in 0..2 {
        let noisy_res = resource_with_channel(&res_a, res_a.input_ports()[port], &ch).unwrap();
        let via_resource = read_in(&noisy_res, &res_b, &pairs, &table).unwrap();
        let mut noisy_pairs = pairs.clone();
        noisy_pairs[port] = noisy_pairs[port].apply_channel(&ch, 0).unwrap();
        let via_pair = read_in(&res_a, &res_b, &noisy_pairs, &table).unwrap();
        for (x, y) in via_resource.iter().zip(&via_pair) {
            assert!((x.probability - y.probability).abs() < 1e-9);
            if let (Some(xo), Some(yo)) = (&x.output, &y.output) {
                assert!(xo.max_deviation(yo).unwrap() < 1e-9);
            }
        }
    }
}

#[test]
fn connect_in_either_order_induces_the_same_map() {
    let build = |first_port: usize, second_port: usize| {
        let up_a = build_resource("deutsch", 0, Party::A).unwrap();
        let down_a = build_resource("deutsch", 0, Party::A).unwrap();
        let up_b = build_resource("deutsch", 0, Party::B).unwrap();
        let down_b = build_resource("deutsch", 0, Party::B).unwrap();
        let a = connect(
            &up_a,
            &connect(&up_a, &down_a, first_port).unwrap(),
            second_port,
        )
        .unwrap();
        let b = connect(
            &up_b,
            &connect(&up_b, &down_b, first_port).unwrap(),
            second_port,
        )
        .unwrap();
        induced_pattern_map(&a, &b).unwrap()
    };
    // feeding the root's measured input first, then its kept input, matches
    // the tree's digit order; the other operation order permutes the leaf
    // groups
    let ordered = build(1, 2);
    let swapped = build(0, 2);
    let mut rng = ChaCha12Rng::seed_from_u64(606);
    for _ in 0..10 {
        let inputs: Vec<BellDiagonalState> = (0..4)
            .map(|_| random_bell_diagonal(&mut rng).unwrap())
            .collect();
        let permuted = vec![inputs[2], inputs[3], inputs[0], inputs[1]];
        let (out_a, succ_a) = ordered.apply(&inputs).unwrap();
        let (out_b, succ_b) = swapped.apply(&permuted).unwrap();
        assert!((succ_a - succ_b).abs() < 1e-10);
        for (x, y) in out_a.lambda().iter().zip(out_b.lambda()) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn connected_resources_match_the_dual_state_and_the_tree() {
    let jam_a = build_resource("deutsch", 1, Party::A).unwrap();
    let jam_b = build_resource("deutsch", 1, Party::B).unwrap();
    assert_eq!(jam_a.qubits(), 5);
    let jam = induced_pattern_map(&jam_a, &jam_b).unwrap();

    let conn = {
        let a = {
            let up = build_resource("deutsch", 0, Party::A).unwrap();
            let down = build_resource("deutsch", 0, Party::A).unwrap();
            connect(&up, &connect(&up, &down, 1).unwrap(), 2).unwrap()
        };
        let b = {
            let up = build_resource("deutsch", 0, Party::B).unwrap();
            let down = build_resource("deutsch", 0, Party::B).unwrap();
            connect(&up, &connect(&up, &down, 1).unwrap(), 2).unwrap()
        };
        assert_eq!(a.qubits(), 5);
        induced_pattern_map(&a, &b).unwrap()
    };
    assert!(conn.max_deviation(&jam).unwrap() < 1e-9);

    let tree =
        PatternMap::from_purification_map(&PurificationMap::from_registry("deutsch", 1).unwrap())
            .unwrap();
    assert!(jam.max_deviation(&tree).unwrap() < 1e-9);
}

#[test]
fn corrupted_outcome_pattern_is_rejected() {
    let (_, _, table) = deutsch_setup();
    // wrong length: unseen by construction
    let outcomes = vec![BellOutcome::new(BellBasis::PhiPlus); 3];
    assert!(matches!(
        classify_outcomes(&table, &outcomes),
        Err(mbep_core::Error::UnknownOutcomePattern)
    ));
}

#[test]
fn bennett_read_in_equals_the_closed_form_on_50_twirled_inputs() {
    let res_a = build_resource("bennett", 0, Party::A).unwrap();
    let res_b = build_resource("bennett", 0, Party::B).unwrap();
    let table = ClassificationTable::derive(&res_a, &res_b).unwrap();
    let step = registry().get("bennett").unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(707);
    for _ in 0..50 {
        // the resource implements the bilateral circuit; the twirl is
        // classical pre-processing, so the coupled pairs arrive twirled
        let a = random_bell_diagonal(&mut rng).unwrap();
        let b = random_bell_diagonal(&mut rng).unwrap();
        let pairs = vec![
            bell_diagonal_to_dense(&a.twirl_to_werner()).unwrap(),
            bell_diagonal_to_dense(&b.twirl_to_werner()).unwrap(),
        ];
        let branches = read_in(&res_a, &res_b, &pairs, &table).unwrap();
        let (success, output) = aggregate_success(&branches).unwrap();
        let lam = bell_diagonal_weights(&output, 0, 1).unwrap();
        let closed = step.evaluate(&[a, b]).unwrap();
        assert!((success - closed.success_probability).abs() < 1e-9);
        for (x, y) in lam.iter().zip(closed.state.lambda()) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn connecting_an_identity_resource_changes_nothing() {
    let deutsch = PatternMap::from_purification_map(
        &PurificationMap::from_registry("deutsch", 0).unwrap(),
    )
    .unwrap();
    let build = |party: Party| {
        let pass = build_resource("identity", 0, party).unwrap();
        let down = build_resource("deutsch", 0, party).unwrap();
        connect(&pass, &down, 0).unwrap()
    };
    let res_a = build(Party::A);
    let res_b = build(Party::B);
    assert_eq!(res_a.arity(), 2);
    assert_eq!(res_a.qubits(), 3);
    let map = induced_pattern_map(&res_a, &res_b).unwrap();
    assert!(map.max_deviation(&deutsch).unwrap() < 1e-9);
}

#[test]
fn identity_resource_read_in_is_entanglement_swapping() {
    let res_a = build_resource("identity", 0, Party::A).unwrap();
    let res_b = build_resource("identity", 0, Party::B).unwrap();
    let table = ClassificationTable::derive(&res_a, &res_b).unwrap();
    // every branch of the noiseless run is a success (teleportation always
    // lands on some Bell state)
    for (verdict, _) in table.entries().values() {
        assert_eq!(*verdict, Verdict::Success);
    }
    let w = BellDiagonalState::werner(0.75).unwrap();
    let pairs = vec![bell_diagonal_to_dense(&w).unwrap()];
    let branches = read_in(&res_a, &res_b, &pairs, &table).unwrap();
    let (success, output) = aggregate_success(&branches).unwrap();
    assert!((success - 1.0).abs() < 1e-10);
    let lam = bell_diagonal_weights(&output, 0, 1).unwrap();
    for (x, y) in lam.iter().zip(w.lambda()) {
        assert!(
            (x - y).abs() < 1e-9,
            "identity protocol passes the pair through"
        );
    }
}
