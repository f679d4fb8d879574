//! Property tests for the closed-form algebra layers.

use proptest::prelude::*;

use mbep_core::bell::BellDiagonalState;
use mbep_core::channel::PauliChannel;
use mbep_core::pauli::{symplectic_product, PauliString};

fn lambda_strategy() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(1e-6..1.0f64).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        raw.map(|x| x / total)
    })
}

fn channel_strategy() -> impl Strategy<Value = PauliChannel> {
    (0.0..=1.0f64, prop::array::uniform4(1e-6..1.0f64)).prop_map(|(p, raw)| {
        let total: f64 = raw.iter().sum();
        PauliChannel::new(p, raw.map(|x| x / total)).expect("normalized weights")
    })
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(0usize..4, n).prop_map(move |labels| {
        let mut p = PauliString::identity(labels.len());
        for (q, &l) in labels.iter().enumerate() {
            p.set(q, mbep_core::pauli::PAULI_LABELS[l]).unwrap();
        }
        p
    })
}

proptest! {
    #[test]
    fn channels_preserve_normalization_and_positivity(
        lambda in lambda_strategy(),
        ch in channel_strategy(),
    ) {
        let s = BellDiagonalState::new(lambda).unwrap();
        let out = s.apply_channel_one_sided(&ch);
        let total: f64 = out.lambda().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(out.lambda().iter().all(|l| *l >= 0.0));
    }

    #[test]
    fn one_sided_lwn_composes_multiplicatively(
        lambda in lambda_strategy(),
        p1 in 0.0..=1.0f64,
        p2 in 0.0..=1.0f64,
    ) {
        let s = BellDiagonalState::new(lambda).unwrap();
        let seq = s
            .apply_channel_one_sided(&PauliChannel::lwn(p1).unwrap())
            .apply_channel_one_sided(&PauliChannel::lwn(p2).unwrap());
        let direct = s.apply_channel_one_sided(&PauliChannel::lwn(p1 * p2).unwrap());
        for (a, b) in seq.lambda().iter().zip(direct.lambda()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn two_sided_lwn_is_two_one_sided_applications(
        lambda in lambda_strategy(),
        p in 0.0..=1.0f64,
    ) {
        let s = BellDiagonalState::new(lambda).unwrap();
        let ch = PauliChannel::lwn(p).unwrap();
        let twice = s.apply_channel_one_sided(&ch).apply_channel_one_sided(&ch);
        let direct = s.apply_lwn_both_sides(p).unwrap();
        for (a, b) in twice.lambda().iter().zip(direct.lambda()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn twirl_is_idempotent_and_keeps_fidelity(lambda in lambda_strategy()) {
        let s = BellDiagonalState::new(lambda).unwrap();
        let once = s.twirl_to_werner();
        let twice = once.twirl_to_werner();
        prop_assert_eq!(once.lambda(), twice.lambda());
        prop_assert!((once.fidelity() - s.fidelity()).abs() < 1e-15);
        let total: f64 = once.lambda().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symplectic_product_is_symmetric_and_additive(
        a in pauli_strategy(6),
        b in pauli_strategy(6),
        c in pauli_strategy(6),
    ) {
        prop_assert_eq!(
            symplectic_product(&a, &b).unwrap(),
            symplectic_product(&b, &a).unwrap()
        );
        // ⟨a·b, c⟩ = ⟨a, c⟩ ⊕ ⟨b, c⟩
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(
            symplectic_product(&ab, &c).unwrap(),
            symplectic_product(&a, &c).unwrap() ^ symplectic_product(&b, &c).unwrap()
        );
    }

    #[test]
    fn pauli_strings_square_to_identity_up_to_phase(a in pauli_strategy(8)) {
        let sq = a.mul(&a).unwrap();
        prop_assert_eq!(sq.weight(), 0);
        // (i^k X^x Z^z)² has phase 0 or 2, never ±i
        prop_assert!(sq.phase() % 2 == 0);
    }
}
