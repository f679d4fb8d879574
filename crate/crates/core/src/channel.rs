//! Single-qubit Pauli noise channels: ρ → p·ρ + (1−p)·Σ_i α_i σ_i ρ σ_i†.
//!
//! Local white noise (LWN) is the instance with α_i = 1/4 for all i, which
//! coincides with the depolarizing form p·ρ + (1−p)/2 · I ⊗ tr ρ on the
//! affected qubit. Bit-flip and dephasing noise are the other two named
//! instances used throughout.

use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PAULI_LABELS};

pub const PROB_TOLERANCE: f64 = 1e-12;

/// A single-qubit Pauli channel, kept in the (p, α) parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliChannel {
    p: f64,
    alpha: [f64; 4],
}

impl PauliChannel {
    pub fn new(p: f64, alpha: [f64; 4]) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidProbability(p));
        }
        if alpha.iter().any(|a| *a < -PROB_TOLERANCE || !a.is_finite()) {
            return Err(Error::InvalidChannel(format!(
                "negative mixing weight in {alpha:?}"
            )));
        }
        let total: f64 = alpha.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidChannel(format!(
                "mixing weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { p, alpha })
    }

    /// The noiseless channel.
    pub fn identity() -> Self {
        Self {
            p: 1.0,
            alpha: [0.25; 4],
        }
    }

    /// Local white noise with identity weight `p`.
    pub fn lwn(p: f64) -> Result<Self> {
        Self::new(p, [0.25; 4])
    }

    /// Bit-flip noise: α_0 = α_1 = 1/2.
    pub fn bit_flip(p: f64) -> Result<Self> {
        Self::new(p, [0.5, 0.5, 0.0, 0.0])
    }

    /// Dephasing noise: α_0 = α_3 = 1/2.
    pub fn dephasing(p: f64) -> Result<Self> {
        Self::new(p, [0.5, 0.0, 0.0, 0.5])
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> [f64; 4] {
        self.alpha
    }

    /// Total weight on each Pauli conjugation, folding the p·ρ term into the
    /// identity slot: weight(σ_i) = (1−p)·α_i + p·δ_{i0}.
    pub fn kraus_weights(&self) -> [f64; 4] {
        let mut w = [0.0; 4];
        for (i, a) in self.alpha.iter().enumerate() {
            w[i] = (1.0 - self.p) * a;
        }
        w[0] += self.p;
        w
    }

    /// Compose two Pauli channels acting on the same qubit. The result is
    /// again a Pauli channel; it is returned in kraus-weight form folded back
    /// to (p, α) with p = weight moved to the identity slot set to zero.
    pub fn compose(&self, other: &Self) -> Self {
        let wa = self.kraus_weights();
        let wb = other.kraus_weights();
        let mut w = [0.0; 4];
        for (i, &a) in PAULI_LABELS.iter().enumerate() {
            for (j, &b) in PAULI_LABELS.iter().enumerate() {
                w[(a * b).index()] += wa[i] * wb[j];
            }
        }
        Self { p: 0.0, alpha: w }
    }
}

/// Weight vector of a label after channel conjugation: for input label E the
/// output distributes over σ_i·E with the channel's kraus weights.
pub fn conjugation_row(ch: &PauliChannel, input: PauliLabel) -> [f64; 4] {
    let w = ch.kraus_weights();
    let mut row = [0.0; 4];
    for (i, &sigma) in PAULI_LABELS.iter().enumerate() {
        row[(sigma * input).index()] += w[i];
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_instances() {
        let lwn = PauliChannel::lwn(0.7).unwrap();
        assert_eq!(lwn.alpha(), [0.25; 4]);
        let bf = PauliChannel::bit_flip(0.9).unwrap();
        assert_eq!(bf.alpha(), [0.5, 0.5, 0.0, 0.0]);
        let dz = PauliChannel::dephasing(0.9).unwrap();
        assert_eq!(dz.alpha(), [0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PauliChannel::lwn(-0.1).is_err());
        assert!(PauliChannel::lwn(1.1).is_err());
        assert!(PauliChannel::new(0.5, [0.5, 0.5, 0.5, 0.0]).is_err());
        assert!(PauliChannel::new(0.5, [1.5, -0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn kraus_weights_sum_to_one() {
        let ch = PauliChannel::new(0.3, [0.1, 0.2, 0.3, 0.4]).unwrap();
        let total: f64 = ch.kraus_weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lwn_composition_multiplies_p() {
        let a = PauliChannel::lwn(0.8).unwrap();
        let b = PauliChannel::lwn(0.5).unwrap();
        let c = a.compose(&b);
        let expect = PauliChannel::lwn(0.4).unwrap().kraus_weights();
        for (got, want) in c.kraus_weights().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
