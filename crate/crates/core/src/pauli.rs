//! Pauli algebra over GF(2): single-qubit error labels and n-qubit Pauli
//! strings in the symplectic (x|z) representation, with phases tracked as
//! powers of i.
//!
//! A `PauliString` represents i^phase · Π_j X_j^{x_j} Z_j^{z_j}. The label
//! algebra used by the Bell-diagonal layer drops phases entirely: conjugating
//! one half of a Bell pair by a Pauli permutes the four error labels by
//! group multiplication, and the weights are phase-insensitive.

use crate::error::{Error, Result};

/// Single-qubit Pauli label. The Bell-diagonal layer indexes its weights by
/// this type: `I` marks the target state Φ+, the others the three error
/// branches (X ↔ Ψ+, Y ↔ Ψ−, Z ↔ Φ−, error acting on the second qubit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PauliLabel {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

pub const PAULI_LABELS: [PauliLabel; 4] =
    [PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z];

impl PauliLabel {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        PAULI_LABELS[i]
    }

    /// X component in the symplectic picture.
    pub fn x_bit(self) -> bool {
        matches!(self, PauliLabel::X | PauliLabel::Y)
    }

    /// Z component in the symplectic picture.
    pub fn z_bit(self) -> bool {
        matches!(self, PauliLabel::Y | PauliLabel::Z)
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLabel::I,
            (true, false) => PauliLabel::X,
            (true, true) => PauliLabel::Y,
            (false, true) => PauliLabel::Z,
        }
    }

    /// 0 if the two single-qubit Paulis commute, 1 if they anticommute.
    pub fn anticommutes(self, other: Self) -> bool {
        (self.x_bit() & other.z_bit()) ^ (self.z_bit() & other.x_bit())
    }

    pub fn symbol(self) -> char {
        match self {
            PauliLabel::I => 'I',
            PauliLabel::X => 'X',
            PauliLabel::Y => 'Y',
            PauliLabel::Z => 'Z',
        }
    }
}

impl std::fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The Klein four-group product (phases dropped).
impl std::ops::Mul for PauliLabel {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Self::from_bits(self.x_bit() ^ other.x_bit(), self.z_bit() ^ other.z_bit())
    }
}

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// An n-qubit Pauli operator i^phase · Π_j X_j^{x_j} Z_j^{z_j}.
///
/// Bit j of `x`/`z` lives in word j / 64. Phase is an exponent of i, mod 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "pauli string length must be at least 1");
        Self {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
            phase: 0,
        }
    }

    /// Single `label` on qubit `q` of an otherwise-identity string.
    pub fn single(n: usize, q: usize, label: PauliLabel) -> Result<Self> {
        let mut s = Self::identity(n);
        s.set(q, label)?;
        Ok(s)
    }

    /// Parse from characters I/X/Y/Z, one per qubit.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        if chars.is_empty() {
            return Err(Error::InvalidState("empty pauli string".into()));
        }
        let mut s = Self::identity(chars.len());
        for (q, c) in chars.iter().enumerate() {
            let label = match c.to_ascii_uppercase() {
                'I' => PauliLabel::I,
                'X' => PauliLabel::X,
                'Y' => PauliLabel::Y,
                'Z' => PauliLabel::Z,
                other => {
                    return Err(Error::InvalidState(format!(
                        "invalid pauli character '{other}'"
                    )))
                }
            };
            s.set(q, label)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    fn bit(v: &[u64], q: usize) -> bool {
        (v[q / WORD_BITS] >> (q % WORD_BITS)) & 1 == 1
    }

    fn set_bit(v: &mut [u64], q: usize, val: bool) {
        let mask = 1u64 << (q % WORD_BITS);
        if val {
            v[q / WORD_BITS] |= mask;
        } else {
            v[q / WORD_BITS] &= !mask;
        }
    }

    pub fn x_bit(&self, q: usize) -> bool {
        Self::bit(&self.x, q)
    }

    pub fn z_bit(&self, q: usize) -> bool {
        Self::bit(&self.z, q)
    }

    pub fn label(&self, q: usize) -> PauliLabel {
        PauliLabel::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrite the site operator on qubit `q`. Y is stored as i·XZ, so the
    /// global phase picks up one power of i per Y.
    pub fn set(&mut self, q: usize, label: PauliLabel) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitIndex {
                index: q,
                n: self.n,
            });
        }
        if self.label(q) == PauliLabel::Y {
            self.phase = (self.phase + 3) % 4;
        }
        Self::set_bit(&mut self.x, q, label.x_bit());
        Self::set_bit(&mut self.z, q, label.z_bit());
        if label == PauliLabel::Y {
            self.phase = (self.phase + 1) % 4;
        }
        Ok(())
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Product self·other with the phase computed mod 4.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        // X^a Z^b · X^c Z^d = (−1)^{b·c} X^{a⊕c} Z^{b⊕d}, per site.
        let mut swaps = 0usize;
        let mut x = vec![0u64; self.x.len()];
        let mut z = vec![0u64; self.z.len()];
        for w in 0..self.x.len() {
            swaps += (self.z[w] & other.x[w]).count_ones() as usize;
            x[w] = self.x[w] ^ other.x[w];
            z[w] = self.z[w] ^ other.z[w];
        }
        Ok(Self {
            n: self.n,
            x,
            z,
            phase: ((self.phase as usize + other.phase as usize + 2 * swaps) % 4) as u8,
        })
    }

    /// Complex conjugate in the computational basis: X and Z are real, so
    /// only the explicit i^phase flips sign.
    pub fn conjugate(&self) -> Self {
        Self {
            phase: (4 - self.phase) % 4,
            ..self.clone()
        }
    }

    /// Multiply the global phase by i^quarter_turns.
    pub fn phase_shifted(&self, quarter_turns: u8) -> Self {
        Self {
            phase: (self.phase + quarter_turns) % 4,
            ..self.clone()
        }
    }

    /// Whether the represented operator is Hermitian: i^ph·ΠX^xZ^z is
    /// Hermitian iff the number of sites with both bits set matches the
    /// phase parity.
    pub fn is_hermitian(&self) -> bool {
        let xz_sites: u32 = self
            .x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        xz_sites % 2 == (self.phase % 2) as u32
    }

    /// Iterate over per-site labels.
    pub fn labels(&self) -> impl Iterator<Item = PauliLabel> + '_ {
        (0..self.n).map(|q| self.label(q))
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.phase {
            1 => write!(f, "i·")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i·")?,
            _ => {}
        }
        for q in 0..self.n {
            write!(f, "{}", self.label(q))?;
        }
        Ok(())
    }
}

/// Symplectic product over GF(2): 0 iff the operators commute, 1 iff they
/// anticommute. Phases are irrelevant.
pub fn symplectic_product(a: &PauliString, b: &PauliString) -> Result<u8> {
    if a.n != b.n {
        return Err(Error::LengthMismatch(a.n, b.n));
    }
    let mut acc = 0u32;
    for w in 0..a.x.len() {
        acc ^= (a.x[w] & b.z[w]).count_ones() ^ (a.z[w] & b.x[w]).count_ones();
    }
    Ok((acc & 1) as u8)
}
