//! Stabilizer codes in symplectic GF(2) form, specialized to [[n,1,d]]
//! codes with explicit logical representatives. The five-qubit code drives
//! the code-based 5→1 purification step.

use crate::error::{Error, Result};
use crate::pauli::{symplectic_product, PauliLabel, PauliString};

/// An [[n,1,d]] stabilizer code: n−1 commuting, independent generators plus
/// anticommuting logical X/Z representatives that commute with every
/// generator.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
    logical_x: PauliString,
    logical_z: PauliString,
}

impl StabilizerCode {
    pub fn new(
        generators: Vec<PauliString>,
        logical_x: PauliString,
        logical_z: PauliString,
    ) -> Result<Self> {
        let n = logical_x.len();
        if logical_z.len() != n {
            return Err(Error::LengthMismatch(logical_z.len(), n));
        }
        if generators.len() + 1 != n {
            return Err(Error::InvalidCode(format!(
                "expected {} generators for an [[{},1]] code, got {}",
                n - 1,
                n,
                generators.len()
            )));
        }
        for g in &generators {
            if g.len() != n {
                return Err(Error::LengthMismatch(g.len(), n));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in generators.iter().skip(i + 1) {
                if symplectic_product(a, b)? == 1 {
                    return Err(Error::InvalidCode(format!(
                        "generators {a} and {b} anticommute"
                    )));
                }
            }
        }
        if gf2_rank(&generators) != generators.len() {
            return Err(Error::InvalidCode(
                "generators are linearly dependent over GF(2)".into(),
            ));
        }
        for g in &generators {
            if symplectic_product(g, &logical_x)? == 1 {
                return Err(Error::InvalidCode(format!(
                    "logical X anticommutes with generator {g}"
                )));
            }
            if symplectic_product(g, &logical_z)? == 1 {
                return Err(Error::InvalidCode(format!(
                    "logical Z anticommutes with generator {g}"
                )));
            }
        }
        if symplectic_product(&logical_x, &logical_z)? == 0 {
            return Err(Error::InvalidCode(
                "logical X and Z must anticommute".into(),
            ));
        }
        Ok(Self {
            n,
            generators,
            logical_x,
            logical_z,
        })
    }

    /// The five-qubit code with the cyclic generator set XZZXI, IXZZX,
    /// XIXZZ, ZXIXZ and transversal logicals X̄ = X⊗5, Z̄ = Z⊗5.
    pub fn five_qubit() -> Self {
        let generators = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|s| PauliString::parse(s).expect("static generator"))
            .collect();
        Self::new(
            generators,
            PauliString::parse("XXXXX").expect("static logical"),
            PauliString::parse("ZZZZZ").expect("static logical"),
        )
        .expect("five-qubit code is valid")
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_x(&self) -> &PauliString {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliString {
        &self.logical_z
    }

    /// Syndrome of an error pattern: one bit per generator, set iff the
    /// pattern anticommutes with it.
    pub fn syndrome(&self, pattern: &PauliString) -> Result<u32> {
        let mut s = 0u32;
        for (k, g) in self.generators.iter().enumerate() {
            s |= (symplectic_product(g, pattern)? as u32) << k;
        }
        Ok(s)
    }

    /// Logical class of a pattern that commutes with all generators:
    /// the label L with the same commutation pattern against the logical
    /// representatives (x-bit from Z̄, z-bit from X̄).
    pub fn logical_class(&self, pattern: &PauliString) -> Result<PauliLabel> {
        let x = symplectic_product(&self.logical_z, pattern)? == 1;
        let z = symplectic_product(&self.logical_x, pattern)? == 1;
        Ok(PauliLabel::from_bits(x, z))
    }

    /// Minimum-weight correction for each syndrome, built by enumerating
    /// patterns in weight order. For the five-qubit code every non-zero
    /// syndrome is matched by a unique weight-1 error.
    pub fn minimum_weight_decoder(&self) -> Result<Vec<PauliString>> {
        let syndromes = 1usize << self.generators.len();
        let mut table: Vec<Option<PauliString>> = vec![None; syndromes];
        table[0] = Some(PauliString::identity(self.n));
        let mut found = 1;
        let mut patterns = vec![PauliString::identity(self.n)];
        // breadth-first over weights: extend by one single-qubit error at a time
        let mut weight = 0;
        while found < syndromes && weight < self.n {
            weight += 1;
            let mut next = Vec::new();
            for base in &patterns {
                for q in 0..self.n {
                    if base.label(q) != PauliLabel::I {
                        continue;
                    }
                    for l in [PauliLabel::X, PauliLabel::Y, PauliLabel::Z] {
                        let mut e = base.clone();
                        e.set(q, l)?;
                        let s = self.syndrome(&e)? as usize;
                        if table[s].is_none() {
                            table[s] = Some(e.clone());
                            found += 1;
                        }
                        next.push(e);
                    }
                }
            }
            patterns = next;
        }
        table
            .into_iter()
            .enumerate()
            .map(|(s, e)| {
                e.ok_or_else(|| Error::InvalidCode(format!("syndrome {s:b} has no correction")))
            })
            .collect()
    }
}

/// Rank of the generators viewed as rows of an (n−1)×2n GF(2) matrix.
fn gf2_rank(generators: &[PauliString]) -> usize {
    let n = match generators.first() {
        Some(g) => g.len(),
        None => return 0,
    };
    // pack each generator into a 2n-bit row (x part, then z part)
    let mut rows: Vec<u128> = generators
        .iter()
        .map(|g| {
            let mut row = 0u128;
            for q in 0..n {
                if g.x_bit(q) {
                    row |= 1 << q;
                }
                if g.z_bit(q) {
                    row |= 1 << (n + q);
                }
            }
            row
        })
        .collect();
    let mut rank = 0;
    for bit in 0..(2 * n) {
        let mask = 1u128 << bit;
        if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) {
            rows.swap(rank, pivot);
            for r in 0..rows.len() {
                if r != rank && rows[r] & mask != 0 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_qubit_code_is_valid() {
        let code = StabilizerCode::five_qubit();
        assert_eq!(code.qubits(), 5);
        assert_eq!(code.generators().len(), 4);
    }

    #[test]
    fn single_qubit_errors_have_distinct_syndromes() {
        // the perfect-code property: 15 single-qubit errors ↔ 15 non-zero syndromes
        let code = StabilizerCode::five_qubit();
        let mut seen = std::collections::HashSet::new();
        for q in 0..5 {
            for l in [PauliLabel::X, PauliLabel::Y, PauliLabel::Z] {
                let e = PauliString::single(5, q, l).unwrap();
                let s = code.syndrome(&e).unwrap();
                assert_ne!(s, 0);
                assert!(seen.insert(s));
            }
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn logical_classes() {
        let code = StabilizerCode::five_qubit();
        let id = PauliString::identity(5);
        assert_eq!(code.logical_class(&id).unwrap(), PauliLabel::I);
        assert_eq!(code.logical_class(code.logical_x()).unwrap(), PauliLabel::X);
        assert_eq!(code.logical_class(code.logical_z()).unwrap(), PauliLabel::Z);
        let y = code.logical_x().mul(code.logical_z()).unwrap();
        assert_eq!(code.logical_class(&y).unwrap(), PauliLabel::Y);
        // generators themselves are in the trivial class
        for g in code.generators() {
            assert_eq!(code.syndrome(g).unwrap(), 0);
            assert_eq!(code.logical_class(g).unwrap(), PauliLabel::I);
        }
    }

    #[test]
    fn decoder_covers_all_syndromes_with_weight_one() {
        let code = StabilizerCode::five_qubit();
        let table = code.minimum_weight_decoder().unwrap();
        assert_eq!(table.len(), 16);
        for (s, e) in table.iter().enumerate() {
            assert_eq!(code.syndrome(e).unwrap() as usize, s);
            assert!(e.weight() <= 1);
        }
    }

    #[test]
    fn rejects_anticommuting_generators() {
        let gens = vec![
            PauliString::parse("XI").unwrap(),
            // only one generator expected for n=2, wrong count triggers first
        ];
        assert!(StabilizerCode::new(
            gens,
            PauliString::parse("XXX").unwrap(),
            PauliString::parse("ZZZ").unwrap()
        )
        .is_err());

        // dependent generators: g and g
        let g = PauliString::parse("XZZXI").unwrap();
        assert!(StabilizerCode::new(
            vec![
                g.clone(),
                g.clone(),
                PauliString::parse("IXZZX").unwrap(),
                PauliString::parse("XIXZZ").unwrap()
            ],
            PauliString::parse("XXXXX").unwrap(),
            PauliString::parse("ZZZZZ").unwrap()
        )
        .is_err());
    }
}
