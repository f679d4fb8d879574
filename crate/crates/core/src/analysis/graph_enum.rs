//! Graph-state fidelity under local white noise via stabilizer enumeration.
//!
//! Per-qubit white noise of parameter p shrinks every non-identity Pauli
//! expectation by p per affected site, so
//!   ⟨G| D(p) ρ_G |G⟩ = 2^{−N} Σ_{s ∈ stabilizer group} p^{wt(s)}.
//! The sum runs over all 2^N group elements; the support weight of the
//! element generated by vertex subset S is computed from adjacency parities.

use crate::dense::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by the enumerator.
pub const GRAPH_ENUM_BUDGET: usize = 20;

/// Exact fidelity of a graph state after per-qubit local white noise of
/// parameter p.
pub fn graph_fidelity_lwn(graph: &Graph, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::InvalidProbability(p));
    }
    let n = graph.vertices();
    if n > GRAPH_ENUM_BUDGET {
        return Err(Error::QubitBudget {
            needed: n,
            budget: GRAPH_ENUM_BUDGET,
        });
    }
    // powers of p by support weight
    let mut pow = [0.0f64; GRAPH_ENUM_BUDGET + 1];
    pow[0] = 1.0;
    for w in 1..=n {
        pow[w] = pow[w - 1] * p;
    }
    let mut total = 0.0f64;
    for subset in 0u64..(1u64 << n) {
        // element Π_{v∈S} K_v has X support = S and Z_u whenever u has an
        // odd number of neighbors in S; a site is in the support if either
        // component is set
        let mut weight = 0usize;
        for u in 0..n {
            let x = subset >> u & 1 == 1;
            let z = ((graph.neighbors(u) & subset).count_ones() & 1) == 1;
            if x || z {
                weight += 1;
            }
        }
        total += pow[weight];
    }
    Ok(total / (1u64 << n) as f64)
}
