//! Graph states: CZ-edge circuits on |+⟩^N, plus the adjacency type shared
//! with the stabilizer-enumerator fidelity computation.

use super::gates::CircuitOp;
use super::pure::PureState;
use super::state::DenseState;
use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PauliString};

/// Simple undirected graph on up to 64 vertices, adjacency kept as bitmask
/// rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::OutOfRange(format!("graph size {n} not in 1..=64")));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n || a == b {
            return Err(Error::OutOfRange(format!(
                "edge ({a}, {b}) on {} vertices",
                self.n
            )));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Linear cluster: 0 − 1 − … − (n−1).
    pub fn line(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v)?;
        }
        Ok(g)
    }

    /// Closed linear cluster.
    pub fn ring(n: usize) -> Result<Self> {
        let mut g = Self::line(n)?;
        if n > 2 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    /// Star graph (vertex 0 connected to all others); the graph-state form
    /// of a GHZ state.
    pub fn star(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for v in 1..n {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    /// Stabilizer generator K_v = X_v · Π_{u ~ v} Z_u.
    pub fn stabilizer_generator(&self, v: usize) -> Result<PauliString> {
        if v >= self.n {
            return Err(Error::OutOfRange(format!("vertex {v}")));
        }
        let mut p = PauliString::identity(self.n);
        p.set(v, PauliLabel::X)?;
        for u in 0..self.n {
            if self.has_edge(v, u) {
                let prev = p.label(u);
                p.set(u, prev * PauliLabel::Z)?;
            }
        }
        Ok(p)
    }
}

/// Graph state as a pure state: CZ on every edge of |+⟩^N.
pub fn prepare_graph_state_pure(graph: &Graph) -> Result<PureState> {
    let mut s = PureState::zero(graph.vertices())?;
    for v in 0..graph.vertices() {
        s.apply_op(&CircuitOp::H(v))?;
    }
    for (a, b) in graph.edges() {
        s.apply_op(&CircuitOp::Cz(a, b))?;
    }
    Ok(s)
}

/// Graph state as a density matrix.
pub fn prepare_graph_state(graph: &Graph) -> Result<DenseState> {
    Ok(DenseState::from_pure(&prepare_graph_state_pure(graph)?))
}
