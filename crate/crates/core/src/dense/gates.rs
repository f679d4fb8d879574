//! Gate matrices and the Clifford circuit vocabulary used by the resource
//! constructions.

use num_complex::Complex64 as C64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

pub fn hadamard() -> Mat2 {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn phase_s() -> Mat2 {
    [[ONE, ZERO], [ZERO, I]]
}

pub fn phase_s_dagger() -> Mat2 {
    [[ONE, ZERO], [ZERO, -I]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Mat2 {
    [[ZERO, -I], [I, ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

/// Quarter turn about x: exp(−iπX/4).
pub fn rx_quarter() -> Mat2 {
    let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mi = C64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    [[c, mi], [mi, c]]
}

/// Inverse quarter turn about x: exp(+iπX/4).
pub fn rx_quarter_inv() -> Mat2 {
    let c = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let pi = C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    [[c, pi], [pi, c]]
}

/// CNOT with the first listed qubit as control.
pub fn cnot() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = ONE;
    m[2][3] = ONE;
    m[3][2] = ONE;
    m
}

pub fn cz() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = ONE;
    m[2][2] = ONE;
    m[3][3] = -ONE;
    m
}

/// One element of a Clifford circuit: a gate or a postselected
/// computational-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitOp {
    H(usize),
    S(usize),
    SDagger(usize),
    X(usize),
    Y(usize),
    Z(usize),
    /// exp(−iπX/4) on the given qubit
    RxQuarter(usize),
    /// exp(+iπX/4) on the given qubit
    RxQuarterInv(usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Cz(usize, usize),
    /// Project the qubit onto |outcome⟩ without renormalizing.
    PostselectZ {
        qubit: usize,
        outcome: bool,
    },
}
