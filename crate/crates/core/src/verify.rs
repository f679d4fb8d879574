//! Seeded randomized verification suites.
//!
//! Everything here is deterministic given the seed: the same seed produces
//! byte-identical reports. The suites pit closed-form layers against the
//! dense engine (noise-commutation identities, protocol-step oracles,
//! measurement-based equivalence, graph-state enumerator) and are surfaced
//! through the `verify` and `mbqc-check` CLI subcommands.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::bell::BellDiagonalState;
use crate::channel::PauliChannel;
use crate::code::StabilizerCode;
use crate::dense::{
    bell_diagonal_to_dense, bell_diagonal_weights, bell_measure, gates, prepare_bell_pairs,
    prepare_graph_state, prepare_graph_state_pure, project_bell, DenseState, Graph, PureState,
    ALL_BELL,
};
use crate::error::{Error, Result};
use crate::mbqc::{
    aggregate_success, build_resource, degrade_resource, induced_pattern_map, read_in,
    ClassificationTable, Party, PatternMap,
};
use crate::pauli::{PauliLabel, PauliString, PAULI_LABELS};
use crate::protocols::{AcceptanceMode, CodeStep, PurificationMap};

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl CheckResult {
    fn new(name: &str, max_deviation: f64, tolerance: f64, samples: usize) -> Self {
        Self {
            name: name.to_string(),
            passed: max_deviation <= tolerance,
            max_deviation,
            tolerance,
            samples,
        }
    }
}

/// Full report of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn from_checks(seed: u64, checks: Vec<CheckResult>) -> Self {
        Self {
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Sample counts for the randomized suites.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub commutation_samples: usize,
    pub protocol_samples: usize,
    pub code_samples: usize,
    pub mbqc_samples: usize,
    pub graph_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            commutation_samples: 200,
            protocol_samples: 100,
            code_samples: 10,
            mbqc_samples: 50,
            graph_samples: 20,
        }
    }
}

// ---------------------------------------------------------------------------
// random generators

pub fn random_pure(n: usize, rng: &mut ChaCha12Rng) -> Result<PureState> {
    let dim = 1usize << n;
    let mut amp: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm: f64 = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amp {
        *a /= C64::new(norm, 0.0);
    }
    PureState::from_amplitudes(amp)
}

/// Random full-rank-ish density matrix: a mixture of 2^n random pure states.
pub fn random_density(n: usize, rng: &mut ChaCha12Rng) -> Result<DenseState> {
    let dim = 1usize << n;
    let mut weights: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut acc = DenseState::from_matrix(n, vec![C64::default(); dim * dim])?;
    for w in weights {
        let psi = random_pure(n, rng)?;
        acc.add_assign(&DenseState::from_pure(&psi).scaled(w))?;
    }
    Ok(acc)
}

pub fn random_channel(rng: &mut ChaCha12Rng) -> Result<PauliChannel> {
    let p = rng.gen::<f64>();
    let raw: [f64; 4] = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
    let total: f64 = raw.iter().sum();
    PauliChannel::new(p, raw.map(|a| a / total))
}

pub fn random_bell_diagonal(rng: &mut ChaCha12Rng) -> Result<BellDiagonalState> {
    let raw: [f64; 4] = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
    let total: f64 = raw.iter().sum();
    BellDiagonalState::new(raw.map(|a| a / total))
}

pub fn random_graph(rng: &mut ChaCha12Rng) -> Result<Graph> {
    let n = rng.gen_range(2..=8);
    let mut g = Graph::new(n)?;
    let mut any = false;
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(0.5) {
                g.add_edge(a, b)?;
                any = true;
            }
        }
    }
    if !any {
        g.add_edge(0, 1)?;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// dense circuit oracles for the two-pair protocol steps

/// Simulate the rotation + bilateral-CNOT + coincidence circuit on two
/// Bell-diagonal pairs with the dense engine. Returns the output 4-vector
/// and the coincidence probability.
pub fn two_pair_circuit_oracle(
    a: &BellDiagonalState,
    b: &BellDiagonalState,
    rotate: bool,
) -> Result<([f64; 4], f64)> {
    // qubit layout: (pair a: Alice 0, Bob 1), (pair b: Alice 2, Bob 3)
    let mut joint = bell_diagonal_to_dense(a)?.tensor(&bell_diagonal_to_dense(b)?)?;
    if rotate {
        joint.apply_single_qubit(0, &gates::rx_quarter())?;
        joint.apply_single_qubit(2, &gates::rx_quarter())?;
        joint.apply_single_qubit(1, &gates::rx_quarter_inv())?;
        joint.apply_single_qubit(3, &gates::rx_quarter_inv())?;
    }
    joint.apply_two_qubit(0, 2, &gates::cnot())?;
    joint.apply_two_qubit(1, 3, &gates::cnot())?;
    // coincident computational outcomes on pair b
    let mut accepted: Option<DenseState> = None;
    for outcome in [false, true] {
        let branch = joint.postselect_z(3, outcome)?.postselect_z(2, outcome)?;
        match &mut accepted {
            Some(acc) => acc.add_assign(&branch)?,
            None => accepted = Some(branch),
        }
    }
    let accepted = accepted.expect("two branches");
    let success = accepted.weight();
    let lam = bell_diagonal_weights(&accepted.normalized()?, 0, 1)?;
    Ok((lam, success))
}

/// The deutsch-step oracle.
pub fn deutsch_circuit_oracle(
    a: &BellDiagonalState,
    b: &BellDiagonalState,
) -> Result<([f64; 4], f64)> {
    two_pair_circuit_oracle(a, b, true)
}

/// The bennett-step oracle (twirled inputs, no rotations).
pub fn bennett_circuit_oracle(
    a: &BellDiagonalState,
    b: &BellDiagonalState,
) -> Result<([f64; 4], f64)> {
    two_pair_circuit_oracle(&a.twirl_to_werner(), &b.twirl_to_werner(), false)
}

/// Ten-qubit bilateral-measurement oracle for a code-based n→1 step in
/// detect mode: both parties measure each stabilizer generator (one party
/// the conjugate), keep matched outcomes, and the logical output pair is
/// read off the logical correlation operators.
pub fn code_bilateral_oracle(
    code: &StabilizerCode,
    inputs: &[BellDiagonalState],
) -> Result<([f64; 4], f64)> {
    let n = code.qubits();
    if inputs.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: inputs.len(),
        });
    }
    // interleaved layout: pair i on qubits (2i, 2i+1), Alice even, Bob odd
    let mut rho = bell_diagonal_to_dense(&inputs[0])?;
    for input in &inputs[1..] {
        rho = rho.tensor(&bell_diagonal_to_dense(input)?)?;
    }
    // matched-outcome projector per generator: Π = ½(1 + g ⊗ g^*)
    for g in code.generators() {
        let op = bilateral_operator(g, n)?;
        debug_assert!(op.is_hermitian());
        let left = rho.left_mul_pauli(&op)?;
        let right = rho.right_mul_pauli(&op)?;
        let both = left.right_mul_pauli(&op)?;
        let mut acc = rho.clone();
        acc.add_assign(&left)?;
        acc.add_assign(&right)?;
        acc.add_assign(&both)?;
        rho = acc.scaled(0.25);
    }
    let success = rho.weight();
    if success < 1e-14 {
        return Err(Error::VanishingSuccess(1e-14));
    }
    let rho = rho.normalized()?;

    // logical Bell-diagonal extraction via L̄ ⊗ L̄^*
    let ybar = {
        let raw = code.logical_x().mul(code.logical_z())?;
        if raw.is_hermitian() {
            raw
        } else {
            raw.phase_shifted(1)
        }
    };
    let logicals = [code.logical_x().clone(), ybar, code.logical_z().clone()];
    let mut t = [0.0f64; 3];
    for (k, logical) in logicals.iter().enumerate() {
        let op = bilateral_operator(logical, n)?;
        t[k] = rho.expect_pauli(&op)?.re;
    }
    let (tx, ty, tz) = (t[0], t[1], t[2]);
    Ok((
        [
            (1.0 + tx + ty + tz) / 4.0,
            (1.0 + tx - ty - tz) / 4.0,
            (1.0 - tx + ty - tz) / 4.0,
            (1.0 - tx - ty + tz) / 4.0,
        ],
        success,
    ))
}

/// The 2n-qubit operator P ⊗ P^* in the interleaved pair layout. Any global
/// phase of P cancels between the copy and its conjugate; conjugating the
/// second copy flips its sign once per Y site.
fn bilateral_operator(p: &PauliString, n: usize) -> Result<PauliString> {
    let mut op = PauliString::identity(2 * n);
    let mut y_sign = 0u8;
    for q in 0..n {
        let label = p.label(q);
        op.set(2 * q, label)?;
        op.set(2 * q + 1, label)?;
        if label == PauliLabel::Y {
            y_sign = (y_sign + 2) % 4;
        }
    }
    Ok(op.phase_shifted(y_sign))
}

// ---------------------------------------------------------------------------
// individual checks

fn check_eq_lwn_commutation(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density(3, rng)?;
        let p = rng.gen::<f64>();
        let ch = PauliChannel::lwn(p)?;
        worst = worst.max(commutation_deviation(&rho, &ch)?);
    }
    Ok(CheckResult::new("eq_lwn_commutation", worst, 1e-9, samples))
}

fn check_eq_pauli_commutation(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density(3, rng)?;
        let ch = random_channel(rng)?;
        worst = worst.max(commutation_deviation(&rho, &ch)?);
    }
    Ok(CheckResult::new(
        "eq_pauli_commutation",
        worst,
        1e-9,
        samples,
    ))
}

/// Max deviation between P_B (M¹ρ) P_B and P_B (M²ρ) P_B over all four Bell
/// projectors on qubits (0, 1) of a 3-qubit state.
fn commutation_deviation(rho: &DenseState, ch: &PauliChannel) -> Result<f64> {
    let via_first = rho.apply_channel(ch, 0)?;
    let via_second = rho.apply_channel(ch, 1)?;
    let mut worst = 0.0f64;
    for label in ALL_BELL {
        let (_, a) = project_bell(&via_first, 0, 1, label)?;
        let (_, b) = project_bell(&via_second, 0, 1, label)?;
        worst = worst.max(a.max_deviation(&b)?);
    }
    Ok(worst)
}

fn check_supplemental_basis(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let phi = prepare_bell_pairs(1)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let ch = random_channel(rng)?;
        for label in PAULI_LABELS {
            let twist = PauliString::single(2, 0, label)?;
            let rho_k = phi.conjugate_pauli(&twist)?;
            let first = rho_k.apply_channel(&ch, 0)?;
            let second = rho_k.apply_channel(&ch, 1)?;
            worst = worst.max(first.max_deviation(&second)?);
        }
    }
    Ok(CheckResult::new(
        "supplemental_basis_cases",
        worst,
        1e-9,
        samples * 4,
    ))
}

fn check_trace_preservation(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density(2, rng)?;
        let ch = random_channel(rng)?;
        let out = rho.apply_channel(&ch, rng.gen_range(0..2))?;
        worst = worst.max((out.weight() - rho.weight()).abs());
    }
    Ok(CheckResult::new(
        "channel_trace_preservation",
        worst,
        1e-10,
        samples,
    ))
}

fn check_kraus_vs_trace_form(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density(2, rng)?;
        let p = rng.gen::<f64>();
        let q = rng.gen_range(0..2);
        let kraus = rho.apply_channel(&PauliChannel::lwn(p)?, q)?;
        let traced = rho.apply_lwn_trace_form(p, q)?;
        worst = worst.max(kraus.max_deviation(&traced)?);
    }
    Ok(CheckResult::new(
        "lwn_kraus_vs_trace_form",
        worst,
        1e-12,
        samples,
    ))
}

fn check_conjugation_table(_rng: &mut ChaCha12Rng) -> Result<CheckResult> {
    // all 16 (σ_i, E) pairs: one-sided conjugation in the label algebra vs
    // the dense engine
    let phi = prepare_bell_pairs(1)?;
    let mut worst = 0.0f64;
    for sigma in PAULI_LABELS {
        for error in PAULI_LABELS {
            let twist = PauliString::single(2, 1, error)?;
            let state = phi.conjugate_pauli(&twist)?;
            let conj = PauliString::single(2, 1, sigma)?;
            let out = state.conjugate_pauli(&conj)?;
            let lam = bell_diagonal_weights(&out, 0, 1)?;
            let expected_label = sigma * error;
            for l in PAULI_LABELS {
                let expect = if l == expected_label { 1.0 } else { 0.0 };
                worst = worst.max((lam[l.index()] - expect).abs());
            }
        }
    }
    Ok(CheckResult::new(
        "one_sided_conjugation_table",
        worst,
        1e-12,
        16,
    ))
}

fn check_bell_completeness(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density(4, rng)?;
        let qa = rng.gen_range(0..4);
        let mut qb = rng.gen_range(0..4);
        while qb == qa {
            qb = rng.gen_range(0..4);
        }
        let branches = bell_measure(&rho, qa, qb)?;
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        worst = worst.max((total - rho.weight()).abs());
    }
    Ok(CheckResult::new(
        "bell_projector_completeness",
        worst,
        1e-10,
        samples,
    ))
}

fn check_protocol_oracle(
    rng: &mut ChaCha12Rng,
    samples: usize,
    protocol: &str,
) -> Result<CheckResult> {
    let step = crate::protocols::registry().get(protocol)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = random_bell_diagonal(rng)?;
        let b = random_bell_diagonal(rng)?;
        let (oracle_lam, oracle_success) = match protocol {
            "deutsch" => deutsch_circuit_oracle(&a, &b)?,
            "bennett" => bennett_circuit_oracle(&a, &b)?,
            other => return Err(Error::UnknownProtocol(other.into())),
        };
        match step.evaluate(&[a, b]) {
            Ok(out) => {
                worst = worst.max((out.success_probability - oracle_success).abs());
                for (x, y) in out.state.lambda().iter().zip(oracle_lam) {
                    worst = worst.max((x - y).abs());
                }
            }
            Err(Error::VanishingSuccess(_)) => {
                worst = worst.max(oracle_success.abs());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CheckResult::new(
        &format!("{protocol}_closed_form_vs_oracle"),
        worst,
        1e-10,
        samples,
    ))
}

fn check_code_oracle(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let step = CodeStep::five_qubit(AcceptanceMode::Detect);
    let mut worst = 0.0f64;
    for k in 0..samples {
        // mix Werner and general Bell-diagonal inputs
        let inputs: Vec<BellDiagonalState> = if k % 2 == 0 {
            let f = 0.6 + 0.39 * rng.gen::<f64>();
            vec![BellDiagonalState::werner(f)?; 5]
        } else {
            (0..5)
                .map(|_| random_bell_diagonal(rng))
                .collect::<Result<_>>()?
        };
        let (oracle_lam, oracle_success) = code_bilateral_oracle(step.code(), &inputs)?;
        let out = step.step(&inputs)?;
        worst = worst.max((out.success_probability - oracle_success).abs());
        for (x, y) in out.state.lambda().iter().zip(oracle_lam) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(CheckResult::new(
        "code513_closed_form_vs_oracle",
        worst,
        1e-9,
        samples,
    ))
}

fn check_mbqc_equivalence(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let res_a = build_resource("deutsch", 0, Party::A)?;
    let res_b = build_resource("deutsch", 0, Party::B)?;
    let table = ClassificationTable::derive(&res_a, &res_b)?;
    let step = crate::protocols::registry().get("deutsch")?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = random_bell_diagonal(rng)?;
        let b = random_bell_diagonal(rng)?;
        let pairs = vec![bell_diagonal_to_dense(&a)?, bell_diagonal_to_dense(&b)?];
        let branches = read_in(&res_a, &res_b, &pairs, &table)?;
        let total: f64 = branches.iter().map(|br| br.probability).sum();
        worst = worst.max((total - 1.0).abs());
        let (success, output) = aggregate_success(&branches)?;
        let lam = bell_diagonal_weights(&output, 0, 1)?;
        let closed = step.evaluate(&[a, b])?;
        worst = worst.max((success - closed.success_probability).abs());
        for (x, y) in lam.iter().zip(closed.state.lambda()) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(CheckResult::new(
        "measurement_based_equals_closed_form",
        worst,
        1e-9,
        samples,
    ))
}

fn check_noise_mobility(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    // moving a random channel from a resource input port to the coupled
    // pair qubit leaves every read-in branch unchanged
    let res_a = build_resource("deutsch", 0, Party::A)?;
    let res_b = build_resource("deutsch", 0, Party::B)?;
    let table = ClassificationTable::derive(&res_a, &res_b)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let ch = random_channel(rng)?;
        let port = rng.gen_range(0..2);
        let a = random_bell_diagonal(rng)?;
        let b = random_bell_diagonal(rng)?;
        let pairs = vec![bell_diagonal_to_dense(&a)?, bell_diagonal_to_dense(&b)?];

        // channel on the resource port qubit
        let mut res_noisy = res_a.clone();
        res_noisy = noisy_port(&res_noisy, port, &ch)?;
        let via_resource = read_in(&res_noisy, &res_b, &pairs, &table)?;

        // channel on the pair qubit it couples to (Alice side = qubit 0)
        let mut pairs_noisy = pairs.clone();
        pairs_noisy[port] = pairs_noisy[port].apply_channel(&ch, 0)?;
        let via_pair = read_in(&res_a, &res_b, &pairs_noisy, &table)?;

        for (x, y) in via_resource.iter().zip(&via_pair) {
            worst = worst.max((x.probability - y.probability).abs());
            if let (Some(a_out), Some(b_out)) = (&x.output, &y.output) {
                worst = worst.max(a_out.max_deviation(b_out)?);
            }
        }
    }
    Ok(CheckResult::new(
        "noise_mobility_port_vs_pair",
        worst,
        1e-9,
        samples,
    ))
}

fn noisy_port(
    resource: &crate::mbqc::ResourceState,
    port: usize,
    ch: &PauliChannel,
) -> Result<crate::mbqc::ResourceState> {
    let qubit = resource.input_ports()[port];
    crate::mbqc::resource_with_channel(resource, qubit, ch)
}

fn check_eq3_end_to_end(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    // degraded resources + Werner pairs ≡ closed-form pipeline:
    // two-sided LWN(p) on each input (q·p composition), perfect step,
    // two-sided LWN(p) on the output
    let res_a = build_resource("deutsch", 0, Party::A)?;
    let res_b = build_resource("deutsch", 0, Party::B)?;
    let table = ClassificationTable::derive(&res_a, &res_b)?;
    let step = crate::protocols::registry().get("deutsch")?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let p = 0.8 + 0.2 * rng.gen::<f64>();
        let q = 0.7 + 0.3 * rng.gen::<f64>();
        let ch = PauliChannel::lwn(p)?;
        let noisy_a = degrade_resource(&res_a, &ch)?;
        let noisy_b = degrade_resource(&res_b, &ch)?;
        let pair = BellDiagonalState::werner((1.0 + 3.0 * q * q) / 4.0)?;
        let pairs = vec![bell_diagonal_to_dense(&pair)?; 2];
        let branches = read_in(&noisy_a, &noisy_b, &pairs, &table)?;
        let (success, output) = aggregate_success(&branches)?;
        let lam = bell_diagonal_weights(&output, 0, 1)?;

        let shifted = pair.apply_lwn_both_sides(p)?;
        let closed = step.evaluate(&[shifted, shifted])?;
        let expected = closed.state.apply_lwn_both_sides(p)?;
        worst = worst.max((success - closed.success_probability).abs());
        for (x, y) in lam.iter().zip(expected.lambda()) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(CheckResult::new(
        "noise_moves_through_whole_protocol",
        worst,
        1e-9,
        samples,
    ))
}

fn check_connect_equivalence(_rng: &mut ChaCha12Rng) -> Result<CheckResult> {
    use crate::mbqc::connect;
    let mut worst = 0.0f64;

    // depth-0 resources: induced map ≡ closed form, pattern by pattern
    let res_a = build_resource("deutsch", 0, Party::A)?;
    let res_b = build_resource("deutsch", 0, Party::B)?;
    let reduced = induced_pattern_map(&res_a, &res_b)?;
    let closed = PatternMap::from_purification_map(&PurificationMap::from_registry("deutsch", 0)?)?;
    worst = worst.max(reduced.max_deviation(&closed)?);

    // connect-built 4→1 ≡ depth-1 dual-state resource ≡ closed-form tree
    let jam_a = build_resource("deutsch", 1, Party::A)?;
    let jam_b = build_resource("deutsch", 1, Party::B)?;
    let jam_map = induced_pattern_map(&jam_a, &jam_b)?;
    let tree = PatternMap::from_purification_map(&PurificationMap::from_registry("deutsch", 1)?)?;
    worst = worst.max(jam_map.max_deviation(&tree)?);

    let conn_a = {
        let up = build_resource("deutsch", 0, Party::A)?;
        let down = build_resource("deutsch", 0, Party::A)?;
        let once = connect(&up, &down, 1)?;
        connect(&up, &once, 2)?
    };
    let conn_b = {
        let up = build_resource("deutsch", 0, Party::B)?;
        let down = build_resource("deutsch", 0, Party::B)?;
        let once = connect(&up, &down, 1)?;
        connect(&up, &once, 2)?
    };
    let conn_map = induced_pattern_map(&conn_a, &conn_b)?;
    worst = worst.max(conn_map.max_deviation(&jam_map)?);

    Ok(CheckResult::new(
        "connect_matches_dual_state_resource",
        worst,
        1e-9,
        4usize.pow(4) * 2 + 16,
    ))
}

fn check_graph_enumerator(rng: &mut ChaCha12Rng, samples: usize) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let graph = random_graph(rng)?;
        let p = rng.gen::<f64>();
        let closed = crate::analysis::graph_fidelity_lwn(&graph, p)?;
        let mut rho = prepare_graph_state(&graph)?;
        for q in 0..graph.vertices() {
            rho = rho.apply_channel(&PauliChannel::lwn(p)?, q)?;
        }
        let dense = rho.fidelity_with_pure(&prepare_graph_state_pure(&graph)?)?;
        worst = worst.max((closed - dense).abs());
    }
    Ok(CheckResult::new(
        "graph_enumerator_vs_oracle",
        worst,
        1e-10,
        samples,
    ))
}

fn check_noiseless_identity(_rng: &mut ChaCha12Rng) -> Result<CheckResult> {
    // p = 1 end to end: degrading with the identity channel changes nothing
    let res_a = build_resource("deutsch", 0, Party::A)?;
    let degraded = degrade_resource(&res_a, &PauliChannel::lwn(1.0)?)?;
    let dev = res_a.state().max_deviation(degraded.state())?;
    Ok(CheckResult::new(
        "identity_noise_is_identity",
        dev,
        1e-14,
        1,
    ))
}

// ---------------------------------------------------------------------------
// suites

/// The full verification suite.
pub fn run_verify(seed: u64, options: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let checks = vec![
        check_eq_lwn_commutation(&mut rng, options.commutation_samples)?,
        check_eq_pauli_commutation(&mut rng, options.commutation_samples)?,
        check_supplemental_basis(&mut rng, options.commutation_samples.min(50))?,
        check_trace_preservation(&mut rng, options.commutation_samples)?,
        check_kraus_vs_trace_form(&mut rng, options.commutation_samples.min(50))?,
        check_conjugation_table(&mut rng)?,
        check_bell_completeness(&mut rng, options.commutation_samples.min(25))?,
        check_protocol_oracle(&mut rng, options.protocol_samples, "deutsch")?,
        check_protocol_oracle(&mut rng, options.protocol_samples, "bennett")?,
        check_code_oracle(&mut rng, options.code_samples)?,
        check_mbqc_equivalence(&mut rng, options.mbqc_samples)?,
        check_noise_mobility(&mut rng, options.mbqc_samples.min(10))?,
        check_eq3_end_to_end(&mut rng, options.mbqc_samples.min(10))?,
        check_connect_equivalence(&mut rng)?,
        check_graph_enumerator(&mut rng, options.graph_samples)?,
        check_noiseless_identity(&mut rng)?,
    ];
    Ok(VerifyReport::from_checks(seed, checks))
}

/// The measurement-based subset, behind the `mbqc-check` subcommand.
pub fn run_mbqc_check(seed: u64, options: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let checks = vec![
        check_mbqc_equivalence(&mut rng, options.mbqc_samples)?,
        check_noise_mobility(&mut rng, options.mbqc_samples.min(10))?,
        check_eq3_end_to_end(&mut rng, options.mbqc_samples.min(10))?,
        check_connect_equivalence(&mut rng)?,
        check_noiseless_identity(&mut rng)?,
    ];
    Ok(VerifyReport::from_checks(seed, checks))
}
