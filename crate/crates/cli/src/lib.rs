//! Library half of the CLI: every subcommand is a pure function from a
//! [`RunConfig`] to output text plus an exit code, so the test suite can
//! drive the exact code paths the binary runs.

pub mod config;
pub mod render;

use rayon::prelude::*;
use serde::Serialize;

use mbep_core::analysis::{
    asymptotic_threshold_bipartite, graph_fidelity_lwn, graph_threshold_from_qmin,
    reachable_fidelity, threshold, AnalysisOptions, NoisyProtocolSpec,
};
use mbep_core::dense::Graph;
use mbep_core::protocols::{registry, PurificationMap};
use mbep_core::verify::{run_mbqc_check, run_verify, VerifyOptions};

pub use config::{OutputFormat, RunConfig};

/// Exit status vocabulary: 0 ok, 1 verification failure, 2 bad config.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_CONFIG: i32 = 2;

pub struct RunOutcome {
    pub text: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRecord {
    pub protocol: String,
    pub depth: Option<usize>,
    pub mapping: String,
    pub one_minus_p_min: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FidelityRecord {
    pub protocol: String,
    pub depth: usize,
    pub mapping: String,
    pub one_minus_p: f64,
    pub fixed_point_fidelity: Option<f64>,
    pub success_prob_round1: Option<f64>,
    pub rounds_to_converge: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphThresholdRecord {
    pub name: String,
    pub noise: String,
    pub q_min: f64,
    pub p_min: f64,
    pub one_minus_p_min: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphCurveRecord {
    pub graph: String,
    pub vertices: usize,
    pub p: f64,
    pub fidelity: f64,
}

/// The graph-state threshold constants taken as inputs (determined
/// elsewhere; see README).
pub const GRAPH_QMIN_CONSTANTS: [(&str, &str, f64); 3] = [
    ("linear-cluster-10", "white", 0.6),
    ("ghz-10", "white", 0.8),
    ("closed-cluster", "bit-flip", 0.4938),
];

fn analysis_options(config: &RunConfig) -> AnalysisOptions {
    let mut options = AnalysisOptions::default();
    if let Some(t) = config.bisection_tol {
        options.bisection_tol = t;
    }
    if let Some(t) = config.convergence_tol {
        options.convergence_tol = t;
    }
    if let Some(r) = config.max_rounds {
        options.max_rounds = r;
    }
    options
}

/// Depths used when the config does not pin them.
pub fn default_depths(protocol: &str) -> anyhow::Result<Vec<usize>> {
    match protocol {
        "deutsch" | "bennett" => Ok(vec![0, 1, 2, 4, 7]),
        "code-513" => Ok(vec![0, 1, 2, 3]),
        "identity" => Ok(vec![0]),
        other => anyhow::bail!("unknown protocol: {other}"),
    }
}

fn mapping_label(protocol: &str, depth: usize) -> anyhow::Result<String> {
    let map =
        PurificationMap::from_registry(protocol, depth).map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(format!("{}→1", map.arity()))
}

fn protocol_rows(config: &RunConfig) -> anyhow::Result<Vec<(String, usize)>> {
    let mut rows = Vec::new();
    for protocol in &config.protocols {
        registry()
            .get(protocol)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let depths = match &config.depths {
            Some(d) => d.clone(),
            None => default_depths(protocol)?,
        };
        for depth in depths {
            rows.push((protocol.clone(), depth));
        }
    }
    Ok(rows)
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// `thresholds`: one row per (protocol, depth) plus the closed-form
/// asymptotic row.
pub fn cmd_thresholds(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let rows = protocol_rows(config)?;
    let options = analysis_options(config);
    let convention = config.convention;
    let computed: Vec<anyhow::Result<ThresholdRecord>> = with_pool(config.jobs, || {
        rows.par_iter()
            .map(|(protocol, depth)| {
                let t = threshold(protocol, *depth, convention, &options)
                    .map_err(|e| anyhow::anyhow!("{protocol} depth {depth}: {e}"))?;
                Ok(ThresholdRecord {
                    protocol: protocol.clone(),
                    depth: Some(*depth),
                    mapping: mapping_label(protocol, *depth)?,
                    one_minus_p_min: t,
                })
            })
            .collect()
    })?;
    let mut records = computed.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    records.push(ThresholdRecord {
        protocol: "asymptotic".into(),
        depth: None,
        mapping: "m→1 (m→∞)".into(),
        one_minus_p_min: 1.0 - asymptotic_threshold_bipartite(),
    });
    Ok(RunOutcome {
        text: render::thresholds(&records, config.format),
        exit_code: EXIT_OK,
    })
}

/// `fidelities`: one row per (protocol, depth, noise level); cells without
/// purification are reported as n/a.
pub fn cmd_fidelities(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let rows = protocol_rows(config)?;
    let mut cells = Vec::new();
    for (protocol, depth) in &rows {
        for &one_minus_p in &config.noise_grid {
            cells.push((protocol.clone(), *depth, one_minus_p));
        }
    }
    let options = analysis_options(config);
    let convention = config.convention;
    let computed: Vec<anyhow::Result<FidelityRecord>> = with_pool(config.jobs, || {
        cells
            .par_iter()
            .map(|(protocol, depth, one_minus_p)| {
                let spec = NoisyProtocolSpec::new(protocol, *depth, 1.0 - one_minus_p, convention)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                let reached = reachable_fidelity(&spec, &options);
                Ok(FidelityRecord {
                    protocol: protocol.clone(),
                    depth: *depth,
                    mapping: mapping_label(protocol, *depth)?,
                    one_minus_p: *one_minus_p,
                    fixed_point_fidelity: reached.map(|r| r.fidelity),
                    success_prob_round1: reached.map(|r| r.success_probability_round1),
                    rounds_to_converge: reached.map(|r| r.rounds),
                })
            })
            .collect()
    })?;
    let records = computed.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    Ok(RunOutcome {
        text: render::fidelities(&records, config.format),
        exit_code: EXIT_OK,
    })
}

/// `verify`: the full randomized identity suite; JSON report, exit 1 on any
/// failed check.
pub fn cmd_verify(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let report =
        run_verify(config.seed, &VerifyOptions::default()).map_err(|e| anyhow::anyhow!("{e}"))?;
    let text = render::verify_report(&report, config.format);
    Ok(RunOutcome {
        exit_code: if report.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        text,
    })
}

/// `mbqc-check`: the measurement-based invariants subset; JSON report, exit
/// 1 on any failed check.
pub fn cmd_mbqc_check(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let report = run_mbqc_check(config.seed, &VerifyOptions::default())
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    let text = render::verify_report(&report, config.format);
    Ok(RunOutcome {
        exit_code: if report.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        text,
    })
}

/// `graph` without a curve request: convert the configured q_min constants
/// to resource-noise thresholds.
pub fn cmd_graph_thresholds(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let mut records = Vec::new();
    for (name, noise, q_min) in GRAPH_QMIN_CONSTANTS {
        let p_min = graph_threshold_from_qmin(q_min).map_err(|e| anyhow::anyhow!("{e}"))?;
        records.push(GraphThresholdRecord {
            name: name.into(),
            noise: noise.into(),
            q_min,
            p_min,
            one_minus_p_min: 1.0 - p_min,
        });
    }
    Ok(RunOutcome {
        text: render::graph_thresholds(&records, config.format),
        exit_code: EXIT_OK,
    })
}

/// `graph --curve`: exact graph-state fidelity under local white noise on a
/// p grid, for external plotting.
pub fn cmd_graph_curve(
    config: &RunConfig,
    shape: &str,
    vertices: usize,
    points: usize,
) -> anyhow::Result<RunOutcome> {
    let graph = match shape {
        "line" => Graph::line(vertices),
        "ring" => Graph::ring(vertices),
        "star" => Graph::star(vertices),
        other => anyhow::bail!("unknown graph shape '{other}' (expected line|ring|star)"),
    }
    .map_err(|e| anyhow::anyhow!("{e}"))?;
    if points < 2 {
        anyhow::bail!("curve needs at least 2 points");
    }
    let mut records = Vec::new();
    for k in 0..points {
        let p = k as f64 / (points - 1) as f64;
        let fidelity = graph_fidelity_lwn(&graph, p).map_err(|e| anyhow::anyhow!("{e}"))?;
        records.push(GraphCurveRecord {
            graph: shape.into(),
            vertices,
            p,
            fidelity,
        });
    }
    Ok(RunOutcome {
        text: render::graph_curve(&records, config.format),
        exit_code: EXIT_OK,
    })
}

/// Write to `--out` or stdout.
pub fn deliver(outcome: &RunOutcome, config: &RunConfig) -> anyhow::Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => print!("{}", outcome.text),
    }
    Ok(())
}
