//! Output rendering. JSON and CSV carry full-precision values; tables round
//! percentages to 0.1.

use mbep_core::verify::VerifyReport;

use crate::config::OutputFormat;
use crate::{FidelityRecord, GraphCurveRecord, GraphThresholdRecord, ThresholdRecord};

fn json<T: serde::Serialize>(records: &T) -> String {
    let mut text = serde_json::to_string_pretty(records).expect("records serialize");
    text.push('\n');
    text
}

fn pct(v: f64) -> String {
    format!("{:.1}", 100.0 * v)
}

fn opt_pct(v: Option<f64>) -> String {
    v.map(pct).unwrap_or_else(|| "n/a".into())
}

fn csv_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "n/a".into())
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        let mut line = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            for _ in cell.chars().count()..*w {
                line.push(' ');
            }
        }
        line.trim_end().to_string()
    };
    let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    out.push_str(&fmt_row(&header_cells, &widths));
    out.push('\n');
    let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row, &widths));
        out.push('\n');
    }
    out
}

pub fn thresholds(records: &[ThresholdRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&records),
        OutputFormat::Csv => {
            let mut out = String::from("protocol,depth,mapping,one_minus_p_min\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.protocol,
                    r.depth.map(|d| d.to_string()).unwrap_or_default(),
                    r.mapping,
                    r.one_minus_p_min
                ));
            }
            out
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.protocol.clone(),
                        r.depth.map(|d| d.to_string()).unwrap_or_else(|| "—".into()),
                        r.mapping.clone(),
                        pct(r.one_minus_p_min),
                    ]
                })
                .collect();
            table(
                &["protocol", "concatenations", "mapping", "threshold 1−p (%)"],
                &rows,
            )
        }
    }
}

pub fn fidelities(records: &[FidelityRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&records),
        OutputFormat::Csv => {
            let mut out = String::from(
                "protocol,depth,mapping,one_minus_p,fixed_point_fidelity,success_prob_round1,rounds_to_converge\n",
            );
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.protocol,
                    r.depth,
                    r.mapping,
                    r.one_minus_p,
                    csv_opt(r.fixed_point_fidelity),
                    csv_opt(r.success_prob_round1),
                    r.rounds_to_converge
                        .map(|x| x.to_string())
                        .unwrap_or_else(|| "n/a".into()),
                ));
            }
            out
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.protocol.clone(),
                        r.mapping.clone(),
                        pct(r.one_minus_p),
                        opt_pct(r.fixed_point_fidelity),
                        r.success_prob_round1
                            .map(|s| format!("{s:.4}"))
                            .unwrap_or_else(|| "n/a".into()),
                        r.rounds_to_converge
                            .map(|x| x.to_string())
                            .unwrap_or_else(|| "n/a".into()),
                    ]
                })
                .collect();
            table(
                &[
                    "protocol",
                    "mapping",
                    "1−p (%)",
                    "fidelity (%)",
                    "success p (round 1)",
                    "rounds",
                ],
                &rows,
            )
        }
    }
}

pub fn graph_thresholds(records: &[GraphThresholdRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&records),
        OutputFormat::Csv => {
            let mut out = String::from("name,noise,q_min,p_min,one_minus_p_min\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.name, r.noise, r.q_min, r.p_min, r.one_minus_p_min
                ));
            }
            out
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.noise.clone(),
                        format!("{}", r.q_min),
                        format!("{:.4}", r.p_min),
                        pct(r.one_minus_p_min),
                    ]
                })
                .collect();
            table(
                &["state", "noise", "q_min", "p_min", "tolerable 1−p (%)"],
                &rows,
            )
        }
    }
}

pub fn graph_curve(records: &[GraphCurveRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&records),
        OutputFormat::Csv => {
            let mut out = String::from("graph,vertices,p,fidelity\n");
            for r in records {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.graph, r.vertices, r.p, r.fidelity
                ));
            }
            out
        }
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.graph.clone(),
                        r.vertices.to_string(),
                        format!("{:.4}", r.p),
                        format!("{:.6}", r.fidelity),
                    ]
                })
                .collect();
            table(&["graph", "vertices", "p", "fidelity"], &rows)
        }
    }
}

/// Verification reports are JSON by default; the table format gives a
/// human-readable pass/fail list instead.
pub fn verify_report(report: &VerifyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        if c.passed {
                            "PASS".into()
                        } else {
                            "FAIL".into()
                        },
                        c.name.clone(),
                        format!("{:.3e}", c.max_deviation),
                        format!("{:.0e}", c.tolerance),
                        c.samples.to_string(),
                    ]
                })
                .collect();
            let mut out = table(
                &["status", "check", "max deviation", "tolerance", "samples"],
                &rows,
            );
            out.push_str(&format!(
                "seed {} — {}\n",
                report.seed,
                if report.passed {
                    "all checks passed"
                } else {
                    "FAILURES PRESENT"
                }
            ));
            out
        }
        _ => json(report),
    }
}
