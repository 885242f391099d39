//! CSV and JSON outputs.

use std::io::Write;
use std::path::Path;

use super::{ExperimentKind, Summary};
use crate::error::Result;

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    Ok(csv::Writer::from_path(path)?)
}

/// One row per replication:
/// `rep, n, beta, gamma, tree_or_m, sum, max, N_<y>..., wall_ms`.
pub fn write_replications_csv(summary: &Summary, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let mut header: Vec<String> = ["rep", "n", "beta", "gamma", "tree_or_m", "sum", "max"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let with_exceedances = summary.kind != ExperimentKind::DegreeCheck;
    if with_exceedances {
        header.extend(summary.thresholds.iter().map(|y| format!("N_{y}")));
    }
    header.push("wall_ms".into());
    w.write_record(&header)?;
    for r in &summary.replications {
        let mut row = vec![
            r.rep.to_string(),
            summary.n.to_string(),
            summary.beta.to_string(),
            summary.gamma.to_string(),
            summary.pattern.clone(),
            r.sum.to_string(),
            r.max.to_string(),
        ];
        if with_exceedances {
            row.extend(r.exceedances.iter().map(|c| c.to_string()));
        }
        row.push(format!("{:.3}", r.wall_ms));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json(summary: &Summary, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, summary)?;
    writeln!(f)?;
    Ok(())
}

/// Tidy plot data; the columns depend on the experiment kind (see the
/// README). A summary without data yields a header-only file.
pub fn emit_plot_data(summary: &Summary, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    match summary.kind {
        ExperimentKind::Maxima | ExperimentKind::CliqueMaxima => {
            w.write_record(["rep", "scaled_max"])?;
            for (rep, x) in summary.scaled.iter().enumerate() {
                w.write_record([rep.to_string(), x.to_string()])?;
            }
        }
        ExperimentKind::StableSum | ExperimentKind::CliqueStable => {
            w.write_record(["rep", "scaled_sum"])?;
            for (rep, x) in summary.scaled.iter().enumerate() {
                w.write_record([rep.to_string(), x.to_string()])?;
            }
        }
        ExperimentKind::PpConvergence | ExperimentKind::CliquePp => {
            w.write_record(["threshold", "rep", "count", "target_mean"])?;
            for (t, y) in summary.thresholds.iter().enumerate() {
                let target = summary.exceedances.get(t).map(|s| s.target.to_string()).unwrap_or_default();
                for r in &summary.replications {
                    w.write_record([y.to_string(), r.rep.to_string(), r.exceedances[t].to_string(), target.clone()])?;
                }
            }
        }
        ExperimentKind::MuScan | ExperimentKind::NuScan => {
            w.write_record(["u", "estimate", "std_error", "oracle_value"])?;
            for row in &summary.scan {
                w.write_record([
                    row.u.to_string(),
                    row.estimate.value.to_string(),
                    row.estimate.std_error.to_string(),
                    row.oracle.map(|o| o.to_string()).unwrap_or_default(),
                ])?;
            }
        }
        ExperimentKind::DegreeCheck => {
            w.write_record(["degree", "frequency"])?;
            let mut hist: Vec<u64> = Vec::new();
            for d in summary.replications.iter().flat_map(|r| r.degrees.iter()) {
                let d = *d as usize;
                if hist.len() <= d {
                    hist.resize(d + 1, 0);
                }
                hist[d] += 1;
            }
            for (d, c) in hist.iter().enumerate() {
                w.write_record([d.to_string(), c.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
