//! File layout of a run:
//!
//! * `<method>.csv` — `k,abs_y,arg_y,phase_shift`, one row per cell `1..=N`.
//!   `arg_y` is the phase unwrapped by accumulating `phase_shift`, zero at
//!   cell 1; `phase_shift` is `arg y[k+1] - arg y[k]` in `(-pi, pi]`.
//! * `comparison.csv` — `k,d_abs_m1,d_abs_m2,d_phase_m1,d_phase_m2` where
//!   `m1` is `wkb-riccati` and `m2` is `wkb-direct`, both against `exact`.
//!   Written only when all three methods ran.
//! * `phase_gap.csv` — `k,phase_gap`, `arg(y_riccati / y_direct)` per cell.
//! * `summary.json` — reflection and transmission per method, phase gap,
//!   flux defect and the configuration.
//!
//! With the JSON format the series files are `<name>.json` objects holding
//! one array per column. Numbers are printed in shortest round-trip form so
//! reruns are byte-identical.

use super::{ComparisonReport, ExperimentError, Method, MethodDeviation, OutputFormat};
use crate::{ComplexScalar, Indexed};
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

fn arg0(z: ComplexScalar) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

fn polar(z: ComplexScalar) -> Value {
    json!({ "abs": z.norm(), "arg": arg0(z) })
}

/// The summary document, keys in sorted order.
pub fn summary_json(report: &ComparisonReport) -> Value {
    let mut root = Map::new();
    for m in &report.methods {
        root.insert(
            m.method.name().to_string(),
            json!({ "R": polar(m.r), "T": polar(m.t) }),
        );
    }
    let gap = report
        .phase_gap
        .as_ref()
        .map(|g| json!({ "at_end": g.at_end, "predicted": g.predicted }));
    root.insert("phase_gap".into(), gap.unwrap_or(Value::Null));
    root.insert(
        "flux_defect".into(),
        report.flux_defect.map_or(Value::Null, Value::from),
    );
    root.insert(
        "config".into(),
        serde_json::to_value(&report.config).expect("configuration serialises"),
    );
    Value::Object(root)
}

/// A table of columns sharing the index window.
struct Table<'a> {
    names: Vec<&'a str>,
    columns: Vec<&'a Indexed<f64>>,
}

impl Table<'_> {
    fn csv(&self) -> String {
        let mut out = String::from("k");
        for name in &self.names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        let first = self.columns[0];
        for k in first.start()..=first.end() {
            write!(out, "{k}").unwrap();
            for c in &self.columns {
                write!(out, ",{}", c[k]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let first = self.columns[0];
        let mut obj = Map::new();
        obj.insert(
            "k".into(),
            json!((first.start()..=first.end()).collect::<Vec<_>>()),
        );
        for (name, c) in self.names.iter().zip(&self.columns) {
            obj.insert((*name).to_string(), json!(c.values()));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("series serialise");
        text.push('\n');
        text
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(),
        }
    }
}

fn write_file(path: PathBuf, text: &str) -> Result<PathBuf, ExperimentError> {
    std::fs::write(&path, text).map_err(|source| ExperimentError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn deviation(report: &ComparisonReport, m: Method) -> Option<&MethodDeviation> {
    report.deviations.iter().find(|d| d.method == m)
}

/// Writes every artefact of `report` into its configured output directory and
/// returns the paths written, in a fixed order.
pub fn emit_outputs(report: &ComparisonReport) -> Result<Vec<PathBuf>, ExperimentError> {
    let dir: &Path = &report.config.output_dir;
    std::fs::create_dir_all(dir).map_err(|source| ExperimentError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let format = report.config.format;
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let mut written = Vec::new();

    for m in &report.methods {
        let table = Table {
            names: vec!["abs_y", "arg_y", "phase_shift"],
            columns: vec![&m.abs_y, &m.arg_y, &m.phase_shift],
        };
        written.push(write_file(
            dir.join(format!("{}.{ext}", m.method)),
            &table.render(format),
        )?);
    }

    if let (Some(m1), Some(m2)) = (
        deviation(report, Method::WkbRiccati),
        deviation(report, Method::WkbDirect),
    ) {
        let table = Table {
            names: vec!["d_abs_m1", "d_abs_m2", "d_phase_m1", "d_phase_m2"],
            columns: vec![&m1.d_abs, &m2.d_abs, &m1.d_phase, &m2.d_phase],
        };
        written.push(write_file(
            dir.join(format!("comparison.{ext}")),
            &table.render(format),
        )?);
    }

    if let Some(gap) = &report.phase_gap {
        let table = Table {
            names: vec!["phase_gap"],
            columns: vec![&gap.series],
        };
        written.push(write_file(
            dir.join(format!("phase_gap.{ext}")),
            &table.render(format),
        )?);
    }

    let mut summary =
        serde_json::to_string_pretty(&summary_json(report)).expect("summary serialises");
    summary.push('\n');
    written.push(write_file(dir.join("summary.json"), &summary)?);
    Ok(written)
}
