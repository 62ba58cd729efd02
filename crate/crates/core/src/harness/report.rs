use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::circuit::CircuitMetrics;
use crate::classifier::ClassLabel;
use crate::error::{invalid, Result};
use crate::noise::ErrorMode;

use super::accuracy::AccuracyRecord;
use super::artifacts::SynthesisArtifact;
use super::pst::protected_metrics;
use super::records::{format_float, CodeChoice, ResultRecord, Tabular};

/// Mean accuracy over the noise grid and its gain over the unprotected baseline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImprovementRecord {
    pub classifier: usize,
    pub mode: ErrorMode,
    pub code: CodeChoice,
    /// Average accuracy in percent.
    pub aa: f64,
    /// Relative improvement over `None` in percent, two decimals.
    pub ai: f64,
}

impl Tabular for ImprovementRecord {
    fn header() -> Vec<&'static str> {
        vec!["classifier", "mode", "code", "aa", "ai"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.classifier.to_string(),
            self.mode.to_string(),
            self.code.to_string(),
            format_float(self.aa),
            format_float(self.ai),
        ]
    }
}

/// `(aa_code - aa_none) / aa_none * 100`, rounded to two decimals.
pub fn relative_improvement(aa_none: f64, aa_code: f64) -> Result<f64> {
    if aa_none <= 0.0 {
        return Err(invalid("baseline accuracy must be positive"));
    }
    Ok(((aa_code - aa_none) / aa_none * 100.0 * 100.0).round() / 100.0)
}

/// Averages accuracy over noise levels per (classifier, mode, code) and compares
/// each code with the `None` baseline of the same classifier and mode.
pub fn improvement_report(records: &[AccuracyRecord]) -> Result<Vec<ImprovementRecord>> {
    let mut groups: Vec<((usize, ErrorMode, CodeChoice), Vec<f64>)> = Vec::new();
    for r in records {
        let key = (r.classifier, r.mode, r.code);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r.accuracy_pct),
            None => groups.push((key, vec![r.accuracy_pct])),
        }
    }
    groups.sort_by_key(|g| g.0);
    let aa = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    groups
        .iter()
        .map(|((classifier, mode, code), values)| {
            let baseline = groups
                .iter()
                .find(|((c, m, k), _)| c == classifier && m == mode && *k == CodeChoice::None)
                .ok_or_else(|| invalid(format!("missing None baseline for classifier {classifier}, mode {mode}")))?;
            let value = aa(values);
            Ok(ImprovementRecord {
                classifier: *classifier,
                mode: *mode,
                code: *code,
                aa: value,
                ai: relative_improvement(aa(&baseline.1), value)?,
            })
        })
        .collect()
}

/// Size of an executed circuit, per class or averaged over classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverheadRecord {
    pub classifier: usize,
    /// A class label, or `mean` for the per-code average.
    pub class_label: String,
    pub code: CodeChoice,
    pub qubits: f64,
    pub gates: f64,
    pub depth: f64,
}

impl Tabular for OverheadRecord {
    fn header() -> Vec<&'static str> {
        vec!["classifier", "class_label", "code", "qubits", "gates", "depth"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.classifier.to_string(),
            self.class_label.clone(),
            self.code.to_string(),
            format_float(self.qubits),
            format_float(self.gates),
            format_float(self.depth),
        ]
    }
}

/// Label used for per-code averages in overhead tables.
pub const MEAN_LABEL: &str = "mean";

/// Per-class rows followed by one `mean` row per (classifier, code).
pub fn overhead_rows(entries: &[(usize, ClassLabel, CodeChoice, CircuitMetrics)]) -> Vec<OverheadRecord> {
    let mut rows: Vec<OverheadRecord> = entries
        .iter()
        .map(|(classifier, label, code, m)| OverheadRecord {
            classifier: *classifier,
            class_label: label.to_string(),
            code: *code,
            qubits: m.qubits as f64,
            gates: m.gates as f64,
            depth: m.depth as f64,
        })
        .collect();
    let mut keys: Vec<(usize, CodeChoice)> = entries.iter().map(|e| (e.0, e.2)).collect();
    keys.sort();
    keys.dedup();
    for (classifier, code) in keys {
        let members: Vec<&OverheadRecord> = rows
            .iter()
            .filter(|r| r.classifier == classifier && r.code == code)
            .collect();
        let n = members.len() as f64;
        let mean = |f: fn(&OverheadRecord) -> f64| members.iter().map(|r| f(r)).sum::<f64>() / n;
        let row = OverheadRecord {
            classifier,
            class_label: MEAN_LABEL.into(),
            code,
            qubits: mean(|r| r.qubits),
            gates: mean(|r| r.gates),
            depth: mean(|r| r.depth),
        };
        rows.push(row);
    }
    rows
}

/// Overhead of every reference circuit under every code.
pub fn overhead_report(
    artifacts: &[&SynthesisArtifact],
    codes: &[CodeChoice],
    rounds_per_layer: usize,
) -> Result<Vec<OverheadRecord>> {
    let mut entries = Vec::new();
    for a in artifacts {
        for r in &a.references {
            for &code in codes {
                entries.push((a.classifier(), r.point.label, code, protected_metrics(r, code, rounds_per_layer)?));
            }
        }
    }
    Ok(overhead_rows(&entries))
}

/// Overhead table recovered from the metrics stored in PST records.
pub fn overhead_from_records(records: &[ResultRecord]) -> Vec<OverheadRecord> {
    let mut entries: Vec<(usize, ClassLabel, CodeChoice, CircuitMetrics)> = Vec::new();
    for r in records {
        if entries
            .iter()
            .any(|e| e.0 == r.classifier && e.1 == r.class_label && e.2 == r.code)
        {
            continue;
        }
        entries.push((
            r.classifier,
            r.class_label,
            r.code,
            CircuitMetrics {
                qubits: r.qubits,
                gates: r.gates,
                depth: r.depth,
                two_qubit_gates: 0,
                measurements: 0,
            },
        ));
    }
    overhead_rows(&entries)
}

/// Modes by noise levels grid of one value per cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Heatmap {
    pub classifier: usize,
    pub code: CodeChoice,
    pub modes: Vec<ErrorMode>,
    pub noise_levels: Vec<f64>,
    /// `values[mode][level]`, `None` where no record exists.
    pub values: Vec<Vec<Option<f64>>>,
}

fn pivot(classifier: usize, code: CodeChoice, cells: &[(ErrorMode, f64, f64)]) -> Heatmap {
    let mut modes: Vec<ErrorMode> = cells.iter().map(|c| c.0).collect();
    modes.sort();
    modes.dedup();
    let mut levels: Vec<f64> = cells.iter().map(|c| c.1).collect();
    levels.sort_by(|a, b| a.total_cmp(b));
    levels.dedup();
    let values = modes
        .iter()
        .map(|m| {
            levels
                .iter()
                .map(|p| {
                    let hits: Vec<f64> = cells.iter().filter(|c| c.0 == *m && c.1 == *p).map(|c| c.2).collect();
                    (!hits.is_empty()).then(|| hits.iter().sum::<f64>() / hits.len() as f64)
                })
                .collect()
        })
        .collect();
    Heatmap {
        classifier,
        code,
        modes,
        noise_levels: levels,
        values,
    }
}

/// Mean PST over classes for each (mode, p) of one classifier and code.
pub fn pst_heatmap(records: &[ResultRecord], classifier: usize, code: CodeChoice) -> Heatmap {
    let cells: Vec<(ErrorMode, f64, f64)> = records
        .iter()
        .filter(|r| r.classifier == classifier && r.code == code)
        .map(|r| (r.mode, r.p, r.pst))
        .collect();
    pivot(classifier, code, &cells)
}

/// Accuracy in percent for each (mode, p) of one classifier and code.
pub fn accuracy_heatmap(records: &[AccuracyRecord], classifier: usize, code: CodeChoice) -> Heatmap {
    let cells: Vec<(ErrorMode, f64, f64)> = records
        .iter()
        .filter(|r| r.classifier == classifier && r.code == code)
        .map(|r| (r.mode, r.p, r.accuracy_pct))
        .collect();
    pivot(classifier, code, &cells)
}

impl Heatmap {
    /// One row per mode, one column per noise level; missing cells are empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["mode".to_string()];
        header.extend(self.noise_levels.iter().map(|p| format_float(*p)));
        w.write_record(&header)?;
        for (m, row) in self.modes.iter().zip(&self.values) {
            let mut line = vec![m.to_string()];
            line.extend(row.iter().map(|v| v.map(format_float).unwrap_or_default()));
            w.write_record(&line)?;
        }
        w.flush()?;
        Ok(())
    }
}
