use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::classifier::{predict, label_from_distribution, ClassLabel, ClassifierParams, DataPoint, Dataset, TrainReport};
use crate::error::{invalid, Result};
use crate::synthesis::{circuit_distribution, synthesize_point, GateSet, SynthesisOptions};

/// Output of training: the report plus the held-out points of the best fold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainArtifact {
    pub dimensionality: usize,
    pub report: TrainReport,
    pub test_points: Vec<DataPoint>,
}

impl TrainArtifact {
    pub fn new(dataset: &Dataset, report: TrainReport) -> TrainArtifact {
        let test_points = report
            .test_indices
            .iter()
            .map(|&i| dataset.points[i].clone())
            .collect();
        TrainArtifact {
            dimensionality: dataset.dimensionality,
            report,
            test_points,
        }
    }
}

/// A synthesized unitary circuit for one data point, stored in text form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesizedPoint {
    pub point: DataPoint,
    pub circuit: String,
    pub fidelity: f64,
    /// Noiseless probability that the circuit returns the point's label.
    pub clean_pst: f64,
    /// Whether the noiseless circuit's most likely outcome is the point's label.
    pub correct: bool,
}

impl SynthesizedPoint {
    pub fn circuit(&self) -> Result<Circuit> {
        Circuit::from_text(&self.circuit)
    }

    /// The synthesized circuit followed by a measurement of every qubit.
    pub fn measured_circuit(&self) -> Result<Circuit> {
        measured(&self.circuit()?)
    }
}

/// Appends `MeasureZ` on every qubit in index order.
pub fn measured(unitary: &Circuit) -> Result<Circuit> {
    let mut c = unitary.clone();
    for q in 0..c.width() {
        c.add(GateKind::MeasureZ, &[q])?;
    }
    Ok(c)
}

/// Output of synthesis: held-out points with their circuits and one reference point per class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisArtifact {
    pub dimensionality: usize,
    pub gate_set: String,
    pub params: ClassifierParams,
    /// Test accuracy of the parameterized classifier.
    pub original_accuracy: f64,
    /// Test accuracy of the synthesized circuits.
    pub clean_accuracy: f64,
    pub references: Vec<SynthesizedPoint>,
    pub points: Vec<SynthesizedPoint>,
}

impl SynthesisArtifact {
    /// Number of classifier qubits.
    pub fn classifier(&self) -> usize {
        self.dimensionality / 2
    }

    pub fn reference(&self, label: ClassLabel) -> Result<&SynthesizedPoint> {
        self.references
            .iter()
            .find(|r| r.point.label == label)
            .ok_or_else(|| invalid(format!("no reference point for class {label}")))
    }
}

/// Synthesizes every held-out point and picks the reference points.
///
/// A class's reference point is, among its held-out points whose synthesized
/// circuit has the highest noiseless success probability, the one closest to the
/// class centroid.
pub fn synthesize_artifact(
    train: &TrainArtifact,
    gate_set: &GateSet,
    opts: &SynthesisOptions,
) -> Result<SynthesisArtifact> {
    let dim = train.dimensionality;
    let params = &train.report.params;
    if train.test_points.is_empty() {
        return Err(invalid("no held-out points to synthesize"));
    }
    let results = train
        .test_points
        .par_iter()
        .map(|p| -> Result<(bool, bool, SynthesizedPoint)> {
            let original = predict(p, params)? == p.label;
            let s = synthesize_point(p, params, gate_set, opts)?;
            let dist = circuit_distribution(&s.circuit)?;
            let synthesized = label_from_distribution(&dist, dim)? == p.label;
            let sp = SynthesizedPoint {
                point: p.clone(),
                circuit: s.circuit.to_text(),
                fidelity: s.fidelity,
                clean_pst: dist[p.label.outcome()],
                correct: synthesized,
            };
            Ok((original, synthesized, sp))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = results.len() as f64;
    let original_accuracy = results.iter().filter(|r| r.0).count() as f64 / n;
    let clean_accuracy = results.iter().filter(|r| r.1).count() as f64 / n;
    let points: Vec<SynthesizedPoint> = results.into_iter().map(|r| r.2).collect();

    let mut references = Vec::new();
    for &label in ClassLabel::for_dimensionality(dim)? {
        let members: Vec<&SynthesizedPoint> = points.iter().filter(|s| s.point.label == label).collect();
        if members.is_empty() {
            return Err(invalid(format!("no held-out point of class {label}")));
        }
        let mut centroid = vec![0.0; dim];
        for m in &members {
            for (c, x) in centroid.iter_mut().zip(&m.point.features) {
                *c += x / members.len() as f64;
            }
        }
        let best_pst = members.iter().map(|m| m.clean_pst).fold(0.0, f64::max);
        let dist = |m: &SynthesizedPoint| -> f64 {
            m.point.features.iter().zip(&centroid).map(|(x, c)| (x - c) * (x - c)).sum()
        };
        let mut chosen: Option<&SynthesizedPoint> = None;
        for m in members.iter().filter(|m| m.clean_pst >= best_pst - 1e-9) {
            if chosen.is_none_or(|c| dist(m) < dist(c)) {
                chosen = Some(m);
            }
        }
        references.push(chosen.expect("non-empty class").clone());
    }
    Ok(SynthesisArtifact {
        dimensionality: dim,
        gate_set: gate_set.name().to_string(),
        params: params.clone(),
        original_accuracy,
        clean_accuracy,
        references,
        points,
    })
}

/// Writes any artifact as pretty JSON.
pub fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}
