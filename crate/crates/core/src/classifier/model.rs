use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::error::{invalid, Result};
use crate::statevector::StateVector;

use super::dataset::{ClassLabel, DataPoint};
use super::encoding::amplitude_encode;

/// Trainable rotation angles: `(theta1, theta2)` for one qubit,
/// `(theta1, theta2, theta3, theta4)` for two.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierParams {
    pub thetas: Vec<f64>,
}

impl ClassifierParams {
    pub fn new(thetas: Vec<f64>) -> Result<ClassifierParams> {
        if thetas.len() != 2 && thetas.len() != 4 {
            return Err(invalid(format!("expected 2 or 4 angles, got {}", thetas.len())));
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(invalid("angles must be finite"));
        }
        Ok(ClassifierParams { thetas })
    }

    pub fn zeros(arity: usize) -> ClassifierParams {
        ClassifierParams {
            thetas: vec![0.0; 2 * arity],
        }
    }

    /// Number of qubits the parameters drive.
    pub fn arity(&self) -> usize {
        self.thetas.len() / 2
    }
}

fn unitary_block(params: &ClassifierParams, arity: usize) -> Result<Circuit> {
    if params.thetas.len() != 2 * arity || !(1..=2).contains(&arity) {
        return Err(invalid(format!(
            "{} angle(s) do not match a {arity}-qubit classifier",
            params.thetas.len()
        )));
    }
    let t = &params.thetas;
    let mut c = Circuit::new(arity);
    for q in 0..arity {
        c.add(GateKind::RZ(t[2 * q]), &[q])?
            .add(GateKind::RX(t[2 * q + 1]), &[q])?;
    }
    if arity == 2 {
        c.add(GateKind::CX, &[0, 1])?;
    }
    Ok(c)
}

/// Classifier block: `RZ` then `RX` per qubit, a `CX(0, 1)` for two qubits, then
/// measurement of every qubit.
pub fn classifier_circuit(params: &ClassifierParams, arity: usize) -> Result<Circuit> {
    let mut c = unitary_block(params, arity)?;
    for q in 0..arity {
        c.add(GateKind::MeasureZ, &[q])?;
    }
    Ok(c)
}

/// Encoding followed by the classifier block, without measurements.
pub fn composite_circuit(point: &DataPoint, params: &ClassifierParams) -> Result<Circuit> {
    let arity = point.dimensionality() / 2;
    let enc = amplitude_encode(point)?;
    let block = unitary_block(params, arity)?;
    enc.compose(&block, &(0..arity).collect::<Vec<_>>())
}

/// Label of the most likely outcome, ties going to the lower bit string.
pub fn label_from_distribution(dist: &[f64], dimensionality: usize) -> Result<ClassLabel> {
    let mut best = 0;
    for (i, &p) in dist.iter().enumerate() {
        if p > dist[best] + 1e-12 {
            best = i;
        }
    }
    ClassLabel::from_outcome(dimensionality, best)
}

/// Exact outcome distribution of the composite circuit.
pub fn outcome_distribution(point: &DataPoint, params: &ClassifierParams) -> Result<Vec<f64>> {
    let c = composite_circuit(point, params)?;
    let mut sv = StateVector::new(c.width())?;
    sv.apply_circuit(&c)?;
    Ok(sv.probabilities())
}

pub fn predict(point: &DataPoint, params: &ClassifierParams) -> Result<ClassLabel> {
    label_from_distribution(&outcome_distribution(point, params)?, point.dimensionality())
}
