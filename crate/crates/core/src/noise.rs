//! Pauli fault models and Monte-Carlo fault sampling.
//!
//! Every operand of every gate is one fault location. Locations fail independently
//! and a failing location receives a single-qubit Pauli on that operand.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{invalid, Error, Result};
use crate::pauli::Pauli;

/// Error mode of a noise model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorMode {
    /// Depolarizing: with probability `p` one of X, Y, Z uniformly.
    D,
    /// Independent bit flip (X) and phase flip (Z), each with probability `p`.
    BP,
    /// Product of an independent `BP` draw and an independent `D` draw.
    BPD,
}

impl ErrorMode {
    pub const ALL: [ErrorMode; 3] = [ErrorMode::D, ErrorMode::BP, ErrorMode::BPD];

    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorMode::D => "D",
            ErrorMode::BP => "BP",
            ErrorMode::BPD => "BPD",
        }
    }
}

impl fmt::Display for ErrorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ErrorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<ErrorMode> {
        match s {
            "D" => Ok(ErrorMode::D),
            "BP" => Ok(ErrorMode::BP),
            "BPD" => Ok(ErrorMode::BPD),
            other => Err(invalid(format!("unknown error mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    mode: ErrorMode,
    p: f64,
}

impl NoiseModel {
    pub fn new(mode: ErrorMode, p: f64) -> Result<NoiseModel> {
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(format!("fault probability {p} outside [0, 1]")));
        }
        Ok(NoiseModel { mode, p })
    }

    pub fn mode(&self) -> ErrorMode {
        self.mode
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Net per-location distribution over `[I, X, Y, Z]`.
    pub fn pauli_distribution(&self) -> [f64; 4] {
        let p = self.p;
        let d = [1.0 - p, p / 3.0, p / 3.0, p / 3.0];
        let bp = [(1.0 - p) * (1.0 - p), p * (1.0 - p), p * p, (1.0 - p) * p];
        match self.mode {
            ErrorMode::D => d,
            ErrorMode::BP => bp,
            ErrorMode::BPD => {
                let mut out = [0.0; 4];
                for (a, pa) in bp.iter().enumerate() {
                    for (b, pb) in d.iter().enumerate() {
                        out[index(PAULIS[a].compose(PAULIS[b]))] += pa * pb;
                    }
                }
                out
            }
        }
    }

    /// Probability that a location receives a non-identity Pauli.
    pub fn fault_rate(&self) -> f64 {
        let d = self.pauli_distribution();
        d[1] + d[2] + d[3]
    }
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

fn index(p: Pauli) -> usize {
    match p {
        Pauli::I => 0,
        Pauli::X => 1,
        Pauli::Y => 2,
        Pauli::Z => 3,
    }
}

/// A sampled Pauli fault attached to one operand of one gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultRealization {
    pub gate_index: usize,
    pub qubit: usize,
    pub pauli: Pauli,
}

/// Precomputed location list and conditional Pauli weights for repeated sampling.
#[derive(Clone, Debug)]
pub struct FaultSampler {
    locations: Vec<(usize, usize)>,
    rate: f64,
    log_keep: f64,
    conditional: [f64; 3],
}

impl FaultSampler {
    pub fn new(circuit: &Circuit, model: &NoiseModel) -> FaultSampler {
        let locations = circuit
            .gates()
            .iter()
            .enumerate()
            .flat_map(|(i, g)| g.qubits().iter().map(move |&q| (i, q)))
            .collect();
        let dist = model.pauli_distribution();
        let rate = dist[1] + dist[2] + dist[3];
        let conditional = if rate > 0.0 {
            [dist[1] / rate, (dist[1] + dist[2]) / rate, 1.0]
        } else {
            [1.0, 1.0, 1.0]
        };
        FaultSampler {
            locations,
            rate,
            log_keep: (1.0 - rate).ln(),
            conditional,
        }
    }

    pub fn location_count(&self) -> usize {
        self.locations.len()
    }

    /// Draws one realisation, sorted by gate index. Gaps between faults are drawn
    /// geometrically so the cost scales with the number of faults.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FaultRealization> {
        let mut out = Vec::new();
        if self.rate <= 0.0 {
            return out;
        }
        let mut pos = 0usize;
        loop {
            if self.rate < 1.0 {
                let u: f64 = 1.0 - rng.random::<f64>();
                let skip = (u.ln() / self.log_keep).floor();
                if !skip.is_finite() || skip >= (self.locations.len() - pos) as f64 {
                    break;
                }
                pos += skip as usize;
            }
            if pos >= self.locations.len() {
                break;
            }
            let v: f64 = rng.random();
            let pauli = if v < self.conditional[0] {
                Pauli::X
            } else if v < self.conditional[1] {
                Pauli::Y
            } else {
                Pauli::Z
            };
            let (gate_index, qubit) = self.locations[pos];
            out.push(FaultRealization {
                gate_index,
                qubit,
                pauli,
            });
            pos += 1;
        }
        out
    }
}

/// Draws one fault realisation for `circuit`.
pub fn sample_faults<R: Rng + ?Sized>(
    circuit: &Circuit,
    model: &NoiseModel,
    rng: &mut R,
) -> Vec<FaultRealization> {
    FaultSampler::new(circuit, model).sample(rng)
}

/// Expected number of non-identity faults per run.
pub fn expected_fault_count(circuit: &Circuit, model: &NoiseModel) -> f64 {
    circuit.location_count() as f64 * model.fault_rate()
}
