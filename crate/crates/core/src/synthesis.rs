//! Greedy replacement of classifier composites by discrete Clifford circuits.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::classifier::{composite_circuit, label_from_distribution, predict, ClassifierParams, DataPoint};
use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;
use crate::statevector::StateVector;

/// A 2x2 or 4x4 unitary target.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetUnitary {
    matrix: CMatrix,
}

impl TargetUnitary {
    pub fn new(matrix: CMatrix) -> Result<TargetUnitary> {
        if matrix.dim() != 2 && matrix.dim() != 4 {
            return Err(invalid("targets must be 2x2 or 4x4"));
        }
        if matrix.unitarity_error() > 1e-9 {
            return Err(invalid("target is not unitary"));
        }
        Ok(TargetUnitary { matrix })
    }

    pub fn from_circuit(circuit: &Circuit) -> Result<TargetUnitary> {
        TargetUnitary::new(CMatrix::from_circuit(circuit)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn num_qubits(&self) -> usize {
        self.matrix.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// Phase-insensitive overlap `|Tr(U^dagger V)| / dim`.
pub fn fidelity(u: &CMatrix, v: &CMatrix) -> f64 {
    u.inner(v).norm() / u.dim() as f64
}

/// Exact matrix of encoding followed by the classifier block.
pub fn composite_unitary(point: &DataPoint, params: &ClassifierParams) -> Result<TargetUnitary> {
    TargetUnitary::from_circuit(&composite_circuit(point, params)?)
}

/// Gate kinds the synthesizer may use.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSet {
    name: String,
    kinds: Vec<GateKind>,
}

impl GateSet {
    /// A custom set of Clifford kinds, in tie-break order.
    pub fn new(name: impl Into<String>, kinds: Vec<GateKind>) -> Result<GateSet> {
        if kinds.is_empty() {
            return Err(invalid("empty gate set"));
        }
        if let Some(k) = kinds.iter().find(|k| !k.is_clifford() || !k.is_unitary()) {
            return Err(Error::NonClifford(k.name()));
        }
        Ok(GateSet {
            name: name.into(),
            kinds,
        })
    }

    /// Every logical gate of the Steane code.
    pub fn steane() -> GateSet {
        use GateKind::*;
        GateSet::new("steane", vec![H, S, Sdg, X, Y, Z, CX]).expect("static set")
    }

    /// Every logical gate of the surface codes.
    pub fn surface() -> GateSet {
        use GateKind::*;
        GateSet::new("surface", vec![H, X, Y, Z, CX]).expect("static set")
    }

    /// Paulis and `CX`, a subset of every code's logical gates.
    pub fn pauli() -> GateSet {
        use GateKind::*;
        GateSet::new("pauli", vec![X, Y, Z, CX]).expect("static set")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kinds(&self) -> &[GateKind] {
        &self.kinds
    }

    fn instances(&self, qubits: usize) -> Vec<Gate> {
        let mut out = Vec::new();
        for &k in &self.kinds {
            if k.arity() == 1 {
                out.extend((0..qubits).map(|q| Gate::single(k, q).expect("valid")));
            } else {
                for a in 0..qubits {
                    for b in (0..qubits).filter(|&b| b != a) {
                        out.push(Gate::two(k, a, b).expect("valid"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for GateSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<GateSet> {
        match s {
            "steane" => Ok(GateSet::steane()),
            "surface" => Ok(GateSet::surface()),
            "pauli" => Ok(GateSet::pauli()),
            other => Err(invalid(format!("unknown gate set `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisOptions {
    pub max_gates: usize,
    pub stall_limit: usize,
    /// Length of gate sequences scored before committing the first gate.
    pub lookahead: usize,
}

impl SynthesisOptions {
    /// 12 gates for one qubit, 24 for two; stall limit 3; three-gate lookahead.
    pub fn for_qubits(qubits: usize) -> SynthesisOptions {
        SynthesisOptions {
            max_gates: if qubits <= 1 { 12 } else { 24 },
            stall_limit: 3,
            lookahead: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisResult {
    pub circuit: Circuit,
    pub fidelity: f64,
    /// Greedy iterations performed.
    pub gate_budget_used: usize,
    /// Best fidelity after each iteration, starting with the empty circuit.
    pub history: Vec<f64>,
}

const EXACT: f64 = 1.0 - 1e-12;

/// Greedy synthesis: each iteration scores every gate sequence up to
/// `opts.lookahead` long appended to the current circuit and commits the first gate
/// of the best one. Ties go to shorter sequences, then gate-set order, then operand
/// order. Returns the best prefix seen.
pub fn greedy_synthesize(
    target: &TargetUnitary,
    gate_set: &GateSet,
    opts: &SynthesisOptions,
) -> Result<SynthesisResult> {
    if opts.lookahead == 0 {
        return Err(invalid("lookahead must be at least 1"));
    }
    let n = target.num_qubits();
    let u = target.matrix();
    let gates = gate_set.instances(n);
    let mats = gates
        .iter()
        .map(|g| CMatrix::from_circuit(&Circuit::with_gates(n, [*g])?))
        .collect::<Result<Vec<_>>>()?;

    let mut v = CMatrix::identity(target.dim());
    let mut committed: Vec<Gate> = Vec::new();
    let mut best_len = 0;
    let mut best_fid = fidelity(u, &v);
    let mut history = vec![best_fid];
    let mut stall = 0;
    let mut iterations = 0;

    while committed.len() < opts.max_gates && best_fid < EXACT && stall < opts.stall_limit {
        iterations += 1;
        let mut choice: Option<(f64, usize)> = None;
        // Depth-first over sequences, scoring each prefix length as its own candidate.
        let mut frontier: Vec<(usize, CMatrix)> =
            mats.iter().enumerate().map(|(i, m)| (i, m.mul(&v))).collect();
        for depth in 1..=opts.lookahead {
            for (first, w) in &frontier {
                let f = fidelity(u, w);
                if choice.is_none_or(|(bf, _)| f > bf + 1e-12) {
                    choice = Some((f, *first));
                }
            }
            if depth == opts.lookahead {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|(first, w)| mats.iter().map(move |m| (*first, m.mul(w))))
                .collect();
        }
        let (_, first) = choice.expect("non-empty gate set");
        v = mats[first].mul(&v);
        committed.push(gates[first]);
        let f = fidelity(u, &v);
        if f > best_fid + 1e-12 {
            best_fid = f;
            best_len = committed.len();
            stall = 0;
        } else {
            stall += 1;
        }
        history.push(best_fid);
    }
    Ok(SynthesisResult {
        circuit: Circuit::with_gates(n, committed[..best_len].iter().copied())?,
        fidelity: best_fid,
        gate_budget_used: iterations,
        history,
    })
}

/// Synthesizes one point's composite.
pub fn synthesize_point(
    point: &DataPoint,
    params: &ClassifierParams,
    gate_set: &GateSet,
    opts: &SynthesisOptions,
) -> Result<SynthesisResult> {
    greedy_synthesize(&composite_unitary(point, params)?, gate_set, opts)
}

/// Exact outcome distribution of a unitary circuit applied to `|0...0>`.
pub fn circuit_distribution(circuit: &Circuit) -> Result<Vec<f64>> {
    let mut sv = StateVector::new(circuit.width())?;
    sv.apply_circuit(&circuit.unitary_part())?;
    Ok(sv.probabilities())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccuracyComparison {
    pub original: f64,
    pub synthesized: f64,
    /// `original - synthesized` in percentage points.
    pub reduction_pct: f64,
    pub points: usize,
}

/// Classifies `points` with the exact composites and with their syntheses.
pub fn synthesis_accuracy_report(
    points: &[&DataPoint],
    params: &ClassifierParams,
    gate_set: &GateSet,
    opts: &SynthesisOptions,
) -> Result<AccuracyComparison> {
    if points.is_empty() {
        return Err(invalid("no points to classify"));
    }
    let hits = points
        .par_iter()
        .map(|p| -> Result<(bool, bool)> {
            let original = predict(p, params)? == p.label;
            let s = synthesize_point(p, params, gate_set, opts)?;
            let label = label_from_distribution(&circuit_distribution(&s.circuit)?, p.dimensionality())?;
            Ok((original, label == p.label))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = points.len() as f64;
    let original = hits.iter().filter(|h| h.0).count() as f64 / n;
    let synthesized = hits.iter().filter(|h| h.1).count() as f64 / n;
    Ok(AccuracyComparison {
        original,
        synthesized,
        reduction_pct: (original - synthesized) * 100.0,
        points: points.len(),
    })
}
