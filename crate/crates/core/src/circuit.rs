//! Gate-level circuit representation shared by every simulator and compiler pass.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Primitive operations. Rotation variants carry an angle in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    CX,
    CZ,
    RX(f64),
    RY(f64),
    RZ(f64),
    MeasureZ,
    Reset,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::CX | GateKind::CZ => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::RX(_) => "RX",
            GateKind::RY(_) => "RY",
            GateKind::RZ(_) => "RZ",
            GateKind::MeasureZ => "MEASUREZ",
            GateKind::Reset => "RESET",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::RX(t) | GateKind::RY(t) | GateKind::RZ(t) => Some(t),
            _ => None,
        }
    }

    /// True for operations with a unitary action (everything except measurement and reset).
    pub fn is_unitary(&self) -> bool {
        !matches!(self, GateKind::MeasureZ | GateKind::Reset)
    }

    /// Syntactic Clifford check: rotations count as non-Clifford regardless of angle.
    pub fn is_clifford(&self) -> bool {
        self.angle().is_none()
    }

    fn with_reduced_angle(self) -> Result<GateKind> {
        let reduce = |t: f64| -> Result<f64> {
            if !t.is_finite() {
                return Err(Error::NonFiniteAngle);
            }
            let r = t.rem_euclid(TAU);
            Ok(if r >= TAU { 0.0 } else { r })
        };
        Ok(match self {
            GateKind::RX(t) => GateKind::RX(reduce(t)?),
            GateKind::RY(t) => GateKind::RY(reduce(t)?),
            GateKind::RZ(t) => GateKind::RZ(reduce(t)?),
            other => other,
        })
    }
}

/// A gate applied to one or two distinct qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    kind: GateKind,
    qubits: [usize; 2],
}

impl Gate {
    /// Validates arity, operand distinctness and angle finiteness. Angles are reduced to `[0, 2π)`.
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Gate> {
        if qubits.len() != kind.arity() {
            return Err(Error::WrongArity {
                gate: kind.name(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::DuplicateOperands(kind.name()));
        }
        let kind = kind.with_reduced_angle()?;
        let mut q = [0; 2];
        q[..qubits.len()].copy_from_slice(qubits);
        Ok(Gate { kind, qubits: q })
    }

    pub fn single(kind: GateKind, q: usize) -> Result<Gate> {
        Gate::new(kind, &[q])
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Result<Gate> {
        Gate::new(kind, &[a, b])
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    /// Inverse of a unitary gate; `None` for measurement and reset.
    pub fn inverse(&self) -> Option<Gate> {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::RX(t) => GateKind::RX(-t),
            GateKind::RY(t) => GateKind::RY(-t),
            GateKind::RZ(t) => GateKind::RZ(-t),
            GateKind::MeasureZ | GateKind::Reset => return None,
            k => k,
        };
        Gate::new(kind, self.qubits()).ok()
    }

    fn remapped(&self, map: &[usize]) -> Gate {
        let mut g = *self;
        for q in g.qubits.iter_mut().take(self.kind.arity()) {
            *q = map[*q];
        }
        g
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        if let Some(t) = self.kind.angle() {
            write!(f, " {t:?}")?;
        }
        Ok(())
    }
}

/// Summary statistics used in overhead reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMetrics {
    pub qubits: usize,
    pub gates: usize,
    pub depth: usize,
    pub two_qubit_gates: usize,
    pub measurements: usize,
}

/// Ordered gate list over a fixed number of qubits.
///
/// Classical bits are numbered in the order `MeasureZ` gates appear.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Circuit {
        Circuit {
            width,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(width: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn classical_bits(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.kind == GateKind::MeasureZ)
            .count()
    }

    /// Appends in place after checking every operand is below the width.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.width) {
            return Err(Error::OperandOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Builds and appends a gate in one step.
    pub fn add(&mut self, kind: GateKind, qubits: &[usize]) -> Result<&mut Circuit> {
        self.push(Gate::new(kind, qubits)?)?;
        Ok(self)
    }

    /// Functional append: returns a new circuit with `gate` at the end.
    pub fn append_gate(&self, gate: Gate) -> Result<Circuit> {
        let mut c = self.clone();
        c.push(gate)?;
        Ok(c)
    }

    /// Appends `right` with its qubit `i` relabelled to `qubit_map[i]` in this circuit.
    pub fn compose(&self, right: &Circuit, qubit_map: &[usize]) -> Result<Circuit> {
        if qubit_map.len() != right.width {
            return Err(Error::NonInjectiveMap);
        }
        let distinct: HashSet<_> = qubit_map.iter().collect();
        if distinct.len() != qubit_map.len() {
            return Err(Error::NonInjectiveMap);
        }
        if let Some(&q) = qubit_map.iter().find(|&&q| q >= self.width) {
            return Err(Error::OperandOutOfRange {
                qubit: q,
                width: self.width,
            });
        }
        let mut out = self.clone();
        out.gates
            .extend(right.gates.iter().map(|g| g.remapped(qubit_map)));
        Ok(out)
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Result<Circuit> {
        if width < self.width {
            return Err(invalid("cannot shrink a circuit"));
        }
        Ok(Circuit {
            width,
            gates: self.gates.clone(),
        })
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_clifford())
    }

    pub fn is_unitary(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_unitary())
    }

    /// Circuit containing only the unitary gates, in order.
    pub fn unitary_part(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self
                .gates
                .iter()
                .copied()
                .filter(|g| g.kind.is_unitary())
                .collect(),
        }
    }

    /// Adjoint of a unitary circuit.
    pub fn inverse(&self) -> Result<Circuit> {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| g.inverse().ok_or(Error::NonUnitary(g.kind.name())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Circuit {
            width: self.width,
            gates,
        })
    }

    /// ASAP layer index of every gate (0-based).
    pub fn layers(&self) -> Vec<usize> {
        let mut front = vec![0usize; self.width];
        self.gates
            .iter()
            .map(|g| {
                let layer = g.qubits().iter().map(|&q| front[q]).max().unwrap_or(0);
                for &q in g.qubits() {
                    front[q] = layer + 1;
                }
                layer
            })
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.layers().iter().map(|l| l + 1).max().unwrap_or(0)
    }

    /// Total operand slots, i.e. the number of single-qubit fault locations.
    pub fn location_count(&self) -> usize {
        self.gates.iter().map(|g| g.kind.arity()).sum()
    }

    pub fn metrics(&self) -> CircuitMetrics {
        CircuitMetrics {
            qubits: self.width,
            gates: self.gates.len(),
            depth: self.depth(),
            two_qubit_gates: self.gates.iter().filter(|g| g.kind.arity() == 2).count(),
            measurements: self.classical_bits(),
        }
    }

    /// Line-oriented text form: a `width N` header then one `KIND q0 [q1] [angle]` line per gate.
    pub fn to_text(&self) -> String {
        let mut s = format!("width {}\n", self.width);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses [`Circuit::to_text`] output. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let Some(c) = circuit.as_mut() else {
                if toks.len() != 2 || toks[0] != "width" {
                    return Err(perr("expected `width N` header".into()));
                }
                let w = toks[1]
                    .parse()
                    .map_err(|_| perr(format!("bad width `{}`", toks[1])))?;
                circuit = Some(Circuit::new(w));
                continue;
            };
            let kind_template = parse_kind(toks[0]).ok_or_else(|| perr(format!("unknown gate `{}`", toks[0])))?;
            let arity = kind_template.arity();
            let want = arity + usize::from(kind_template.angle().is_some());
            if toks.len() != 1 + want {
                return Err(perr(format!("gate {} expects {want} argument(s)", toks[0])));
            }
            let qubits = toks[1..=arity]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad qubit `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            let kind = match kind_template {
                GateKind::RX(_) | GateKind::RY(_) | GateKind::RZ(_) => {
                    let t: f64 = toks[1 + arity]
                        .parse()
                        .map_err(|_| perr(format!("bad angle `{}`", toks[1 + arity])))?;
                    match kind_template {
                        GateKind::RX(_) => GateKind::RX(t),
                        GateKind::RY(_) => GateKind::RY(t),
                        _ => GateKind::RZ(t),
                    }
                }
                k => k,
            };
            let gate = Gate::new(kind, &qubits).map_err(|e| perr(e.to_string()))?;
            c.push(gate).map_err(|e| perr(e.to_string()))?;
        }
        circuit.ok_or(Error::Parse {
            line: 0,
            message: "missing `width N` header".into(),
        })
    }
}

fn parse_kind(name: &str) -> Option<GateKind> {
    Some(match name {
        "H" => GateKind::H,
        "S" => GateKind::S,
        "SDG" => GateKind::Sdg,
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "CX" => GateKind::CX,
        "CZ" => GateKind::CZ,
        "RX" => GateKind::RX(0.0),
        "RY" => GateKind::RY(0.0),
        "RZ" => GateKind::RZ(0.0),
        "MEASUREZ" => GateKind::MeasureZ,
        "RESET" => GateKind::Reset,
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_is_reduced() {
        let g = Gate::single(GateKind::RZ(-0.5), 0).unwrap();
        assert!((g.kind().angle().unwrap() - (TAU - 0.5)).abs() < 1e-12);
        let g = Gate::single(GateKind::RX(3.0 * TAU + 1.0), 0).unwrap();
        assert!((g.kind().angle().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn depth_counts_parallel_layers() {
        let mut c = Circuit::new(3);
        c.add(GateKind::H, &[0]).unwrap();
        c.add(GateKind::H, &[1]).unwrap();
        c.add(GateKind::CX, &[0, 1]).unwrap();
        c.add(GateKind::X, &[2]).unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.layers(), vec![0, 0, 1, 0]);
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(Circuit::from_text("width 2\nFOO 0\n").is_err());
        assert!(Circuit::from_text("H 0\n").is_err());
        assert!(Circuit::from_text("width 2\nCX 0 0\n").is_err());
        assert!(Circuit::from_text("width 2\nRX 0\n").is_err());
    }
}
