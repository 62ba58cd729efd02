//! Dense complex state-vector simulation.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|q0 q1 ... q(n-1)>`
//! reads left to right as a binary number.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::noise::FaultRealization;
use crate::pauli::Pauli;

/// Largest register this backend will allocate.
pub const DENSE_QUBIT_CAP: usize = 26;

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// 2x2 matrix of a single-qubit unitary gate kind.
pub fn single_qubit_matrix(kind: GateKind) -> Option<Mat2> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Some(match kind {
        GateKind::H => [
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ],
        GateKind::S => [[ONE, ZERO], [ZERO, I]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, -I]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, -I], [I, ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
        GateKind::RX(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::RY(t) => {
            let (s, c) = (t / 2.0).sin_cos();
            [
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
            ]
        }
        GateKind::RZ(t) => [
            [Complex64::from_polar(1.0, -t / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, t / 2.0)],
        ],
        _ => return None,
    })
}

fn pauli_kind(p: Pauli) -> Option<GateKind> {
    match p {
        Pauli::I => None,
        Pauli::X => Some(GateKind::X),
        Pauli::Y => Some(GateKind::Y),
        Pauli::Z => Some(GateKind::Z),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `n` qubits.
    pub fn new(n: usize) -> Result<StateVector> {
        if n > DENSE_QUBIT_CAP {
            return Err(Error::WidthExceedsDenseCap {
                width: n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(StateVector { n, amps })
    }

    /// Wraps explicit amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(crate::error::invalid("amplitude count must be a power of two"));
        }
        let n = len.trailing_zeros() as usize;
        if n > DENSE_QUBIT_CAP {
            return Err(Error::WidthExceedsDenseCap {
                width: n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        Ok(StateVector { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::OperandOutOfRange {
                qubit: q,
                width: self.n,
            });
        }
        Ok(())
    }

    pub fn apply_matrix(&mut self, q: usize, m: &Mat2) -> Result<()> {
        self.check(q)?;
        let mask = self.mask(q);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | mask];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Applies a unitary gate. Measurement and reset go through [`StateVector::measure`]
    /// and [`StateVector::reset`].
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let q = gate.qubits();
        match gate.kind() {
            GateKind::CX => {
                self.check(q[0])?;
                self.check(q[1])?;
                let (c, t) = (self.mask(q[0]), self.mask(q[1]));
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
                Ok(())
            }
            GateKind::CZ => {
                self.check(q[0])?;
                self.check(q[1])?;
                let both = self.mask(q[0]) | self.mask(q[1]);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & both == both {
                        *a = -*a;
                    }
                }
                Ok(())
            }
            k @ (GateKind::MeasureZ | GateKind::Reset) => Err(Error::NonUnitary(k.name())),
            k => self.apply_matrix(q[0], &single_qubit_matrix(k).expect("single-qubit kind")),
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) -> Result<()> {
        match pauli_kind(p) {
            Some(k) => self.apply_matrix(q, &single_qubit_matrix(k).expect("pauli")),
            None => self.check(q),
        }
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> Result<f64> {
        self.check(q)?;
        let mask = self.mask(q);
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Exact distribution over outcomes of measuring `qubits`, indexed with
    /// `qubits[0]` as the most significant bit.
    pub fn outcome_distribution(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for &q in qubits {
            self.check(q)?;
        }
        let k = qubits.len();
        let mut dist = vec![0.0; 1 << k];
        for (i, a) in self.amps.iter().enumerate() {
            let mut idx = 0;
            for &q in qubits {
                idx = (idx << 1) | usize::from(i & self.mask(q) != 0);
            }
            dist[idx] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Distribution over all qubits in basis-index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Projective Z measurement of one qubit with collapse and renormalisation.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<bool> {
        let p1 = self.prob_one(q)?;
        let outcome = rng.random::<f64>() < p1;
        let mask = self.mask(q);
        let norm = if outcome { p1 } else { 1.0 - p1 }.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if (i & mask != 0) == outcome {
                *a /= norm;
            } else {
                *a = ZERO;
            }
        }
        Ok(outcome)
    }

    /// Measures and flips back to `|0>`.
    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<()> {
        if self.measure(q, rng)? {
            self.apply_pauli(q, Pauli::X)?;
        }
        Ok(())
    }

    /// Samples every qubit at once; returns the bits (qubit order) and the collapsed state.
    pub fn measure_all<R: Rng + ?Sized>(&self, rng: &mut R) -> (Vec<bool>, StateVector) {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut chosen = self.amps.len() - 1;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                chosen = i;
                break;
            }
        }
        let bits = (0..self.n).map(|q| chosen & self.mask(q) != 0).collect();
        let mut amps = vec![ZERO; self.amps.len()];
        amps[chosen] = ONE;
        (bits, StateVector { n: self.n, amps })
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() > 1e-12 {
                writeln!(f, "|{:0width$b}> {:+.6}{:+.6}i", i, a.re, a.im, width = self.n)?;
            }
        }
        Ok(())
    }
}

/// Executes `circuit` from `|0...0>` with the given faults and returns the classical record.
///
/// A fault on a `MeasureZ` location is applied just before the measurement; on every other
/// gate it is applied just after.
pub fn run_statevector<R: Rng + ?Sized>(
    circuit: &Circuit,
    faults: &[FaultRealization],
    rng: &mut R,
) -> Result<Vec<bool>> {
    let mut sv = StateVector::new(circuit.width())?;
    let mut record = Vec::with_capacity(circuit.classical_bits());
    let mut faults = faults.iter().peekable();
    for (idx, g) in circuit.gates().iter().enumerate() {
        let mut here = Vec::new();
        while let Some(f) = faults.next_if(|f| f.gate_index == idx) {
            here.push(*f);
        }
        match g.kind() {
            GateKind::MeasureZ => {
                for f in &here {
                    sv.apply_pauli(f.qubit, f.pauli)?;
                }
                record.push(sv.measure(g.qubits()[0], rng)?);
            }
            GateKind::Reset => {
                sv.reset(g.qubits()[0], rng)?;
                for f in &here {
                    sv.apply_pauli(f.qubit, f.pauli)?;
                }
            }
            _ => {
                sv.apply_gate(g)?;
                for f in &here {
                    sv.apply_pauli(f.qubit, f.pauli)?;
                }
            }
        }
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_state_distribution() {
        let mut sv = StateVector::new(2).unwrap();
        sv.apply_gate(&Gate::single(GateKind::H, 0).unwrap()).unwrap();
        sv.apply_gate(&Gate::two(GateKind::CX, 0, 1).unwrap()).unwrap();
        let d = sv.outcome_distribution(&[0, 1]).unwrap();
        assert!((d[0] - 0.5).abs() < 1e-12 && (d[3] - 0.5).abs() < 1e-12);
        assert!(d[1].abs() < 1e-12 && d[2].abs() < 1e-12);
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        let mut sv = StateVector::new(3).unwrap();
        sv.apply_gate(&Gate::single(GateKind::X, 0).unwrap()).unwrap();
        assert!((sv.amplitudes()[4].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            StateVector::new(DENSE_QUBIT_CAP + 1),
            Err(Error::WidthExceedsDenseCap { .. })
        ));
    }
}
