use std::sync::Arc;

use rand::Rng;

use crate::circuit::{Circuit, GateKind};
use crate::error::{invalid, Error, Result};
use crate::noise::FaultRealization;
use crate::pauli::{Pauli, PauliString};
use crate::tableau::run_clifford_circuit;

use super::circuits::{emit_extraction, emit_logical, emit_readout, emit_zero_state, PatchQubits};
use super::code::StabilizerCode;
use super::decoder::{build_lookup_table, SyndromeTable};

/// One scheduled block of the physical circuit, used to interpret the record.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Prepare { patch: usize },
    Logical { kind: GateKind, patches: Vec<usize> },
    Extract { patch: usize, first_bit: usize },
    Readout { patch: usize, first_bit: usize },
}

/// A logical circuit compiled onto code patches, with the data needed to decode it.
#[derive(Clone, Debug)]
pub struct ProtectedCircuitPlan {
    code: StabilizerCode,
    table: Arc<SyndromeTable>,
    steps: Vec<Step>,
    circuit: Circuit,
    output_order: Vec<usize>,
    logical_width: usize,
}

/// Compiles `logical` onto one patch of `code` per logical qubit.
///
/// Each patch is prepared in `|0_L>`. Logical gates are grouped into ASAP layers;
/// each layer is followed by `rounds_per_layer` extraction rounds on every patch
/// (a gate-free circuit still gets one batch of rounds). Every patch ends with a
/// transversal data measurement. `MeasureZ` gates in `logical` must be terminal.
pub fn assemble_protected_circuit(
    logical: &Circuit,
    code: &StabilizerCode,
    rounds_per_layer: usize,
) -> Result<ProtectedCircuitPlan> {
    let table = Arc::new(build_lookup_table(code));
    assemble_with_table(logical, code, table, rounds_per_layer)
}

/// As [`assemble_protected_circuit`] with a prebuilt decoder.
pub fn assemble_with_table(
    logical: &Circuit,
    code: &StabilizerCode,
    table: Arc<SyndromeTable>,
    rounds_per_layer: usize,
) -> Result<ProtectedCircuitPlan> {
    if rounds_per_layer == 0 {
        return Err(invalid("rounds_per_layer must be at least 1"));
    }
    if table.code() != code.kind() {
        return Err(invalid("decoder table belongs to a different code"));
    }
    let width = logical.width();
    let mut measured: Vec<usize> = Vec::new();
    for g in logical.gates() {
        match g.kind() {
            GateKind::MeasureZ => {
                let q = g.qubits()[0];
                if measured.contains(&q) {
                    return Err(invalid(format!("logical qubit {q} measured twice")));
                }
                measured.push(q);
            }
            GateKind::Reset => return Err(Error::UnsupportedLogicalGate {
                gate: "RESET",
                code: code.kind().to_string(),
            }),
            k => {
                code.check_logical(k)?;
                if g.qubits().iter().any(|q| measured.contains(q)) {
                    return Err(invalid("logical gates after a measurement are not supported"));
                }
            }
        }
    }
    let output_order = if measured.is_empty() {
        (0..width).collect()
    } else {
        measured
    };

    let per_patch = code.qubits_per_patch();
    let mut patches: Vec<PatchQubits> = (0..width)
        .map(|i| PatchQubits::contiguous(code, i * per_patch))
        .collect();
    let mut circuit = Circuit::new(width * per_patch);
    let mut steps = Vec::new();
    let mut bits = 0usize;

    for (i, p) in patches.iter().enumerate() {
        emit_zero_state(code, p, &mut circuit)?;
        steps.push(Step::Prepare { patch: i });
    }

    let unitary = logical.unitary_part();
    let layers = unitary.layers();
    let depth = unitary.depth();
    let extraction_batch = |patches: &mut [PatchQubits],
                                circuit: &mut Circuit,
                                steps: &mut Vec<Step>,
                                bits: &mut usize|
     -> Result<()> {
        for _ in 0..rounds_per_layer {
            for (i, p) in patches.iter_mut().enumerate() {
                emit_extraction(code, p, circuit)?;
                steps.push(Step::Extract {
                    patch: i,
                    first_bit: *bits,
                });
                *bits += code.num_generators();
            }
        }
        Ok(())
    };

    if depth == 0 {
        extraction_batch(&mut patches, &mut circuit, &mut steps, &mut bits)?;
    }
    for layer in 0..depth {
        for (g, _) in unitary
            .gates()
            .iter()
            .zip(&layers)
            .filter(|(_, &l)| l == layer)
        {
            let targets = g.qubits().to_vec();
            let mut refs: Vec<&mut PatchQubits> = Vec::new();
            // Split borrows so a two-qubit gate can hold both patches mutably.
            let (lo, hi) = (targets.iter().min().copied(), targets.iter().max().copied());
            match (targets.len(), lo, hi) {
                (1, Some(a), _) => refs.push(&mut patches[a]),
                (2, Some(lo), Some(hi)) => {
                    let (left, right) = patches.split_at_mut(hi);
                    let (pl, ph) = (&mut left[lo], &mut right[0]);
                    if targets[0] == lo {
                        refs.push(pl);
                        refs.push(ph);
                    } else {
                        refs.push(ph);
                        refs.push(pl);
                    }
                }
                _ => unreachable!("gates have one or two operands"),
            }
            emit_logical(code, g.kind(), &mut refs, &mut circuit)?;
            steps.push(Step::Logical {
                kind: g.kind(),
                patches: targets,
            });
        }
        extraction_batch(&mut patches, &mut circuit, &mut steps, &mut bits)?;
    }

    for (i, p) in patches.iter().enumerate() {
        emit_readout(code, p, &mut circuit)?;
        steps.push(Step::Readout {
            patch: i,
            first_bit: bits,
        });
        bits += code.n();
    }
    debug_assert_eq!(bits, circuit.classical_bits());

    Ok(ProtectedCircuitPlan {
        code: code.clone(),
        table,
        steps,
        circuit,
        output_order,
        logical_width: width,
    })
}

impl ProtectedCircuitPlan {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn table(&self) -> &SyndromeTable {
        &self.table
    }

    pub fn logical_width(&self) -> usize {
        self.logical_width
    }

    /// Decodes a full measurement record into logical bits.
    ///
    /// Bits follow the logical circuit's measurement order, or qubit order when it
    /// has no measurements.
    pub fn decode_and_readout(&self, record: &[bool]) -> Result<Vec<bool>> {
        let expected = self.circuit.classical_bits();
        if record.len() != expected {
            return Err(Error::RecordLength {
                expected,
                got: record.len(),
            });
        }
        let code = &self.code;
        let n = code.n();
        let mut frames = vec![PauliString::identity(n); self.logical_width];
        let mut logical = vec![false; self.logical_width];
        for step in &self.steps {
            match step {
                Step::Prepare { patch } => frames[*patch] = PauliString::identity(n),
                Step::Logical { kind, patches } => match kind {
                    GateKind::H => {
                        let f = &mut frames[patches[0]];
                        f.swap_xz();
                        *f = f.permuted(code.hadamard_relabel());
                    }
                    GateKind::S | GateKind::Sdg => {
                        let f = &mut frames[patches[0]];
                        for q in 0..n {
                            let (x, z) = f.get(q).bits();
                            f.set(q, Pauli::from_bits(x, z ^ x));
                        }
                    }
                    GateKind::CX => {
                        let (a, b) = (patches[0], patches[1]);
                        for q in 0..n {
                            let (xa, za) = frames[a].get(q).bits();
                            let (xb, zb) = frames[b].get(q).bits();
                            frames[a].set(q, Pauli::from_bits(xa, za ^ zb));
                            frames[b].set(q, Pauli::from_bits(xb ^ xa, zb));
                        }
                    }
                    _ => {}
                },
                Step::Extract { patch, first_bit } => {
                    let mut s = 0u64;
                    for i in 0..code.num_generators() {
                        if record[first_bit + i] {
                            s |= 1 << i;
                        }
                    }
                    let residual = s ^ code.syndrome(&frames[*patch]);
                    let fix = self.table.lookup(residual)?;
                    frames[*patch].mul_assign(&fix);
                }
                Step::Readout { patch, first_bit } => {
                    let frame = &frames[*patch];
                    let mut data: Vec<bool> = (0..n)
                        .map(|q| record[first_bit + q] ^ frame.x_bit(q))
                        .collect();
                    let flips: Vec<usize> = (0..n).filter(|&q| data[q]).collect();
                    let s = code.syndrome(&PauliString::from_support(n, &flips, Pauli::X));
                    for &q in self.table.x_correction(s)? {
                        data[q] ^= true;
                    }
                    logical[*patch] = code
                        .logical_z_support()
                        .iter()
                        .fold(false, |acc, &q| acc ^ data[q]);
                }
            }
        }
        Ok(self.output_order.iter().map(|&q| logical[q]).collect())
    }

    /// Every single fault (each location, operand and non-identity Pauli) after
    /// which the decoded output differs from `expected`.
    pub fn malignant_single_faults<R: Rng + ?Sized>(&self, expected: &[bool], rng: &mut R) -> Result<Vec<FaultRealization>> {
        let mut bad = Vec::new();
        for (gate_index, g) in self.circuit.gates().iter().enumerate() {
            for &qubit in g.qubits() {
                for pauli in [Pauli::X, Pauli::Y, Pauli::Z] {
                    let f = FaultRealization { gate_index, qubit, pauli };
                    let record = run_clifford_circuit(&self.circuit, &[f], rng)?;
                    if self.decode_and_readout(&record)? != expected {
                        bad.push(f);
                    }
                }
            }
        }
        Ok(bad)
    }
}
