use crate::circuit::{Circuit, GateKind};
use crate::error::{invalid, Result};

use super::code::{AncillaPolicy, CheckType, StabilizerCode};

/// Physical qubits of one code patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchQubits {
    /// Physical index of each canonical data qubit.
    pub data: Vec<usize>,
    pub ancillas: Vec<usize>,
    dirty: Vec<bool>,
}

impl PatchQubits {
    pub fn new(data: Vec<usize>, ancillas: Vec<usize>) -> PatchQubits {
        let dirty = vec![false; ancillas.len()];
        PatchQubits {
            data,
            ancillas,
            dirty,
        }
    }

    /// Contiguous layout starting at `offset`: data first, then ancillas.
    pub fn contiguous(code: &StabilizerCode, offset: usize) -> PatchQubits {
        let n = code.n();
        PatchQubits::new(
            (offset..offset + n).collect(),
            (offset + n..offset + n + code.num_ancillas()).collect(),
        )
    }
}

/// Pivot rows of the X-generator matrix in reduced echelon form, with every pivot
/// chosen outside the logical X support.
fn encoder_rows(code: &StabilizerCode) -> Result<Vec<(usize, Vec<usize>)>> {
    let n = code.n();
    let forbidden = code.logical_x_support();
    let mut rows: Vec<Vec<bool>> = code
        .generators()
        .iter()
        .filter(|g| g.check == CheckType::X)
        .map(|g| {
            let mut v = vec![false; n];
            for &q in &g.support {
                v[q] = true;
            }
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in (0..n).filter(|c| !forbidden.contains(c)) {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(next, found);
        for r in 0..rows.len() {
            if r != next && rows[r][col] {
                let pivot_row = rows[next].clone();
                for (a, b) in rows[r].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    if next != rows.len() {
        return Err(invalid("X generators are not independent outside the logical X support"));
    }
    Ok(pivots
        .into_iter()
        .zip(rows)
        .map(|(p, row)| {
            let targets = (0..n).filter(|&q| q != p && row[q]).collect();
            (p, targets)
        })
        .collect())
}

fn emit_preparation(
    code: &StabilizerCode,
    data: &[usize],
    c: &mut Circuit,
    carry_input: bool,
) -> Result<()> {
    if carry_input {
        let input = code.input_qubit();
        for &q in code.logical_x_support().iter().filter(|&&q| q != input) {
            c.add(GateKind::CX, &[data[input], data[q]])?;
        }
    }
    let rows = encoder_rows(code)?;
    for (p, _) in &rows {
        c.add(GateKind::H, &[data[*p]])?;
    }
    for (p, targets) in &rows {
        for &t in targets {
            c.add(GateKind::CX, &[data[*p], data[t]])?;
        }
    }
    Ok(())
}

/// Unitary encoder on `n` data qubits mapping `a|0> + b|1>` on
/// [`StabilizerCode::input_qubit`] (all others `|0>`) to `a|0_L> + b|1_L>`.
pub fn encoder_circuit(code: &StabilizerCode) -> Result<Circuit> {
    let mut c = Circuit::new(code.n());
    let data: Vec<usize> = (0..code.n()).collect();
    emit_preparation(code, &data, &mut c, true)?;
    Ok(c)
}

/// Prepares `|0_L>` from `|0...0>`: the encoder without the input fan-out.
pub fn zero_state_circuit(code: &StabilizerCode) -> Result<Circuit> {
    let mut c = Circuit::new(code.n());
    let data: Vec<usize> = (0..code.n()).collect();
    emit_preparation(code, &data, &mut c, false)?;
    Ok(c)
}

pub(crate) fn emit_zero_state(code: &StabilizerCode, patch: &PatchQubits, c: &mut Circuit) -> Result<()> {
    emit_preparation(code, &patch.data, c, false)
}

/// One round measuring every generator; emits one `MeasureZ` per generator in
/// generator order.
pub(crate) fn emit_extraction(
    code: &StabilizerCode,
    patch: &mut PatchQubits,
    c: &mut Circuit,
) -> Result<()> {
    for (i, g) in code.generators().iter().enumerate() {
        let slot = match code.ancilla_policy() {
            AncillaPolicy::PerGenerator => i,
            AncillaPolicy::Pool(k) => i % k,
        };
        let anc = patch.ancillas[slot];
        if patch.dirty[slot] {
            c.add(GateKind::Reset, &[anc])?;
        }
        match g.check {
            CheckType::Z => {
                for &q in &g.support {
                    c.add(GateKind::CX, &[patch.data[q], anc])?;
                }
            }
            CheckType::X => {
                c.add(GateKind::H, &[anc])?;
                for &q in &g.support {
                    c.add(GateKind::CX, &[anc, patch.data[q]])?;
                }
                c.add(GateKind::H, &[anc])?;
            }
        }
        c.add(GateKind::MeasureZ, &[anc])?;
        patch.dirty[slot] = true;
    }
    Ok(())
}

/// Standalone single extraction round: data qubits `0..n`, ancillas after them.
pub fn syndrome_extraction_circuit(code: &StabilizerCode) -> Result<Circuit> {
    let mut patch = PatchQubits::contiguous(code, 0);
    let mut c = Circuit::new(code.qubits_per_patch());
    emit_extraction(code, &mut patch, &mut c)?;
    Ok(c)
}

/// Transversal data measurement in canonical order.
pub(crate) fn emit_readout(code: &StabilizerCode, patch: &PatchQubits, c: &mut Circuit) -> Result<()> {
    for q in 0..code.n() {
        c.add(GateKind::MeasureZ, &[patch.data[q]])?;
    }
    Ok(())
}

/// Emits the physical implementation of a logical gate. A logical Hadamard also
/// updates the patch's canonical-to-physical map.
pub(crate) fn emit_logical(
    code: &StabilizerCode,
    kind: GateKind,
    patches: &mut [&mut PatchQubits],
    c: &mut Circuit,
) -> Result<()> {
    code.check_logical(kind)?;
    if patches.len() != kind.arity() {
        return Err(invalid(format!(
            "logical {} needs {} patch(es)",
            kind.name(),
            kind.arity()
        )));
    }
    let n = code.n();
    match kind {
        GateKind::CX => {
            for q in 0..n {
                c.add(GateKind::CX, &[patches[0].data[q], patches[1].data[q]])?;
            }
        }
        GateKind::H => {
            let p = &mut patches[0];
            for q in 0..n {
                c.add(GateKind::H, &[p.data[q]])?;
            }
            let old = p.data.clone();
            p.data = code.hadamard_relabel().iter().map(|&s| old[s]).collect();
        }
        GateKind::S | GateKind::Sdg => {
            let physical = if kind == GateKind::S { GateKind::Sdg } else { GateKind::S };
            for q in 0..n {
                c.add(physical, &[patches[0].data[q]])?;
            }
        }
        GateKind::X => {
            for &q in code.logical_x_support() {
                c.add(GateKind::X, &[patches[0].data[q]])?;
            }
        }
        GateKind::Z => {
            for &q in code.logical_z_support() {
                c.add(GateKind::Z, &[patches[0].data[q]])?;
            }
        }
        GateKind::Y => {
            for &q in code.logical_x_support() {
                c.add(GateKind::X, &[patches[0].data[q]])?;
            }
            for &q in code.logical_z_support() {
                c.add(GateKind::Z, &[patches[0].data[q]])?;
            }
        }
        _ => unreachable!("rejected by check_logical"),
    }
    Ok(())
}

/// Physical circuit for a logical gate on contiguous patches (`n` or `2n` data qubits).
pub fn logical_gate(code: &StabilizerCode, kind: GateKind) -> Result<Circuit> {
    code.check_logical(kind)?;
    let n = code.n();
    let mut patches: Vec<PatchQubits> = (0..kind.arity())
        .map(|i| PatchQubits::new((i * n..(i + 1) * n).collect(), Vec::new()))
        .collect();
    let mut c = Circuit::new(n * kind.arity());
    let mut refs: Vec<&mut PatchQubits> = patches.iter_mut().collect();
    emit_logical(code, kind, &mut refs, &mut c)?;
    Ok(c)
}
