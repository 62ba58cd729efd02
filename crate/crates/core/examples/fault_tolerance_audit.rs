// Enumerates every single fault in a protected one-qubit circuit and lists the
// ones the decoder cannot absorb.

use qweave::qecc::{assemble_protected_circuit, build_code, CodeKind};
use qweave::{Circuit, GateKind, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut logical = Circuit::new(1);
    logical.add(GateKind::X, &[0])?.add(GateKind::MeasureZ, &[0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in CodeKind::ALL {
        let plan = assemble_protected_circuit(&logical, &build_code(kind), 1)?;
        let c = plan.circuit();
        let total: usize = c.gates().iter().map(|g| 3 * g.qubits().len()).sum();
        let bad = plan.malignant_single_faults(&[true], &mut rng)?;
        println!("{kind}: {} of {total} single faults flip the logical result", bad.len());
        for f in bad.iter().take(3) {
            println!("  {} on qubit {} after `{}`", f.pauli.symbol(), f.qubit, c.gates()[f.gate_index]);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
