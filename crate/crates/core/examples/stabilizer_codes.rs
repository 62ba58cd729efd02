// Inspects the Steane and rotated surface codes and their lookup decoders.

use qweave::qecc::{build_code, build_lookup_table, CodeKind};
use qweave::{Pauli, PauliString, Result};

pub fn run_example() -> Result<()> {
    for kind in CodeKind::ALL {
        let code = build_code(kind);
        let table = build_lookup_table(&code);
        println!(
            "{kind}: n = {}, d = {}, {} generators, {} qubits per patch, decoder entries {:?}, max correction weight {}",
            code.n(),
            code.distance(),
            code.num_generators(),
            code.qubits_per_patch(),
            table.entries(),
            table.max_weight()
        );
        let error = PauliString::from_support(code.n(), &[code.n() / 2], Pauli::Y);
        let syndrome = code.syndrome(&error);
        let fix = table.lookup(syndrome)?;
        let residual = error.product(&fix);
        println!(
            "  Y on qubit {}: syndrome {syndrome:#b}, correction on {:?}, residual is a stabilizer: {}",
            code.n() / 2,
            fix.support(),
            code.is_stabilizer(&residual)
        );
    }
    let mut csv = Vec::new();
    build_lookup_table(&build_code(CodeKind::Steane)).write_csv(&mut csv)?;
    println!("Steane decoder table:\n{}", String::from_utf8_lossy(&csv));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
