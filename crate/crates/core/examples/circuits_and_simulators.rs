// Builds a Bell-state circuit, round-trips its text form and compares the dense
// and stabilizer simulators on it.

use qweave::tableau::run_clifford_circuit;
use qweave::{Circuit, GateKind, Result, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut bell = Circuit::new(2);
    bell.add(GateKind::H, &[0])?.add(GateKind::CX, &[0, 1])?;

    let text = bell.to_text();
    assert_eq!(Circuit::from_text(&text)?, bell);
    println!("{text}");
    println!("metrics: {:?}", bell.metrics());

    let mut sv = StateVector::new(2)?;
    sv.apply_circuit(&bell)?;
    println!("statevector probabilities |00>..|11>: {:?}", sv.probabilities());

    let mut measured = bell.clone();
    measured.add(GateKind::MeasureZ, &[0])?.add(GateKind::MeasureZ, &[1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let shots = 1000;
    let mut counts = [0usize; 4];
    for _ in 0..shots {
        let r = run_clifford_circuit(&measured, &[], &mut rng)?;
        counts[(usize::from(r[0]) << 1) | usize::from(r[1])] += 1;
    }
    println!("stabilizer samples over {shots} shots: {counts:?}");
    assert_eq!(counts[1] + counts[2], 0);

    let mut back = StateVector::new(2)?;
    back.apply_circuit(&bell.compose(&bell.inverse()?, &[0, 1])?)?;
    println!("fidelity of circuit then inverse with |00>: {:.12}", back.fidelity(&StateVector::new(2)?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
