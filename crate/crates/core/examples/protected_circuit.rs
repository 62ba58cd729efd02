// Compiles a logical circuit onto each code and estimates its logical success
// rate under circuit-level noise.

use qweave::noise::FaultSampler;
use qweave::qecc::{assemble_protected_circuit, build_code, CodeKind};
use qweave::tableau::run_clifford_circuit;
use qweave::{Circuit, ErrorMode, GateKind, NoiseModel, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut logical = Circuit::new(2);
    logical
        .add(GateKind::X, &[0])?
        .add(GateKind::CX, &[0, 1])?
        .add(GateKind::MeasureZ, &[0])?
        .add(GateKind::MeasureZ, &[1])?;
    let model = NoiseModel::new(ErrorMode::D, 1e-3)?;
    let shots = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for kind in CodeKind::ALL {
        let plan = assemble_protected_circuit(&logical, &build_code(kind), 1)?;
        let sampler = FaultSampler::new(plan.circuit(), &model);
        let mut ok = 0;
        for _ in 0..shots {
            let record = run_clifford_circuit(plan.circuit(), &sampler.sample(&mut rng), &mut rng)?;
            if plan.decode_and_readout(&record)? == [true, true] {
                ok += 1;
            }
        }
        println!(
            "{kind}: {:?}, {} steps, success {ok}/{shots}",
            plan.circuit().metrics(),
            plan.steps().len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
