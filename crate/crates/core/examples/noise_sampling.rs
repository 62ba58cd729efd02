// Shows the net Pauli distribution of each error mode and samples faults on a
// small circuit.

use qweave::noise::{expected_fault_count, FaultSampler};
use qweave::{Circuit, ErrorMode, GateKind, NoiseModel, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<()> {
    let mut c = Circuit::new(2);
    c.add(GateKind::H, &[0])?
        .add(GateKind::CX, &[0, 1])?
        .add(GateKind::MeasureZ, &[0])?
        .add(GateKind::MeasureZ, &[1])?;
    let p = 1e-2;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for mode in ErrorMode::ALL {
        let model = NoiseModel::new(mode, p)?;
        let [i, x, y, z] = model.pauli_distribution();
        let sampler = FaultSampler::new(&c, &model);
        let shots = 20_000;
        let sampled: usize = (0..shots).map(|_| sampler.sample(&mut rng).len()).sum();
        println!(
            "{mode:>3}: I {i:.6} X {x:.6} Y {y:.6} Z {z:.6}; expected faults/shot {:.5}, sampled {:.5}",
            expected_fault_count(&c, &model),
            sampled as f64 / shots as f64
        );
    }
    let model = NoiseModel::new(ErrorMode::BPD, 0.2)?;
    let faults = FaultSampler::new(&c, &model).sample(&mut rng);
    println!("one BPD shot at p = 0.2: {faults:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
