// Replaces trained classifier composites with Clifford circuits for each gate set
// and reports the accuracy cost.

use qweave::classifier::{composite_circuit, generate_dataset, train, DataPoint, TrainOptions};
use qweave::synthesis::{greedy_synthesize, synthesis_accuracy_report, GateSet, SynthesisOptions, TargetUnitary};
use qweave::Result;

pub fn run_example() -> Result<()> {
    let ds = generate_dataset(2, 7)?;
    let report = train(&ds, &TrainOptions::default())?;
    let opts = SynthesisOptions::for_qubits(1);

    let point = &ds.points[0];
    let target = TargetUnitary::from_circuit(&composite_circuit(point, &report.params)?.unitary_part())?;
    for gs in [GateSet::steane(), GateSet::surface(), GateSet::pauli()] {
        let r = greedy_synthesize(&target, &gs, &opts)?;
        println!("{gs}: fidelity {:.4} with\n{}", r.fidelity, r.circuit.to_text());
    }

    let test: Vec<&DataPoint> = report.test_indices.iter().map(|&i| &ds.points[i]).collect();
    for gs in [GateSet::steane(), GateSet::pauli()] {
        let cmp = synthesis_accuracy_report(&test, &report.params, &gs, &opts)?;
        println!(
            "{gs}: accuracy {:.4} parameterized, {:.4} synthesized over {} points",
            cmp.original, cmp.synthesized, cmp.points
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
