// Trains and synthesizes the one-qubit classifier, then runs a small resumable
// success-probability sweep over codes, error modes and noise levels.

use qweave::classifier::{generate_dataset, train, TrainOptions};
use qweave::harness::{
    read_records_file, run_pst_sweep, synthesize_artifact, CodeChoice, ExperimentConfig, SweepOptions,
    TrainArtifact,
};
use qweave::synthesis::{GateSet, SynthesisOptions};
use qweave::{ErrorMode, Result};

pub fn run_example() -> Result<()> {
    let ds = generate_dataset(2, 7)?;
    let trained = TrainArtifact::new(&ds, train(&ds, &TrainOptions::default())?);
    let artifact = synthesize_artifact(&trained, &GateSet::pauli(), &SynthesisOptions::for_qubits(1))?;
    for r in &artifact.references {
        println!("reference for {}: clean pst {:.4}\n{}", r.point.label, r.clean_pst, r.circuit);
    }

    let dir = tempfile::tempdir()?;
    let config = ExperimentConfig {
        classifier: 1,
        codes: CodeChoice::ALL.to_vec(),
        modes: vec![ErrorMode::D, ErrorMode::BPD],
        noise_grid: vec![1e-3, 1e-2],
        shots: 400,
        master_seed: 1,
        rounds_per_layer: 1,
        synthesis_path: dir.path().join("synth.json"),
        output_path: dir.path().join("pst.csv"),
    };
    let first = run_pst_sweep(&config, &artifact, &SweepOptions { workers: Some(2), max_cells: Some(10) })?;
    println!("interrupted after {} cells", first.len());
    let all = run_pst_sweep(&config, &artifact, &SweepOptions::default())?;
    assert_eq!(read_records_file(&config.output_path)?, all);
    for r in &all {
        println!("{} {:>9} {:>3} p={:<6} pst {:.4} ({} qubits, {} gates)", r.class_label, r.code, r.mode, r.p, r.pst, r.qubits, r.gates);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
