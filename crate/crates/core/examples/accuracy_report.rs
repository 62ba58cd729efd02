// Turns sweep records into noisy accuracy, improvement over the unprotected
// baseline, overhead tables and heatmaps, and cross-checks the accuracy model by
// direct shot-by-shot classification.

use qweave::classifier::{generate_dataset, train, TrainOptions};
use qweave::harness::{
    accuracy_heatmap, accuracy_records, emit_results, estimate_direct_accuracy, improvement_report, overhead_report,
    pst_heatmap, run_pst_sweep, synthesize_artifact, CodeChoice, DirectOptions, ExperimentConfig, OutputFormat,
    SweepOptions, TrainArtifact,
};
use qweave::synthesis::{GateSet, SynthesisOptions};
use qweave::{ErrorMode, Result};

pub fn run_example() -> Result<()> {
    let ds = generate_dataset(2, 7)?;
    let trained = TrainArtifact::new(&ds, train(&ds, &TrainOptions::default())?);
    let artifact = synthesize_artifact(&trained, &GateSet::pauli(), &SynthesisOptions::for_qubits(1))?;
    let dir = tempfile::tempdir()?;
    let config = ExperimentConfig {
        classifier: 1,
        codes: CodeChoice::ALL.to_vec(),
        modes: ErrorMode::ALL.to_vec(),
        noise_grid: vec![1e-3, 1e-2],
        shots: 400,
        master_seed: 2,
        rounds_per_layer: 1,
        synthesis_path: dir.path().join("synth.json"),
        output_path: dir.path().join("pst.csv"),
    };
    let records = run_pst_sweep(&config, &artifact, &SweepOptions::default())?;
    let accuracy = accuracy_records(&records)?;
    let mut out = Vec::new();

    out.extend_from_slice(b"accuracy:\n");
    emit_results(&accuracy, OutputFormat::Csv, &mut out)?;
    out.extend_from_slice(b"improvement:\n");
    emit_results(&improvement_report(&accuracy)?, OutputFormat::Json, &mut out)?;
    out.extend_from_slice(b"\noverhead:\n");
    emit_results(&overhead_report(&[&artifact], &CodeChoice::ALL, 1)?, OutputFormat::Csv, &mut out)?;
    out.extend_from_slice(b"Steane PST heatmap:\n");
    pst_heatmap(&records, 1, CodeChoice::Steane).write_csv(&mut out)?;
    out.extend_from_slice(b"unprotected accuracy heatmap:\n");
    accuracy_heatmap(&accuracy, 1, CodeChoice::None).write_csv(&mut out)?;
    print!("{}", String::from_utf8_lossy(&out));

    let direct = estimate_direct_accuracy(&artifact, CodeChoice::None, ErrorMode::BPD, 1e-2, &DirectOptions::default())?;
    println!(
        "direct check, None/BPD/p=0.01: {:.2}% over {} points (clean {:.2}%)",
        direct.accuracy_pct, direct.points, direct.clean_accuracy_pct
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
