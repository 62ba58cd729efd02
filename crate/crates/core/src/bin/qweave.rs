use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qweave::classifier::{generate_dataset, train, Dataset, TrainOptions};
use qweave::harness::{
    accuracy_records, emit_results, improvement_report, load_json, overhead_from_records, read_records_file,
    run_pst_sweep, save_json, synthesize_artifact, workers_from_env, ExperimentConfig, OutputFormat, SweepOptions,
    SynthesisArtifact, TrainArtifact,
};
use qweave::synthesis::{GateSet, SynthesisOptions};
use qweave::Result;

#[derive(Parser)]
#[command(name = "qweave", version, about = "Noise sweeps of error-corrected quantum classifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateSetArg {
    Steane,
    Surface,
    Pauli,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Pst,
    Accuracy,
    Improvement,
    Overhead,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the 2D or 4D synthetic dataset as CSV.
    GenData {
        #[arg(long, value_parser = ["2", "4"])]
        dim: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a classifier with k-fold cross-validation.
    Train {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 5)]
        folds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Synthesize held-out composites into a discrete gate set.
    Synth {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        gate_set: GateSetArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a PST sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Stop after this many new cells; rerun to resume.
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// Derive a report from sweep records.
    Report {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, value_enum)]
        kind: ReportKind,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn writer(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenData { dim, seed, out } => {
            let ds = generate_dataset(dim.parse().expect("validated by clap"), seed)?;
            ds.write_csv(BufWriter::new(File::create(&out)?))?;
            eprintln!("wrote {} points to {}", ds.len(), out.display());
        }
        Command::Train { data, folds, seed, out } => {
            let ds = Dataset::read_csv(BufReader::new(File::open(&data)?), 0)?;
            let opts = TrainOptions {
                folds,
                seed,
                ..TrainOptions::default()
            };
            let report = train(&ds, &opts)?;
            eprintln!(
                "mean test accuracy {:.4}, best fold {} ({:.4})",
                report.test_accuracy, report.best_fold, report.fold_accuracies[report.best_fold]
            );
            save_json(&TrainArtifact::new(&ds, report), &out)?;
        }
        Command::Synth { model, gate_set, out } => {
            let artifact: TrainArtifact = load_json(&model)?;
            let gs = match gate_set {
                GateSetArg::Steane => GateSet::steane(),
                GateSetArg::Surface => GateSet::surface(),
                GateSetArg::Pauli => GateSet::pauli(),
            };
            let opts = SynthesisOptions::for_qubits(artifact.dimensionality / 2);
            let s = synthesize_artifact(&artifact, &gs, &opts)?;
            eprintln!(
                "accuracy {:.4} parameterized, {:.4} synthesized",
                s.original_accuracy, s.clean_accuracy
            );
            save_json(&s, &out)?;
        }
        Command::Sweep { config, max_cells } => {
            let cfg = ExperimentConfig::load(&config)?;
            let artifact: SynthesisArtifact = load_json(&cfg.synthesis_path)?;
            let opts = SweepOptions {
                workers: workers_from_env()?,
                max_cells,
            };
            let records = run_pst_sweep(&cfg, &artifact, &opts)?;
            eprintln!("{} records in {}", records.len(), cfg.output_path.display());
        }
        Command::Report {
            records,
            kind,
            format,
            out,
        } => {
            let recs = read_records_file(&records)?;
            let format = match format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            };
            let mut w = writer(out.as_deref())?;
            match kind {
                ReportKind::Pst => emit_results(&recs, format, &mut w)?,
                ReportKind::Accuracy => emit_results(&accuracy_records(&recs)?, format, &mut w)?,
                ReportKind::Improvement => {
                    emit_results(&improvement_report(&accuracy_records(&recs)?)?, format, &mut w)?
                }
                ReportKind::Overhead => emit_results(&overhead_from_records(&recs), format, &mut w)?,
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
