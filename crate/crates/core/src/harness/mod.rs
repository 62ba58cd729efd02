//! Noise sweeps over protected classifier circuits, accuracy models and reports.

mod accuracy;
mod artifacts;
mod config;
mod pst;
mod records;
mod report;
mod sweep;

pub use accuracy::{
    accuracy_records, accuracy_under_noise, estimate_direct_accuracy, estimate_noisy_accuracy, AccuracyRecord,
    DirectEstimate, DirectOptions, NoiseImpactModel,
};
pub use artifacts::{load_json, measured, save_json, synthesize_artifact, SynthesisArtifact, SynthesizedPoint, TrainArtifact};
pub use config::{default_grid, ExperimentConfig, MAX_NOISE, MIN_SHOTS};
pub use pst::{cell_seed, estimate_pst, protected_metrics, shot_rng, DecoderCache, Executor, PstSettings};
pub use records::{
    emit_results, format_float, read_records_csv, read_records_file, round_sig, write_records_csv, CellKey, CodeChoice,
    OutputFormat, ResultRecord, Tabular, RECORD_HEADER,
};
pub use report::{
    accuracy_heatmap, improvement_report, overhead_from_records, overhead_report, overhead_rows, pst_heatmap,
    relative_improvement, Heatmap, ImprovementRecord, OverheadRecord, MEAN_LABEL,
};
pub use sweep::{run_pst_sweep, sweep_cells, workers_from_env, Cell, SweepOptions, WORKERS_ENV};
