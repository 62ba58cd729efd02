use std::collections::{HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use crate::classifier::ClassLabel;
use crate::error::{invalid, Error, Result};

use super::artifacts::SynthesisArtifact;
use super::config::ExperimentConfig;
use super::pst::{cell_seed, estimate_pst, DecoderCache, PstSettings};
use super::records::{format_float, read_records_csv, record_row, round_sig, write_records_csv, CellKey, ResultRecord};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "QWEAVE_WORKERS";

/// Worker count from [`WORKERS_ENV`], if set.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{WORKERS_ENV} must be a positive integer, got `{v}`")))?;
            if n == 0 {
                return Err(invalid(format!("{WORKERS_ENV} must be positive")));
            }
            Ok(Some(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(invalid(format!("{WORKERS_ENV}: {e}"))),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; all cores when unset.
    pub workers: Option<usize>,
    /// Stop after computing this many new cells, leaving the sweep resumable.
    pub max_cells: Option<usize>,
}

/// One cell of the sweep in canonical order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub key: CellKey,
    pub p: f64,
}

/// Cartesian product reference points x codes x modes x noise grid.
pub fn sweep_cells(config: &ExperimentConfig, labels: &[ClassLabel]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &class_label in labels {
        for &code in &config.codes {
            for &mode in &config.modes {
                for &p in &config.noise_grid {
                    cells.push(Cell {
                        key: CellKey {
                            classifier: config.classifier,
                            class_label,
                            code,
                            mode,
                            p_bits: round_sig(p).to_bits(),
                        },
                        p: round_sig(p),
                    });
                }
            }
        }
    }
    cells
}

/// Reads existing results for resumption. A truncated final row is dropped.
fn read_existing(path: &Path) -> Result<Vec<ResultRecord>> {
    if !path.exists() || fs::metadata(path)?.len() == 0 {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path)?;
    match read_records_csv(text.as_bytes()) {
        Ok(r) => Ok(r),
        Err(first) => {
            let trimmed = match text.trim_end_matches('\n').rfind('\n') {
                Some(i) => &text[..=i],
                None => return Err(first),
            };
            read_records_csv(trimmed.as_bytes()).map_err(|_| first)
        }
    }
}

fn timing_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".timing.csv");
    PathBuf::from(s)
}

/// Runs every missing cell of `config`, streaming records to `config.output_path`.
///
/// Cell seeds derive from the master seed and the cell key, so results do not
/// depend on worker count, execution order or interruption. Once done, the output
/// is rewritten in canonical cell order. Wall-clock times go to a
/// `<output>.timing.csv` sidecar. Returns the records in canonical order.
pub fn run_pst_sweep(
    config: &ExperimentConfig,
    artifact: &SynthesisArtifact,
    options: &SweepOptions,
) -> Result<Vec<ResultRecord>> {
    config.validate()?;
    if artifact.classifier() != config.classifier {
        return Err(invalid(format!(
            "synthesis artifact is for a {}-qubit classifier, config asks for {}",
            artifact.classifier(),
            config.classifier
        )));
    }
    let labels = ClassLabel::for_dimensionality(artifact.dimensionality)?;
    for &l in labels {
        artifact.reference(l)?;
    }
    let cells = sweep_cells(config, labels);
    let output = &config.output_path;
    let existing = read_existing(output)?;
    let done: HashSet<CellKey> = existing.iter().map(|r| r.key()).collect();
    let mut pending: Vec<Cell> = cells.iter().filter(|c| !done.contains(&c.key)).copied().collect();
    if let Some(m) = options.max_cells {
        pending.truncate(m);
    }

    // Rewrite what was read so a dropped partial row does not linger.
    {
        let mut f = File::create(output)?;
        write_records_csv(&existing, &mut f)?;
    }
    let timing = timing_path(output);
    if !timing.exists() {
        fs::write(&timing, "classifier,class_label,code,mode,p,wall_time_s\n")?;
    }

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = options.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| invalid(format!("thread pool: {e}")))?;
    let cache = DecoderCache::new(&config.codes);
    let settings = PstSettings {
        shots: config.shots,
        rounds_per_layer: config.rounds_per_layer,
        clean_accuracy: artifact.clean_accuracy,
    };

    let (tx, rx) = mpsc::channel::<(ResultRecord, f64)>();
    let mut fresh: Vec<ResultRecord> = Vec::new();
    let outcome = std::thread::scope(|scope| -> Result<()> {
        let writer = scope.spawn(|| -> Result<Vec<ResultRecord>> {
            let mut out = OpenOptions::new().append(true).open(output)?;
            let mut times = OpenOptions::new().append(true).open(&timing)?;
            let mut got = Vec::new();
            for (record, secs) in rx {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                w.write_record(record_row(&record))?;
                out.write_all(&w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
                out.flush()?;
                writeln!(
                    times,
                    "{},{},{},{},{},{}",
                    record.classifier,
                    record.class_label,
                    record.code,
                    record.mode,
                    format_float(record.p),
                    format_float(secs)
                )?;
                got.push(record);
            }
            Ok(got)
        });
        let computed = pool.install(|| {
            pending.par_iter().try_for_each_with(tx, |tx, cell| -> Result<()> {
                let start = Instant::now();
                let reference = artifact.reference(cell.key.class_label)?;
                let seed = cell_seed(config.master_seed, &cell.key);
                let record = estimate_pst(reference, cell.key.code, cell.key.mode, cell.p, seed, &settings, &cache)?;
                tx.send((record, start.elapsed().as_secs_f64()))
                    .map_err(|_| invalid("result writer stopped"))
            })
        });
        let written = writer.join().map_err(|_| invalid("result writer panicked"))?;
        computed?;
        fresh = written?;
        Ok(())
    });
    outcome?;

    let mut by_key: HashMap<CellKey, ResultRecord> = existing.into_iter().map(|r| (r.key(), r)).collect();
    for r in fresh {
        by_key.insert(r.key(), r);
    }
    let ordered: Vec<ResultRecord> = cells.iter().filter_map(|c| by_key.remove(&c.key)).collect();
    let mut rest: Vec<ResultRecord> = by_key.into_values().collect();
    rest.sort_by_key(ResultRecord::key);
    let mut all = ordered.clone();
    all.extend(rest);

    let tmp = timing_path(output).with_extension("tmp");
    {
        let mut f = File::create(&tmp)?;
        write_records_csv(&all, &mut f)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, output)?;
    Ok(ordered)
}
