use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::ClassLabel;
use crate::error::{invalid, Result};
use crate::noise::{ErrorMode, NoiseModel};

use super::artifacts::SynthesisArtifact;
use super::pst::{cell_seed, estimate_pst, DecoderCache, Executor, PstSettings};
use super::records::{format_float, CellKey, CodeChoice, ResultRecord, Tabular};

/// Accuracy loss model: every class loses its reference point's drop in success
/// probability, and accuracy drops by the mean loss.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseImpactModel {
    /// Clean accuracy `A`.
    pub accuracy: f64,
    /// Noise level `gamma`.
    pub gamma: f64,
    /// Clean success probability `p_ci` per class.
    pub clean: Vec<f64>,
    /// Noisy success probability `p'_ci` per class.
    pub noisy: Vec<f64>,
}

impl NoiseImpactModel {
    pub fn new(accuracy: f64, gamma: f64, clean: Vec<f64>, noisy: Vec<f64>) -> Result<NoiseImpactModel> {
        if clean.len() != noisy.len() {
            return Err(invalid("clean and noisy probabilities differ in length"));
        }
        let in_unit = |x: &f64| (0.0..=1.0).contains(x);
        if !in_unit(&accuracy) || !clean.iter().chain(&noisy).all(in_unit) {
            return Err(invalid("probabilities must lie in [0, 1]"));
        }
        Ok(NoiseImpactModel {
            accuracy,
            gamma,
            clean,
            noisy,
        })
    }

    /// Number of classes `n`.
    pub fn n(&self) -> usize {
        self.clean.len()
    }

    /// `delta p_ci = p_ci - p'_ci`.
    pub fn deltas(&self) -> Vec<f64> {
        self.clean.iter().zip(&self.noisy).map(|(c, n)| c - n).collect()
    }

    /// `delta p`, the mean of the per-class decreases.
    pub fn mean_delta(&self) -> Result<f64> {
        if self.n() == 0 {
            return Err(invalid("no classes in the noise model"));
        }
        Ok(self.deltas().iter().sum::<f64>() / self.n() as f64)
    }
}

/// `A' = A - delta p`.
pub fn accuracy_under_noise(model: &NoiseImpactModel) -> Result<f64> {
    Ok(model.accuracy - model.mean_delta()?)
}

/// Predicted accuracy of one classifier under one noise setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccuracyRecord {
    pub classifier: usize,
    pub code: CodeChoice,
    pub mode: ErrorMode,
    pub p: f64,
    pub clean_accuracy: f64,
    pub mean_delta: f64,
    /// `A'` in percent.
    pub accuracy_pct: f64,
}

impl Tabular for AccuracyRecord {
    fn header() -> Vec<&'static str> {
        vec!["classifier", "code", "mode", "p", "clean_accuracy", "mean_delta", "accuracy_pct"]
    }
    fn row(&self) -> Vec<String> {
        vec![
            self.classifier.to_string(),
            self.code.to_string(),
            self.mode.to_string(),
            format_float(self.p),
            format_float(self.clean_accuracy),
            format_float(self.mean_delta),
            format_float(self.accuracy_pct),
        ]
    }
}

/// Classifier, code, mode and noise-level bits.
type GroupKey = (usize, CodeChoice, ErrorMode, u64);

/// Applies the reference-point model to every (classifier, code, mode, p) group of
/// PST records. Each group must hold one record per class.
pub fn accuracy_records(records: &[ResultRecord]) -> Result<Vec<AccuracyRecord>> {
    let mut groups: Vec<(GroupKey, Vec<&ResultRecord>)> = Vec::new();
    for r in records {
        let key = (r.classifier, r.code, r.mode, r.p.to_bits());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(r),
            None => groups.push((key, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|((classifier, code, mode, p_bits), mut members)| {
            let labels = ClassLabel::for_dimensionality(2 * classifier)?;
            members.sort_by_key(|r| r.class_label.outcome());
            let present: Vec<ClassLabel> = members.iter().map(|r| r.class_label).collect();
            if present != labels {
                return Err(invalid(format!(
                    "missing reference points for classifier {classifier}, {code}, {mode}, p = {}",
                    f64::from_bits(p_bits)
                )));
            }
            let model = NoiseImpactModel::new(
                members[0].clean_accuracy,
                f64::from_bits(p_bits),
                members.iter().map(|r| r.clean_pst).collect(),
                members.iter().map(|r| r.pst).collect(),
            )?;
            let a = accuracy_under_noise(&model)?;
            Ok(AccuracyRecord {
                classifier,
                code,
                mode,
                p: model.gamma,
                clean_accuracy: model.accuracy,
                mean_delta: model.mean_delta()?,
                accuracy_pct: 100.0 * a,
            })
        })
        .collect()
}

/// Noisy accuracy in percent from fresh PST estimates of every reference point.
pub fn estimate_noisy_accuracy(
    artifact: &SynthesisArtifact,
    code: CodeChoice,
    mode: ErrorMode,
    p: f64,
    shots: usize,
    rounds_per_layer: usize,
    master_seed: u64,
) -> Result<f64> {
    let cache = DecoderCache::new(&[code]);
    let settings = PstSettings {
        shots,
        rounds_per_layer,
        clean_accuracy: artifact.clean_accuracy,
    };
    let records = ClassLabel::for_dimensionality(artifact.dimensionality)?
        .iter()
        .map(|&label| {
            let key = CellKey {
                classifier: artifact.classifier(),
                class_label: label,
                code,
                mode,
                p_bits: p.to_bits(),
            };
            estimate_pst(artifact.reference(label)?, code, mode, p, cell_seed(master_seed, &key), &settings, &cache)
        })
        .collect::<Result<Vec<_>>>()?;
    let acc = accuracy_records(&records)?;
    Ok(acc[0].accuracy_pct)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectOptions {
    /// Held-out points classified, chosen by a seeded shuffle.
    pub points: usize,
    pub shots_per_point: usize,
    pub rounds_per_layer: usize,
    pub seed: u64,
}

impl Default for DirectOptions {
    fn default() -> Self {
        DirectOptions {
            points: 128,
            shots_per_point: 16,
            rounds_per_layer: 1,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectEstimate {
    /// Fraction of correct shots over the subsample, in percent.
    pub accuracy_pct: f64,
    /// Noiseless accuracy of the same subsample, in percent.
    pub clean_accuracy_pct: f64,
    pub points: usize,
}

/// Classifies a held-out subsample shot by shot under noise.
pub fn estimate_direct_accuracy(
    artifact: &SynthesisArtifact,
    code: CodeChoice,
    mode: ErrorMode,
    p: f64,
    opts: &DirectOptions,
) -> Result<DirectEstimate> {
    if opts.points == 0 || opts.shots_per_point == 0 {
        return Err(invalid("direct estimation needs points and shots"));
    }
    let mut idx: Vec<usize> = (0..artifact.points.len()).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    idx.truncate(opts.points);
    if idx.is_empty() {
        return Err(invalid("artifact holds no points"));
    }
    let cache = DecoderCache::new(&[code]);
    let model = NoiseModel::new(mode, p)?;
    let outcomes = idx
        .par_iter()
        .map(|&i| -> Result<(usize, bool)> {
            let sp = &artifact.points[i];
            let exec = Executor::new(&sp.measured_circuit()?, code, opts.rounds_per_layer, &cache)?;
            let seed = opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let hits = exec.count_successes(&model, sp.point.label.outcome(), opts.shots_per_point, seed)?;
            Ok((hits, sp.correct))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = idx.len() as f64;
    let hits: usize = outcomes.iter().map(|o| o.0).sum();
    let clean = outcomes.iter().filter(|o| o.1).count() as f64;
    Ok(DirectEstimate {
        accuracy_pct: 100.0 * hits as f64 / (n * opts.shots_per_point as f64),
        clean_accuracy_pct: 100.0 * clean / n,
        points: idx.len(),
    })
}
