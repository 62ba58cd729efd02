use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::GateKind;
use crate::error::{invalid, Result};
use crate::linalg::CMatrix;
use crate::statevector::{single_qubit_matrix, StateVector};

use super::dataset::{ClassLabel, DataPoint, Dataset};
use super::encoding::amplitude_encode;
use super::model::{predict, ClassifierParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainOptions {
    pub folds: usize,
    pub sweeps: usize,
    pub restarts: usize,
    /// Seeds fold assignment and restart starting points.
    pub seed: u64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            folds: 5,
            sweeps: 3,
            restarts: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    /// Parameters of the best fold (highest test accuracy, earliest on ties).
    pub params: ClassifierParams,
    /// Training accuracy of the best fold.
    pub train_accuracy: f64,
    /// Mean test accuracy over folds.
    pub test_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
    pub best_fold: usize,
    /// Dataset indices of the best fold's held-out points.
    pub test_indices: Vec<usize>,
}

/// Deterministic partition of `0..n` into `folds` nearly equal shuffled parts.
pub fn fold_indices(n: usize, folds: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f01d));
    (0..folds)
        .map(|k| idx[k * n / folds..(k + 1) * n / folds].to_vec())
        .collect()
}

/// Per-label sums of `|psi><psi|` over encoded training states.
struct Objective {
    dim: usize,
    arity: usize,
    rho: Vec<(usize, CMatrix)>,
    count: usize,
}

impl Objective {
    fn new(points: &[&DataPoint], dim: usize) -> Result<Objective> {
        let arity = dim / 2;
        let labels = ClassLabel::for_dimensionality(dim)?;
        let states = points
            .par_iter()
            .map(|p| {
                let mut sv = StateVector::new(arity)?;
                sv.apply_circuit(&amplitude_encode(p)?)?;
                Ok((p.label.outcome(), sv.amplitudes().to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        let size = 1 << arity;
        let mut rho: Vec<(usize, CMatrix)> = labels
            .iter()
            .map(|l| (l.outcome(), CMatrix::zeros(size)))
            .collect();
        for (outcome, amps) in &states {
            let m = &mut rho[*outcome].1;
            for i in 0..size {
                for j in 0..size {
                    let v = m.get(i, j) + amps[i] * amps[j].conj();
                    m.set(i, j, v);
                }
            }
        }
        Ok(Objective {
            dim,
            arity,
            rho,
            count: points.len(),
        })
    }

    fn unitary(&self, thetas: &[f64]) -> CMatrix {
        let qubit = |q: usize| -> CMatrix {
            let rz = single_qubit_matrix(GateKind::RZ(thetas[2 * q])).expect("rz");
            let rx = single_qubit_matrix(GateKind::RX(thetas[2 * q + 1])).expect("rx");
            let flat = |m: [[Complex64; 2]; 2]| CMatrix::from_rows(2, vec![m[0][0], m[0][1], m[1][0], m[1][1]]).expect("2x2");
            flat(rx).mul(&flat(rz))
        };
        if self.arity == 1 {
            return qubit(0);
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let cx = CMatrix::from_rows(
            4,
            vec![
                one, zero, zero, zero, zero, one, zero, zero, zero, zero, zero, one, zero, zero, one,
                zero,
            ],
        )
        .expect("4x4");
        cx.mul(&qubit(0).kron(&qubit(1)))
    }

    /// Mean probability of the correct outcome.
    fn value(&self, thetas: &[f64]) -> f64 {
        let v = self.unitary(thetas);
        let size = 1 << self.arity;
        let mut total = 0.0;
        for (outcome, rho) in &self.rho {
            let row: Vec<Complex64> = (0..size).map(|k| v.get(*outcome, k)).collect();
            for i in 0..size {
                for j in 0..size {
                    total += (row[i] * rho.get(i, j) * row[j].conj()).re;
                }
            }
        }
        debug_assert!(self.dim == 2 * self.arity);
        total / self.count as f64
    }
}

const GRID: usize = 16;
const GOLDEN_ITERS: usize = 48;
/// Smallest gain in mean success probability that moves an angle or prefers a restart.
/// Smaller gains sit at the level of fold-to-fold noise and only drift parameters along
/// nearly flat phase directions.
const MIN_GAIN: f64 = 1e-4;

/// Maximises over one coordinate; keeps the current value unless strictly beaten.
fn line_search(obj: &Objective, thetas: &mut [f64], k: usize) {
    let eval = |t: f64, thetas: &mut [f64]| {
        let old = thetas[k];
        thetas[k] = t;
        let v = obj.value(thetas);
        thetas[k] = old;
        v
    };
    let current = thetas[k];
    let f_current = eval(current, thetas);
    let step = TAU / GRID as f64;
    let (mut best_t, mut best_f) = (current, f_current);
    for i in 0..GRID {
        let t = current + step * i as f64;
        let f = eval(t, thetas);
        if f > best_f {
            best_t = t;
            best_f = f;
        }
    }
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_t - step, best_t + step);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (eval(c, thetas), eval(d, thetas));
    for _ in 0..GOLDEN_ITERS {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = eval(c, thetas);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = eval(d, thetas);
        }
    }
    let t = (a + b) / 2.0;
    let f = eval(t, thetas);
    if f > best_f {
        best_t = t;
        best_f = f;
    }
    if best_f > f_current + MIN_GAIN {
        thetas[k] = best_t.rem_euclid(TAU);
    }
}

fn optimise(obj: &Objective, opts: &TrainOptions, seed: u64) -> Vec<f64> {
    let n = 2 * obj.arity;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = [0.0, TAU / 4.0, TAU / 2.0, 3.0 * TAU / 4.0];
    let mut best: Option<(f64, Vec<f64>)> = None;
    for r in 0..opts.restarts.max(1) {
        let mut thetas: Vec<f64> = if r == 0 {
            vec![0.0; n]
        } else {
            (0..n).map(|_| grid[rng.random_range(0..grid.len())]).collect()
        };
        for _ in 0..opts.sweeps {
            for k in 0..n {
                line_search(obj, &mut thetas, k);
            }
        }
        let f = obj.value(&thetas);
        if best.as_ref().is_none_or(|(bf, _)| f > *bf + MIN_GAIN) {
            best = Some((f, thetas));
        }
    }
    best.expect("at least one restart").1
}

/// Fraction of `points` whose predicted label is correct.
pub fn accuracy(points: &[&DataPoint], params: &ClassifierParams) -> Result<f64> {
    if points.is_empty() {
        return Ok(0.0);
    }
    let correct = points
        .par_iter()
        .map(|p| predict(p, params).map(|l| usize::from(l == p.label)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(correct as f64 / points.len() as f64)
}

/// k-fold training by coordinate descent on the exact mean success probability.
pub fn train(dataset: &Dataset, opts: &TrainOptions) -> Result<TrainReport> {
    if opts.folds < 2 {
        return Err(invalid("at least two folds are required"));
    }
    let dim = dataset.dimensionality;
    ClassLabel::for_dimensionality(dim)?;
    let first = dataset.points.first().ok_or_else(|| invalid("empty dataset"))?.label;
    if dataset.points.iter().all(|p| p.label == first) {
        return Err(invalid("dataset contains a single class"));
    }
    if dataset.points.len() < opts.folds {
        return Err(invalid("fewer points than folds"));
    }
    let folds = fold_indices(dataset.len(), opts.folds, opts.seed);
    let results = (0..opts.folds)
        .into_par_iter()
        .map(|k| -> Result<(ClassifierParams, f64, f64)> {
            let test: Vec<&DataPoint> = folds[k].iter().map(|&i| &dataset.points[i]).collect();
            let train: Vec<&DataPoint> = folds
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .flat_map(|(_, f)| f.iter().map(|&i| &dataset.points[i]))
                .collect();
            let obj = Objective::new(&train, dim)?;
            let thetas = optimise(&obj, opts, opts.seed.wrapping_add(k as u64));
            let params = ClassifierParams::new(thetas)?;
            let tr = accuracy(&train, &params)?;
            let te = accuracy(&test, &params)?;
            Ok((params, tr, te))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best_fold = 0;
    for (k, r) in results.iter().enumerate() {
        if r.2 > results[best_fold].2 {
            best_fold = k;
        }
    }
    let fold_accuracies: Vec<f64> = results.iter().map(|r| r.2).collect();
    Ok(TrainReport {
        params: results[best_fold].0.clone(),
        train_accuracy: results[best_fold].1,
        test_accuracy: fold_accuracies.iter().sum::<f64>() / opts.folds as f64,
        fold_accuracies,
        best_fold,
        test_indices: folds[best_fold].clone(),
    })
}
