use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

use super::dataset::{ClassLabel, Dataset};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPoint {
    pub coords: Vec<f64>,
    pub label: ClassLabel,
}

/// Principal axes and projections of a dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub mean: Vec<f64>,
    /// Unit eigenvectors of the covariance, largest eigenvalue first.
    pub axes: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub points: Vec<ProjectedPoint>,
}

const POWER_ITERS: usize = 5000;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projects onto the top `dims` principal components, found by power iteration
/// with deflation on the covariance matrix.
pub fn pca_project(dataset: &Dataset, dims: usize) -> Result<Projection> {
    let d = dataset.dimensionality;
    if dims > d {
        return Err(invalid(format!("cannot project {d}D data onto {dims} components")));
    }
    if dataset.is_empty() {
        return Err(invalid("empty dataset"));
    }
    let n = dataset.len() as f64;
    let mut mean = vec![0.0; d];
    for p in &dataset.points {
        for (m, x) in mean.iter_mut().zip(&p.features) {
            *m += x / n;
        }
    }
    let mut cov = vec![vec![0.0; d]; d];
    for p in &dataset.points {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += (p.features[i] - mean[i]) * (p.features[j] - mean[j]) / n;
            }
        }
    }
    let mut axes: Vec<Vec<f64>> = Vec::new();
    let mut eigenvalues = Vec::new();
    for k in 0..dims {
        let mut v: Vec<f64> = (0..d).map(|i| 1.0 + (i + k) as f64 * 0.1).collect();
        let mut lambda = 0.0;
        for _ in 0..POWER_ITERS {
            let mut w: Vec<f64> = (0..d).map(|i| dot(&cov[i], &v)).collect();
            for a in &axes {
                let c = dot(a, &w);
                for (wi, ai) in w.iter_mut().zip(a) {
                    *wi -= c * ai;
                }
            }
            let norm = dot(&w, &w).sqrt();
            if norm < 1e-300 {
                // Remaining spectrum is zero: pick any direction orthogonal to the found axes.
                w = (0..d).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
                for a in &axes {
                    let c = dot(a, &w);
                    for (wi, ai) in w.iter_mut().zip(a) {
                        *wi -= c * ai;
                    }
                }
                let nn = dot(&w, &w).sqrt();
                v = w.iter().map(|x| x / nn).collect();
                lambda = 0.0;
                break;
            }
            let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
            let delta: f64 = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
            v = next;
            lambda = norm;
            if delta < 1e-15 {
                break;
            }
        }
        axes.push(v);
        eigenvalues.push(lambda);
    }
    let points = dataset
        .points
        .iter()
        .map(|p| {
            let centred: Vec<f64> = p.features.iter().zip(&mean).map(|(x, m)| x - m).collect();
            ProjectedPoint {
                coords: axes.iter().map(|a| dot(a, &centred)).collect(),
                label: p.label,
            }
        })
        .collect();
    Ok(Projection {
        mean,
        axes,
        eigenvalues,
        points,
    })
}

impl Projection {
    /// Writes `pc1,...,label` rows for external plotting.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.axes.len()).map(|i| format!("pc{i}")).collect();
        header.push("label".into());
        w.write_record(&header)?;
        for p in &self.points {
            let mut row: Vec<String> = p.coords.iter().map(|x| format!("{x:?}")).collect();
            row.push(p.label.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}
