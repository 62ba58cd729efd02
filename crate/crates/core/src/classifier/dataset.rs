use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Class labels. `M`/`C` belong to the 2D dataset, `R`/`B`/`G`/`Y` to the 4D one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    M,
    C,
    R,
    B,
    G,
    Y,
}

impl ClassLabel {
    /// Labels of a dataset, ordered by their target measurement outcome.
    pub fn for_dimensionality(dim: usize) -> Result<&'static [ClassLabel]> {
        match dim {
            2 => Ok(&[ClassLabel::M, ClassLabel::C]),
            4 => Ok(&[ClassLabel::R, ClassLabel::B, ClassLabel::G, ClassLabel::Y]),
            d => Err(invalid(format!("unsupported dimensionality {d}"))),
        }
    }

    /// Target measurement outcome as a basis index (qubit 0 most significant).
    pub fn outcome(self) -> usize {
        match self {
            ClassLabel::M | ClassLabel::R => 0,
            ClassLabel::C | ClassLabel::B => 1,
            ClassLabel::G => 2,
            ClassLabel::Y => 3,
        }
    }

    pub fn from_outcome(dim: usize, outcome: usize) -> Result<ClassLabel> {
        ClassLabel::for_dimensionality(dim)?
            .get(outcome)
            .copied()
            .ok_or_else(|| invalid(format!("outcome {outcome} has no label")))
    }

    pub fn dimensionality(self) -> usize {
        match self {
            ClassLabel::M | ClassLabel::C => 2,
            _ => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::M => "M",
            ClassLabel::C => "C",
            ClassLabel::R => "R",
            ClassLabel::B => "B",
            ClassLabel::G => "G",
            ClassLabel::Y => "Y",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<ClassLabel> {
        Ok(match s {
            "M" => ClassLabel::M,
            "C" => ClassLabel::C,
            "R" => ClassLabel::R,
            "B" => ClassLabel::B,
            "G" => ClassLabel::G,
            "Y" => ClassLabel::Y,
            other => return Err(invalid(format!("unknown class label `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataPoint {
    pub features: Vec<f64>,
    pub label: ClassLabel,
}

impl DataPoint {
    /// Validates unit norm (within 1e-10), non-negativity and a 2 or 4 feature length.
    pub fn new(features: Vec<f64>, label: ClassLabel) -> Result<DataPoint> {
        let p = DataPoint { features, label };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.features.len();
        if d != 2 && d != 4 {
            return Err(invalid(format!("feature length {d} is not 2 or 4")));
        }
        if self.label.dimensionality() != d {
            return Err(invalid(format!("label {} does not belong to {d}D data", self.label)));
        }
        if self.features.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(invalid("features must be finite and non-negative"));
        }
        let norm: f64 = self.features.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(invalid(format!("features have norm {norm}, expected 1")));
        }
        Ok(())
    }

    pub fn dimensionality(&self) -> usize {
        self.features.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub dimensionality: usize,
    pub seed: u64,
    pub points: Vec<DataPoint>,
}

/// Points per class in both datasets.
pub const POINTS_PER_CLASS: usize = 1024;

/// Spread of the 2D class angles.
const SIGMA_2D: f64 = 0.3;
/// Class-mean separation of the 2D angles, `2 * 1.476 * SIGMA_2D` for a Bayes accuracy near 0.93.
const DELTA_2D: f64 = 2.0 * 1.476 * SIGMA_2D;
/// Distance of each 4D prototype angle from its basis-state extreme.
const MARGIN_4D: f64 = 0.3;
/// Spread of the 4D angular noise.
const SIGMA_4D: f64 = 0.85;

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

/// Generates the synthetic 2D (`{M, C}`) or 4D (`{R, B, G, Y}`) dataset.
///
/// 2D points sit at angle `phi` on the first-quadrant unit circle with class-wise
/// Gaussian angles placed symmetrically about `pi/4`.
///
/// 4D points are parameterised by angles `(alpha, beta, gamma)` with features
/// `(cos a cos b, cos a sin b, sin a cos g, sin a sin g)` at half angles. Each class
/// starts from a prototype near one basis vector (R near `|00>`, B near `|01>`,
/// G near `|11>`, Y near `|10>`), pulled `MARGIN_4D` toward the centre, and receives
/// independent Gaussian noise on each angle, clipped to `[0, pi]`.
pub fn generate_dataset(dimensionality: usize, seed: u64) -> Result<Dataset> {
    let labels = ClassLabel::for_dimensionality(dimensionality)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(labels.len() * POINTS_PER_CLASS);
    if dimensionality == 2 {
        let noise = Normal::new(0.0, SIGMA_2D).expect("valid sigma");
        for (k, &label) in labels.iter().enumerate() {
            let mean = FRAC_PI_4 + if k == 0 { -DELTA_2D / 2.0 } else { DELTA_2D / 2.0 };
            for _ in 0..POINTS_PER_CLASS {
                let phi = (mean + noise.sample(&mut rng)).clamp(0.0, FRAC_PI_2);
                points.push(DataPoint {
                    features: unit(vec![phi.cos(), phi.sin()]),
                    label,
                });
            }
        }
    } else {
        let noise = Normal::new(0.0, SIGMA_4D).expect("valid sigma");
        let proto = |bit: bool| if bit { PI - MARGIN_4D } else { MARGIN_4D };
        for &label in labels {
            let (b0, b1) = match label {
                ClassLabel::R => (false, false),
                ClassLabel::B => (false, true),
                ClassLabel::G => (true, true),
                _ => (true, false),
            };
            for _ in 0..POINTS_PER_CLASS {
                let mut draw = |centre: f64| (centre + noise.sample(&mut rng)).clamp(0.0, PI) / 2.0;
                let a = draw(proto(b0));
                let b = draw(proto(b1));
                let g = draw(proto(b1));
                points.push(DataPoint {
                    features: unit(vec![
                        a.cos() * b.cos(),
                        a.cos() * b.sin(),
                        a.sin() * g.cos(),
                        a.sin() * g.sin(),
                    ]),
                    label,
                });
            }
        }
    }
    Ok(Dataset {
        dimensionality,
        seed,
        points,
    })
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn count(&self, label: ClassLabel) -> usize {
        self.points.iter().filter(|p| p.label == label).count()
    }

    /// Writes `f1,f2[,f3,f4],label` rows with a header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.dimensionality).map(|i| format!("f{i}")).collect();
        header.push("label".into());
        w.write_record(&header)?;
        for p in &self.points {
            let mut row: Vec<String> = p.features.iter().map(|x| format!("{x:?}")).collect();
            row.push(p.label.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the CSV form; the dimensionality comes from the header. `seed` is
    /// recorded for provenance only.
    pub fn read_csv<R: Read>(input: R, seed: u64) -> Result<Dataset> {
        let mut r = csv::Reader::from_reader(input);
        let dim = r.headers()?.len().saturating_sub(1);
        ClassLabel::for_dimensionality(dim)?;
        let mut points = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let perr = |message: String| Error::Parse {
                line: i + 2,
                message,
            };
            let features = (0..dim)
                .map(|k| rec[k].trim().parse::<f64>().map_err(|e| perr(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let label: ClassLabel = rec[dim].trim().parse()?;
            points.push(DataPoint::new(features, label).map_err(|e| perr(e.to_string()))?);
        }
        Ok(Dataset {
            dimensionality: dim,
            seed,
            points,
        })
    }
}
