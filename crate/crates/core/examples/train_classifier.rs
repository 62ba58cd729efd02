// Generates both datasets, trains the one- and two-qubit classifiers with k-fold
// cross-validation and projects the 4D data onto two principal components.

use qweave::classifier::{generate_dataset, pca_project, predict, train, TrainOptions};
use qweave::Result;

pub fn run_example() -> Result<()> {
    for dim in [2, 4] {
        let ds = generate_dataset(dim, 7)?;
        let report = train(&ds, &TrainOptions::default())?;
        println!(
            "{dim}D: {} points, thetas {:?}, mean test accuracy {:.4}, folds {:?}",
            ds.len(),
            report.params.thetas,
            report.test_accuracy,
            report.fold_accuracies
        );
        let first = &ds.points[0];
        println!("  first point {:?} is {} and predicted {}", first.features, first.label, predict(first, &report.params)?);
    }
    let proj = pca_project(&generate_dataset(4, 7)?, 2)?;
    let total: f64 = proj.eigenvalues.iter().sum();
    println!("4D PCA: leading eigenvalues {:?} (sum {total:.4})", proj.eigenvalues);
    let mut csv = Vec::new();
    proj.write_csv(&mut csv)?;
    for line in String::from_utf8_lossy(&csv).lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
