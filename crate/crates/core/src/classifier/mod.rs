//! Synthetic datasets, amplitude encoding and the variational classifiers.

mod dataset;
mod encoding;
mod model;
mod pca;
mod train;

pub use dataset::{generate_dataset, ClassLabel, DataPoint, Dataset, POINTS_PER_CLASS};
pub use encoding::amplitude_encode;
pub use model::{
    classifier_circuit, composite_circuit, label_from_distribution, outcome_distribution, predict,
    ClassifierParams,
};
pub use pca::{pca_project, ProjectedPoint, Projection};
pub use train::{accuracy, fold_indices, train, TrainOptions, TrainReport};
