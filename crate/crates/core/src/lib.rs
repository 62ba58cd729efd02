//! Simulation, error-correction and synthesis toolkit for small variational quantum
//! classifiers.
//!
//! The crate is organised bottom-up:
//!
//! * [`circuit`], [`pauli`]: gate-level circuits and Pauli strings.
//! * [`statevector`], [`tableau`]: dense and stabilizer simulators.
//! * [`noise`]: Pauli fault models and fault sampling.
//! * [`qecc`]: Steane and rotated surface codes, decoders and protected-circuit compilation.
//! * [`classifier`]: datasets, amplitude encoding, training and PCA.
//! * [`synthesis`]: greedy Clifford synthesis of classifier composites.
//! * [`harness`]: success-probability sweeps, accuracy models and reports.

pub mod circuit;
pub mod classifier;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod noise;
pub mod pauli;
pub mod qecc;
pub mod statevector;
pub mod synthesis;
pub mod tableau;

pub use circuit::{Circuit, CircuitMetrics, Gate, GateKind};
pub use error::{Error, Result};
pub use noise::{ErrorMode, FaultRealization, NoiseModel};
pub use pauli::{Pauli, PauliString};
pub use statevector::StateVector;
pub use tableau::Tableau;
