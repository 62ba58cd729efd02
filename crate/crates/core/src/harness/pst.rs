use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::circuit::{Circuit, CircuitMetrics};
use crate::classifier::ClassLabel;
use crate::error::{invalid, Result};
use crate::noise::{ErrorMode, FaultSampler, NoiseModel};
use crate::qecc::{assemble_with_table, build_code, build_lookup_table, CodeKind, ProtectedCircuitPlan, SyndromeTable};
use crate::statevector::run_statevector;
use crate::tableau::run_clifford_circuit;

use super::artifacts::{measured, SynthesizedPoint};
use super::records::{CellKey, CodeChoice, ResultRecord};

/// Seed of one sweep cell: the first eight bytes of a SHA-256 digest of the master
/// seed and the cell key.
pub fn cell_seed(master_seed: u64, key: &CellKey) -> u64 {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update((key.classifier as u64).to_le_bytes());
    h.update(key.class_label.as_str().as_bytes());
    h.update([0]);
    h.update(key.code.as_str().as_bytes());
    h.update([0]);
    h.update(key.mode.as_str().as_bytes());
    h.update([0]);
    h.update(key.p_bits.to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

/// Random stream of one shot, independent of scheduling.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Lookup tables shared across cells.
#[derive(Clone, Debug, Default)]
pub struct DecoderCache {
    tables: HashMap<CodeKind, Arc<SyndromeTable>>,
}

impl DecoderCache {
    /// Builds the tables for every code in `codes`.
    pub fn new(codes: &[CodeChoice]) -> DecoderCache {
        let tables = codes
            .iter()
            .filter_map(|c| c.code_kind())
            .map(|k| (k, Arc::new(build_lookup_table(&build_code(k)))))
            .collect();
        DecoderCache { tables }
    }

    fn table(&self, kind: CodeKind) -> Arc<SyndromeTable> {
        self.tables
            .get(&kind)
            .cloned()
            .unwrap_or_else(|| Arc::new(build_lookup_table(&build_code(kind))))
    }
}

/// A measured logical circuit ready to run bare or protected.
#[derive(Clone, Debug)]
pub enum Executor {
    /// The circuit itself on the dense simulator.
    Bare(Circuit),
    /// A compiled plan on the stabilizer simulator.
    Protected(Box<ProtectedCircuitPlan>),
}

impl Executor {
    /// `logical` must end with a measurement of every qubit.
    pub fn new(logical: &Circuit, code: CodeChoice, rounds_per_layer: usize, cache: &DecoderCache) -> Result<Executor> {
        match code.code_kind() {
            None => Ok(Executor::Bare(logical.clone())),
            Some(kind) => {
                let c = build_code(kind);
                let plan = assemble_with_table(logical, &c, cache.table(kind), rounds_per_layer)?;
                Ok(Executor::Protected(Box::new(plan)))
            }
        }
    }

    /// The physical circuit that is executed.
    pub fn circuit(&self) -> &Circuit {
        match self {
            Executor::Bare(c) => c,
            Executor::Protected(p) => p.circuit(),
        }
    }

    pub fn metrics(&self) -> CircuitMetrics {
        self.circuit().metrics()
    }

    /// Runs one shot and returns the logical outcome as a basis index, qubit 0 most significant.
    pub fn run_shot(&self, sampler: &FaultSampler, rng: &mut ChaCha8Rng) -> Result<usize> {
        let faults = sampler.sample(rng);
        let bits = match self {
            Executor::Bare(c) => run_statevector(c, &faults, rng)?,
            Executor::Protected(p) => p.decode_and_readout(&run_clifford_circuit(p.circuit(), &faults, rng)?)?,
        };
        Ok(bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b)))
    }

    /// Counts shots whose outcome equals `target`; shots run in parallel with
    /// per-shot random streams.
    pub fn count_successes(&self, model: &NoiseModel, target: usize, shots: usize, seed: u64) -> Result<usize> {
        let sampler = FaultSampler::new(self.circuit(), model);
        (0..shots as u64)
            .into_par_iter()
            .map(|shot| {
                let mut rng = shot_rng(seed, shot);
                self.run_shot(&sampler, &mut rng).map(|o| usize::from(o == target))
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }
}

/// Settings shared by every PST estimate of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PstSettings {
    pub shots: usize,
    pub rounds_per_layer: usize,
    /// Noiseless accuracy copied into each record.
    pub clean_accuracy: f64,
}

/// Monte-Carlo probability that `reference` is classified correctly under `code`,
/// `mode` and `p`.
pub fn estimate_pst(
    reference: &SynthesizedPoint,
    code: CodeChoice,
    mode: ErrorMode,
    p: f64,
    seed: u64,
    settings: &PstSettings,
    cache: &DecoderCache,
) -> Result<ResultRecord> {
    if settings.shots == 0 {
        return Err(invalid("shots must be positive"));
    }
    let logical = reference.measured_circuit()?;
    let label: ClassLabel = reference.point.label;
    let executor = Executor::new(&logical, code, settings.rounds_per_layer, cache)?;
    let model = NoiseModel::new(mode, p)?;
    let successes = executor.count_successes(&model, label.outcome(), settings.shots, seed)?;
    let m = executor.metrics();
    Ok(ResultRecord {
        classifier: logical.width(),
        class_label: label,
        code,
        mode,
        p,
        shots: settings.shots,
        successes,
        pst: 0.0,
        clean_pst: reference.clean_pst,
        clean_accuracy: settings.clean_accuracy,
        qubits: m.qubits,
        gates: m.gates,
        depth: m.depth,
    }
    .normalized())
}

/// Executed-circuit metrics of a point under a code.
pub fn protected_metrics(point: &SynthesizedPoint, code: CodeChoice, rounds_per_layer: usize) -> Result<CircuitMetrics> {
    let logical = measured(&point.circuit()?)?;
    Ok(Executor::new(&logical, code, rounds_per_layer, &DecoderCache::default())?.metrics())
}
