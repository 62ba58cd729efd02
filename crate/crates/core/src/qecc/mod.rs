//! Stabilizer codes, lookup decoding and protected-circuit compilation.
//!
//! Codes are described in canonical coordinates: generator supports and logical
//! operators refer to canonical data indices `0..n`. Each patch keeps a map from
//! canonical to physical qubits. A logical Hadamard is a transversal `H` followed by
//! a relabelling of that map (a lattice rotation for surface codes), after which
//! the canonical description holds again.

mod circuits;
mod code;
mod decoder;
mod plan;

pub use circuits::{encoder_circuit, logical_gate, syndrome_extraction_circuit, zero_state_circuit, PatchQubits};
pub use code::{build_code, AncillaPolicy, CheckType, CodeKind, Generator, StabilizerCode};
pub use decoder::{build_lookup_table, SyndromeTable};
pub use plan::{assemble_protected_circuit, assemble_with_table, ProtectedCircuitPlan, Step};
