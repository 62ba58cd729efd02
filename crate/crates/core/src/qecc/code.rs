use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::GateKind;
use crate::error::{invalid, Error, Result};
use crate::pauli::{Pauli, PauliString};

/// The codes available for protection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeKind {
    Steane,
    D3Surface,
    D5Surface,
}

impl CodeKind {
    pub const ALL: [CodeKind; 3] = [CodeKind::Steane, CodeKind::D3Surface, CodeKind::D5Surface];

    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::Steane => "Steane",
            CodeKind::D3Surface => "D3Surface",
            CodeKind::D5Surface => "D5Surface",
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<CodeKind> {
        match s {
            "Steane" | "steane" => Ok(CodeKind::Steane),
            "D3Surface" | "D3" | "d3" => Ok(CodeKind::D3Surface),
            "D5Surface" | "D5" | "d5" => Ok(CodeKind::D5Surface),
            other => Err(invalid(format!("unknown code `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckType {
    X,
    Z,
}

impl CheckType {
    pub fn pauli(self) -> Pauli {
        match self {
            CheckType::X => Pauli::X,
            CheckType::Z => Pauli::Z,
        }
    }

    pub fn flipped(self) -> CheckType {
        match self {
            CheckType::X => CheckType::Z,
            CheckType::Z => CheckType::X,
        }
    }
}

/// A CSS stabilizer generator. The support order is the order in which the
/// extraction circuit couples data qubits to the ancilla.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub check: CheckType,
    pub support: Vec<usize>,
}

/// Ancilla allocation for syndrome extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AncillaPolicy {
    /// A dedicated ancilla per generator.
    PerGenerator,
    /// Generator `i` uses ancilla `i % size`, reset before reuse.
    Pool(usize),
}

/// A CSS code encoding one logical qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizerCode {
    kind: CodeKind,
    n: usize,
    distance: usize,
    generators: Vec<Generator>,
    logical_x: Vec<usize>,
    logical_z: Vec<usize>,
    hadamard_relabel: Vec<usize>,
    ancilla_policy: AncillaPolicy,
}

/// Builds the stabilizer data for `kind`.
pub fn build_code(kind: CodeKind) -> StabilizerCode {
    let mut code = match kind {
        CodeKind::Steane => steane(),
        CodeKind::D3Surface => rotated_surface(kind, 3),
        CodeKind::D5Surface => rotated_surface(kind, 5),
    };
    code.hadamard_relabel = find_hadamard_relabel(&code)
        .expect("every supported code has a Hadamard-compatible relabelling");
    code
}

fn steane() -> StabilizerCode {
    let rows = [vec![0, 2, 4, 6], vec![1, 2, 5, 6], vec![3, 4, 5, 6]];
    let mut generators = Vec::new();
    for check in [CheckType::X, CheckType::Z] {
        for r in &rows {
            generators.push(Generator {
                check,
                support: r.clone(),
            });
        }
    }
    StabilizerCode {
        kind: CodeKind::Steane,
        n: 7,
        distance: 3,
        generators,
        logical_x: vec![0, 1, 2],
        logical_z: vec![0, 1, 2],
        hadamard_relabel: (0..7).collect(),
        ancilla_policy: AncillaPolicy::Pool(3),
    }
}

/// Rotated surface code on a `d x d` grid of data qubits, index `r * d + c`.
///
/// Plaquette `(i, j)` for `0 <= i, j <= d` touches the data qubits at its four
/// corners `(i-1, j-1), (i-1, j), (i, j-1), (i, j)` that exist. Bulk plaquettes
/// alternate X/Z in a checkerboard; top and bottom edges keep only X plaquettes,
/// left and right edges only Z plaquettes.
fn rotated_surface(kind: CodeKind, d: usize) -> StabilizerCode {
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    let idx = |r: usize, c: usize| r * d + c;
    for i in 0..=d {
        for j in 0..=d {
            let check = if (i + j) % 2 == 0 { CheckType::X } else { CheckType::Z };
            let row_edge = i == 0 || i == d;
            let col_edge = j == 0 || j == d;
            let keep = match (row_edge, col_edge) {
                (false, false) => true,
                (true, false) => check == CheckType::X,
                (false, true) => check == CheckType::Z,
                (true, true) => false,
            };
            if !keep {
                continue;
            }
            let corner = |di: usize, dj: usize| -> Option<usize> {
                let (r, c) = ((i + di).checked_sub(1)?, (j + dj).checked_sub(1)?);
                (r < d && c < d).then(|| idx(r, c))
            };
            let (nw, ne, sw, se) = (corner(0, 0), corner(0, 1), corner(1, 0), corner(1, 1));
            let order = match check {
                CheckType::X => [nw, ne, sw, se],
                CheckType::Z => [nw, sw, ne, se],
            };
            let support: Vec<usize> = order.into_iter().flatten().collect();
            let g = Generator { check, support };
            match check {
                CheckType::X => xs.push(g),
                CheckType::Z => zs.push(g),
            }
        }
    }
    xs.extend(zs);
    StabilizerCode {
        kind,
        n: d * d,
        distance: d,
        generators: xs,
        logical_x: (0..d).map(|r| idx(r, 0)).collect(),
        logical_z: (0..d).map(|c| idx(0, c)).collect(),
        hadamard_relabel: (0..d * d).collect(),
        ancilla_policy: AncillaPolicy::PerGenerator,
    }
}

/// Maps `(row, col, d)` to a new grid position.
type GridMap = fn(usize, usize, usize) -> (usize, usize);

/// Symmetries of the square acting on grid indices, plus the identity for non-grid codes.
fn candidate_relabels(code: &StabilizerCode) -> Vec<Vec<usize>> {
    if code.kind == CodeKind::Steane {
        return vec![(0..code.n).collect()];
    }
    let d = code.distance;
    let maps: [GridMap; 8] = [
        |r, c, _| (r, c),
        |r, c, d| (c, d - 1 - r),
        |r, c, d| (d - 1 - r, d - 1 - c),
        |r, c, d| (d - 1 - c, r),
        |r, c, _| (c, r),
        |r, c, d| (d - 1 - c, d - 1 - r),
        |r, c, d| (r, d - 1 - c),
        |r, c, d| (d - 1 - r, c),
    ];
    maps.iter()
        .map(|f| {
            (0..code.n)
                .map(|j| {
                    let (r, c) = f(j / d, j % d, d);
                    r * d + c
                })
                .collect()
        })
        .collect()
}

/// Finds `sigma` such that after transversal Hadamard, relabelling canonical qubit `j`
/// to the qubit previously holding `sigma[j]` yields the same code with
/// `X_L` and `Z_L` exchanged.
fn find_hadamard_relabel(code: &StabilizerCode) -> Option<Vec<usize>> {
    let gens: BTreeSet<(bool, BTreeSet<usize>)> = code
        .generators
        .iter()
        .map(|g| (g.check == CheckType::X, g.support.iter().copied().collect()))
        .collect();
    candidate_relabels(code).into_iter().find(|sigma| {
        let gens_ok = code.generators.iter().all(|h| {
            let image: BTreeSet<usize> = h.support.iter().map(|&q| sigma[q]).collect();
            gens.contains(&(h.check.flipped() == CheckType::X, image))
        });
        if !gens_ok {
            return false;
        }
        let mut inverse = vec![0; code.n];
        for (j, &s) in sigma.iter().enumerate() {
            inverse[s] = j;
        }
        let pulled = |support: &[usize]| -> Vec<usize> { support.iter().map(|&q| inverse[q]).collect() };
        let z_ok = code.is_stabilizer(
            &PauliString::from_support(code.n, &pulled(&code.logical_x), Pauli::Z)
                .product(&code.logical_z()),
        );
        let x_ok = code.is_stabilizer(
            &PauliString::from_support(code.n, &pulled(&code.logical_z), Pauli::X)
                .product(&code.logical_x()),
        );
        z_ok && x_ok
    })
}

impl StabilizerCode {
    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Number of data qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    /// Number of arbitrary data errors the code corrects.
    pub fn t(&self) -> usize {
        (self.distance - 1) / 2
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_pauli(&self, i: usize) -> PauliString {
        let g = &self.generators[i];
        PauliString::from_support(self.n, &g.support, g.check.pauli())
    }

    pub fn logical_x_support(&self) -> &[usize] {
        &self.logical_x
    }

    pub fn logical_z_support(&self) -> &[usize] {
        &self.logical_z
    }

    pub fn logical_x(&self) -> PauliString {
        PauliString::from_support(self.n, &self.logical_x, Pauli::X)
    }

    pub fn logical_z(&self) -> PauliString {
        PauliString::from_support(self.n, &self.logical_z, Pauli::Z)
    }

    /// Relabelling applied after a transversal Hadamard; see the module docs of
    /// [`crate::qecc`].
    pub fn hadamard_relabel(&self) -> &[usize] {
        &self.hadamard_relabel
    }

    pub fn ancilla_policy(&self) -> AncillaPolicy {
        self.ancilla_policy
    }

    pub fn num_ancillas(&self) -> usize {
        match self.ancilla_policy {
            AncillaPolicy::PerGenerator => self.generators.len(),
            AncillaPolicy::Pool(k) => k,
        }
    }

    /// Data plus ancilla qubits of one patch.
    pub fn qubits_per_patch(&self) -> usize {
        self.n + self.num_ancillas()
    }

    /// Encoder input qubit: the first qubit of the logical X support.
    pub fn input_qubit(&self) -> usize {
        self.logical_x[0]
    }

    /// Syndrome bits, bit `i` set when generator `i` anticommutes with `error`.
    pub fn syndrome(&self, error: &PauliString) -> u64 {
        let mut s = 0u64;
        for (i, g) in self.generators.iter().enumerate() {
            let hits = g
                .support
                .iter()
                .filter(|&&q| match g.check {
                    CheckType::X => error.z_bit(q),
                    CheckType::Z => error.x_bit(q),
                })
                .count();
            if hits % 2 == 1 {
                s |= 1 << i;
            }
        }
        s
    }

    /// Whether `p` lies in the stabilizer group, ignoring phase.
    pub fn is_stabilizer(&self, p: &PauliString) -> bool {
        let n = self.n;
        let pack = |p: &PauliString| -> u128 {
            let mut v = 0u128;
            for q in 0..n {
                if p.x_bit(q) {
                    v |= 1 << q;
                }
                if p.z_bit(q) {
                    v |= 1 << (n + q);
                }
            }
            v
        };
        let mut basis: Vec<u128> = Vec::new();
        for i in 0..self.generators.len() {
            let mut v = pack(&self.generator_pauli(i));
            for b in &basis {
                let top = 127 - b.leading_zeros();
                if (v >> top) & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        let mut v = pack(p);
        for b in &basis {
            let top = 127 - b.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }

    /// Logical gates with a fault-tolerant implementation on this code.
    pub fn supports_logical(&self, kind: GateKind) -> bool {
        match kind {
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Z | GateKind::CX => true,
            GateKind::S | GateKind::Sdg => self.kind == CodeKind::Steane,
            _ => false,
        }
    }

    pub(crate) fn check_logical(&self, kind: GateKind) -> Result<()> {
        if self.supports_logical(kind) {
            Ok(())
        } else {
            Err(Error::UnsupportedLogicalGate {
                gate: kind.name(),
                code: self.kind.to_string(),
            })
        }
    }
}

