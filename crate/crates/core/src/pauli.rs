//! Phase-free Pauli strings stored as packed X/Z bit vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Product up to phase.
    pub fn compose(self, other: Pauli) -> Pauli {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Tensor product of single-qubit Paulis, ignoring global phase.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliString {
    pub fn identity(n: usize) -> PauliString {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    /// `kind` on every qubit of `support`.
    pub fn from_support(n: usize, support: &[usize], kind: Pauli) -> PauliString {
        let mut p = PauliString::identity(n);
        for &q in support {
            p.set(q, kind);
        }
        p
    }

    pub fn from_xz(x: &[bool], z: &[bool]) -> PauliString {
        assert_eq!(x.len(), z.len());
        let mut p = PauliString::identity(x.len());
        for q in 0..x.len() {
            p.set(q, Pauli::from_bits(x[q], z[q]));
        }
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range");
        let (xb, zb) = p.bits();
        let m = 1u64 << (q % 64);
        let w = q / 64;
        self.x[w] = (self.x[w] & !m) | if xb { m } else { 0 };
        self.z[w] = (self.z[w] & !m) | if zb { m } else { 0 };
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.n, other.n);
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones();
        }
        parity & 1 == 0
    }

    /// In-place product, ignoring phase.
    pub fn mul_assign(&mut self, other: &PauliString) {
        assert_eq!(self.n, other.n);
        for w in 0..self.x.len() {
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
    }

    pub fn product(&self, other: &PauliString) -> PauliString {
        let mut p = self.clone();
        p.mul_assign(other);
        p
    }

    /// Exchanges the X and Z parts, the action of transversal Hadamard up to phase.
    pub fn swap_xz(&mut self) {
        std::mem::swap(&mut self.x, &mut self.z);
    }

    /// Relabels qubits: output qubit `j` carries input qubit `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        assert_eq!(perm.len(), self.n);
        let mut out = PauliString::identity(self.n);
        for (j, &src) in perm.iter().enumerate() {
            out.set(j, self.get(src));
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<PauliString> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut p = PauliString::identity(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            let k = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(invalid(format!("bad Pauli symbol `{other}`"))),
            };
            p.set(q, k);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_matches_single_qubit_rules() {
        let x: PauliString = "X".parse().unwrap();
        let y: PauliString = "Y".parse().unwrap();
        let z: PauliString = "Z".parse().unwrap();
        assert!(!x.commutes_with(&z));
        assert!(!x.commutes_with(&y));
        assert!(x.commutes_with(&x));
        let xx: PauliString = "XX".parse().unwrap();
        let zz: PauliString = "ZZ".parse().unwrap();
        assert!(xx.commutes_with(&zz));
    }

    #[test]
    fn roundtrip_across_word_boundary() {
        let s: String = (0..130).map(|i| ['I', 'X', 'Y', 'Z'][i % 4]).collect();
        let p: PauliString = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
        assert_eq!(p.weight(), 130 - 33);
    }
}
