//! Bit-packed stabilizer tableau in the Aaronson–Gottesman form.
//!
//! Rows `0..n` hold destabilizers, rows `n..2n` stabilizers and row `2n` is scratch
//! space for deterministic measurements. Each row stores X bits, Z bits and a sign bit;
//! an X and Z bit both set on one qubit denotes `Y`.

use rand::Rng;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::noise::FaultRealization;
use crate::pauli::{words_for, Pauli, PauliString};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<u8>,
}

/// Outcome of a Z measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub value: bool,
    pub deterministic: bool,
}

impl Tableau {
    /// Stabilizer state `|0...0>`.
    pub fn new(n: usize) -> Tableau {
        let words = words_for(n);
        let rows = 2 * n + 1;
        let mut t = Tableau {
            n,
            words,
            x: vec![0; rows * words],
            z: vec![0; rows * words],
            r: vec![0; rows],
        };
        for q in 0..n {
            t.x[q * words + q / 64] |= 1 << (q % 64);
            t.z[(n + q) * words + q / 64] |= 1 << (q % 64);
        }
        t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(v: &[u64], row: usize, words: usize, q: usize) -> bool {
        (v[row * words + q / 64] >> (q % 64)) & 1 == 1
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::OperandOutOfRange {
                qubit: q,
                width: self.n,
            });
        }
        Ok(())
    }

    fn row_pauli(&self, row: usize) -> PauliString {
        let mut p = PauliString::identity(self.n);
        for q in 0..self.n {
            p.set(
                q,
                Pauli::from_bits(
                    Self::bit(&self.x, row, self.words, q),
                    Self::bit(&self.z, row, self.words, q),
                ),
            );
        }
        p
    }

    /// Stabilizer generators as `(negative_sign, pauli)` pairs.
    pub fn stabilizers(&self) -> Vec<(bool, PauliString)> {
        (self.n..2 * self.n)
            .map(|row| (self.r[row] == 1, self.row_pauli(row)))
            .collect()
    }

    pub fn destabilizers(&self) -> Vec<(bool, PauliString)> {
        (0..self.n)
            .map(|row| (self.r[row] == 1, self.row_pauli(row)))
            .collect()
    }

    /// Checks the canonical symplectic relations between all rows.
    pub fn is_valid(&self) -> bool {
        let rows: Vec<PauliString> = (0..2 * self.n).map(|r| self.row_pauli(r)).collect();
        for i in 0..2 * self.n {
            for j in 0..2 * self.n {
                let anticommute = !rows[i].commutes_with(&rows[j]);
                let expected = i != j && (i + self.n == j || j + self.n == i);
                if anticommute != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn h(&mut self, q: usize) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.words + w;
            let (xb, zb) = (self.x[i] & m, self.z[i] & m);
            if xb != 0 && zb != 0 {
                self.r[row] ^= 1;
            }
            self.x[i] = (self.x[i] & !m) | zb;
            self.z[i] = (self.z[i] & !m) | xb;
        }
    }

    pub fn s(&mut self, q: usize) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.words + w;
            if self.x[i] & m != 0 {
                if self.z[i] & m != 0 {
                    self.r[row] ^= 1;
                }
                self.z[i] ^= m;
            }
        }
    }

    pub fn sdg(&mut self, q: usize) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        for row in 0..2 * self.n {
            let i = row * self.words + w;
            if self.x[i] & m != 0 {
                if self.z[i] & m == 0 {
                    self.r[row] ^= 1;
                }
                self.z[i] ^= m;
            }
        }
    }

    /// Conjugation by a single-qubit Pauli: flips the sign of anticommuting rows.
    pub fn pauli(&mut self, q: usize, p: Pauli) {
        let (w, m) = (q / 64, 1u64 << (q % 64));
        let (px, pz) = p.bits();
        for row in 0..2 * self.n {
            let i = row * self.words + w;
            let flip = (px && self.z[i] & m != 0) ^ (pz && self.x[i] & m != 0);
            self.r[row] ^= u8::from(flip);
        }
    }

    pub fn cx(&mut self, c: usize, t: usize) {
        let (wc, mc) = (c / 64, 1u64 << (c % 64));
        let (wt, mt) = (t / 64, 1u64 << (t % 64));
        for row in 0..2 * self.n {
            let base = row * self.words;
            let xc = self.x[base + wc] & mc != 0;
            let zc = self.z[base + wc] & mc != 0;
            let xt = self.x[base + wt] & mt != 0;
            let zt = self.z[base + wt] & mt != 0;
            if xc && zt && (xt == zc) {
                self.r[row] ^= 1;
            }
            if xc {
                self.x[base + wt] ^= mt;
            }
            if zt {
                self.z[base + wc] ^= mc;
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        self.h(b);
        self.cx(a, b);
        self.h(b);
    }

    /// Applies a Clifford gate. Measurement and reset need randomness; see
    /// [`Tableau::measure`] and [`Tableau::reset`].
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        for &q in gate.qubits() {
            self.check(q)?;
        }
        let q = gate.qubits();
        match gate.kind() {
            GateKind::H => self.h(q[0]),
            GateKind::S => self.s(q[0]),
            GateKind::Sdg => self.sdg(q[0]),
            GateKind::X => self.pauli(q[0], Pauli::X),
            GateKind::Y => self.pauli(q[0], Pauli::Y),
            GateKind::Z => self.pauli(q[0], Pauli::Z),
            GateKind::CX => self.cx(q[0], q[1]),
            GateKind::CZ => self.cz(q[0], q[1]),
            k @ (GateKind::RX(_) | GateKind::RY(_) | GateKind::RZ(_)) => {
                return Err(Error::NonClifford(k.name()))
            }
            k => return Err(Error::NonUnitary(k.name())),
        }
        Ok(())
    }

    /// Conjugation by an arbitrary Pauli string.
    pub fn apply_pauli_string(&mut self, p: &PauliString) {
        assert_eq!(p.num_qubits(), self.n);
        let (px, pz) = (p.x_words(), p.z_words());
        for row in 0..2 * self.n {
            let base = row * self.words;
            let mut parity = 0u32;
            for w in 0..self.words {
                parity ^= ((self.x[base + w] & pz[w]) ^ (self.z[base + w] & px[w])).count_ones();
            }
            self.r[row] ^= (parity & 1) as u8;
        }
    }

    /// Row `h` becomes the product `row_i * row_h` with the correct sign.
    fn rowsum(&mut self, h: usize, i: usize) {
        let (bh, bi) = (h * self.words, i * self.words);
        let mut pos = 0i64;
        let mut neg = 0i64;
        for w in 0..self.words {
            let (x1, z1) = (self.x[bi + w], self.z[bi + w]);
            let (x2, z2) = (self.x[bh + w], self.z[bh + w]);
            let y1 = x1 & z1;
            let xo = x1 & !z1;
            let zo = !x1 & z1;
            let p = (y1 & z2 & !x2) | (xo & z2 & x2) | (zo & x2 & !z2);
            let m = (y1 & x2 & !z2) | (xo & z2 & !x2) | (zo & x2 & z2);
            pos += p.count_ones() as i64;
            neg += m.count_ones() as i64;
        }
        let total = 2 * self.r[h] as i64 + 2 * self.r[i] as i64 + pos - neg;
        self.r[h] = (total.rem_euclid(4) / 2) as u8;
        for w in 0..self.words {
            self.x[bh + w] ^= self.x[bi + w];
            self.z[bh + w] ^= self.z[bi + w];
        }
    }

    fn clear_row(&mut self, row: usize) {
        let b = row * self.words;
        self.x[b..b + self.words].fill(0);
        self.z[b..b + self.words].fill(0);
        self.r[row] = 0;
    }

    fn copy_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        self.x.copy_within(s..s + self.words, d);
        self.z.copy_within(s..s + self.words, d);
        self.r[dst] = self.r[src];
    }

    /// Z-basis measurement of qubit `q` with state update.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<Measurement> {
        self.check(q)?;
        let n = self.n;
        let pivot = (n..2 * n).find(|&row| Self::bit(&self.x, row, self.words, q));
        if let Some(p) = pivot {
            for row in 0..2 * n {
                if row != p && Self::bit(&self.x, row, self.words, q) {
                    self.rowsum(row, p);
                }
            }
            self.copy_row(p - n, p);
            self.clear_row(p);
            self.z[p * self.words + q / 64] |= 1 << (q % 64);
            let value = rng.random::<bool>();
            self.r[p] = u8::from(value);
            Ok(Measurement {
                value,
                deterministic: false,
            })
        } else {
            let scratch = 2 * n;
            self.clear_row(scratch);
            for row in 0..n {
                if Self::bit(&self.x, row, self.words, q) {
                    self.rowsum(scratch, row + n);
                }
            }
            Ok(Measurement {
                value: self.r[scratch] == 1,
                deterministic: true,
            })
        }
    }

    /// Measures and flips the qubit back to `|0>`.
    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<()> {
        if self.measure(q, rng)?.value {
            self.pauli(q, Pauli::X);
        }
        Ok(())
    }

    /// Eigenvalue of a Pauli observable if the state is an eigenstate (`Some(true)` means -1),
    /// `None` when a measurement would be random. The state is not modified.
    pub fn peek_pauli(&mut self, p: &PauliString) -> Option<bool> {
        assert_eq!(p.num_qubits(), self.n);
        let n = self.n;
        let anticommutes = |t: &Tableau, row: usize| -> bool {
            let base = row * t.words;
            let mut parity = 0u32;
            for w in 0..t.words {
                parity ^= ((t.x[base + w] & p.z_words()[w]) ^ (t.z[base + w] & p.x_words()[w]))
                    .count_ones();
            }
            parity & 1 == 1
        };
        if (n..2 * n).any(|row| anticommutes(self, row)) {
            return None;
        }
        let scratch = 2 * n;
        self.clear_row(scratch);
        for row in 0..n {
            if anticommutes(self, row) {
                self.rowsum(scratch, row + n);
            }
        }
        Some(self.r[scratch] == 1)
    }
}

/// Executes a Clifford circuit from `|0...0>` with the given faults and returns the
/// classical record. Fault placement matches [`crate::statevector::run_statevector`].
pub fn run_clifford_circuit<R: Rng + ?Sized>(
    circuit: &Circuit,
    faults: &[FaultRealization],
    rng: &mut R,
) -> Result<Vec<bool>> {
    let mut t = Tableau::new(circuit.width());
    run_on_tableau(&mut t, circuit, faults, rng)
}

/// Like [`run_clifford_circuit`] but continues from an existing tableau.
pub fn run_on_tableau<R: Rng + ?Sized>(
    t: &mut Tableau,
    circuit: &Circuit,
    faults: &[FaultRealization],
    rng: &mut R,
) -> Result<Vec<bool>> {
    if circuit.width() != t.num_qubits() {
        return Err(crate::error::invalid("circuit width differs from tableau size"));
    }
    let mut record = Vec::with_capacity(circuit.classical_bits());
    let mut fi = 0;
    for (idx, g) in circuit.gates().iter().enumerate() {
        let start = fi;
        while fi < faults.len() && faults[fi].gate_index == idx {
            fi += 1;
        }
        let here = &faults[start..fi];
        let q = g.qubits()[0];
        match g.kind() {
            GateKind::MeasureZ => {
                t.check(q)?;
                for f in here {
                    t.pauli(f.qubit, f.pauli);
                }
                record.push(t.measure(q, rng)?.value);
            }
            GateKind::Reset => {
                t.reset(q, rng)?;
                for f in here {
                    t.pauli(f.qubit, f.pauli);
                }
            }
            _ => {
                t.apply_gate(g)?;
                for f in here {
                    t.pauli(f.qubit, f.pauli);
                }
            }
        }
    }
    if fi != faults.len() {
        return Err(crate::error::invalid("faults must be sorted by gate index and in range"));
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fresh_tableau_is_valid_and_all_zero() {
        let mut t = Tableau::new(5);
        assert!(t.is_valid());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in 0..5 {
            let m = t.measure(q, &mut rng).unwrap();
            assert!(m.deterministic && !m.value);
        }
    }

    #[test]
    fn x_flips_deterministic_outcome() {
        let mut t = Tableau::new(2);
        t.pauli(1, Pauli::X);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(t.measure(1, &mut rng).unwrap().value);
        assert!(!t.measure(0, &mut rng).unwrap().value);
    }

    #[test]
    fn rotation_is_rejected() {
        let mut t = Tableau::new(1);
        let g = Gate::single(GateKind::RX(0.3), 0).unwrap();
        assert!(matches!(t.apply_gate(&g), Err(Error::NonClifford(_))));
    }
}
