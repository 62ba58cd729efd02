use std::io::Write;

use crate::error::{invalid, Result};
use crate::pauli::{Pauli, PauliString};

use super::code::{CheckType, CodeKind, StabilizerCode};

/// Minimum-weight lookup decoder for a CSS code.
///
/// X and Z errors are decoded independently: Z-type checks index a table of
/// X corrections and X-type checks index a table of Z corrections. Within a
/// weight, ties go to the lexicographically first support.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    code: CodeKind,
    n: usize,
    num_generators: usize,
    z_checks: Vec<usize>,
    x_checks: Vec<usize>,
    x_fix: Vec<Option<Vec<usize>>>,
    z_fix: Vec<Option<Vec<usize>>>,
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `columns[q]` is the sub-syndrome of a single error on qubit `q`.
fn fill_table(n: usize, checks: usize, columns: &[u64]) -> Vec<Option<Vec<usize>>> {
    let size = 1usize << checks;
    let mut table: Vec<Option<Vec<usize>>> = vec![None; size];
    table[0] = Some(Vec::new());
    let mut filled = 1;
    for w in 1..=n {
        if filled == size {
            break;
        }
        combinations(n, w, |support| {
            let s = support.iter().fold(0u64, |acc, &q| acc ^ columns[q]) as usize;
            if table[s].is_none() {
                table[s] = Some(support.to_vec());
                filled += 1;
            }
        });
    }
    table
}

/// Builds the lookup decoder for `code`.
pub fn build_lookup_table(code: &StabilizerCode) -> SyndromeTable {
    let n = code.n();
    let of_type = |t: CheckType| -> Vec<usize> {
        (0..code.num_generators())
            .filter(|&i| code.generators()[i].check == t)
            .collect()
    };
    let z_checks = of_type(CheckType::Z);
    let x_checks = of_type(CheckType::X);
    let column = |checks: &[usize], q: usize| -> u64 {
        checks
            .iter()
            .enumerate()
            .filter(|(_, &g)| code.generators()[g].support.contains(&q))
            .fold(0u64, |acc, (bit, _)| acc | (1 << bit))
    };
    let x_cols: Vec<u64> = (0..n).map(|q| column(&z_checks, q)).collect();
    let z_cols: Vec<u64> = (0..n).map(|q| column(&x_checks, q)).collect();
    SyndromeTable {
        code: code.kind(),
        n,
        num_generators: code.num_generators(),
        x_fix: fill_table(n, z_checks.len(), &x_cols),
        z_fix: fill_table(n, x_checks.len(), &z_cols),
        z_checks,
        x_checks,
    }
}

impl SyndromeTable {
    pub fn code(&self) -> CodeKind {
        self.code
    }

    fn sub(&self, syndrome: u64, checks: &[usize]) -> usize {
        checks
            .iter()
            .enumerate()
            .fold(0, |acc, (bit, &g)| acc | ((((syndrome >> g) & 1) as usize) << bit))
    }

    /// X-correction support for the Z-check part of `syndrome`.
    pub fn x_correction(&self, syndrome: u64) -> Result<&[usize]> {
        let s = self.sub(syndrome, &self.z_checks);
        self.x_fix[s]
            .as_deref()
            .ok_or_else(|| invalid(format!("unreachable syndrome {syndrome:#b}")))
    }

    /// Z-correction support for the X-check part of `syndrome`.
    pub fn z_correction(&self, syndrome: u64) -> Result<&[usize]> {
        let s = self.sub(syndrome, &self.x_checks);
        self.z_fix[s]
            .as_deref()
            .ok_or_else(|| invalid(format!("unreachable syndrome {syndrome:#b}")))
    }

    /// Full correction for a syndrome over all generators.
    pub fn lookup(&self, syndrome: u64) -> Result<PauliString> {
        if self.num_generators < 64 && syndrome >> self.num_generators != 0 {
            return Err(invalid("syndrome has bits beyond the generator count"));
        }
        let mut p = PauliString::from_support(self.n, self.x_correction(syndrome)?, Pauli::X);
        p.mul_assign(&PauliString::from_support(
            self.n,
            self.z_correction(syndrome)?,
            Pauli::Z,
        ));
        Ok(p)
    }

    /// Largest correction weight stored in either table.
    pub fn max_weight(&self) -> usize {
        self.x_fix
            .iter()
            .chain(&self.z_fix)
            .flatten()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// Number of syndromes with an entry in each of the (X, Z) tables.
    pub fn entries(&self) -> (usize, usize) {
        (
            self.x_fix.iter().flatten().count(),
            self.z_fix.iter().flatten().count(),
        )
    }

    /// Writes `detects,syndrome,correction` rows. `detects` is the Pauli the
    /// checks detect; the syndrome is a bit string over those checks in generator order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["detects", "syndrome", "correction"])?;
        for (label, checks, table, kind) in [
            ("X", &self.z_checks, &self.x_fix, Pauli::X),
            ("Z", &self.x_checks, &self.z_fix, Pauli::Z),
        ] {
            for (s, entry) in table.iter().enumerate() {
                if let Some(support) = entry {
                    let bits: String = (0..checks.len())
                        .map(|b| if (s >> b) & 1 == 1 { '1' } else { '0' })
                        .collect();
                    let p = PauliString::from_support(self.n, support, kind);
                    w.write_record([label, bits.as_str(), p.to_string().as_str()])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}
