use std::fmt::Write as _;

use crate::bath::Axis;
use crate::error::{Error, Result};
use crate::pauli::{classify, syndrome, ErrorClass, Pauli, PauliString, StabilizerCode};

/// One non-zero third-order coefficient `η^{αβ}_{ijk} = 1`: the product
/// `σ^α_i σ^β_j σ^β_k` has trivial syndrome and acts as a logical error.
///
/// Indices are 0-based here; text and CSV exports use 1-based labels
/// matching the qubit order of the code's generator strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaEntry {
    pub alpha: Axis,
    pub beta: Axis,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub logical: ErrorClass,
}

impl EtaEntry {
    pub fn pauli(&self, n: usize) -> PauliString {
        operator_product(n, self.alpha, self.i, self.beta, self.j, self.k)
    }

    /// `(i, j, k)` as 1-based labels.
    pub fn labels(&self) -> (usize, usize, usize) {
        (self.i + 1, self.j + 1, self.k + 1)
    }
}

/// The set of non-zero η coefficients of a distance-3 code. Entries are
/// stored once per unordered `(j, k)` pair with `j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaTable {
    n: usize,
    entries: Vec<EtaEntry>,
}

fn letter(axis: Axis) -> Pauli {
    match axis {
        Axis::X => Pauli::X,
        Axis::Z => Pauli::Z,
    }
}

fn operator_product(n: usize, alpha: Axis, i: usize, beta: Axis, j: usize, k: usize) -> PauliString {
    let mut p = PauliString::single(n, i, letter(alpha));
    p.set(j, letter(beta));
    p.set(k, letter(beta));
    p
}

/// Enumerates every `(α, β, i, j<k)` with distinct qubits and keeps the
/// trivial-syndrome logical products.
///
/// Ordering: `(α, β)` in `xx, xz, zx, zz` order, then `i`, `j`, `k`
/// ascending.
pub fn enumerate_eta(code: &StabilizerCode) -> Result<EtaTable> {
    if code.distance() != 3 {
        return Err(Error::UnsupportedOrder {
            distance: code.distance(),
        });
    }
    let n = code.num_qubits();
    if n > crate::pauli::BRUTE_FORCE_MAX_QUBITS {
        return Err(Error::BruteForceLimit {
            n,
            limit: crate::pauli::BRUTE_FORCE_MAX_QUBITS,
        });
    }
    let mut entries = Vec::new();
    for alpha in Axis::ALL {
        for beta in Axis::ALL {
            for i in 0..n {
                for j in 0..n {
                    for k in j + 1..n {
                        if i == j || i == k {
                            continue;
                        }
                        let p = operator_product(n, alpha, i, beta, j, k);
                        if !syndrome(code, &p)?.is_trivial() {
                            continue;
                        }
                        let class = classify(code, &p)?;
                        if class.is_logical() {
                            entries.push(EtaEntry {
                                alpha,
                                beta,
                                i,
                                j,
                                k,
                                logical: class,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(EtaTable { n, entries })
}

impl EtaTable {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[EtaEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn with_channels(&self, alpha: Axis, beta: Axis) -> impl Iterator<Item = &EtaEntry> {
        self.entries
            .iter()
            .filter(move |e| e.alpha == alpha && e.beta == beta)
    }

    /// `η^{αβ}_{ijk}` for 0-based indices; symmetric in `j, k`.
    pub fn coefficient(&self, alpha: Axis, beta: Axis, i: usize, j: usize, k: usize) -> u8 {
        let (j, k) = (j.min(k), j.max(k));
        self.entries
            .iter()
            .any(|e| e.alpha == alpha && e.beta == beta && e.i == i && e.j == j && e.k == k) as u8
    }

    /// Aligned plain-text table with 1-based qubit labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<5} {:<4} {:>2} {:>2} {:>2}  {:<8}  logical_type", "alpha", "beta", "i", "j", "k", "pauli");
        for e in &self.entries {
            let (i, j, k) = e.labels();
            let _ = writeln!(
                out,
                "{:<5} {:<4} {:>2} {:>2} {:>2}  {:<8}  {}",
                e.alpha.as_str(),
                e.beta.as_str(),
                i,
                j,
                k,
                e.pauli(self.n).letters(),
                e.logical.as_str()
            );
        }
        out
    }
}
