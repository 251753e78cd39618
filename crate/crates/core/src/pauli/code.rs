use std::fmt;

use super::string::{paulis_of_weight, PauliString};
use crate::error::{Error, Result};

/// Largest `n` for which the exhaustive searches are attempted.
pub const BRUTE_FORCE_MAX_QUBITS: usize = 12;

/// Anticommutation pattern of an error with the code generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    bits: Vec<bool>,
}

impl Syndrome {
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorClass {
    StabilizerEquivalent,
    LogicalX,
    LogicalY,
    LogicalZ,
    Detectable,
}

impl ErrorClass {
    pub fn is_logical(self) -> bool {
        matches!(self, Self::LogicalX | Self::LogicalY | Self::LogicalZ)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::StabilizerEquivalent => "StabilizerEquivalent",
            Self::LogicalX => "LogicalX",
            Self::LogicalY => "LogicalY",
            Self::LogicalZ => "LogicalZ",
            Self::Detectable => "Detectable",
        }
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated `[[n, k, d]]` stabilizer code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
    distance: usize,
}

impl StabilizerCode {
    /// Builds a code after checking that the generators commute, carry phase
    /// `+1` and are independent, and that the logical operators commute with
    /// every generator and pair up by anticommutation.
    pub fn new(
        n: usize,
        generators: Vec<PauliString>,
        logical_x: Vec<PauliString>,
        logical_z: Vec<PauliString>,
        distance: usize,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCode("code must act on at least one qubit".into()));
        }
        if distance == 0 {
            return Err(Error::InvalidCode("distance must be positive".into()));
        }
        for p in generators.iter().chain(&logical_x).chain(&logical_z) {
            if p.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.num_qubits(),
                });
            }
        }
        if generators.len() > n {
            return Err(Error::InvalidCode(format!(
                "{} generators on {n} qubits",
                generators.len()
            )));
        }
        let k = n - generators.len();
        if logical_x.len() != k || logical_z.len() != k {
            return Err(Error::InvalidCode(format!(
                "expected {k} logical X/Z pairs, got {}/{}",
                logical_x.len(),
                logical_z.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.phase() != super::Phase::ONE {
                return Err(Error::InvalidCode(format!("generator {i} ({g}) has non-unit phase")));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutes(h)? {
                    return Err(Error::InvalidCode(format!(
                        "generators {i} ({g}) and {j} ({h}) anticommute"
                    )));
                }
            }
        }
        if gf2_rank(&generators) != generators.len() {
            return Err(Error::InvalidCode("generators are not independent".into()));
        }
        for (a, lx) in logical_x.iter().enumerate() {
            for (b, lz) in logical_z.iter().enumerate() {
                let anti = !lx.commutes(lz)?;
                if anti != (a == b) {
                    return Err(Error::InvalidCode(format!(
                        "logical X{a} and Z{b} have the wrong commutation relation"
                    )));
                }
            }
            for (b, other) in logical_x.iter().enumerate().skip(a + 1) {
                if !lx.commutes(other)? {
                    return Err(Error::InvalidCode(format!("logical X{a} and X{b} anticommute")));
                }
            }
        }
        for (a, lz) in logical_z.iter().enumerate() {
            for (b, other) in logical_z.iter().enumerate().skip(a + 1) {
                if !lz.commutes(other)? {
                    return Err(Error::InvalidCode(format!("logical Z{a} and Z{b} anticommute")));
                }
            }
        }
        for l in logical_x.iter().chain(&logical_z) {
            for (i, g) in generators.iter().enumerate() {
                if !l.commutes(g)? {
                    return Err(Error::InvalidCode(format!(
                        "logical operator {l} anticommutes with generator {i} ({g})"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            generators,
            logical_x,
            logical_z,
            distance,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_logical(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliString] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliString] {
        &self.logical_z
    }

    /// Declared distance. [`verify_distance`] checks it by brute force.
    pub fn distance(&self) -> usize {
        self.distance
    }

    /// All `2^(n-k)` products of generator subsets, in binary-counter order
    /// over the generator list.
    pub fn stabilizer_group(&self) -> Vec<PauliString> {
        let m = self.generators.len();
        (0u64..1 << m)
            .map(|mask| {
                self.generators
                    .iter()
                    .enumerate()
                    .filter(|(g, _)| mask >> g & 1 == 1)
                    .fold(PauliString::identity(self.n), |acc, (_, g)| {
                        acc.multiply(g).expect("generator dimensions checked")
                    })
            })
            .collect()
    }

    pub fn syndrome(&self, e: &PauliString) -> Result<Syndrome> {
        syndrome(self, e)
    }

    pub fn classify(&self, e: &PauliString) -> Result<ErrorClass> {
        classify(self, e)
    }
}

/// The `[[5,1,3]]` perfect code.
///
/// Generators are the cyclic shifts `XZZXI, IXZZX, XIXZZ, ZXIXZ`, with
/// qubits numbered left to right (qubit 1 is the first letter). Logical
/// operators are `XXXXX` and `ZZZZZ`. The η-table indices depend on this
/// labelling.
pub fn five_qubit_code() -> StabilizerCode {
    let p = |s: &str| s.parse::<PauliString>().expect("static Pauli literal");
    StabilizerCode::new(
        5,
        ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].iter().map(|s| p(s)).collect(),
        vec![p("XXXXX")],
        vec![p("ZZZZZ")],
        3,
    )
    .expect("five-qubit code is valid")
}

/// One qubit, no generators, `X`/`Z` as logicals: distance 1.
pub fn trivial_code() -> StabilizerCode {
    StabilizerCode::new(
        1,
        Vec::new(),
        vec!["X".parse().expect("literal")],
        vec!["Z".parse().expect("literal")],
        1,
    )
    .expect("trivial code is valid")
}

/// Bit `g` is set iff `e` anticommutes with generator `g`.
pub fn syndrome(code: &StabilizerCode, e: &PauliString) -> Result<Syndrome> {
    let bits = code
        .generators
        .iter()
        .map(|g| g.commutes(e).map(|c| !c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Syndrome { bits })
}

/// Classifies `e` by syndrome, then by commutation with the logical pair.
///
/// Only single-logical-qubit codes are supported.
pub fn classify(code: &StabilizerCode, e: &PauliString) -> Result<ErrorClass> {
    if code.num_logical() != 1 {
        return Err(Error::InvalidCode(format!(
            "classification needs k = 1, code has k = {}",
            code.num_logical()
        )));
    }
    if !syndrome(code, e)?.is_trivial() {
        return Ok(ErrorClass::Detectable);
    }
    let anti_x = !e.commutes(&code.logical_x[0])?;
    let anti_z = !e.commutes(&code.logical_z[0])?;
    Ok(match (anti_x, anti_z) {
        (false, false) => ErrorClass::StabilizerEquivalent,
        (false, true) => ErrorClass::LogicalX,
        (true, false) => ErrorClass::LogicalZ,
        (true, true) => ErrorClass::LogicalY,
    })
}

/// Smallest weight of a trivial-syndrome logical operator, searching weights
/// `1..=max_weight` in enumeration order.
pub fn minimum_logical_weight(code: &StabilizerCode, max_weight: usize) -> Result<Option<usize>> {
    let n = code.num_qubits();
    if n > BRUTE_FORCE_MAX_QUBITS {
        return Err(Error::BruteForceLimit {
            n,
            limit: BRUTE_FORCE_MAX_QUBITS,
        });
    }
    for w in 1..=max_weight.min(n) {
        for p in paulis_of_weight(n, w) {
            if classify(code, &p)?.is_logical() {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// True iff no Pauli of weight `< d` is a logical error and some weight-`d`
/// Pauli is.
pub fn verify_distance(code: &StabilizerCode, d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "distance must be at least 1".into(),
        });
    }
    Ok(minimum_logical_weight(code, d)? == Some(d))
}

/// Rank over GF(2) of the symplectic vectors.
pub fn gf2_rank(paulis: &[PauliString]) -> usize {
    let mut rows: Vec<Vec<bool>> = paulis.iter().map(|p| p.symplectic_vector()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot_row = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}
