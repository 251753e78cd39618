use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Global phase of a Pauli operator, `i^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    /// Power of `i` in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// An n-qubit Pauli operator `phase · P_1 ⊗ … ⊗ P_n` in symplectic form.
///
/// Qubit `q` (0-based) is `X` if only its x bit is set, `Z` if only its z bit
/// is set, and `Y` if both are. The string form lists qubit 0 first, so
/// `"XZZXI"` has `X` on qubit 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: Phase::ONE,
        }
    }

    /// Identity everywhere except `pauli` on qubit `qubit`.
    pub fn single(n: usize, qubit: usize, pauli: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, pauli);
        p
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut p = Self::identity(paulis.len());
        for (q, &l) in paulis.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.n, "qubit {qubit} out of range for n = {}", self.n);
        let (w, b) = (qubit / WORD, qubit % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, pauli: Pauli) {
        assert!(qubit < self.n, "qubit {qubit} out of range for n = {}", self.n);
        let (w, b) = (qubit / WORD, qubit % WORD);
        let (xb, zb) = pauli.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        (self.x[qubit / WORD] >> (qubit % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        (self.z[qubit / WORD] >> (qubit % WORD)) & 1 == 1
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// True when the operator is the identity up to phase.
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_up_to_phase() && self.phase == Phase::ONE
    }

    /// Compares the operator parts, ignoring phase.
    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// The length-2n vector `(x | z)` over GF(2).
    pub fn symplectic_vector(&self) -> Vec<bool> {
        (0..self.n)
            .map(|q| self.x_bit(q))
            .chain((0..self.n).map(|q| self.z_bit(q)))
            .collect()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        // Per-qubit products XY = iZ, YZ = iX, ZX = iY contribute +i; the
        // reversed orders contribute -i.
        let mut plus = 0i64;
        let mut minus = 0i64;
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (px, py, pz) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (qx, qy, qz) = (x2 & !z2, x2 & z2, !x2 & z2);
            plus += ((px & qy) | (py & qz) | (pz & qx)).count_ones() as i64;
            minus += ((py & qx) | (pz & qy) | (px & qz)).count_ones() as i64;
        }
        Ok(Self {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            phase: self.phase * other.phase * Phase::from_exponent(plus - minus),
        })
    }

    /// Symplectic inner product; `true` iff the operators commute.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        let parity: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        Ok(parity.is_multiple_of(2))
    }

    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.get(q).letter()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != Phase::ONE {
            write!(f, "{}", self.phase)?;
        }
        f.write_str(&self.letters())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({}{})", self.phase, self.letters())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `[+|-][i]LETTERS`, e.g. `"XZZXI"`, `"-iY"`, `"+IX"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::PauliParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut rest = s.trim();
        let mut exponent = 0i64;
        if let Some(r) = rest.strip_prefix('-') {
            exponent += 2;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            exponent += 1;
            rest = r;
        }
        if rest.is_empty() {
            return Err(err("no qubit letters"));
        }
        let paulis = rest
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(err(&format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_paulis(&paulis).with_phase(Phase::from_exponent(exponent)))
    }
}

/// Iterates every non-identity Pauli of the given weight on `n` qubits.
///
/// Order: supports in lexicographic order of qubit index sets, then letters
/// `X < Y < Z` lexicographically within each support.
pub fn paulis_of_weight(n: usize, weight: usize) -> impl Iterator<Item = PauliString> {
    combinations(n, weight).flat_map(move |support| {
        let count = 3usize.pow(support.len() as u32);
        (0..count).map(move |mut code| {
            let mut letters = vec![Pauli::I; support.len()];
            for slot in (0..support.len()).rev() {
                letters[slot] = Pauli::NON_IDENTITY[code % 3];
                code /= 3;
            }
            let mut p = PauliString::identity(n);
            for (&q, &l) in support.iter().zip(&letters) {
                p.set(q, l);
            }
            p
        })
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let r = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(r, p("-iY"));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("iY"));
    }

    #[test]
    fn single_qubit_table() {
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("iZ"));
        assert_eq!(p("Y").multiply(&p("Z")).unwrap(), p("iX"));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("-iZ"));
        assert_eq!(p("Y").multiply(&p("Y")).unwrap(), p("I"));
    }

    #[test]
    fn identity_is_neutral() {
        for s in ["XYZ", "-iZZI", "IIX"] {
            assert_eq!(p("III").multiply(&p(s)).unwrap(), p(s));
            assert_eq!(p(s).multiply(&p("III")).unwrap(), p(s));
        }
    }

    #[test]
    fn xz_squared_is_identity() {
        let sq = p("XZ").multiply(&p("XZ")).unwrap();
        assert!(sq.is_identity());
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XZZXI").commutes(&p("IXZZX")).unwrap());
        assert!(p("-iXY").commutes(&p("XY")).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert_eq!(
            p("XX").multiply(&p("X")),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        );
        assert!(p("XX").commutes(&p("XXX")).is_err());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        assert_eq!(p("-iXYZ").to_string(), "-iXYZ");
        assert_eq!(p("+i IX".replace(' ', "").as_str()).phase(), Phase::I);
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("-i".parse::<PauliString>().is_err());
    }

    #[test]
    fn weight_counts_support() {
        assert_eq!(p("IXYZI").weight(), 3);
        assert_eq!(PauliString::identity(70).weight(), 0);
        let mut big = PauliString::identity(70);
        big.set(65, Pauli::Y);
        big.set(3, Pauli::X);
        assert_eq!(big.weight(), 2);
        assert_eq!(big.get(65), Pauli::Y);
    }

    #[test]
    fn multi_word_products() {
        let mut a = PauliString::identity(100);
        let mut b = PauliString::identity(100);
        a.set(99, Pauli::X);
        b.set(99, Pauli::Z);
        a.set(10, Pauli::Z);
        b.set(10, Pauli::X);
        // (-i)(+i) = 1
        let r = a.multiply(&b).unwrap();
        assert_eq!(r.phase(), Phase::ONE);
        assert_eq!(r.get(99), Pauli::Y);
        assert!(a.commutes(&b).unwrap());
    }

    #[test]
    fn weight_enumeration_order_and_count() {
        let all: Vec<_> = paulis_of_weight(3, 2).collect();
        assert_eq!(all.len(), 3 * 9);
        assert_eq!(all[0].letters(), "XXI");
        assert_eq!(all[1].letters(), "XYI");
        assert_eq!(all[9].letters(), "XIX");
        assert_eq!(all.last().unwrap().letters(), "IZZ");
        assert_eq!(paulis_of_weight(5, 0).count(), 1);
        assert_eq!(paulis_of_weight(2, 3).count(), 0);
    }
}
