use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// Single-qubit Pauli factor. The declaration order is the canonical
/// ordering used for sorting patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Unit-coefficient tensor product of Pauli factors on `n` qubits, stored as
/// X and Z bit masks (Y sets both). Qubit `j` is bit `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliPattern {
    n: usize,
    x: Box<[u64]>,
    z: Box<[u64]>,
}

impl PauliPattern {
    pub fn identity(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            x: vec![0; words].into(),
            z: vec![0; words].into(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n, "qubit {q} out of range for {}", self.n);
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {}", self.n);
        let (w, b) = (q / 64, q % 64);
        let (xb, zb) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn with(mut self, q: usize, p: Pauli) -> Self {
        self.set(q, p);
        self
    }

    /// Sets `p` on every qubit of `set`, replacing what was there.
    pub fn with_set(mut self, set: &IndexSet, p: Pauli) -> Self {
        for q in set.iter() {
            self.set(q, p);
        }
        self
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(self.z.iter())
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Non-identity qubits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    pub fn count(&self, p: Pauli) -> usize {
        (0..self.n).filter(|&q| self.get(q) == p).count()
    }

    /// Bit mask of qubits carrying X or Y, for `n <= 64`.
    pub fn x_mask(&self) -> u64 {
        self.x[0]
    }

    /// Bit mask of qubits carrying Z or Y, for `n <= 64`.
    pub fn z_mask(&self) -> u64 {
        self.z[0]
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    /// Product `self * other` as a pattern and a power of `i` (0..4).
    pub fn mul(&self, other: &Self) -> Result<(PauliPattern, u32)> {
        self.check_same_size(other)?;
        let mut plus = 0u32;
        let mut minus = 0u32;
        let words = self.x.len();
        let mut x = vec![0u64; words];
        let mut z = vec![0u64; words];
        for w in 0..words {
            let (ax, az, bx, bz) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (a_x, a_y, a_z) = (ax & !az, ax & az, !ax & az);
            let (b_x, b_y, b_z) = (bx & !bz, bx & bz, !bx & bz);
            // XY = iZ, YZ = iX, ZX = iY and the reversed products pick up -i.
            plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
            minus += ((a_y & b_x) | (a_z & b_y) | (a_x & b_z)).count_ones();
            x[w] = ax ^ bx;
            z[w] = az ^ bz;
        }
        let phase = (plus + 4 * words as u32 * 64 - minus) % 4;
        Ok((
            PauliPattern {
                n: self.n,
                x: x.into(),
                z: z.into(),
            },
            phase,
        ))
    }

    /// Whether the two patterns commute: they anticommute on an even number
    /// of qubits.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.check_same_size(other)?;
        let anti: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        Ok(anti % 2 == 0)
    }
}

/// Canonical order: compare factors from qubit `n-1` down, with I < X < Y < Z.
impl Ord for PauliPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for w in (0..self.x.len()).rev() {
                let diff = (self.x[w] ^ other.x[w]) | (self.z[w] ^ other.z[w]);
                if diff != 0 {
                    let q = w * 64 + 63 - diff.leading_zeros() as usize;
                    return self.get(q).cmp(&other.get(q));
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PauliPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Written with qubit `n-1` first, e.g. `ZIXY`.
impl fmt::Display for PauliPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.n).rev() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.is_empty() {
            return Err(Error::EmptySize);
        }
        let n = chars.len();
        let mut p = PauliPattern::identity(n);
        for (k, c) in chars.iter().enumerate() {
            let pauli =
                Pauli::from_char(*c).ok_or_else(|| Error::Invalid(format!("bad Pauli factor {c:?}")))?;
            p.set(n - 1 - k, pauli);
        }
        Ok(p)
    }
}

pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// A coefficient times a Pauli pattern. All scalar content lives in the
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub pattern: PauliPattern,
    pub coeff: Complex64,
}

impl PauliString {
    pub fn new(pattern: PauliPattern, coeff: Complex64) -> Self {
        Self { pattern, coeff }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(PauliPattern::identity(n), Complex64::new(1.0, 0.0))
    }

    /// Single factor `p` on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self> {
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q, n });
        }
        Ok(Self::new(PauliPattern::identity(n).with(q, p), Complex64::new(1.0, 0.0)))
    }

    /// `p` applied to every qubit in `set` (e.g. `Z_S`).
    pub fn on_set(n: usize, set: &IndexSet, p: Pauli) -> Result<Self> {
        if let Some(m) = set.max() {
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, n });
            }
        }
        Ok(Self::new(
            PauliPattern::identity(n).with_set(set, p),
            Complex64::new(1.0, 0.0),
        ))
    }

    pub fn num_qubits(&self) -> usize {
        self.pattern.num_qubits()
    }

    pub fn weight(&self) -> usize {
        self.pattern.weight()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(self.pattern.clone(), self.coeff * c)
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        let (pattern, phase) = self.pattern.mul(&other.pattern)?;
        Ok(PauliString::new(pattern, self.coeff * other.coeff * i_pow(phase)))
    }

    pub fn adjoint(&self) -> PauliString {
        PauliString::new(self.pattern.clone(), self.coeff.conj())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.coeff.im.abs() <= tol
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        self.pattern.commutes_with(&other.pattern)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i) {}", self.coeff.re, self.coeff.im, self.pattern)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> PauliPattern {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_y_is_i_z() {
        let (p, phase) = pat("X").mul(&pat("Y")).unwrap();
        assert_eq!(p, pat("Z"));
        assert_eq!(i_pow(phase), Complex64::new(0.0, 1.0));
        let (_, phase) = pat("Y").mul(&pat("X")).unwrap();
        assert_eq!(i_pow(phase), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn z_string_is_involution() {
        let z = PauliString::on_set(5, &IndexSet::from([0, 2, 3]), Pauli::Z).unwrap();
        let sq = z.multiply(&z).unwrap();
        assert!(sq.pattern.is_identity());
        assert_eq!(sq.coeff, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![pat("ZI"), pat("IZ"), pat("XY"), pat("II"), pat("YI"), pat("IX")];
        v.sort();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["II", "IX", "IZ", "XY", "YI", "ZI"]);
    }

    #[test]
    fn display_round_trip_and_errors() {
        assert_eq!(pat("ZIXY").to_string(), "ZIXY");
        assert_eq!(pat("ZIXY").get(0), Pauli::Y);
        assert_eq!(pat("ZIXY").get(3), Pauli::Z);
        assert!("ZQ".parse::<PauliPattern>().is_err());
        assert!("".parse::<PauliPattern>().is_err());
        assert!(matches!(pat("X").mul(&pat("XX")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn wide_patterns_cross_word_boundaries() {
        let a = PauliPattern::identity(130).with(0, Pauli::X).with(64, Pauli::Y).with(129, Pauli::Z);
        let b = PauliPattern::identity(130).with(64, Pauli::Z).with(129, Pauli::X);
        let (p, phase) = a.mul(&b).unwrap();
        assert_eq!(p.get(64), Pauli::X);
        assert_eq!(p.get(129), Pauli::Y);
        // YZ = iX, ZX = iY
        assert_eq!(phase, 2);
        assert_eq!(a.weight(), 3);
        assert!(a.cmp(&b) == Ordering::Greater);
    }

    #[test]
    fn commutation() {
        assert!(pat("XX").commutes_with(&pat("ZZ")).unwrap());
        assert!(!pat("XI").commutes_with(&pat("ZZ")).unwrap());
        assert!(pat("IXZX").commutes_with(&pat("IYZY")).unwrap());
    }
}
