//! Change-of-basis matrices over GF(2).
//!
//! Rows and columns are addressed by orbital/qubit label: entry `(i, j)` is the
//! coefficient of `f_j` in the stored sum for qubit `i`. The conventional
//! printed layout (label `n-1` in the top-left, label `0` in the lower-right)
//! is produced by the `Display` impl and by [`BinaryMatrix::from_rows_displayed`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest orbital count accepted by the matrix builders unless overridden.
pub const DEFAULT_SIZE_LIMIT: usize = 1024;

/// Square bit matrix with packed rows. All arithmetic is mod 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows written in the printed layout: the first row
    /// is label `n-1` and the first character of each row is column `n-1`.
    pub fn from_rows_displayed(rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: cells.len(),
                });
            }
            for (c, ch) in cells.iter().enumerate() {
                let bit = match ch {
                    '0' => false,
                    '1' => true,
                    other => return Err(Error::Invalid(format!("not a bit: {other:?}"))),
                };
                m.set(n - 1 - r, n - 1 - c, bit);
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "({i}, {j}) out of range for {}", self.n);
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "({i}, {j}) out of range for {}", self.n);
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Column labels with a 1 in row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(i, j)).collect()
    }

    /// Row labels with a 1 in column `j`, ascending.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i, j)).collect()
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = BinaryMatrix::zeros(self.n);
        for i in 0..self.n {
            let base = i * out.words;
            for k in 0..self.n {
                if self.get(i, k) {
                    for (o, r) in out.bits[base..base + out.words]
                        .iter_mut()
                        .zip(other.row(k))
                    {
                        *o ^= r;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a bit vector indexed by label.
    pub fn apply(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.get(i, j) && v[j]).count() % 2 == 1)
            .collect())
    }

    /// The `m x m` segment covering labels `0..m` (the lower-right block in
    /// printed layout).
    pub fn segment(&self, m: usize) -> BinaryMatrix {
        assert!(m <= self.n);
        let mut out = BinaryMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                if self.get(i, j) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({})\n{self}", self.n)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.n).rev() {
            let row: Vec<&str> = (0..self.n)
                .rev()
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySize)
    } else if n > limit {
        Err(Error::SizeLimit { n, limit })
    } else {
        Ok(())
    }
}

/// Matrix builders with a configurable size limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixBuilder {
    pub size_limit: usize,
}

impl Default for MatrixBuilder {
    fn default() -> Self {
        Self {
            size_limit: DEFAULT_SIZE_LIMIT,
        }
    }
}

impl MatrixBuilder {
    /// Occupation to parity: `p_i = sum_{j <= i} f_j`.
    pub fn pi(&self, n: usize) -> Result<BinaryMatrix> {
        check_size(n, self.size_limit)?;
        let mut m = BinaryMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parity to occupation: `f_i = p_i + p_{i-1}`.
    pub fn pi_inverse(&self, n: usize) -> Result<BinaryMatrix> {
        check_size(n, self.size_limit)?;
        let mut m = BinaryMatrix::identity(n);
        for i in 1..n {
            m.set(i, i - 1, true);
        }
        Ok(m)
    }

    /// Occupation to Bravyi-Kitaev. Built for the next power of two by
    /// doubling (block-diagonal copy, then the top row of the off-diagonal
    /// block set to ones) and sliced down to `n`.
    pub fn beta(&self, n: usize) -> Result<BinaryMatrix> {
        check_size(n, self.size_limit)?;
        let full = n.next_power_of_two();
        let mut m = BinaryMatrix::identity(1);
        while m.size() < full {
            let half = m.size();
            let mut next = block_double(&m);
            for j in 0..half {
                next.set(2 * half - 1, j, true);
            }
            m = next;
        }
        Ok(m.segment(n))
    }

    /// Bravyi-Kitaev to occupation, by the matching doubling pattern: each
    /// doubling adds a single 1 at `(2h-1, h-1)`.
    pub fn beta_inverse(&self, n: usize) -> Result<BinaryMatrix> {
        check_size(n, self.size_limit)?;
        let full = n.next_power_of_two();
        let mut m = BinaryMatrix::identity(1);
        while m.size() < full {
            let half = m.size();
            let mut next = block_double(&m);
            next.set(2 * half - 1, half - 1, true);
            m = next;
        }
        Ok(m.segment(n))
    }
}

fn block_double(m: &BinaryMatrix) -> BinaryMatrix {
    let h = m.size();
    let mut out = BinaryMatrix::zeros(2 * h);
    for i in 0..h {
        for j in 0..h {
            if m.get(i, j) {
                out.set(i, j, true);
                out.set(i + h, j + h, true);
            }
        }
    }
    out
}

pub fn build_pi(n: usize) -> Result<BinaryMatrix> {
    MatrixBuilder::default().pi(n)
}

pub fn build_beta(n: usize) -> Result<BinaryMatrix> {
    MatrixBuilder::default().beta(n)
}

pub fn build_beta_inverse(n: usize) -> Result<BinaryMatrix> {
    MatrixBuilder::default().beta_inverse(n)
}

/// Which quantity each qubit of a basis state stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Occupation,
    Parity,
    BravyiKitaev,
}

/// A computational basis state tagged with the encoding its bits are in.
/// Bit `j` is qubit `j`; the string form lists qubit `n-1` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccupationVector {
    bits: Vec<bool>,
    basis: Basis,
}

impl OccupationVector {
    pub fn new(bits: Vec<bool>, basis: Basis) -> Self {
        Self { bits, basis }
    }

    /// Parses `f_{n-1} ... f_0` written as a string of `0`/`1`.
    pub fn parse(s: &str, basis: Basis) -> Result<Self> {
        let bits = s
            .chars()
            .rev()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::EmptySize);
        }
        Ok(Self { bits, basis })
    }

    pub fn from_index(index: usize, n: usize, basis: Basis) -> Self {
        Self {
            bits: (0..n).map(|j| (index >> j) & 1 == 1).collect(),
            basis,
        }
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| 1usize << j)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Re-expresses a state in another basis. Any source basis is accepted; the
/// state is first decoded to occupation numbers.
pub fn encode_state(v: &OccupationVector, target: Basis) -> Result<OccupationVector> {
    let n = v.len();
    let builder = MatrixBuilder::default();
    let occupation = match v.basis {
        Basis::Occupation => v.bits.clone(),
        Basis::Parity => builder.pi_inverse(n)?.apply(&v.bits)?,
        Basis::BravyiKitaev => builder.beta_inverse(n)?.apply(&v.bits)?,
    };
    let bits = match target {
        Basis::Occupation => occupation,
        Basis::Parity => builder.pi(n)?.apply(&occupation)?,
        Basis::BravyiKitaev => builder.beta(n)?.apply(&occupation)?,
    };
    Ok(OccupationVector {
        bits,
        basis: target,
    })
}
