use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::DENSE_CAP;

/// A scaled product of creation and annihilation operators, written left to
/// right and applied right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    modes: Vec<(usize, bool)>,
    coeff: Complex64,
}

impl FermionOperator {
    pub fn new(modes: Vec<(usize, bool)>, coeff: Complex64) -> Self {
        Self { modes, coeff }
    }

    pub fn identity() -> Self {
        Self::new(Vec::new(), Complex64::new(1.0, 0.0))
    }

    pub fn create(j: usize) -> Self {
        Self::new(vec![(j, true)], Complex64::new(1.0, 0.0))
    }

    pub fn annihilate(j: usize) -> Self {
        Self::new(vec![(j, false)], Complex64::new(1.0, 0.0))
    }

    /// `a†_i a_j`.
    pub fn hop(i: usize, j: usize) -> Self {
        Self::new(vec![(i, true), (j, false)], Complex64::new(1.0, 0.0))
    }

    /// `a†_i a†_j a_k a_l`.
    pub fn two_body(i: usize, j: usize, k: usize, l: usize) -> Self {
        Self::new(
            vec![(i, true), (j, true), (k, false), (l, false)],
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn modes(&self) -> &[(usize, bool)] {
        &self.modes
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        self.coeff *= c;
        self
    }

    /// Product `self · other`.
    pub fn then(&self, other: &FermionOperator) -> Self {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Self::new(modes, self.coeff * other.coeff)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.modes.iter().rev().map(|&(j, d)| (j, !d)).collect(),
            self.coeff.conj(),
        )
    }

    /// Action on one occupation-number basis state: the image state and its
    /// sign, or `None` when the state is annihilated.
    pub fn act(&self, state: usize) -> Option<(usize, f64)> {
        let mut s = state;
        let mut sign = 1.0;
        for &(j, dagger) in self.modes.iter().rev() {
            let occupied = (s >> j) & 1 == 1;
            if occupied == dagger {
                return None;
            }
            if (s & ((1usize << j) - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            s ^= 1 << j;
        }
        Some((s, sign))
    }
}

/// Dense matrix of `op` on `n` modes in the occupation-number basis, built
/// directly from the creation/annihilation rules.
pub fn fermionic_oracle(op: &FermionOperator, n: usize) -> Result<DMatrix<Complex64>> {
    if n > DENSE_CAP {
        return Err(Error::DenseCap { n, cap: DENSE_CAP });
    }
    if let Some(&(j, _)) = op.modes.iter().find(|&&(j, _)| j >= n) {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        if let Some((row, sign)) = op.act(col) {
            m[(row, col)] += op.coeff * sign;
        }
    }
    Ok(m)
}
