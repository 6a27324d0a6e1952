//! Dense realization of Pauli operators. Basis state index bit `j` is qubit
//! `j`, so the ket `|q_{n-1} … q_0⟩` reads as a binary number.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::string::{i_pow, Pauli, PauliString};
use super::sum::PauliSum;
use crate::error::{Error, Result};

/// Largest qubit count for which dense matrices are built.
pub const DENSE_CAP: usize = 12;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DenseCap { n, cap })
    } else {
        Ok(())
    }
}

impl PauliString {
    /// `P|c⟩ = coeff · i^{#Y} · (−1)^{|c ∧ z|} |c ⊕ x⟩`.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        let n = self.num_qubits();
        check_cap(n, DENSE_CAP)?;
        let dim = 1usize << n;
        let (x, z) = (self.pattern.x_mask() as usize, self.pattern.z_mask() as usize);
        let base = self.coeff * i_pow(self.pattern.count(Pauli::Y) as u32);
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let sign = if (col & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(col ^ x, col)] = base * sign;
        }
        Ok(m)
    }

    /// Applies the operator to a state vector of length `2^n`.
    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.num_qubits();
        if n >= 64 || state.len() != 1usize << n {
            return Err(Error::SizeMismatch {
                expected: 1usize.checked_shl(n as u32).unwrap_or(0),
                found: state.len(),
            });
        }
        let (x, z) = (self.pattern.x_mask() as usize, self.pattern.z_mask() as usize);
        let base = self.coeff * i_pow(self.pattern.count(Pauli::Y) as u32);
        let mut out = vec![Complex64::default(); state.len()];
        for (col, amp) in state.iter().enumerate() {
            let sign = if (col & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[col ^ x] += base * sign * amp;
        }
        Ok(out)
    }
}

impl PauliSum {
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        self.to_matrix_capped(DENSE_CAP)
    }

    pub fn to_matrix_capped(&self, cap: usize) -> Result<DMatrix<Complex64>> {
        let n = self.num_qubits();
        check_cap(n, cap.min(30))?;
        let dim = 1usize << n;
        let mut m = DMatrix::zeros(dim, dim);
        for s in self.strings() {
            let (x, z) = (s.pattern.x_mask() as usize, s.pattern.z_mask() as usize);
            let base = s.coeff * i_pow(s.pattern.count(Pauli::Y) as u32);
            for col in 0..dim {
                let sign = if (col & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                m[(col ^ x, col)] += base * sign;
            }
        }
        Ok(m)
    }

    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::default(); state.len()];
        for s in self.strings() {
            for (o, v) in out.iter_mut().zip(s.apply(state)?) {
                *o += v;
            }
        }
        Ok(out)
    }
}
