//! Parity, update, flip and remainder sets of the Bravyi-Kitaev encoding.
//!
//! All sets are read off the change-of-basis matrices once and cached in a
//! [`BkSets`] table:
//!
//! * `P(j)`: qubits whose joint parity is the parity of orbitals below `j`
//!   (row `j` of `(pi - 1) * beta^-1`, i.e. the strictly-below part of the
//!   cumulative sum expressed in Bravyi-Kitaev bits);
//! * `U(j)`: qubits other than `j` that store orbital `j` (column `j` of
//!   `beta`, rows above `j`);
//! * `F(j)`: qubits whose joint parity says whether `b_j` is flipped relative
//!   to `f_j` (row `j` of `beta^-1`, columns below `j`);
//! * `R(j) = P(j) \ F(j)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::MatrixBuilder;
use crate::index_set::IndexSet;

/// Cached single-index sets for one orbital count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkSets {
    n: usize,
    parity: Vec<IndexSet>,
    update: Vec<IndexSet>,
    flip: Vec<IndexSet>,
}

impl BkSets {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_builder(n, MatrixBuilder::default())
    }

    pub fn with_builder(n: usize, builder: MatrixBuilder) -> Result<Self> {
        let beta = builder.beta(n)?;
        let beta_inv = builder.beta_inverse(n)?;
        let mut strict_pi = builder.pi(n)?;
        for j in 0..n {
            strict_pi.set(j, j, false);
        }
        let prefix = strict_pi.mul(&beta_inv)?;
        let parity = (0..n).map(|j| prefix.row_support(j).into_iter().collect()).collect();
        let update = (0..n)
            .map(|j| beta.column_support(j).into_iter().filter(|&k| k > j).collect())
            .collect();
        let flip = (0..n)
            .map(|j| beta_inv.row_support(j).into_iter().filter(|&k| k < j).collect())
            .collect();
        Ok(Self {
            n,
            parity,
            update,
            flip,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn check(&self, j: usize) -> Result<()> {
        if j < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: j,
                n: self.n,
            })
        }
    }

    pub fn parity(&self, j: usize) -> Result<&IndexSet> {
        self.check(j)?;
        Ok(&self.parity[j])
    }

    pub fn update(&self, j: usize) -> Result<&IndexSet> {
        self.check(j)?;
        Ok(&self.update[j])
    }

    pub fn flip(&self, j: usize) -> Result<&IndexSet> {
        self.check(j)?;
        Ok(&self.flip[j])
    }

    pub fn remainder(&self, j: usize) -> Result<IndexSet> {
        Ok(self.parity(j)?.difference(self.flip(j)?))
    }

    /// `P(j)` for even `j`, `R(j)` for odd `j`.
    pub fn rho(&self, j: usize) -> Result<IndexSet> {
        if j % 2 == 0 {
            self.parity(j).cloned()
        } else {
            self.remainder(j)
        }
    }

    /// `F(j) ∪ {j}`: the support of the number operator.
    pub fn flip_closure(&self, j: usize) -> Result<IndexSet> {
        Ok(self.flip(j)?.with(j))
    }

    pub fn single(&self, j: usize) -> Result<SingleSets> {
        Ok(SingleSets {
            parity: self.parity(j)?.clone(),
            update: self.update(j)?.clone(),
            flip: self.flip(j)?.clone(),
            remainder: self.remainder(j)?,
            rho: self.rho(j)?,
            flip_closure: self.flip_closure(j)?,
        })
    }

    /// Pairwise sets for `i != j`, defined exactly as written for the
    /// ordered pair `(i, j)`.
    pub fn pair(&self, i: usize, j: usize) -> Result<PairSets> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::RepeatedIndex(vec![i, j]));
        }
        let si = self.single(i)?;
        let sj = self.single(j)?;
        Ok(PairSets {
            update_diff: si.update.symmetric_difference(&sj.update),
            alpha: si.update.intersection(&sj.parity),
            p0: si.parity.symmetric_difference(&sj.parity),
            p1: si.parity.symmetric_difference(&sj.remainder),
            p2: si.remainder.symmetric_difference(&sj.parity),
            p3: si.remainder.symmetric_difference(&sj.remainder),
            flip_closure_diff: si.flip_closure.symmetric_difference(&sj.flip_closure),
            i: si,
            j: sj,
        })
    }

    /// Plain-text table of `P`, `U`, `F`, `R` per index, highest index first.
    pub fn tabulate(&self) -> String {
        let mut out = String::from("j\tP\tU\tF\tR\n");
        for j in (0..self.n).rev() {
            let r = self.parity[j].difference(&self.flip[j]);
            let _ = writeln!(
                out,
                "{j}\t{}\t{}\t{}\t{}",
                self.parity[j], self.update[j], self.flip[j], r
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleSets {
    pub parity: IndexSet,
    pub update: IndexSet,
    pub flip: IndexSet,
    pub remainder: IndexSet,
    pub rho: IndexSet,
    pub flip_closure: IndexSet,
}

/// Sets used when multiplying operators on two distinct orbitals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSets {
    pub i: SingleSets,
    pub j: SingleSets,
    /// `U(i) △ U(j)`
    pub update_diff: IndexSet,
    /// `U(i) ∩ P(j)`
    pub alpha: IndexSet,
    /// `P(i) △ P(j)`
    pub p0: IndexSet,
    /// `P(i) △ R(j)`
    pub p1: IndexSet,
    /// `R(i) △ P(j)`
    pub p2: IndexSet,
    /// `R(i) △ R(j)`
    pub p3: IndexSet,
    /// `(F(i) ∪ {i}) △ (F(j) ∪ {j})`
    pub flip_closure_diff: IndexSet,
}

pub fn parity_set(j: usize, n: usize) -> Result<IndexSet> {
    BkSets::new(n)?.parity(j).cloned()
}

pub fn update_set(j: usize, n: usize) -> Result<IndexSet> {
    BkSets::new(n)?.update(j).cloned()
}

pub fn flip_set(j: usize, n: usize) -> Result<IndexSet> {
    BkSets::new(n)?.flip(j).cloned()
}

pub fn derived_sets(i: usize, j: usize, n: usize) -> Result<PairSets> {
    BkSets::new(n)?.pair(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{build_beta, build_beta_inverse};

    fn set(v: &[usize]) -> IndexSet {
        v.into()
    }

    #[test]
    fn eight_orbital_lists() {
        let s = BkSets::new(8).unwrap();
        let p = [
            &[][..],
            &[0],
            &[1],
            &[2, 1],
            &[3],
            &[4, 3],
            &[5, 3],
            &[6, 5, 3],
        ];
        let u = [
            &[1, 3, 7][..],
            &[3, 7],
            &[3, 7],
            &[7],
            &[5, 7],
            &[7],
            &[7],
            &[],
        ];
        let f = [&[][..], &[0], &[], &[2, 1], &[], &[4], &[], &[6, 5, 3]];
        for j in 0..8 {
            assert_eq!(s.parity(j).unwrap(), &set(p[j]), "P({j})");
            assert_eq!(s.update(j).unwrap(), &set(u[j]), "U({j})");
            assert_eq!(s.flip(j).unwrap(), &set(f[j]), "F({j})");
        }
    }

    #[test]
    fn sixteen_orbitals() {
        let s = BkSets::new(16).unwrap();
        assert_eq!(s.parity(4).unwrap(), &set(&[3]));
        assert_eq!(s.update(4).unwrap(), &set(&[5, 7, 15]));
        assert_eq!(s.update(0).unwrap(), &set(&[1, 3, 7, 15]));
        assert_eq!(s.update(7).unwrap(), &set(&[15]));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(parity_set(8, 8), Err(Error::IndexOutOfRange { index: 8, n: 8 })));
        assert!(matches!(update_set(3, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(flip_set(0, 0), Err(Error::EmptySize)));
        assert!(matches!(derived_sets(2, 2, 4), Err(Error::RepeatedIndex(_))));
    }

    #[test]
    fn derived_examples() {
        let s = BkSets::new(8).unwrap();
        assert!(s.remainder(7).unwrap().is_empty());
        assert_eq!(s.flip_closure(0).unwrap(), set(&[0]));
        let pair = derived_sets(0, 2, 4).unwrap();
        assert_eq!(pair.alpha, set(&[1]));
    }

    // Parity of orbitals below j is p_{j-1}, i.e. row j-1 of pi * beta^-1
    // read in full; this is an independent route to P(j).
    #[test]
    fn parity_set_equals_previous_cumulative_row() {
        for n in 1..=40 {
            let s = BkSets::new(n).unwrap();
            let beta_inv = build_beta_inverse(n).unwrap();
            for j in 0..n {
                let expected: IndexSet = if j == 0 {
                    IndexSet::empty()
                } else {
                    // XOR of rows 0..j of beta^-1 gives the BK qubits summing to p_{j-1}
                    let mut acc = vec![false; n];
                    for r in 0..j {
                        for c in 0..n {
                            acc[c] ^= beta_inv.get(r, c);
                        }
                    }
                    (0..n).filter(|&c| acc[c]).collect()
                };
                assert_eq!(s.parity(j).unwrap(), &expected, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn flip_and_update_by_direct_scan() {
        for n in 1..=40 {
            let s = BkSets::new(n).unwrap();
            let beta = build_beta(n).unwrap();
            for j in 0..n {
                // F(j): the other occupation sums stored in b_j, expressed in
                // BK qubits. b_j = f_j + sum over lower b_k it fully contains.
                let lower: IndexSet = (0..j).filter(|&k| beta.get(j, k)).collect();
                let mut covered = vec![false; n];
                let mut flip = Vec::new();
                for k in lower.iter().rev() {
                    if !covered[k] {
                        flip.push(k);
                        for c in 0..n {
                            if beta.get(k, c) {
                                covered[c] = true;
                            }
                        }
                    }
                }
                assert_eq!(s.flip(j).unwrap(), &flip.into_iter().collect::<IndexSet>(), "n={n} j={j}");
                let upd: IndexSet = (j + 1..n).filter(|&i| beta.get(i, j)).collect();
                assert_eq!(s.update(j).unwrap(), &upd);
            }
        }
    }

    #[test]
    fn structural_invariants() {
        for n in 1..=64 {
            let s = BkSets::new(n).unwrap();
            for j in 0..n {
                assert!(s.update(j).unwrap().iter().all(|k| k % 2 == 1));
                let f = s.flip(j).unwrap();
                let p = s.parity(j).unwrap();
                let r = s.remainder(j).unwrap();
                if j % 2 == 0 {
                    assert!(f.is_empty());
                    assert_eq!(&s.rho(j).unwrap(), p);
                } else {
                    assert_eq!(s.rho(j).unwrap(), r);
                    assert_eq!(&r.union(f), p, "P = R ∪ F for n={n} j={j}");
                    assert!(r.intersection(f).is_empty());
                }
            }
        }
    }

    #[test]
    fn set_sizes_are_logarithmic() {
        // P and F do not depend on n, and U(j) at n <= 1024 is contained in
        // U(j) at 1024, so the largest table bounds every smaller one.
        let s = BkSets::new(1024).unwrap();
        let bound = 11;
        for j in 0..1024 {
            assert!(s.parity(j).unwrap().len() <= bound);
            assert!(s.update(j).unwrap().len() <= bound);
            assert!(s.flip(j).unwrap().len() <= bound);
        }
        for n in [3usize, 5, 7, 12, 33, 100, 129, 300, 513] {
            let s = BkSets::new(n).unwrap();
            let bound = (n as f64).log2().ceil() as usize + 1;
            for j in 0..n {
                assert!(s.parity(j).unwrap().len() <= bound);
                assert!(s.update(j).unwrap().len() <= bound);
                assert!(s.flip(j).unwrap().len() <= bound);
            }
        }
    }

    #[test]
    fn update_sets_grow_by_suffix() {
        for n in 1..=128 {
            let a = BkSets::new(n).unwrap();
            let b = BkSets::new(2 * n).unwrap();
            for j in 0..n {
                let small = a.update(j).unwrap();
                let big = b.update(j).unwrap();
                assert_eq!(&big.as_slice()[..small.len()], small.as_slice());
                assert_eq!(a.parity(j).unwrap(), b.parity(j).unwrap());
                assert_eq!(a.flip(j).unwrap(), b.flip(j).unwrap());
            }
        }
    }

    #[test]
    fn tabulation() {
        let t = BkSets::new(8).unwrap().tabulate();
        assert!(t.contains("7\t{6,5,3}\t{}\t{6,5,3}\t{}"));
        assert!(t.contains("0\t{}\t{7,3,1}\t{}\t{}"));
        assert_eq!(BkSets::new(1).unwrap().tabulate(), "j\tP\tU\tF\tR\n0\t{}\t{}\t{}\t{}\n");
    }
}
