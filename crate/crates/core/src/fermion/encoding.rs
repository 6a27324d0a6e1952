use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf2::{Basis, DEFAULT_SIZE_LIMIT};
use crate::index_set::IndexSet;
use crate::pauli::{Pauli, PauliPattern, PauliString, PauliSum};
use crate::sets::BkSets;

use super::oracle::FermionOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EncodingKind {
    JordanWigner,
    Parity,
    BravyiKitaev,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 3] = [
        EncodingKind::JordanWigner,
        EncodingKind::Parity,
        EncodingKind::BravyiKitaev,
    ];

    /// Quantity stored on each qubit under this encoding.
    pub fn basis(self) -> Basis {
        match self {
            EncodingKind::JordanWigner => Basis::Occupation,
            EncodingKind::Parity => Basis::Parity,
            EncodingKind::BravyiKitaev => Basis::BravyiKitaev,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            EncodingKind::JordanWigner => "jw",
            EncodingKind::Parity => "parity",
            EncodingKind::BravyiKitaev => "bk",
        }
    }
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jw" | "jordan-wigner" => Ok(EncodingKind::JordanWigner),
            "parity" => Ok(EncodingKind::Parity),
            "bk" | "bravyi-kitaev" => Ok(EncodingKind::BravyiKitaev),
            other => Err(Error::Invalid(format!("unknown encoding {other:?}"))),
        }
    }
}

/// The three sets that fix a mode operator: qubits to flip on a change of
/// occupation (`update`), qubits holding the parity below the mode
/// (`parity`), and qubits that tell whether the mode's qubit is flipped
/// relative to its occupation (`flip`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSets {
    pub update: IndexSet,
    pub parity: IndexSet,
    pub flip: IndexSet,
}

impl ModeSets {
    pub fn remainder(&self) -> IndexSet {
        self.parity.difference(&self.flip)
    }

    /// `F(j) ∪ {j}`.
    pub fn flip_closure(&self, j: usize) -> IndexSet {
        self.flip.with(j)
    }
}

/// Maps fermionic operators on `n` modes to Pauli sums under one encoding.
#[derive(Debug, Clone)]
pub struct Encoder {
    kind: EncodingKind,
    n: usize,
    bk: Option<BkSets>,
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Encoder {
    pub fn new(kind: EncodingKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize);
        }
        if n > DEFAULT_SIZE_LIMIT {
            return Err(Error::SizeLimit {
                n,
                limit: DEFAULT_SIZE_LIMIT,
            });
        }
        let bk = match kind {
            EncodingKind::BravyiKitaev => Some(BkSets::new(n)?),
            _ => None,
        };
        Ok(Self { kind, n, bk })
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn num_modes(&self) -> usize {
        self.n
    }

    fn check(&self, j: usize) -> Result<()> {
        if j < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: j, n: self.n })
        }
    }

    fn distinct(&self, idx: &[usize]) -> Result<()> {
        for &i in idx {
            self.check(i)?;
        }
        let unique: IndexSet = idx.iter().copied().collect();
        if unique.len() != idx.len() {
            return Err(Error::RepeatedIndex(idx.to_vec()));
        }
        Ok(())
    }

    pub fn mode_sets(&self, j: usize) -> Result<ModeSets> {
        self.check(j)?;
        Ok(match (self.kind, &self.bk) {
            (EncodingKind::BravyiKitaev, Some(bk)) => ModeSets {
                update: bk.update(j)?.clone(),
                parity: bk.parity(j)?.clone(),
                flip: bk.flip(j)?.clone(),
            },
            (EncodingKind::Parity, _) => {
                let below: IndexSet = j.checked_sub(1).into_iter().collect();
                ModeSets {
                    update: IndexSet::range(j + 1, self.n),
                    parity: below.clone(),
                    flip: below,
                }
            }
            _ => ModeSets {
                update: IndexSet::empty(),
                parity: IndexSet::range(0, j),
                flip: IndexSet::empty(),
            },
        })
    }

    /// `a†_j` (dagger) or `a_j` as `½(X_U X_j Z_P ∓ i X_U Y_j Z_ρ)` with
    /// `ρ = P \ F`.
    pub fn mode_operator(&self, dagger: bool, j: usize) -> Result<PauliSum> {
        let sets = self.mode_sets(j)?;
        let n = self.n;
        let base = PauliPattern::identity(n).with_set(&sets.update, Pauli::X);
        let real = base
            .clone()
            .with_set(&sets.parity, Pauli::Z)
            .with(j, Pauli::X);
        let imag = base.with_set(&sets.remainder(), Pauli::Z).with(j, Pauli::Y);
        let sign = if dagger { -0.5 } else { 0.5 };
        PauliSum::from_terms(
            n,
            [
                PauliString::new(real, c64(0.5, 0.0)),
                PauliString::new(imag, c64(0.0, sign)),
            ],
        )
    }

    pub fn creation(&self, j: usize) -> Result<PauliSum> {
        self.mode_operator(true, j)
    }

    pub fn annihilation(&self, j: usize) -> Result<PauliSum> {
        self.mode_operator(false, j)
    }

    /// Product of encoded mode operators, times the operator's coefficient.
    pub fn encode(&self, op: &FermionOperator) -> Result<PauliSum> {
        let mut acc = PauliSum::identity(self.n);
        for &(j, dagger) in op.modes() {
            acc = acc.mul(&self.mode_operator(dagger, j)?)?;
        }
        Ok(acc.scale(op.coeff()))
    }

    /// `a†_i a_i`.
    pub fn number(&self, i: usize) -> Result<PauliSum> {
        self.creation(i)?.mul(&self.annihilation(i)?)
    }

    /// `a†_i a†_j a_j a_i = n_i n_j`.
    pub fn coulomb_exchange(&self, i: usize, j: usize) -> Result<PauliSum> {
        self.distinct(&[i, j])?;
        self.number(i)?.mul(&self.number(j)?)
    }

    /// `a†_i a_j` for `i ≠ j`; the `i > j` case is the adjoint of `a†_j a_i`.
    pub fn hopping(&self, i: usize, j: usize) -> Result<PauliSum> {
        self.distinct(&[i, j])?;
        if i > j {
            return Ok(self.hopping(j, i)?.adjoint());
        }
        self.creation(i)?.mul(&self.annihilation(j)?)
    }

    /// `h a†_i a_j + h* a†_j a_i`.
    pub fn excitation(&self, i: usize, j: usize, h: Complex64) -> Result<PauliSum> {
        let t = self.hopping(i, j)?;
        t.scale(h).add(&t.adjoint().scale(h.conj()))
    }

    /// `h a†_i a†_j a_j a_k + h* a†_k a†_j a_j a_i`, the excitation `i ↔ k`
    /// weighted by the occupation of `j`.
    pub fn number_excitation(&self, i: usize, j: usize, k: usize, h: Complex64) -> Result<PauliSum> {
        self.distinct(&[i, j, k])?;
        self.excitation(i, k, h)?.mul(&self.number(j)?)
    }

    /// `h a†_i a†_j a_k a_l + h* a†_l a†_k a_j a_i`, composed as
    /// `(a†_i a_l)(a†_j a_k)` plus its adjoint.
    pub fn double_excitation(
        &self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        h: Complex64,
    ) -> Result<PauliSum> {
        self.distinct(&[i, j, k, l])?;
        let t = self.hopping(i, l)?.mul(&self.hopping(j, k)?)?;
        t.scale(h).add(&t.adjoint().scale(h.conj()))
    }
}

pub fn mode_operator(kind: EncodingKind, dagger: bool, j: usize, n: usize) -> Result<PauliSum> {
    Encoder::new(kind, n)?.mode_operator(dagger, j)
}

/// `Π±_j = ½(X_j Z_{F(j)} ∓ iY_j)` for odd `j` in the Bravyi-Kitaev basis.
pub fn bk_ladder_pi(dagger: bool, j: usize, n: usize) -> Result<PauliSum> {
    let sets = BkSets::new(n)?;
    let flip = sets.flip(j)?;
    if j % 2 == 0 {
        return Err(Error::EvenIndex(j));
    }
    let sign = if dagger { -0.5 } else { 0.5 };
    PauliSum::from_terms(
        n,
        [
            PauliString::new(
                PauliPattern::identity(n).with_set(flip, Pauli::Z).with(j, Pauli::X),
                c64(0.5, 0.0),
            ),
            PauliString::single(n, j, Pauli::Y)?.scaled(c64(0.0, sign)),
        ],
    )
}

pub fn number_operator(kind: EncodingKind, i: usize, n: usize) -> Result<PauliSum> {
    Encoder::new(kind, n)?.number(i)
}

pub fn coulomb_exchange(kind: EncodingKind, i: usize, j: usize, n: usize) -> Result<PauliSum> {
    Encoder::new(kind, n)?.coulomb_exchange(i, j)
}

pub fn hopping_product(kind: EncodingKind, i: usize, j: usize, n: usize) -> Result<PauliSum> {
    Encoder::new(kind, n)?.hopping(i, j)
}

pub fn excitation_operator(
    kind: EncodingKind,
    i: usize,
    j: usize,
    h: Complex64,
    n: usize,
) -> Result<PauliSum> {
    Encoder::new(kind, n)?.excitation(i, j, h)
}

pub fn number_excitation_operator(
    kind: EncodingKind,
    i: usize,
    j: usize,
    k: usize,
    h: Complex64,
    n: usize,
) -> Result<PauliSum> {
    Encoder::new(kind, n)?.number_excitation(i, j, k, h)
}

#[allow(clippy::too_many_arguments)]
pub fn double_excitation_operator(
    kind: EncodingKind,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    h: Complex64,
    n: usize,
) -> Result<PauliSum> {
    Encoder::new(kind, n)?.double_excitation(i, j, k, l, h)
}
