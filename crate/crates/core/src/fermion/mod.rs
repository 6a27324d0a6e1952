//! Fermionic mode operators under the Jordan-Wigner, parity and
//! Bravyi-Kitaev encodings, composite operators built from them, and a
//! dense occupation-basis oracle.

mod encoding;
mod oracle;

pub use encoding::{
    bk_ladder_pi, coulomb_exchange, double_excitation_operator, excitation_operator,
    hopping_product, mode_operator, number_excitation_operator, number_operator, Encoder,
    EncodingKind, ModeSets,
};
pub use oracle::{fermionic_oracle, FermionOperator};
