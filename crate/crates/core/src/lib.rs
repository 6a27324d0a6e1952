//! Fermion-to-qubit encodings, Pauli algebra, Hamiltonian assembly, Trotter
//! circuit synthesis and classical phase evaluation.

pub mod circuit;
pub mod error;
pub mod fermion;
pub mod gf2;
pub mod hamiltonian;
pub mod index_set;
pub mod linalg;
pub mod pauli;
pub mod sets;
pub mod spectral;
pub mod trotter;

pub use error::{Error, Result};
pub use fermion::{Encoder, EncodingKind, FermionOperator};
pub use gf2::{Basis, BinaryMatrix, OccupationVector};
pub use hamiltonian::{build_hamiltonian, partition_commuting, IntegralTable, PartitionedHamiltonian};
pub use index_set::IndexSet;
pub use pauli::{Pauli, PauliPattern, PauliString, PauliSum};
pub use sets::BkSets;
