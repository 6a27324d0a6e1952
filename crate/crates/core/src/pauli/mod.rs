//! Pauli strings and sums in symplectic (X-mask, Z-mask) form.

mod dense;
mod string;
mod sum;

pub(crate) use dense::check_cap;
pub use dense::DENSE_CAP;
pub use string::{Pauli, PauliPattern, PauliString};
pub use sum::{ladder, parity_projector, LadderKind, ParityKind, PauliSum, DROP_TOLERANCE};
