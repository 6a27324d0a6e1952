//! Suzuki-Trotter schedules and Trotterized circuits.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{exponentiate_term, Circuit};
use crate::error::{Error, Result};
use crate::hamiltonian::PartitionedHamiltonian;
use crate::linalg::unitary_evolution;
use crate::pauli::{PauliString, PauliSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrdering {
    /// All terms of one part in canonical order, part after part.
    Naive,
    /// Terms sorted by descending magnitude, alternating between the two
    /// parts until the second is used up.
    Interleaved,
}

impl TermOrdering {
    pub const ALL: [TermOrdering; 2] = [TermOrdering::Naive, TermOrdering::Interleaved];

    pub fn name(&self) -> &'static str {
        match self {
            TermOrdering::Naive => "naive",
            TermOrdering::Interleaved => "interleaved",
        }
    }
}

impl fmt::Display for TermOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TermOrdering {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(TermOrdering::Naive),
            "interleaved" => Ok(TermOrdering::Interleaved),
            _ => Err(Error::Invalid(format!("unknown ordering {s:?}"))),
        }
    }
}

/// Which half of the `A + B` split an exponent belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrotterSchedule {
    order: usize,
    steps: usize,
    ordering: TermOrdering,
    factors: Vec<(Part, f64)>,
}

/// The fourth-order constant `p₁ = p₂ = p₄ = p₅`.
pub fn fourth_order_p1() -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / 3.0))
}

/// One step's exponent sequence for `order`, each factor scaling `t/n`.
pub fn suzuki_factors(order: usize) -> Result<Vec<(Part, f64)>> {
    use Part::{A, B};
    Ok(match order {
        1 => vec![(A, 1.0), (B, 1.0)],
        2 => vec![(A, 0.5), (B, 1.0), (A, 0.5)],
        3 => vec![
            (A, 7.0 / 24.0),
            (B, 2.0 / 3.0),
            (A, 3.0 / 4.0),
            (B, -2.0 / 3.0),
            (A, -1.0 / 24.0),
            (B, 1.0),
        ],
        4 => {
            let p1 = fourth_order_p1();
            let p = [p1, p1, 1.0 - 4.0 * p1, p1, p1];
            p.iter().flat_map(|&pi| [(A, pi / 2.0), (B, pi), (A, pi / 2.0)]).collect()
        }
        _ => return Err(Error::UnsupportedOrder(order)),
    })
}

pub fn suzuki_schedule(order: usize, steps: usize) -> Result<TrotterSchedule> {
    TrotterSchedule::new(order, steps, TermOrdering::Naive)
}

impl TrotterSchedule {
    pub fn new(order: usize, steps: usize, ordering: TermOrdering) -> Result<Self> {
        if steps == 0 {
            return Err(Error::ZeroSteps);
        }
        let factors = suzuki_factors(order)?;
        if ordering == TermOrdering::Interleaved && order != 1 {
            return Err(Error::InterleavedOrder(order));
        }
        Ok(Self { order, steps, ordering, factors })
    }

    pub fn with_ordering(mut self, ordering: TermOrdering) -> Result<Self> {
        if ordering == TermOrdering::Interleaved && self.order != 1 {
            return Err(Error::InterleavedOrder(self.order));
        }
        self.ordering = ordering;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn ordering(&self) -> TermOrdering {
        self.ordering
    }

    pub fn factors(&self) -> &[(Part, f64)] {
        &self.factors
    }

    /// Sum of the scale factors assigned to `part` in one step.
    pub fn total_weight(&self, part: Part) -> f64 {
        self.factors.iter().filter(|(p, _)| *p == part).map(|(_, f)| f).sum()
    }
}

/// A single-term exponential `exp(-i f dt P)` in step order.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponential {
    pub term: PauliString,
    pub scale: f64,
}

/// `A` is the first part; `B` is the remaining parts in order.
fn split(ph: &PartitionedHamiltonian) -> (Vec<PauliString>, Vec<PauliString>) {
    let mut parts = ph.parts().iter();
    let a = parts.next().map(|p| p.strings().collect()).unwrap_or_default();
    let b = parts.flat_map(|p| p.strings()).collect();
    (a, b)
}

fn by_magnitude(part: &PauliSum) -> Vec<PauliString> {
    let mut terms: Vec<PauliString> = part.strings().collect();
    terms.sort_by(|x, y| y.coeff.norm().total_cmp(&x.coeff.norm()));
    terms
}

/// The interleaved term sequence: `Z0, XY0, Z1, XY1, …` then the rest of
/// the first part.
pub fn interleaved_terms(ph: &PartitionedHamiltonian) -> Result<Vec<PauliString>> {
    if ph.parts().len() != 2 {
        return Err(Error::InterleavedParts(ph.parts().len()));
    }
    let z = by_magnitude(&ph.parts()[0]);
    let xy = by_magnitude(&ph.parts()[1]);
    let mut out = Vec::with_capacity(z.len() + xy.len());
    let mut zi = z.into_iter();
    for t in xy {
        out.extend(zi.next());
        out.push(t);
    }
    out.extend(zi);
    Ok(out)
}

/// Exponentials making up one Trotter step.
pub fn step_sequence(ph: &PartitionedHamiltonian, sched: &TrotterSchedule) -> Result<Vec<Exponential>> {
    match sched.ordering {
        TermOrdering::Interleaved => Ok(interleaved_terms(ph)?
            .into_iter()
            .map(|term| Exponential { term, scale: 1.0 })
            .collect()),
        TermOrdering::Naive => {
            let (a, b) = split(ph);
            Ok(sched
                .factors
                .iter()
                .flat_map(|&(part, f)| {
                    let terms = if part == Part::A { &a } else { &b };
                    terms.iter().map(move |t| Exponential { term: t.clone(), scale: f })
                })
                .collect())
        }
    }
}

/// Gate circuit for `sched` applied over total time `t`.
pub fn trotter_circuit(ph: &PartitionedHamiltonian, sched: &TrotterSchedule, t: f64) -> Result<Circuit> {
    let width = ph.num_qubits();
    let dt = t / sched.steps as f64;
    let mut step = Circuit::new(width);
    for e in step_sequence(ph, sched)? {
        step.append(&exponentiate_term(&e.term, e.scale * dt, width)?)?;
    }
    let mut c = Circuit::new(width);
    for _ in 0..sched.steps {
        c.append(&step)?;
    }
    Ok(c)
}

fn single_term_exponential(term: &PauliString, theta: f64) -> Result<DMatrix<Complex64>> {
    let p = term.to_matrix()?;
    let dim = p.nrows();
    let (s, c) = theta.sin_cos();
    Ok(DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(c, 0.0) + p * Complex64::new(0.0, -s))
}

/// Dense Trotter propagator built from part exponentials (naive) or term
/// exponentials (interleaved), independent of the gate lowering.
pub fn trotter_propagator(ph: &PartitionedHamiltonian, sched: &TrotterSchedule, t: f64) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << ph.num_qubits();
    let dt = t / sched.steps as f64;
    let mut step = DMatrix::<Complex64>::identity(dim, dim);
    match sched.ordering {
        TermOrdering::Naive => {
            let mats: Vec<DMatrix<Complex64>> = ph.parts().iter().map(|p| p.to_matrix()).collect::<Result<_>>()?;
            for &(part, f) in &sched.factors {
                let range = if part == Part::A { 0..mats.len().min(1) } else { mats.len().min(1)..mats.len() };
                for m in &mats[range] {
                    step = unitary_evolution(m, f * dt) * step;
                }
            }
        }
        TermOrdering::Interleaved => {
            for term in interleaved_terms(ph)? {
                let unit = PauliString::new(term.pattern.clone(), Complex64::new(1.0, 0.0));
                step = single_term_exponential(&unit, term.coeff.re * dt)? * step;
            }
        }
    }
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    for _ in 0..sched.steps {
        u = &step * u;
    }
    Ok(u)
}
