//! Classical phase evaluation of exact and Trotterized propagators.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::circuit::GateCount;
use crate::error::{Error, Result};
use crate::hamiltonian::PartitionedHamiltonian;
use crate::linalg::{hermitian_eigen, unitary_evolution};
use crate::pauli::PauliSum;
use crate::trotter::{trotter_circuit, trotter_propagator, TermOrdering, TrotterSchedule};

/// Chemical precision in hartree.
pub const CHEMICAL_PRECISION: f64 = 1e-4;

/// Overlaps below this magnitude are rejected.
pub const MIN_OVERLAP: f64 = 1e-6;

pub const CSV_HEADER: &str = "encoding,order,ordering,steps,sqg,cnot,total_gates,estimate,exact,abs_error";

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(width: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << width {
            return Err(Error::SizeMismatch { expected: 1 << width, found: amps.len() });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Invalid("state has zero or non-finite norm".into()));
        }
        Ok(Self { width, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn basis(width: usize, index: usize) -> Result<Self> {
        if index >= 1usize << width {
            return Err(Error::IndexOutOfRange { index, n: 1 << width });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply_matrix(&self, m: &nalgebra::DMatrix<Complex64>) -> Result<StateVector> {
        if m.ncols() != self.amps.len() {
            return Err(Error::SizeMismatch { expected: self.amps.len(), found: m.ncols() });
        }
        let v = m * nalgebra::DVector::from_column_slice(&self.amps);
        Ok(StateVector { width: self.width, amps: v.iter().copied().collect() })
    }

    pub fn apply_circuit(&self, c: &crate::circuit::Circuit) -> Result<StateVector> {
        let mut amps = self.amps.clone();
        c.apply(&mut amps)?;
        Ok(StateVector { width: self.width, amps })
    }
}

/// Lowest eigenvalue and a unit eigenvector of the dense matrix of `h`.
pub fn ground_state(h: &PauliSum) -> Result<(f64, StateVector)> {
    let (vals, vecs) = hermitian_eigen(&h.to_matrix()?);
    let amps = vecs.column(0).iter().copied().collect();
    Ok((vals[0], StateVector::new(h.num_qubits(), amps)?))
}

fn energy_from_overlap(overlap: Complex64, t: f64) -> Result<f64> {
    if overlap.norm() < MIN_OVERLAP {
        return Err(Error::VanishingOverlap(overlap.norm()));
    }
    Ok(-overlap.arg() / t)
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Invalid(format!("propagation time must be positive, got {t}")));
    }
    Ok(())
}

/// `E_g` from the phase of `⟨ψ_g|exp(-iHt)|ψ_g⟩`.
pub fn exact_phase_energy(h: &PauliSum, t: f64) -> Result<f64> {
    check_time(t)?;
    let (e, psi) = ground_state(h)?;
    if (e * t).abs() >= std::f64::consts::PI {
        return Err(Error::PhaseWrap(e * t));
    }
    let u = unitary_evolution(&h.to_matrix()?, t);
    energy_from_overlap(psi.inner(&psi.apply_matrix(&u)?), t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluationPath {
    /// Products of dense part or term exponentials.
    Dense,
    /// Gate-by-gate simulation of the synthesized circuit.
    Circuit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub exact_energy: f64,
    pub estimate: f64,
    pub error: f64,
    pub overlap_magnitude: f64,
    pub steps: usize,
    pub order: usize,
    pub ordering: TermOrdering,
    pub gates: GateCount,
}

impl SpectralResult {
    pub fn within_chemical_precision(&self) -> bool {
        self.error <= CHEMICAL_PRECISION
    }

    pub fn csv_row(&self, encoding: &str) -> String {
        format!(
            "{encoding},{},{},{},{},{},{},{:.16e},{:.16e},{:.16e}",
            self.order,
            self.ordering,
            self.steps,
            self.gates.sqg,
            self.gates.cnot,
            self.gates.total(),
            self.estimate,
            self.exact_energy,
            self.error
        )
    }
}

/// Estimates `E_g` from the normalized overlap `⟨ψ_g|Ũ|ψ_g⟩`.
pub fn trotter_phase_estimate(
    ph: &PartitionedHamiltonian,
    sched: &TrotterSchedule,
    t: f64,
    path: EvaluationPath,
) -> Result<SpectralResult> {
    check_time(t)?;
    let (exact, psi) = ground_state(ph.full())?;
    if (exact * t).abs() >= std::f64::consts::PI {
        return Err(Error::PhaseWrap(exact * t));
    }
    let circuit = trotter_circuit(ph, sched, t)?;
    let evolved = match path {
        EvaluationPath::Dense => psi.apply_matrix(&trotter_propagator(ph, sched, t)?)?,
        EvaluationPath::Circuit => psi.apply_circuit(&circuit)?,
    };
    let overlap = psi.inner(&evolved);
    let estimate = energy_from_overlap(overlap, t)?;
    Ok(SpectralResult {
        exact_energy: exact,
        estimate,
        error: (estimate - exact).abs(),
        overlap_magnitude: overlap.norm(),
        steps: sched.steps(),
        order: sched.order(),
        ordering: sched.ordering(),
        gates: circuit.count(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub orders: Vec<usize>,
    pub steps: std::ops::RangeInclusive<usize>,
    pub orderings: Vec<TermOrdering>,
    pub time: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            orders: vec![1, 2, 3, 4],
            steps: 1..=12,
            orderings: TermOrdering::ALL.to_vec(),
            time: 1.0,
        }
    }
}

/// One result per valid `(order, ordering, steps)`; step 0 and interleaved
/// orderings above first order are omitted.
pub fn precision_sweep(ph: &PartitionedHamiltonian, cfg: &SweepConfig) -> Result<Vec<SpectralResult>> {
    let mut out = Vec::new();
    for &order in &cfg.orders {
        for &ordering in &cfg.orderings {
            if ordering == TermOrdering::Interleaved && order != 1 {
                continue;
            }
            for steps in cfg.steps.clone().filter(|&s| s > 0) {
                let sched = TrotterSchedule::new(order, steps, ordering)?;
                out.push(trotter_phase_estimate(ph, &sched, cfg.time, EvaluationPath::Circuit)?);
            }
        }
    }
    Ok(out)
}

/// The fewest steps reaching chemical precision for `(order, ordering)`.
pub fn chemical_precision_crossing(
    results: &[SpectralResult],
    order: usize,
    ordering: TermOrdering,
) -> Option<&SpectralResult> {
    results
        .iter()
        .filter(|r| r.order == order && r.ordering == ordering && r.within_chemical_precision())
        .min_by_key(|r| r.steps)
}

pub fn sweep_csv<'a>(rows: impl IntoIterator<Item = (&'a str, &'a SpectralResult)>) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for (enc, r) in rows {
        let _ = writeln!(s, "{}", r.csv_row(enc));
    }
    s
}
