//! Gate circuits for Pauli exponentials.
//!
//! `exp(-i θ c P)` is lowered to basis changes (`H` on X factors, the
//! `R_x = (1/√2)[[1, i], [i, 1]]` gate on Y factors), a descending CNOT
//! ladder onto the lowest support qubit, one `RZ`, and the mirrored
//! uncompute. Since `R_x Y R_x† = -Z`, the rotation angle carries a factor
//! `(-1)^{#Y}`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{check_cap, Pauli, PauliString, DENSE_CAP, DROP_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    /// `diag(e^{-iφ/2}, e^{iφ/2})`.
    Rz { qubit: usize, angle: f64 },
    H(usize),
    RxBasis { qubit: usize, direction: Direction },
    /// Multiplies the state by `e^{iφ}`.
    GlobalPhase(f64),
}

impl Gate {
    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    pub fn is_single_qubit(&self) -> bool {
        !matches!(self, Gate::Cnot { .. } | Gate::GlobalPhase(_))
    }

    fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Rz { qubit, .. } | Gate::H(qubit) | Gate::RxBasis { qubit, .. } => vec![qubit],
            Gate::GlobalPhase(_) => vec![],
        }
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rz { angle, .. } | Gate::GlobalPhase(angle) => Some(angle),
            _ => None,
        }
    }

    /// 2×2 matrix of a single-qubit gate.
    fn single_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        match *self {
            Gate::Rz { angle, .. } => Some([
                [Complex64::from_polar(1.0, -angle / 2.0), re(0.0)],
                [re(0.0), Complex64::from_polar(1.0, angle / 2.0)],
            ]),
            Gate::H(_) => Some([[re(r), re(r)], [re(r), re(-r)]]),
            Gate::RxBasis { direction, .. } => {
                let s = if direction == Direction::Forward { r } else { -r };
                Some([[re(r), im(s)], [im(s), re(r)]])
            }
            _ => None,
        }
    }

    /// Applies the gate in place to a little-endian state vector.
    pub fn apply(&self, amps: &mut [Complex64]) {
        match *self {
            Gate::Cnot { control, target } => {
                let (cb, tb) = (1usize << control, 1usize << target);
                for k in 0..amps.len() {
                    if k & cb != 0 && k & tb == 0 {
                        amps.swap(k, k | tb);
                    }
                }
            }
            Gate::GlobalPhase(angle) => {
                let p = Complex64::from_polar(1.0, angle);
                amps.iter_mut().for_each(|a| *a *= p);
            }
            Gate::Rz { qubit: q, .. } | Gate::H(q) | Gate::RxBasis { qubit: q, .. } => {
                let m = self.single_matrix().expect("single-qubit gate");
                let b = 1usize << q;
                for k in 0..amps.len() {
                    if k & b == 0 {
                        let (a0, a1) = (amps[k], amps[k | b]);
                        amps[k] = m[0][0] * a0 + m[0][1] * a1;
                        amps[k | b] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }

    /// The gate undoing this one.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rz { qubit, angle } => Gate::Rz { qubit, angle: -angle },
            Gate::RxBasis { qubit, direction } => Gate::RxBasis {
                qubit,
                direction: match direction {
                    Direction::Forward => Direction::Inverse,
                    Direction::Inverse => Direction::Forward,
                },
            },
            Gate::GlobalPhase(a) => Gate::GlobalPhase(-a),
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Rz { qubit, angle } => write!(f, "RZ {qubit} {angle:.16e}"),
            Gate::H(q) => write!(f, "H {q}"),
            Gate::RxBasis { qubit, direction: Direction::Forward } => write!(f, "RXF {qubit}"),
            Gate::RxBasis { qubit, direction: Direction::Inverse } => write!(f, "RXI {qubit}"),
            Gate::GlobalPhase(a) => write!(f, "GPHASE {a:.16e}"),
        }
    }
}

impl FromStr for Gate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let f: Vec<&str> = s.split_whitespace().collect();
        let q = |k: usize| -> std::result::Result<usize, String> {
            f.get(k)
                .ok_or_else(|| format!("missing operand in {s:?}"))?
                .parse()
                .map_err(|_| format!("bad qubit in {s:?}"))
        };
        let a = |k: usize| -> std::result::Result<f64, String> {
            f.get(k)
                .ok_or_else(|| format!("missing angle in {s:?}"))?
                .parse()
                .map_err(|_| format!("bad angle in {s:?}"))
        };
        let arity = match f.first().copied() {
            Some("CNOT") | Some("RZ") => 3,
            Some("GPHASE") => 2,
            Some("H") | Some("RXF") | Some("RXI") => 2,
            _ => return Err(format!("unknown gate {s:?}")),
        };
        if f.len() != arity {
            return Err(format!("wrong operand count in {s:?}"));
        }
        Ok(match f[0] {
            "CNOT" => Gate::Cnot { control: q(1)?, target: q(2)? },
            "RZ" => Gate::Rz { qubit: q(1)?, angle: a(2)? },
            "H" => Gate::H(q(1)?),
            "RXF" => Gate::RxBasis { qubit: q(1)?, direction: Direction::Forward },
            "RXI" => Gate::RxBasis { qubit: q(1)?, direction: Direction::Inverse },
            _ => Gate::GlobalPhase(a(1)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCount {
    pub sqg: usize,
    pub cnot: usize,
}

impl GateCount {
    pub fn total(&self) -> usize {
        self.sqg + self.cnot
    }
}

impl std::ops::Add for GateCount {
    type Output = GateCount;
    fn add(self, o: GateCount) -> GateCount {
        GateCount { sqg: self.sqg + o.sqg, cnot: self.cnot + o.cnot }
    }
}

impl std::ops::Mul<usize> for GateCount {
    type Output = GateCount;
    fn mul(self, k: usize) -> GateCount {
        GateCount { sqg: self.sqg * k, cnot: self.cnot * k }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self { width, gates: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        if let Some(&index) = g.qubits().iter().find(|&&q| q >= self.width) {
            return Err(Error::IndexOutOfRange { index, n: self.width });
        }
        if let Gate::Cnot { control, target } = g {
            if control == target {
                return Err(Error::RepeatedIndex(vec![control, target]));
            }
        }
        if g.angle().is_some_and(|a| !a.is_finite()) {
            return Err(Error::Invalid(format!("non-finite angle in {g}")));
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.width != self.width {
            return Err(Error::SizeMismatch { expected: self.width, found: other.width });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn count(&self) -> GateCount {
        gate_count(self)
    }

    /// Runs the circuit on a state vector of length `2^width`.
    pub fn apply(&self, amps: &mut [Complex64]) -> Result<()> {
        if amps.len() != 1usize << self.width {
            return Err(Error::SizeMismatch { expected: 1 << self.width, found: amps.len() });
        }
        self.gates.iter().for_each(|g| g.apply(amps));
        Ok(())
    }

    /// Dense unitary, column by column.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        check_cap(self.width, DENSE_CAP)?;
        let dim = 1usize << self.width;
        let mut m = DMatrix::zeros(dim, dim);
        for c in 0..dim {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[c] = Complex64::new(1.0, 0.0);
            self.apply(&mut v)?;
            m.set_column(c, &nalgebra::DVector::from_vec(v));
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("width {}\n", self.width);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty circuit file".into() })?;
        let width = header
            .strip_prefix("width ")
            .and_then(|w| w.trim().parse().ok())
            .ok_or(Error::Parse { line: 1, message: "expected `width <n>`".into() })?;
        let mut c = Circuit::new(width);
        for (k, line) in lines {
            let g: Gate = line.parse().map_err(|message| Error::Parse { line: k + 1, message })?;
            c.push(g).map_err(|e| Error::Parse { line: k + 1, message: e.to_string() })?;
        }
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// SQG and CNOT counters; global phases count toward neither.
pub fn gate_count(c: &Circuit) -> GateCount {
    c.gates.iter().fold(GateCount::default(), |acc, g| GateCount {
        sqg: acc.sqg + g.is_single_qubit() as usize,
        cnot: acc.cnot + g.is_cnot() as usize,
    })
}

/// Circuit for `exp(-i θ P)`, where `P` includes its real coefficient.
pub fn exponentiate_term(p: &PauliString, theta: f64, width: usize) -> Result<Circuit> {
    if p.coeff.im.abs() > DROP_TOLERANCE {
        return Err(Error::ComplexCoefficient(p.to_string()));
    }
    if p.num_qubits() != width {
        return Err(Error::SizeMismatch { expected: width, found: p.num_qubits() });
    }
    if !theta.is_finite() {
        return Err(Error::Invalid("non-finite evolution angle".into()));
    }
    let phi = theta * p.coeff.re;
    let mut c = Circuit::new(width);
    let support: Vec<usize> = p.pattern.support().into_iter().rev().collect();
    if support.is_empty() {
        c.push(Gate::GlobalPhase(-phi))?;
        return Ok(c);
    }

    let mut basis = Vec::new();
    let mut ys = 0;
    for &q in &support {
        match p.pattern.get(q) {
            Pauli::X => basis.push(Gate::H(q)),
            Pauli::Y => {
                ys += 1;
                basis.push(Gate::RxBasis { qubit: q, direction: Direction::Forward });
            }
            _ => {}
        }
    }
    let ladder: Vec<Gate> = support
        .windows(2)
        .map(|w| Gate::Cnot { control: w[0], target: w[1] })
        .collect();
    let target = *support.last().expect("nonempty support");
    let sign = if ys % 2 == 0 { 1.0 } else { -1.0 };

    for g in basis.iter().chain(&ladder) {
        c.push(*g)?;
    }
    c.push(Gate::Rz { qubit: target, angle: 2.0 * phi * sign })?;
    for g in ladder.iter().rev().chain(basis.iter().rev()) {
        c.push(g.inverse())?;
    }
    Ok(c)
}
