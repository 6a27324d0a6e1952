use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::string::{i_pow, Pauli, PauliPattern, PauliString};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// Coefficients below this magnitude are dropped after every operation.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Linear combination of Pauli patterns with collected, pruned terms,
/// iterated in canonical pattern order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliPattern, Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Raise,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityKind {
    Even,
    Odd,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from(PauliString::identity(n))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        let mut s = Self::zero(n);
        for t in terms {
            s.add_term(t)?;
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliPattern, Complex64)> + '_ {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn strings(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(|(p, c)| PauliString::new(p.clone(), *c))
    }

    pub fn coeff(&self, pattern: &PauliPattern) -> Complex64 {
        self.terms.get(pattern).copied().unwrap_or_default()
    }

    /// Coefficient of a pattern given in text form, e.g. `"ZIXY"`.
    pub fn coeff_of(&self, pattern: &str) -> Result<Complex64> {
        let p: PauliPattern = pattern.parse()?;
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(self.coeff(&p))
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n,
                found: n,
            })
        }
    }

    pub fn add_term(&mut self, term: PauliString) -> Result<()> {
        self.check(term.num_qubits())?;
        let entry = self.terms.entry(term.pattern).or_default();
        *entry += term.coeff;
        self.prune();
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other.n)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            *out.terms.entry(p.clone()).or_default() += *c;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other.n)?;
        let mut out = PauliSum::zero(self.n);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (p, phase) = pa.mul(pb)?;
                *out.terms.entry(p).or_default() += ca * cb * i_pow(phase);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        let mut out = PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        };
        out.prune();
        out
    }

    pub fn scale_real(&self, c: f64) -> PauliSum {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c.conj())).collect(),
        }
    }

    pub fn prune(&mut self) {
        self.prune_below(DROP_TOLERANCE);
    }

    pub fn prune_below(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    /// Every coefficient is real within `tol`; with collected terms this is
    /// exactly Hermiticity of the sum.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_distance(&self, other: &PauliSum) -> Result<f64> {
        Ok(self
            .sub(other)?
            .terms
            .values()
            .map(|c| c.norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        self.max_distance(other).map(|d| d <= tol).unwrap_or(false)
    }

    /// Union of the supports of all terms.
    pub fn support(&self) -> IndexSet {
        self.terms.keys().flat_map(|p| p.support()).collect()
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|p| p.weight()).max().unwrap_or(0)
    }

    /// One term per line as `<re> <im> <pattern>`, preceded by a
    /// `qubits <n>` header so that empty sums round-trip.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for (p, c) in &self.terms {
            out.push_str(&format!("{:.16e} {:.16e} {}\n", c.re, c.im, p));
        }
        out
    }

    /// Parses the format written by [`PauliSum::to_text`]. The header is
    /// optional when at least one term is present. Blank lines and `#`
    /// comments are ignored.
    pub fn parse_text(text: &str) -> Result<PauliSum> {
        let mut n: Option<usize> = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "qubits" {
                if fields.len() != 2 || n.is_some() || !terms.is_empty() {
                    return Err(err("misplaced or malformed qubits header".into()));
                }
                let v: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad qubit count {:?}", fields[1])))?;
                if v == 0 {
                    return Err(err("qubit count must be positive".into()));
                }
                n = Some(v);
                continue;
            }
            if fields.len() != 3 {
                return Err(err(format!("expected `<re> <im> <pattern>`, got {line:?}")));
            }
            let re: f64 = fields[0]
                .parse()
                .map_err(|_| err(format!("bad real part {:?}", fields[0])))?;
            let im: f64 = fields[1]
                .parse()
                .map_err(|_| err(format!("bad imaginary part {:?}", fields[1])))?;
            let pattern: PauliPattern = fields[2]
                .parse()
                .map_err(|e: Error| err(e.to_string()))?;
            let width = *n.get_or_insert(pattern.num_qubits());
            if pattern.num_qubits() != width {
                return Err(err(format!(
                    "pattern has {} qubits, expected {width}",
                    pattern.num_qubits()
                )));
            }
            terms.push(PauliString::new(pattern, Complex64::new(re, im)));
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "no qubits header and no terms".into(),
        })?;
        PauliSum::from_terms(n, terms)
    }
}

impl From<PauliString> for PauliSum {
    fn from(s: PauliString) -> Self {
        let mut out = PauliSum::zero(s.num_qubits());
        out.terms.insert(s.pattern, s.coeff);
        out.prune();
        out
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("({}{:+}i) {}", c.re, c.im, p))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Q+_j = ½(X_j − iY_j)` or `Q−_j = ½(X_j + iY_j)`.
pub fn ladder(kind: LadderKind, j: usize, n: usize) -> Result<PauliSum> {
    let x = PauliString::single(n, j, Pauli::X)?;
    let y = PauliString::single(n, j, Pauli::Y)?;
    let sign = match kind {
        LadderKind::Raise => -1.0,
        LadderKind::Lower => 1.0,
    };
    PauliSum::from_terms(
        n,
        [
            x.scaled(Complex64::new(0.5, 0.0)),
            y.scaled(Complex64::new(0.0, 0.5 * sign)),
        ],
    )
}

/// `E_S = ½(1 + Z_S)` or `O_S = ½(1 − Z_S)`.
pub fn parity_projector(kind: ParityKind, set: &IndexSet, n: usize) -> Result<PauliSum> {
    let z = PauliString::on_set(n, set, Pauli::Z)?;
    let sign = match kind {
        ParityKind::Even => 0.5,
        ParityKind::Odd => -0.5,
    };
    PauliSum::from_terms(
        n,
        [
            PauliString::identity(n).scaled(Complex64::new(0.5, 0.0)),
            z.scaled(Complex64::new(sign, 0.0)),
        ],
    )
}
