//! Integral tables, second-quantized Hamiltonian assembly and commuting
//! partitions.
//!
//! The two-body sum `½ Σ h_ijkl a†_i a†_j a_k a_l` is normal-ordered term by
//! term into Coulomb/exchange (`n_i n_j`), number-excitation
//! (`n_x a†_p a_q`) and double-excitation (`a†_i a†_j a_k a_l`, `i<j`,
//! `k<l`) classes, each emitted through the matching encoder constructor.

use std::collections::BTreeMap;
use std::io::Read;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{Encoder, EncodingKind};
use crate::pauli::PauliSum;

/// Tolerance for the Hermiticity checks on integrals.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

const BUNDLED_H2: &str = include_str!("../data/h2_minimal_basis.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralTable {
    n: usize,
    one_body: BTreeMap<(usize, usize), Complex64>,
    two_body: BTreeMap<[usize; 4], Complex64>,
    metadata: Vec<String>,
}

impl IntegralTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySize);
        }
        Ok(Self {
            n,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
            metadata: Vec::new(),
        })
    }

    /// The bundled molecular hydrogen table.
    pub fn h2_minimal_basis() -> Self {
        Self::parse(BUNDLED_H2).expect("bundled integral table is valid")
    }

    pub fn bundled_h2_text() -> &'static str {
        BUNDLED_H2
    }

    pub fn num_orbitals(&self) -> usize {
        self.n
    }

    pub fn metadata(&self) -> &[String] {
        &self.metadata
    }

    fn check(&self, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i >= self.n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn set_one_body(&mut self, i: usize, j: usize, h: Complex64) -> Result<()> {
        self.check(&[i, j])?;
        self.one_body.insert((i, j), h);
        Ok(())
    }

    pub fn set_two_body(&mut self, idx: [usize; 4], h: Complex64) -> Result<()> {
        self.check(&idx)?;
        self.two_body.insert(idx, h);
        Ok(())
    }

    pub fn one_body(&self, i: usize, j: usize) -> Complex64 {
        self.one_body.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn two_body(&self, idx: [usize; 4]) -> Complex64 {
        self.two_body.get(&idx).copied().unwrap_or_default()
    }

    pub fn one_body_entries(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.one_body.iter().map(|(k, v)| (*k, *v))
    }

    pub fn two_body_entries(&self) -> impl Iterator<Item = ([usize; 4], Complex64)> + '_ {
        self.two_body.iter().map(|(k, v)| (*k, *v))
    }

    /// Checks `h_ij = conj(h_ji)` and `h_ijkl = conj(h_lkji)`; absent
    /// entries count as zero.
    pub fn validate(&self) -> Result<()> {
        for (&(i, j), &h) in &self.one_body {
            if (h - self.one_body(j, i).conj()).norm() > HERMITICITY_TOLERANCE {
                return Err(Error::NotHermitian(format!(
                    "h_{i}{j} = {h} but h_{j}{i} = {}",
                    self.one_body(j, i)
                )));
            }
        }
        for (&[i, j, k, l], &h) in &self.two_body {
            let partner = self.two_body([l, k, j, i]);
            if (h - partner.conj()).norm() > HERMITICITY_TOLERANCE {
                return Err(Error::NotHermitian(format!(
                    "h_{i}{j}{k}{l} = {h} but h_{l}{k}{j}{i} = {partner}"
                )));
            }
        }
        Ok(())
    }

    /// Parses the line-oriented integral format:
    ///
    /// ```text
    /// # comment
    /// n 4
    /// h1 0 0 -1.252477
    /// h2 0 1 1 0 0.674493 0.0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: Option<IntegralTable> = None;
        let mut metadata = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let (content, comment) = match raw.split_once('#') {
                Some((c, m)) => (c, Some(m.trim())),
                None => (raw, None),
            };
            if let Some(m) = comment.filter(|m| !m.is_empty()) {
                metadata.push(m.to_string());
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let Some(&tag) = fields.first() else { continue };
            let index = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| err(format!("bad index {s:?}")))
            };
            let value = |s: &[&str]| -> Result<Complex64> {
                let re: f64 = s[0].parse().map_err(|_| err(format!("bad value {:?}", s[0])))?;
                let im: f64 = match s.get(1) {
                    Some(v) => v.parse().map_err(|_| err(format!("bad value {v:?}")))?,
                    None => 0.0,
                };
                if !re.is_finite() || !im.is_finite() {
                    return Err(err("non-finite value".into()));
                }
                Ok(Complex64::new(re, im))
            };
            match tag {
                "n" => {
                    if fields.len() != 2 {
                        return Err(err("expected `n <count>`".into()));
                    }
                    if table.is_some() {
                        return Err(err("duplicate `n` header".into()));
                    }
                    let n = index(fields[1])?;
                    table = Some(IntegralTable::new(n).map_err(|e| err(e.to_string()))?);
                }
                "h1" | "h2" => {
                    let t = table
                        .as_mut()
                        .ok_or_else(|| err("record before `n` header".into()))?;
                    let k = if tag == "h1" { 2 } else { 4 };
                    if fields.len() != 1 + k + 1 && fields.len() != 1 + k + 2 {
                        return Err(err(format!("`{tag}` expects {k} indices and 1 or 2 values")));
                    }
                    let idx: Vec<usize> = fields[1..=k].iter().map(|s| index(s)).collect::<Result<_>>()?;
                    let h = value(&fields[1 + k..])?;
                    let duplicate = if tag == "h1" {
                        t.one_body.contains_key(&(idx[0], idx[1]))
                    } else {
                        t.two_body.contains_key(&[idx[0], idx[1], idx[2], idx[3]])
                    };
                    if duplicate {
                        return Err(err(format!("duplicate record {tag} {idx:?}")));
                    }
                    let res = if tag == "h1" {
                        t.set_one_body(idx[0], idx[1], h)
                    } else {
                        t.set_two_body([idx[0], idx[1], idx[2], idx[3]], h)
                    };
                    res.map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown record type {other:?}"))),
            }
        }
        let mut table = table.ok_or(Error::Parse {
            line: 0,
            message: "missing `n <count>` header".into(),
        })?;
        table.metadata = metadata;
        table.validate()?;
        Ok(table)
    }
}

/// Reads and validates an integral table from a byte stream.
pub fn load_integrals(mut source: impl Read) -> Result<IntegralTable> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::Invalid(format!("cannot read integrals: {e}")))?;
    IntegralTable::parse(&text)
}

/// Two-body contributions grouped by operator class.
#[derive(Debug, Default)]
struct TwoBodyClasses {
    /// `(i, j)`, `i < j` → coefficient of `n_i n_j`.
    coulomb: BTreeMap<(usize, usize), Complex64>,
    /// `(x, p, q)` → coefficient of `n_x a†_p a_q`.
    number_excitation: BTreeMap<(usize, usize, usize), Complex64>,
    /// `[i, j, k, l]`, `i < j`, `k < l` → coefficient of `a†_i a†_j a_k a_l`.
    double: BTreeMap<[usize; 4], Complex64>,
}

fn sort_pair(a: usize, b: usize) -> (usize, usize, f64) {
    if a < b {
        (a, b, 1.0)
    } else {
        (b, a, -1.0)
    }
}

impl TwoBodyClasses {
    fn add(&mut self, [i, j, k, l]: [usize; 4], h: Complex64) {
        if i == j || k == l {
            return;
        }
        let (i, j, s1) = sort_pair(i, j);
        let (k, l, s2) = sort_pair(k, l);
        let c = h * (0.5 * s1 * s2);
        if (i, j) == (k, l) {
            // a†_i a†_j a_i a_j = -n_i n_j
            *self.coulomb.entry((i, j)).or_default() -= c;
        } else if i == k || i == l || j == k || j == l {
            // Move the shared index to a†_p a†_x a_x a_q.
            let (p, x, sc) = if i == k || i == l { (j, i, -1.0) } else { (i, j, 1.0) };
            let (q, sa) = if k == x { (l, 1.0) } else { (k, -1.0) };
            *self.number_excitation.entry((x, p, q)).or_default() += c * (sc * sa);
        } else {
            *self.double.entry([i, j, k, l]).or_default() += c;
        }
    }
}

/// Assembles `Σ h_ij a†_i a_j + ½ Σ h_ijkl a†_i a†_j a_k a_l` under `kind`.
pub fn build_hamiltonian(t: &IntegralTable, kind: EncodingKind) -> Result<PauliSum> {
    t.validate()?;
    let enc = Encoder::new(kind, t.n)?;
    let mut h = PauliSum::zero(t.n);

    for (&(i, j), &v) in &t.one_body {
        if i == j {
            h = h.add(&enc.number(i)?.scale(v))?;
        } else if i < j {
            h = h.add(&enc.excitation(i, j, v)?)?;
        }
    }

    let mut classes = TwoBodyClasses::default();
    for (&idx, &v) in &t.two_body {
        classes.add(idx, v);
    }
    for (&(i, j), &c) in &classes.coulomb {
        h = h.add(&enc.coulomb_exchange(i, j)?.scale(c))?;
    }
    for (&(x, p, q), &c) in &classes.number_excitation {
        if p < q {
            check_partner(c, classes.number_excitation.get(&(x, q, p)), || format!("n_{x} a+_{p} a_{q}"))?;
            h = h.add(&enc.number_excitation(p, x, q, c)?)?;
        } else if !classes.number_excitation.contains_key(&(x, q, p)) {
            check_partner(c, None, || format!("n_{x} a+_{p} a_{q}"))?;
        }
    }
    for (&[i, j, k, l], &c) in &classes.double {
        let partner = [k, l, i, j];
        if [i, j, k, l] < partner {
            check_partner(c, classes.double.get(&partner), || format!("a+_{i} a+_{j} a_{k} a_{l}"))?;
            h = h.add(&enc.double_excitation(i, j, k, l, c)?)?;
        } else if !classes.double.contains_key(&partner) {
            check_partner(c, None, || format!("a+_{i} a+_{j} a_{k} a_{l}"))?;
        }
    }
    Ok(h)
}

fn check_partner(c: Complex64, partner: Option<&Complex64>, what: impl Fn() -> String) -> Result<()> {
    let p = partner.copied().unwrap_or_default();
    if (p - c.conj()).norm() > HERMITICITY_TOLERANCE {
        return Err(Error::NotHermitian(format!(
            "{} has coefficient {c} but its adjoint has {p}",
            what()
        )));
    }
    Ok(())
}

/// A Pauli sum split into groups of mutually commuting terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedHamiltonian {
    full: PauliSum,
    parts: Vec<PauliSum>,
}

impl PartitionedHamiltonian {
    /// Assembles a partition from explicit parts; each part must commute
    /// internally and the parts must be disjoint.
    pub fn from_parts(parts: Vec<PauliSum>) -> Result<Self> {
        let n = parts.first().map(|p| p.num_qubits()).ok_or(Error::Invalid("no parts".into()))?;
        let mut full = PauliSum::zero(n);
        for part in &parts {
            for (p, _) in part.iter() {
                if full.coeff(p) != Complex64::default() {
                    return Err(Error::Invalid(format!("term {p} appears in two parts")));
                }
            }
            let terms: Vec<_> = part.iter().map(|(p, _)| p.clone()).collect();
            for (a, pa) in terms.iter().enumerate() {
                for pb in &terms[a + 1..] {
                    if !pa.commutes_with(pb)? {
                        return Err(Error::Invalid(format!("{pa} and {pb} do not commute")));
                    }
                }
            }
            full = full.add(part)?;
        }
        Ok(Self { full, parts })
    }

    pub fn full(&self) -> &PauliSum {
        &self.full
    }

    pub fn parts(&self) -> &[PauliSum] {
        &self.parts
    }

    pub fn num_qubits(&self) -> usize {
        self.full.num_qubits()
    }
}

/// Greedy first-fit over terms in canonical order: each term joins the
/// first part whose members it all commutes with.
pub fn partition_commuting(h: &PauliSum) -> PartitionedHamiltonian {
    let n = h.num_qubits();
    let mut parts: Vec<Vec<crate::pauli::PauliString>> = Vec::new();
    for term in h.strings() {
        let slot = parts.iter().position(|part| {
            part.iter()
                .all(|m| m.pattern.commutes_with(&term.pattern).unwrap_or(false))
        });
        match slot {
            Some(k) => parts[k].push(term),
            None => parts.push(vec![term]),
        }
    }
    let parts = parts
        .into_iter()
        .map(|terms| PauliSum::from_terms(n, terms).expect("terms share the qubit count"))
        .collect();
    PartitionedHamiltonian {
        full: h.clone(),
        parts,
    }
}
