//! Closed forms for Bravyi-Kitaev composite operators, checked against
//! operators composed from encoded mode operators. Each check panics on
//! mismatch.

use std::collections::BTreeMap;

use fermicomp::fermion::{Encoder, EncodingKind};
use fermicomp::sets::BkSets;
use fermicomp::{IndexSet, PauliString, PauliSum};
use num_complex::Complex64;

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sum(n: usize, terms: &[(f64, &str)]) -> PauliSum {
    PauliSum::from_terms(
        n,
        terms.iter().map(|&(re, p)| PauliString::new(p.parse().unwrap(), c(re, 0.0))),
    )
    .unwrap()
}

fn bk(n: usize) -> Encoder {
    Encoder::new(EncodingKind::BravyiKitaev, n).unwrap()
}

pub fn number_operators_h2() {
    let e = bk(4);
    let expect = [
        (0, sum(4, &[(0.5, "IIII"), (-0.5, "IIIZ")])),
        (1, sum(4, &[(0.5, "IIII"), (-0.5, "IIZZ")])),
        (2, sum(4, &[(0.5, "IIII"), (-0.5, "IZII")])),
        (3, sum(4, &[(0.5, "IIII"), (-0.5, "ZZZI")])),
    ];
    for (i, s) in expect {
        assert!(e.number(i).unwrap().approx_eq(&s, TOL), "n_{i}");
    }
}

pub fn coulomb_exchange_h2() {
    let e = bk(4);
    let q = 0.25;
    let cases = [
        ((0, 1), [(q, "IIII"), (-q, "IIIZ"), (-q, "IIZZ"), (q, "IIZI")]),
        ((2, 3), [(q, "IIII"), (-q, "IZII"), (-q, "ZZZI"), (q, "ZIZI")]),
        ((0, 3), [(q, "IIII"), (-q, "IIIZ"), (-q, "ZZZI"), (q, "ZZZZ")]),
        ((1, 2), [(q, "IIII"), (-q, "IZII"), (-q, "IIZZ"), (q, "IZZZ")]),
        ((0, 2), [(q, "IIII"), (-q, "IZII"), (-q, "IIIZ"), (q, "IZIZ")]),
        ((1, 3), [(q, "IIII"), (-q, "ZZZI"), (-q, "IIZZ"), (q, "ZZIZ")]),
    ];
    for ((i, j), terms) in cases {
        assert!(e.coulomb_exchange(i, j).unwrap().approx_eq(&sum(4, &terms), TOL), "({i},{j})");
    }
}

pub fn coulomb_exchange_closed_form_all_pairs() {
    for n in 2..=8 {
        let e = bk(n);
        let sets = BkSets::new(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let fi = sets.flip_closure(i).unwrap();
                let fj = sets.flip_closure(j).unwrap();
                let z = |s: &IndexSet, coeff: f64| {
                    PauliString::on_set(n, s, fermicomp::Pauli::Z).unwrap().scaled(c(coeff, 0.0))
                };
                let expect = PauliSum::from_terms(
                    n,
                    [
                        z(&IndexSet::empty(), 0.25),
                        z(&fi, -0.25),
                        z(&fj, -0.25),
                        z(&fi.symmetric_difference(&fj), 0.25),
                    ],
                )
                .unwrap();
                assert!(e.coulomb_exchange(i, j).unwrap().approx_eq(&expect, TOL));
                let number = PauliSum::from_terms(n, [z(&IndexSet::empty(), 0.5), z(&fi, -0.5)]).unwrap();
                assert!(e.number(i).unwrap().approx_eq(&number, TOL));
            }
        }
    }
}

pub fn hopping_h2() {
    let e = bk(4);
    let a02 = PauliSum::from_terms(
        4,
        [
            PauliString::new("IYYX".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("IXYY".parse().unwrap(), c(-0.25, 0.0)),
            PauliString::new("IXYX".parse().unwrap(), c(0.0, -0.25)),
            PauliString::new("IYYY".parse().unwrap(), c(0.0, -0.25)),
        ],
    )
    .unwrap();
    assert!(e.hopping(0, 2).unwrap().approx_eq(&a02, TOL));
    let a13 = PauliSum::from_terms(
        4,
        [
            PauliString::new("IZYZ".parse().unwrap(), c(0.0, -0.25)),
            PauliString::new("IZXI".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("ZIXZ".parse().unwrap(), c(-0.25, 0.0)),
            PauliString::new("ZIYI".parse().unwrap(), c(0.0, 0.25)),
        ],
    )
    .unwrap();
    assert!(e.hopping(1, 3).unwrap().approx_eq(&a13, TOL));
    assert!(e.hopping(3, 1).unwrap().approx_eq(&a13.adjoint(), TOL));
}

pub fn jw_adjacent_hopping_matches_oracle_and_adjoint() {
    let e = Encoder::new(EncodingKind::JordanWigner, 2).unwrap();
    let expect = PauliSum::from_terms(
        2,
        [
            PauliString::new("XX".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("YY".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("XY".parse().unwrap(), c(0.0, -0.25)),
            PauliString::new("YX".parse().unwrap(), c(0.0, 0.25)),
        ],
    )
    .unwrap();
    assert!(e.hopping(0, 1).unwrap().approx_eq(&expect, TOL));
    let op = fermicomp::fermion::FermionOperator::hop(0, 1);
    let oracle = fermicomp::fermion::fermionic_oracle(&op, 2).unwrap();
    assert!((e.hopping(0, 1).unwrap().to_matrix().unwrap() - oracle).norm() < TOL);
    let reversed = PauliSum::from_terms(
        2,
        [
            PauliString::new("XX".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("YY".parse().unwrap(), c(0.25, 0.0)),
            PauliString::new("XY".parse().unwrap(), c(0.0, 0.25)),
            PauliString::new("YX".parse().unwrap(), c(0.0, -0.25)),
        ],
    )
    .unwrap();
    assert!(e.hopping(1, 0).unwrap().approx_eq(&reversed, TOL));
}

pub fn double_excitations_h2() {
    let e = bk(4);
    let k = 0.125;
    let first = sum(
        4,
        &[
            (-k, "IXIX"),
            (k, "IXZX"),
            (-k, "IYIY"),
            (k, "IYZY"),
            (-k, "ZXIX"),
            (k, "ZXZX"),
            (-k, "ZYIY"),
            (k, "ZYZY"),
        ],
    );
    let second = sum(
        4,
        &[
            (k, "IXIX"),
            (k, "IXZX"),
            (k, "IYIY"),
            (k, "IYZY"),
            (k, "ZXIX"),
            (k, "ZXZX"),
            (k, "ZYIY"),
            (k, "ZYZY"),
        ],
    );
    assert!(e.double_excitation(0, 3, 1, 2, c(1.0, 0.0)).unwrap().approx_eq(&first, TOL));
    assert!(e.double_excitation(0, 1, 3, 2, c(1.0, 0.0)).unwrap().approx_eq(&second, TOL));
}

pub fn excitation_real_and_imaginary_parts() {
    // even-even pair: the real part carries (Y_j X_i - X_j Y_i), the
    // imaginary part (X_j X_i + Y_j Y_i), under a common prefix.
    let n = 8;
    let e = bk(n);
    let (i, j) = (2, 4);
    let hop = e.hopping(i, j).unwrap();
    let re = e.excitation(i, j, c(0.7, 0.0)).unwrap();
    let im = e.excitation(i, j, c(0.0, 0.7)).unwrap();
    let letters = |s: &PauliSum| -> Vec<(char, char)> {
        s.iter()
            .map(|(p, _)| {
                let t = p.to_string();
                let ch: Vec<char> = t.chars().rev().collect();
                (ch[j], ch[i])
            })
            .collect()
    };
    let mut lr = letters(&re);
    lr.sort();
    assert_eq!(lr, vec![('X', 'Y'), ('Y', 'X')]);
    let mut li = letters(&im);
    li.sort();
    assert_eq!(li, vec![('X', 'X'), ('Y', 'Y')]);
    assert_eq!(hop.len(), 4);
}

// ---------------------------------------------------------------------------
// Table of a†_i a_j closed forms by case.

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Case {
    EvenEven,
    OddEvenNoNo,
    OddEvenYesNo,
    EvenOddNoNo,
    EvenOddNoYes,
    EvenOddYesYes,
    OddOddNoNo,
    OddOddYesNo,
    OddOddNoYes,
    OddOddYesYes,
}

const ALL_CASES: [Case; 10] = [
    Case::EvenEven,
    Case::OddEvenNoNo,
    Case::OddEvenYesNo,
    Case::EvenOddNoNo,
    Case::EvenOddNoYes,
    Case::EvenOddYesYes,
    Case::OddOddNoNo,
    Case::OddOddYesNo,
    Case::OddOddNoYes,
    Case::OddOddYesYes,
];

fn classify(i: usize, j: usize, sets: &BkSets) -> Option<Case> {
    let in_p = sets.parity(j).unwrap().contains(i);
    let in_u = sets.update(i).unwrap().contains(j);
    Some(match (i % 2, j % 2, in_p, in_u) {
        (0, 0, false, false) => Case::EvenEven,
        (1, 0, false, false) => Case::OddEvenNoNo,
        (1, 0, true, false) => Case::OddEvenYesNo,
        (0, 1, false, false) => Case::EvenOddNoNo,
        (0, 1, false, true) => Case::EvenOddNoYes,
        (0, 1, true, true) => Case::EvenOddYesYes,
        (1, 1, false, false) => Case::OddOddNoNo,
        (1, 1, true, false) => Case::OddOddYesNo,
        (1, 1, false, true) => Case::OddOddNoYes,
        (1, 1, true, true) => Case::OddOddYesYes,
        _ => return None,
    })
}

/// Builds ¼ · prefix · Σ terms, where each factor is a letter on a set and
/// factors are multiplied in the order written.
struct Form {
    n: usize,
}

impl Form {
    fn op(&self, letter: char, set: &IndexSet) -> PauliSum {
        let p = match letter {
            'X' => fermicomp::Pauli::X,
            'Y' => fermicomp::Pauli::Y,
            'Z' => fermicomp::Pauli::Z,
            _ => unreachable!(),
        };
        PauliSum::from(PauliString::on_set(self.n, set, p).unwrap())
    }

    fn term(&self, coeff: Complex64, factors: &[(char, IndexSet)]) -> PauliSum {
        let mut acc = PauliSum::identity(self.n).scale(coeff);
        for (l, s) in factors {
            acc = acc.mul(&self.op(*l, s)).unwrap();
        }
        acc
    }

    fn total(&self, terms: Vec<PauliSum>) -> PauliSum {
        terms
            .into_iter()
            .fold(PauliSum::zero(self.n), |a, t| a.add(&t).unwrap())
            .scale(c(0.25, 0.0))
    }
}

fn table_form(case: Case, i: usize, j: usize, sets: &BkSets) -> PauliSum {
    table_form_with(case, i, j, sets, false)
}

fn table_form_with(case: Case, i: usize, j: usize, sets: &BkSets, as_printed: bool) -> PauliSum {
    let n = sets.size();
    let f = Form { n };
    let pr = sets.pair(i, j).unwrap();
    let u = pr.update_diff.clone();
    let a = pr.alpha.clone();
    let (p0, p1, p2, p3) = (pr.p0.clone(), pr.p1.clone(), pr.p2.clone(), pr.p3.clone());
    let si = IndexSet::singleton(i);
    let sj = IndexSet::singleton(j);
    let one = c(1.0, 0.0);
    let m1 = c(-1.0, 0.0);
    let pi = c(0.0, 1.0);
    let mi = c(0.0, -1.0);
    let xi = ('X', si.clone());
    let yi = ('Y', si.clone());
    let xj = ('X', sj.clone());
    let yj = ('Y', sj.clone());
    let zs = |s: &IndexSet| ('Z', s.clone());
    match case {
        Case::EvenEven => {
            let pre = [('X', u.difference(&a)), ('Y', a.clone()), zs(&p0.difference(&a))];
            let body = [
                (one, [yj.clone(), xi.clone()]),
                (m1, [xj.clone(), yi.clone()]),
                (mi, [xj.clone(), xi.clone()]),
                (mi, [yj.clone(), yi.clone()]),
            ];
            f.total(
                body.into_iter()
                    .map(|(k, fs)| f.term(k, &[pre.to_vec(), fs.to_vec()].concat()))
                    .collect(),
            )
        }
        Case::OddEvenNoNo => {
            let pre = vec![('X', u.difference(&a)), ('Y', a.clone())];
            let z0 = zs(&p0.difference(&a));
            let z2 = zs(&p2.difference(&a));
            f.total(vec![
                f.term(one, &[pre.clone(), vec![yj.clone(), xi.clone(), z0.clone()]].concat()),
                f.term(mi, &[pre.clone(), vec![xj.clone(), xi.clone(), z0.clone()]].concat()),
                f.term(m1, &[pre.clone(), vec![xj.clone(), yi.clone(), z2.clone()]].concat()),
                f.term(mi, &[pre.clone(), vec![yj.clone(), yi.clone(), z2.clone()]].concat()),
            ])
        }
        Case::OddEvenYesNo => {
            let pre = vec![('X', u.clone())];
            let z0 = zs(&p0.without(i));
            let z2 = zs(&p2.without(i));
            f.total(vec![
                f.term(one, &[pre.clone(), vec![yj.clone(), yi.clone(), z0.clone()]].concat()),
                f.term(mi, &[pre.clone(), vec![xj.clone(), yi.clone(), z0.clone()]].concat()),
                f.term(one, &[pre.clone(), vec![xj.clone(), xi.clone(), z2.clone()]].concat()),
                f.term(pi, &[pre.clone(), vec![yj.clone(), xi.clone(), z2.clone()]].concat()),
            ])
        }
        Case::EvenOddNoNo => {
            let pre = vec![('X', u.difference(&a)), ('Y', a.clone())];
            let z0 = zs(&p0.difference(&a));
            let z1 = zs(&p1.difference(&a));
            f.total(vec![
                f.term(m1, &[pre.clone(), vec![xj.clone(), yi.clone(), z0.clone()]].concat()),
                f.term(mi, &[pre.clone(), vec![xj.clone(), xi.clone(), z0.clone()]].concat()),
                f.term(one, &[pre.clone(), vec![yj.clone(), xi.clone(), z1.clone()]].concat()),
                f.term(mi, &[pre.clone(), vec![yj.clone(), yi.clone(), z1.clone()]].concat()),
            ])
        }
        Case::EvenOddNoYes => {
            let x_first = ('X', u.without(j).difference(&a));
            let x_second = ('X', u.without(j));
            let tail0 = vec![('Y', a.clone()), zs(&p0.difference(&a))];
            let z1j = zs(&p1.with(j));
            f.total(vec![
                f.term(m1, &[vec![x_first.clone(), yi.clone()], tail0.clone()].concat()),
                f.term(
                    if as_printed { pi } else { mi },
                    &[vec![x_first.clone(), xi.clone()], tail0.clone()].concat(),
                ),
                f.term(pi, &[x_second.clone(), yi.clone(), z1j.clone()]),
                f.term(m1, &[x_second.clone(), xi.clone(), z1j.clone()]),
            ])
        }
        Case::EvenOddYesYes => {
            let x = ('X', u.without(j));
            let z1j = zs(&p1.with(j));
            f.total(vec![
                f.term(one, &[x.clone(), xi.clone()]),
                f.term(mi, &[x.clone(), yi.clone()]),
                f.term(pi, &[x.clone(), yi.clone(), z1j.clone()]),
                f.term(m1, &[x.clone(), xi.clone(), z1j.clone()]),
            ])
        }
        Case::OddOddNoNo => {
            let pre = vec![('X', u.difference(&a)), ('Y', a.clone())];
            let z = |s: &IndexSet| zs(&s.difference(&a));
            f.total(vec![
                f.term(mi, &[pre.clone(), vec![xj.clone(), xi.clone(), z(&p0)]].concat()),
                f.term(one, &[pre.clone(), vec![yj.clone(), xi.clone(), z(&p1)]].concat()),
                f.term(m1, &[pre.clone(), vec![xj.clone(), yi.clone(), z(&p2)]].concat()),
                f.term(mi, &[pre.clone(), vec![yj.clone(), yi.clone(), z(&p3)]].concat()),
            ])
        }
        Case::OddOddYesNo => {
            let pre = vec![('X', u.clone())];
            let z = |s: &IndexSet| zs(&s.without(i));
            f.total(vec![
                f.term(mi, &[pre.clone(), vec![xj.clone(), yi.clone(), z(&p0)]].concat()),
                f.term(one, &[pre.clone(), vec![yj.clone(), yi.clone(), z(&p1)]].concat()),
                f.term(one, &[pre.clone(), vec![xj.clone(), xi.clone(), z(&p2)]].concat()),
                f.term(pi, &[pre.clone(), vec![yj.clone(), xi.clone(), z(&p3)]].concat()),
            ])
        }
        Case::OddOddNoYes => {
            let x_first = ('X', u.without(j).difference(&a));
            let x_second = ('X', u.without(j));
            let ya = ('Y', a.clone());
            let zj = zs(&sj);
            f.total(vec![
                f.term(m1, &[x_first.clone(), yi.clone(), zs(&p2.difference(&a)), ya.clone()]),
                f.term(mi, &[x_first.clone(), xi.clone(), zs(&p0.difference(&a)), ya.clone()]),
                f.term(m1, &[x_second.clone(), xi.clone(), zs(&p1), zj.clone()]),
                f.term(pi, &[x_second.clone(), yi.clone(), zs(&p3), zj.clone()]),
            ])
        }
        Case::OddOddYesYes => {
            let x = ('X', u.without(j));
            let zj = zs(&sj);
            f.total(vec![
                f.term(mi, &[x.clone(), yi.clone(), zs(&p0.without(i))]),
                f.term(one, &[x.clone(), xi.clone(), zs(&p2.without(i))]),
                f.term(m1, &[x.clone(), zj.clone(), xi.clone(), zs(&p1)]),
                f.term(pi, &[x.clone(), zj.clone(), yi.clone(), zs(&p3)]),
            ])
        }
    }
}

#[derive(Default, Debug)]
struct Tally {
    instances: usize,
    matches: usize,
    alpha: BTreeMap<usize, usize>,
    first: Option<(usize, usize, usize)>,
    first_mismatch: Option<(usize, usize, usize)>,
}

fn survey(max_n: usize) -> BTreeMap<Case, Tally> {
    let mut out: BTreeMap<Case, Tally> = BTreeMap::new();
    for n in 2..=max_n {
        let sets = BkSets::new(n).unwrap();
        let e = bk(n);
        for j in 0..n {
            for i in 0..j {
                let case = classify(i, j, &sets).expect("unclassifiable pair");
                let t = out.entry(case).or_default();
                t.instances += 1;
                t.first.get_or_insert((i, j, n));
                *t.alpha.entry(sets.pair(i, j).unwrap().alpha.len()).or_default() += 1;
                let composed = e.hopping(i, j).unwrap();
                if composed.approx_eq(&table_form(case, i, j, &sets), TOL) {
                    t.matches += 1;
                } else {
                    t.first_mismatch.get_or_insert((i, j, n));
                }
            }
        }
    }
    out
}

/// Returns one summary line per case.
pub fn table_cases_are_reachable_and_match_composed_products() -> Vec<String> {
    let survey = survey(24);
    let mut lines = Vec::new();
    for case in ALL_CASES {
        let t = survey.get(&case).unwrap_or_else(|| panic!("{case:?} never instantiated"));
        lines.push(format!(
            "{case:?}: {} instances, {} match, first {:?}, alpha sizes {:?}, first mismatch {:?}",
            t.instances, t.matches, t.first, t.alpha, t.first_mismatch
        ));
    }
    for case in ALL_CASES {
        let t = &survey[&case];
        assert_eq!(t.matches, t.instances, "{case:?} first mismatch {:?}", t.first_mismatch);
    }
    lines
}

pub fn printed_even_odd_update_row_contradicts_oracle() {
    // As printed, the row for i even, j odd, j in U(i) carries -(Y_i - iX_i)
    // in its first bracket; the oracle-consistent product has -(Y_i + iX_i).
    let sets = BkSets::new(4).unwrap();
    let printed = table_form_with(Case::EvenOddNoYes, 0, 3, &sets, true);
    let op = fermicomp::fermion::FermionOperator::hop(0, 3);
    let oracle = fermicomp::fermion::fermionic_oracle(&op, 4).unwrap();
    let map: Vec<usize> = (0..16usize)
        .map(|v| {
            let occ = fermicomp::OccupationVector::from_index(v, 4, fermicomp::Basis::Occupation);
            fermicomp::gf2::encode_state(&occ, fermicomp::Basis::BravyiKitaev).unwrap().index()
        })
        .collect();
    let m = printed.to_matrix().unwrap();
    let mismatch = (0..16).any(|v| (0..16).any(|w| (m[(map[w], map[v])] - oracle[(w, v)]).norm() > 1e-9));
    assert!(mismatch);
    assert!(table_form(Case::EvenOddNoYes, 0, 3, &sets).approx_eq(&bk(4).hopping(0, 3).unwrap(), TOL));
}

pub fn alpha_never_exceeds_one() {
    let mut max = 0;
    for n in 2..=128 {
        let sets = BkSets::new(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    max = max.max(sets.pair(i, j).unwrap().alpha.len());
                }
            }
        }
    }
    assert_eq!(max, 1);
}
