use std::fmt;

/// Immutable, strictly increasing set of qubit indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(i: usize) -> Self {
        Self(vec![i])
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        Self((lo..hi).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a != b)
    }

    pub fn with(&self, i: usize) -> Self {
        self.union(&Self::singleton(i))
    }

    pub fn without(&self, i: usize) -> Self {
        self.difference(&Self::singleton(i))
    }

    // Sorted merge; `keep(in_self, in_other)` decides membership.
    fn merge(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, in_a, in_b) = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    (x, true, true)
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    (x, true, false)
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (Some(&x), None) => {
                    i += 1;
                    (x, true, false)
                }
                (None, Some(&y)) => {
                    j += 1;
                    (y, false, true)
                }
                (None, None) => unreachable!(),
            };
            if keep(in_a, in_b) {
                out.push(v);
            }
        }
        Self(out)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<&[usize]> for IndexSet {
    fn from(v: &[usize]) -> Self {
        v.iter().copied().collect()
    }
}

impl<const N: usize> From<[usize; N]> for IndexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

/// Printed highest index first, e.g. `{6,5,3}`.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().rev().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
