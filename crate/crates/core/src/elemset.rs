//! Fixed-width subsets of a semiring universe.
//!
//! Every algebra in this crate has at most 64 elements, so a subset is a
//! single `u64`. The `Ord` impl is the canonical order used for every
//! reported list: first by cardinality, then by the numeric value of the
//! mask.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported universe.
pub const CAPACITY: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u64);

/// An ideal of a semiring, stored as its membership mask.
pub type IdealSet = ElemSet;

/// The zero class of a congruence.
pub type KernelSet = ElemSet;

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < CAPACITY);
        ElemSet(1u64 << i)
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n == CAPACITY {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(ElemSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < CAPACITY && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let before = self.0;
        self.0 |= 1u64 << i;
        before != self.0
    }

    pub fn with(self, i: usize) -> Self {
        ElemSet(self.0 | 1u64 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Renders the set as `{x,y,z}` using the supplied element names.
    pub fn render<S: AsRef<str>>(self, names: &[S]) -> String {
        let mut out = String::from("{");
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(names[i].as_ref());
        }
        out.push('}');
        out
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ElemSet::from_indices(iter)
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElemSet`].
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_mask() {
        let a = ElemSet::from_indices([0, 3]);
        let b = ElemSet::from_indices([0, 1, 2]);
        let c = ElemSet::from_indices([0, 1]);
        let mut v = vec![b, a, c];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn full_and_iter() {
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(
            ElemSet::from_indices([5, 1]).render(&["0", "a", "b", "c", "d", "e"]),
            "{a,e}"
        );
    }
}
