//! Ideals of a finite semiring and the ideal lattice.
//!
//! An ideal contains zero, is closed under addition and absorbs
//! multiplication by arbitrary elements. Ideals are bit masks over the
//! element indices of their semiring.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::elemset::{ElemSet, IdealSet};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::semiring::FiniteSemiring;

pub type IdealLattice = FiniteLattice<IdealSet>;

/// Why a subset fails to be an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealViolation {
    MissingZero,
    /// `a + b` leaves the subset.
    NotAddClosed {
        a: usize,
        b: usize,
    },
    /// `a * s` leaves the subset although `a` is a member.
    NotAbsorbing {
        a: usize,
        s: usize,
    },
}

/// Returns the first failed condition, checking zero, then sums, then
/// products, each in ascending index order.
pub fn ideal_violation(s: &FiniteSemiring, subset: ElemSet) -> Option<IdealViolation> {
    if !subset.contains(s.zero()) {
        return Some(IdealViolation::MissingZero);
    }
    for a in subset {
        for b in subset {
            if !subset.contains(s.add(a, b)) {
                return Some(IdealViolation::NotAddClosed { a, b });
            }
        }
    }
    for a in subset {
        for x in 0..s.len() {
            if !subset.contains(s.mul(a, x)) {
                return Some(IdealViolation::NotAbsorbing { a, s: x });
            }
        }
    }
    None
}

pub fn is_ideal(s: &FiniteSemiring, subset: ElemSet) -> bool {
    ideal_violation(s, subset).is_none()
}

/// `A + B = {a + b | a in A, b in B}`.
pub fn sum_set(s: &FiniteSemiring, a: ElemSet, b: ElemSet) -> ElemSet {
    a.iter().flat_map(|x| b.iter().map(move |y| s.add(x, y))).collect()
}

/// The least ideal containing `generators`.
pub fn ideal_generated_by(s: &FiniteSemiring, generators: ElemSet) -> IdealSet {
    let mut ideal = generators.with(s.zero());
    let mut pending: Vec<usize> = ideal.iter().collect();
    while let Some(a) = pending.pop() {
        for x in 0..s.len() {
            if ideal.insert(s.mul(a, x)) {
                pending.push(s.mul(a, x));
            }
        }
        for b in ideal {
            let sum = s.add(a, b);
            if ideal.insert(sum) {
                pending.push(sum);
            }
        }
    }
    ideal
}

/// All ideals of `s` in canonical order (size, then mask).
///
/// Walks the closure system upward from `{0}`: every ideal is reached by
/// adding one absent element to a smaller ideal and closing.
pub fn enumerate_ideals(s: &FiniteSemiring) -> Vec<IdealSet> {
    let bottom = ideal_generated_by(s, ElemSet::EMPTY);
    let mut seen = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(ideal) = queue.pop_front() {
        for e in s.universe().difference(ideal) {
            let next = ideal_generated_by(s, ideal.with(e));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut ideals: Vec<_> = seen.into_iter().collect();
    ideals.sort();
    ideals
}

/// The lattice of all ideals, with `I ∨ J = I + J` and `I ∧ J = I ∩ J`.
///
/// Both tables are computed from those set formulas and then checked
/// against the inclusion order, so a sum-set that failed to be the least
/// ideal above `I ∪ J` surfaces as an error.
pub fn ideal_lattice(s: &FiniteSemiring) -> Result<IdealLattice> {
    let ideals = enumerate_ideals(s);
    let index: HashMap<ElemSet, usize> = ideals.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let lookup = |set: ElemSet, what: &str| {
        index
            .get(&set)
            .copied()
            .ok_or_else(|| Error::Internal(format!("{what} {} is not an ideal", s.render(set))))
    };
    let n = ideals.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for (a, &i) in ideals.iter().enumerate() {
        for (b, &j) in ideals.iter().enumerate() {
            join[a][b] = lookup(sum_set(s, i, j), "sum")?;
            meet[a][b] = lookup(i.intersection(j), "intersection")?;
        }
    }
    FiniteLattice::from_tables(ideals, |a, b| a.is_subset(*b), join, meet)
}
