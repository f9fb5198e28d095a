//! Brute-force oracles shared by the integration tests. They only read the
//! Cayley tables and never call the enumeration code they are compared with.

#![allow(dead_code)]

use semiring_lab::semiring::{builtin, direct_product, ProductSemiring, BUILTINS};
use semiring_lab::{Congruence, ElemSet, FiniteSemiring};

/// Definition of an ideal, checked directly on a membership mask.
pub fn is_ideal_by_definition(s: &FiniteSemiring, mask: u64) -> bool {
    let has = |i: usize| mask >> i & 1 == 1;
    let n = s.len();
    has(s.zero())
        && (0..n)
            .filter(|&a| has(a))
            .all(|a| (0..n).filter(|&b| has(b)).all(|b| has(s.add(a, b))) && (0..n).all(|x| has(s.mul(a, x))))
}

/// All ideals by filtering every subset, sorted by (size, mask).
pub fn ideals_by_subset_filter(s: &FiniteSemiring) -> Vec<ElemSet> {
    let n = s.len();
    assert!(n <= 20, "subset filter limited to 2^20 subsets");
    let mut out: Vec<ElemSet> = (0u64..1 << n)
        .filter(|&m| is_ideal_by_definition(s, m))
        .map(ElemSet::from_bits)
        .collect();
    out.sort();
    out
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut rgs = vec![0u8; n];
    fn rec(i: usize, max: u8, rgs: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// Compatibility of a partition with both operations, by definition.
pub fn is_compatible_partition(s: &FiniteSemiring, rgs: &[u8]) -> bool {
    let n = s.len();
    (0..n).all(|x| {
        (0..n)
            .filter(|&y| rgs[x] == rgs[y])
            .all(|y| (0..n).all(|z| rgs[s.add(x, z)] == rgs[s.add(y, z)] && rgs[s.mul(x, z)] == rgs[s.mul(y, z)]))
    })
}

/// All congruences by filtering every set partition, canonically sorted.
pub fn congruences_by_partition_filter(s: &FiniteSemiring) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = set_partitions(s.len())
        .into_iter()
        .filter(|p| is_compatible_partition(s, p))
        .map(|p| Congruence::from_labels(&p))
        .collect();
    out.sort();
    out
}

pub fn b(name: &str) -> FiniteSemiring {
    builtin(name).unwrap()
}

pub fn product(a: &str, c: &str) -> ProductSemiring {
    direct_product(&b(a), &b(c)).unwrap()
}

/// All ordered pairs of builtins whose product has at most `max` elements.
pub fn builtin_products(max: usize) -> Vec<ProductSemiring> {
    let mut out = Vec::new();
    for l in BUILTINS {
        for r in BUILTINS {
            if b(l).len() * b(r).len() <= max {
                out.push(product(l, r));
            }
        }
    }
    out
}

/// Subset of `s` given by element names.
pub fn named(s: &FiniteSemiring, names: &[&str]) -> ElemSet {
    names
        .iter()
        .map(|n| {
            s.index_of(n)
                .unwrap_or_else(|| panic!("no element {n} in {}", s.name()))
        })
        .collect()
}
