//! Congruences, their kernels, and the lattices they form.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::elemset::{ElemSet, KernelSet};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::semiring::FiniteSemiring;

/// Disjoint-set forest over element indices.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so roots are least members.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

/// An equivalence on the element indices, stored as a block number per
/// element. Blocks are numbered in order of their least member, so two
/// congruences are equal exactly when their arrays are.
///
/// The derived order is the canonical listing order: more blocks first, then
/// the block array lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    block_of: Vec<u8>,
}

impl Ord for Congruence {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .num_blocks()
            .cmp(&self.num_blocks())
            .then_with(|| self.block_of.cmp(&other.block_of))
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Congruence {
    /// Δ, the identity relation.
    pub fn identity(n: usize) -> Self {
        Congruence {
            block_of: (0..n as u8).collect(),
        }
    }

    /// ∇, the total relation.
    pub fn total(n: usize) -> Self {
        Congruence { block_of: vec![0; n] }
    }

    /// Normalizes arbitrary class labels (`labels[x] == labels[y]` iff x ~ y).
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut numbering = HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = numbering.len() as u8;
                *numbering.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { block_of }
    }

    /// Builds the equivalence whose classes are `blocks`. Elements missing
    /// from every block become singletons.
    pub fn from_blocks(n: usize, blocks: &[ElemSet]) -> Self {
        let mut uf = UnionFind::new(n);
        for b in blocks {
            if let Some(first) = b.iter().next() {
                for x in b.iter() {
                    uf.union(first, x);
                }
            }
        }
        uf.into_congruence()
    }

    pub fn block_of(&self) -> &[u8] {
        &self.block_of
    }

    /// Size of the underlying universe.
    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn class_of(&self, x: usize) -> ElemSet {
        let b = self.block_of[x];
        (0..self.len()).filter(|&y| self.block_of[y] == b).collect()
    }

    pub fn blocks(&self) -> Vec<ElemSet> {
        let mut blocks = vec![ElemSet::EMPTY; self.num_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b as usize].insert(x);
        }
        blocks
    }

    /// The class of element 0, which is the zero of a normalized semiring.
    pub fn kernel(&self) -> KernelSet {
        self.class_of(0)
    }

    /// Set inclusion of the relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(u8, u8)> = self
            .block_of
            .iter()
            .copied()
            .zip(other.block_of.iter().copied())
            .collect();
        Congruence::from_labels(&pairs)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for rel in [self, other] {
            let mut first = vec![None; rel.num_blocks()];
            for (x, &b) in rel.block_of.iter().enumerate() {
                match first[b as usize] {
                    None => first[b as usize] = Some(x),
                    Some(f) => {
                        uf.union(f, x);
                    }
                }
            }
        }
        uf.into_congruence()
    }

    /// Renders blocks in order, e.g. `{0,a}|{1}`.
    pub fn render(&self, s: &FiniteSemiring) -> String {
        self.blocks().iter().map(|b| s.render(*b)).collect::<Vec<_>>().join("|")
    }
}

/// First `(x, y, z)` with `x ~ y` whose translates by `z` fall into
/// different classes, under addition or multiplication.
pub fn compatibility_violation(s: &FiniteSemiring, theta: &Congruence) -> Option<(usize, usize, usize)> {
    let n = s.len();
    for x in 0..n {
        for y in (0..n).filter(|&y| theta.related(x, y)) {
            for z in 0..n {
                if !theta.related(s.add(x, z), s.add(y, z)) || !theta.related(s.mul(x, z), s.mul(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_congruence(s: &FiniteSemiring, theta: &Congruence) -> bool {
    theta.len() == s.len() && compatibility_violation(s, theta).is_none()
}

/// Cg(a, b): the least congruence identifying `a` and `b`.
pub fn principal_congruence(s: &FiniteSemiring, a: usize, b: usize) -> Congruence {
    let n = s.len();
    let mut uf = UnionFind::new(n);
    let mut pending = Vec::new();
    if uf.union(a, b) {
        pending.push((a, b));
    }
    // Every merged pair has all its translates merged too; translates of
    // the merged pairs generate the translates of everything in their span.
    while let Some((x, y)) = pending.pop() {
        for z in 0..n {
            for (p, q) in [(s.add(x, z), s.add(y, z)), (s.mul(x, z), s.mul(y, z))] {
                if uf.union(p, q) {
                    pending.push((p, q));
                }
            }
        }
    }
    uf.into_congruence()
}

/// Every congruence of `s`, canonically ordered.
///
/// Each congruence is a join of principal ones, so the set is grown from Δ
/// by joining in one distinct principal congruence at a time.
pub fn enumerate_congruences(s: &FiniteSemiring) -> Vec<Congruence> {
    let n = s.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut principals: Vec<Congruence> = pairs.par_iter().map(|&(a, b)| principal_congruence(s, a, b)).collect();
    principals.sort();
    principals.dedup();

    let mut all: HashSet<Congruence> = HashSet::from([Congruence::identity(n)]);
    for p in &principals {
        let joined: Vec<Congruence> = all.iter().map(|c| c.join(p)).collect();
        all.extend(joined);
    }
    let mut out: Vec<_> = all.into_iter().collect();
    out.sort();
    out
}

pub fn kernel(theta: &Congruence) -> KernelSet {
    theta.kernel()
}

/// The congruence kernels of a semiring together with their lattice.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    pub kernels: Vec<KernelSet>,
    pub lattice: FiniteLattice<KernelSet>,
}

impl KernelFamily {
    pub fn index_of(&self, k: KernelSet) -> Option<usize> {
        self.kernels.iter().position(|&x| x == k)
    }

    /// Least kernel containing `a ∪ b`: the intersection of all kernels above it.
    pub fn join_sets(&self, a: KernelSet, b: KernelSet) -> KernelSet {
        least_above(&self.kernels, a.union(b))
    }
}

fn least_above(kernels: &[KernelSet], set: ElemSet) -> KernelSet {
    kernels
        .iter()
        .filter(|k| set.is_subset(**k))
        .fold(ElemSet::full(64), |acc, k| acc.intersection(*k))
}

/// Deduplicated kernels of `congruences`, ordered like ideals, with meet as
/// intersection and join as the least kernel containing the union.
pub fn kernel_family(congruences: &[Congruence]) -> Result<KernelFamily> {
    let mut kernels: Vec<KernelSet> = congruences.iter().map(Congruence::kernel).collect();
    kernels.sort();
    kernels.dedup();
    let index: HashMap<KernelSet, usize> = kernels.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let n = kernels.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            join[a][b] = *index
                .get(&least_above(&kernels, kernels[a].union(kernels[b])))
                .ok_or_else(|| Error::Internal("kernel family not closed under intersection".into()))?;
            meet[a][b] = *index
                .get(&kernels[a].intersection(kernels[b]))
                .ok_or_else(|| Error::Internal("kernel family not closed under intersection".into()))?;
        }
    }
    let lattice = FiniteLattice::from_tables(kernels.clone(), |a, b| a.is_subset(*b), join, meet)?;
    Ok(KernelFamily { kernels, lattice })
}

pub fn enumerate_kernels(s: &FiniteSemiring) -> Result<KernelFamily> {
    kernel_family(&enumerate_congruences(s))
}

/// Congruences `Θ, Φ` with `[0](Θ ∨ Φ) != [0]Θ ∨ [0]Φ` (right-hand join
/// taken in the kernel lattice).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinFailure {
    pub theta: Congruence,
    pub phi: Congruence,
    /// `[0](Θ ∨ Φ)`.
    pub kernel_of_join: KernelSet,
    /// `[0]Θ ∨ [0]Φ` in the kernel lattice.
    pub join_of_kernels: KernelSet,
}

/// First pair (in canonical order) on which `Θ ↦ [0]Θ` fails to preserve joins.
pub fn kernel_map_join_failure(s: &FiniteSemiring) -> Result<Option<JoinFailure>> {
    let cons = enumerate_congruences(s);
    let family = kernel_family(&cons)?;
    for (i, theta) in cons.iter().enumerate() {
        for phi in &cons[i + 1..] {
            let kernel_of_join = theta.join(phi).kernel();
            let join_of_kernels = family.join_sets(theta.kernel(), phi.kernel());
            if kernel_of_join != join_of_kernels {
                return Ok(Some(JoinFailure {
                    theta: theta.clone(),
                    phi: phi.clone(),
                    kernel_of_join,
                    join_of_kernels,
                }));
            }
        }
    }
    Ok(None)
}

/// A triple breaking `[0]((Θ∨Φ)∩Ψ) = [0]((Θ∩Ψ)∨(Φ∩Ψ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDistributivityFailure {
    pub theta: Congruence,
    pub phi: Congruence,
    pub psi: Congruence,
}

/// Checks distributivity at 0 over every triple of congruences.
pub fn distributivity_at_zero_violation(s: &FiniteSemiring) -> Option<ZeroDistributivityFailure> {
    distributivity_at_zero_violation_in(&enumerate_congruences(s))
}

pub fn distributivity_at_zero_violation_in(cons: &[Congruence]) -> Option<ZeroDistributivityFailure> {
    for theta in cons {
        for phi in cons {
            let theta_phi = theta.join(phi);
            for psi in cons {
                let lhs = theta_phi.meet(psi).kernel();
                let rhs = theta.meet(psi).join(&phi.meet(psi)).kernel();
                if lhs != rhs {
                    return Some(ZeroDistributivityFailure {
                        theta: theta.clone(),
                        phi: phi.clone(),
                        psi: psi.clone(),
                    });
                }
            }
        }
    }
    None
}

pub fn is_distributive_at_zero(s: &FiniteSemiring) -> bool {
    distributivity_at_zero_violation(s).is_none()
}

/// Con S ordered by inclusion, meet = intersection, join = closure of union.
pub fn congruence_lattice(s: &FiniteSemiring) -> Result<FiniteLattice<Congruence>> {
    lattice_of(enumerate_congruences(s))
}

pub fn lattice_of(cons: Vec<Congruence>) -> Result<FiniteLattice<Congruence>> {
    let index: HashMap<&Congruence, usize> = cons.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let n = cons.len();
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            join[a][b] = *index
                .get(&cons[a].join(&cons[b]))
                .ok_or_else(|| Error::Internal("join of congruences missing".into()))?;
            meet[a][b] = *index
                .get(&cons[a].meet(&cons[b]))
                .ok_or_else(|| Error::Internal("meet of congruences missing".into()))?;
        }
    }
    FiniteLattice::from_tables(cons, |a, b| a.refines(b), join, meet)
}
