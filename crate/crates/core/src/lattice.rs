//! Finite lattices given by a partial order on labelled nodes.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite lattice with precomputed join and meet tables.
///
/// Nodes are indices into `labels`. `hasse` holds the covering pairs
/// `(lower, upper)` in lexicographic order.
#[derive(Debug, Clone)]
pub struct FiniteLattice<T> {
    labels: Vec<T>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    hasse: Vec<(usize, usize)>,
}

/// Five nodes forming a sublattice isomorphic to N5:
/// `bottom < x < y < top` and `bottom < z < top` with z incomparable to x, y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: usize,
    pub top: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl<T> FiniteLattice<T> {
    /// Builds the lattice of `labels` under `le`. Fails if `le` is not a
    /// partial order or some pair lacks a least upper or greatest lower bound.
    pub fn from_order(labels: Vec<T>, le: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = labels.len();
        let leq: Vec<Vec<bool>> = labels
            .iter()
            .map(|a| labels.iter().map(|b| le(a, b)).collect())
            .collect();
        check_partial_order(&leq)?;
        let up_count: Vec<usize> = (0..n).map(|a| leq[a].iter().filter(|&&b| b).count()).collect();
        let down_count: Vec<usize> = (0..n).map(|a| (0..n).filter(|&c| leq[c][a]).count()).collect();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
                join[a][b] = *upper
                    .iter()
                    .find(|&&c| up_count[c] == upper.len())
                    .ok_or_else(|| Error::Internal(format!("nodes {a} and {b} have no join")))?;
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                meet[a][b] = *lower
                    .iter()
                    .find(|&&c| down_count[c] == lower.len())
                    .ok_or_else(|| Error::Internal(format!("nodes {a} and {b} have no meet")))?;
            }
        }
        let hasse = covering_pairs(&leq);
        Ok(FiniteLattice {
            labels,
            leq,
            join,
            meet,
            hasse,
        })
    }

    /// Builds a lattice from explicitly computed join and meet tables. The
    /// tables are checked against `le` and rejected if they are not the
    /// least upper and greatest lower bounds.
    pub fn from_tables(
        labels: Vec<T>,
        le: impl Fn(&T, &T) -> bool,
        join: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let leq: Vec<Vec<bool>> = labels
            .iter()
            .map(|a| labels.iter().map(|b| le(a, b)).collect())
            .collect();
        check_partial_order(&leq)?;
        let hasse = covering_pairs(&leq);
        let lattice = FiniteLattice {
            labels,
            leq,
            join,
            meet,
            hasse,
        };
        lattice.validate()?;
        Ok(lattice)
    }

    /// Checks that the join and meet tables are the least upper and greatest
    /// lower bounds under the order.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let j = self.join[a][b];
                let m = self.meet[a][b];
                let lub = self.le(a, j)
                    && self.le(b, j)
                    && (0..n).all(|c| !(self.le(a, c) && self.le(b, c)) || self.le(j, c));
                let glb = self.le(m, a)
                    && self.le(m, b)
                    && (0..n).all(|c| !(self.le(c, a) && self.le(c, b)) || self.le(c, m));
                if !lub || !glb {
                    return Err(Error::Internal(format!("join/meet table wrong at nodes ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[T] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &T {
        &self.labels[node]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&a| (0..self.len()).all(|b| self.le(a, b)))
            .expect("non-empty lattice")
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&a| (0..self.len()).all(|b| self.le(b, a)))
            .expect("non-empty lattice")
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.le(a, b) || self.le(b, a)))
    }

    /// First triple `(a, b, x)` with `a <= b` and `a ∨ (x ∧ b) != (a ∨ x) ∧ b`.
    pub fn modularity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in (0..n).filter(|&b| self.le(a, b)) {
                for x in 0..n {
                    if self.join(a, self.meet(x, b)) != self.meet(self.join(a, x), b) {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    /// First triple `(a, b, c)` with `a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// Searches for an N5 sublattice, scanning `x < y` and then `z`.
    pub fn find_pentagon(&self) -> Option<Pentagon> {
        let n = self.len();
        for x in 0..n {
            for y in (0..n).filter(|&y| self.lt(x, y)) {
                for z in 0..n {
                    let top = self.join(x, z);
                    let bottom = self.meet(x, z);
                    // Equal joins and meets with x < y force all five nodes apart.
                    if self.join(y, z) == top && self.meet(y, z) == bottom {
                        return Some(Pentagon { bottom, top, x, y, z });
                    }
                }
            }
        }
        None
    }

    /// Graphviz rendering, bottom to top. Edges run from the lower node of
    /// each covering pair to the upper one.
    pub fn to_dot(&self, graph_name: &str, label: impl Fn(&T) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(graph_name));
        out.push_str("  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label(l)));
        }
        for &(lo, hi) in &self.hasse {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn check_partial_order(leq: &[Vec<bool>]) -> Result<()> {
    let n = leq.len();
    if n == 0 {
        return Err(Error::Internal("empty lattice".into()));
    }
    for a in 0..n {
        if !leq[a][a] {
            return Err(Error::Internal(format!("order not reflexive at node {a}")));
        }
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::Internal(format!("nodes {a} and {b} are equivalent")));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::Internal(format!("order not transitive at ({a},{b},{c})")));
                }
            }
        }
    }
    Ok(())
}

/// Transitive reduction of a partial order.
fn covering_pairs(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let lt = |a: usize, b: usize| a != b && leq[a][b];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}
