//! Finite commutative semirings given by Cayley tables.

use std::collections::HashMap;
use std::fmt;

use crate::elemset::{ElemSet, CAPACITY};
use crate::error::{Error, FormatError, Result};

/// The semiring laws checked by [`verify_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    AddCommutative,
    MulCommutative,
    AddAssociative,
    MulAssociative,
    AdditiveIdentity,
    ZeroAnnihilates,
    Distributive,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AddCommutative => "add-commutativity",
            Axiom::MulCommutative => "mul-commutativity",
            Axiom::AddAssociative => "add-associativity",
            Axiom::MulAssociative => "mul-associativity",
            Axiom::AdditiveIdentity => "additive-identity",
            Axiom::ZeroAnnihilates => "zero-annihilation",
            Axiom::Distributive => "distributivity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom together with the first (lexicographically least)
/// tuple of element indices that breaks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    /// Element names of the witness, in declared order.
    pub witness_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return f.write_str("all axioms hold");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} fails at ({})", v.axiom, v.witness_names.join(","))?;
        }
        Ok(())
    }
}

/// A validated finite commutative semiring.
///
/// The zero always sits at index 0. If the declared zero was elsewhere the
/// elements are reordered (zero first, the rest in declared order) and
/// `declared_index` records where each element came from.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    names: Vec<String>,
    add: Vec<u8>,
    mul: Vec<u8>,
    declared_index: Vec<usize>,
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemiring")
            .field("name", &self.name)
            .field("elements", &self.names)
            .finish_non_exhaustive()
    }
}

fn index_tables(
    names: &[String],
    add: &[Vec<String>],
    mul: &[Vec<String>],
    zero_name: &str,
) -> std::result::Result<(Vec<usize>, Vec<usize>, usize), FormatError> {
    let n = names.len();
    if n == 0 {
        return Err(FormatError::Empty);
    }
    if n > CAPACITY {
        return Err(FormatError::TooLarge(n));
    }
    let mut lookup = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if lookup.insert(name.as_str(), i).is_some() {
            return Err(FormatError::DuplicateName(name.clone()));
        }
    }
    let zero = *lookup
        .get(zero_name)
        .ok_or_else(|| FormatError::UnknownZero(zero_name.to_string()))?;
    let flatten = |table: &'static str, rows: &[Vec<String>]| {
        if rows.len() != n {
            return Err(FormatError::RowCount {
                table,
                expected: n,
                found: rows.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(FormatError::RowLength {
                    table,
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (col, entry) in entries.iter().enumerate() {
                let idx = lookup.get(entry.as_str()).ok_or_else(|| FormatError::UnknownEntry {
                    table,
                    row,
                    col,
                    entry: entry.clone(),
                })?;
                flat.push(*idx);
            }
        }
        Ok(flat)
    };
    Ok((flatten("add", add)?, flatten("mul", mul)?, zero))
}

/// Checks the commutative semiring laws on tables given by element names.
///
/// Format problems (duplicate names, an undeclared zero, an entry that is not
/// a declared name, ragged tables) are reported as `Err`; failed laws are
/// collected in the returned report, one witness per law.
pub fn verify_axioms(
    elem_names: &[String],
    add: &[Vec<String>],
    mul: &[Vec<String>],
    zero_name: &str,
) -> std::result::Result<AxiomReport, FormatError> {
    let (add, mul, zero) = index_tables(elem_names, add, mul, zero_name)?;
    Ok(check_tables(elem_names, &add, &mul, zero))
}

fn check_tables(names: &[String], add: &[usize], mul: &[usize], zero: usize) -> AxiomReport {
    let n = names.len();
    let a = |i: usize, j: usize| add[i * n + j];
    let m = |i: usize, j: usize| mul[i * n + j];
    let mut violations = Vec::new();
    let mut report = |axiom: Axiom, witness: Vec<usize>| {
        let witness_names = witness.iter().map(|&i| names[i].clone()).collect();
        violations.push(Violation {
            axiom,
            witness,
            witness_names,
        });
    };

    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let triples = || pairs().flat_map(move |(i, j)| (0..n).map(move |k| (i, j, k)));

    if let Some((i, j)) = pairs().find(|&(i, j)| a(i, j) != a(j, i)) {
        report(Axiom::AddCommutative, vec![i, j]);
    }
    if let Some((i, j)) = pairs().find(|&(i, j)| m(i, j) != m(j, i)) {
        report(Axiom::MulCommutative, vec![i, j]);
    }
    if let Some((i, j, k)) = triples().find(|&(i, j, k)| a(a(i, j), k) != a(i, a(j, k))) {
        report(Axiom::AddAssociative, vec![i, j, k]);
    }
    if let Some((i, j, k)) = triples().find(|&(i, j, k)| m(m(i, j), k) != m(i, m(j, k))) {
        report(Axiom::MulAssociative, vec![i, j, k]);
    }
    if let Some(i) = (0..n).find(|&i| a(zero, i) != i || a(i, zero) != i) {
        report(Axiom::AdditiveIdentity, vec![i]);
    }
    if let Some(i) = (0..n).find(|&i| m(zero, i) != zero || m(i, zero) != zero) {
        report(Axiom::ZeroAnnihilates, vec![i]);
    }
    if let Some((i, j, k)) = triples().find(|&(i, j, k)| m(a(i, j), k) != a(m(i, k), m(j, k))) {
        report(Axiom::Distributive, vec![i, j, k]);
    }
    AxiomReport { violations }
}

impl FiniteSemiring {
    /// Validates the tables and builds the semiring. Fails with
    /// [`Error::Format`] on malformed input and [`Error::Axioms`] when a law
    /// is violated.
    pub fn from_tables(
        name: impl Into<String>,
        elem_names: &[String],
        add: &[Vec<String>],
        mul: &[Vec<String>],
        zero_name: &str,
    ) -> Result<Self> {
        let (add, mul, zero) = index_tables(elem_names, add, mul, zero_name)?;
        let report = check_tables(elem_names, &add, &mul, zero);
        if !report.valid() {
            return Err(Error::Axioms(report));
        }
        Ok(Self::normalized(name.into(), elem_names, &add, &mul, zero))
    }

    /// Same as [`from_tables`](Self::from_tables) but with `&str` rows, handy
    /// for literal tables.
    pub fn from_str_tables(
        name: &str,
        elem_names: &[&str],
        add: &[&[&str]],
        mul: &[&[&str]],
        zero_name: &str,
    ) -> Result<Self> {
        let owned = |rows: &[&[&str]]| -> Vec<Vec<String>> {
            rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
        };
        let names: Vec<String> = elem_names.iter().map(|s| s.to_string()).collect();
        Self::from_tables(name, &names, &owned(add), &owned(mul), zero_name)
    }

    /// Builds a semiring from index-valued operations. Used for products,
    /// subalgebras and the builtin catalog.
    pub(crate) fn from_fns(
        name: impl Into<String>,
        names: Vec<String>,
        zero: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(FormatError::Empty.into());
        }
        if n > CAPACITY {
            return Err(FormatError::TooLarge(n).into());
        }
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        let add_t: Vec<usize> = pairs.clone().map(|(i, j)| add(i, j)).collect();
        let mul_t: Vec<usize> = pairs.map(|(i, j)| mul(i, j)).collect();
        let report = check_tables(&names, &add_t, &mul_t, zero);
        if !report.valid() {
            return Err(Error::Axioms(report));
        }
        Ok(Self::normalized(name.into(), &names, &add_t, &mul_t, zero))
    }

    fn normalized(name: String, names: &[String], add: &[usize], mul: &[usize], zero: usize) -> Self {
        let n = names.len();
        let order: Vec<usize> = std::iter::once(zero).chain((0..n).filter(|&i| i != zero)).collect();
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let remap = |table: &[usize]| -> Vec<u8> {
            let mut out = vec![0u8; n * n];
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] = position[table[order[i] * n + order[j]]] as u8;
                }
            }
            out
        };
        FiniteSemiring {
            name,
            names: order.iter().map(|&i| names[i].clone()).collect(),
            add: remap(add),
            mul: remap(mul),
            declared_index: order,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Position of each element in the originally declared order.
    pub fn declared_index(&self) -> &[usize] {
        &self.declared_index
    }

    /// Always 0 after normalization.
    #[inline]
    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.len() + j] as usize
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len() + j] as usize
    }

    pub fn universe(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn render(&self, set: ElemSet) -> String {
        set.render(&self.names)
    }

    /// Restriction to a subset closed under both operations and containing zero.
    pub fn subsemiring(&self, subset: ElemSet, name: impl Into<String>) -> Result<FiniteSemiring> {
        let members: Vec<usize> = subset.iter().collect();
        let closed = subset.contains(self.zero())
            && members.iter().all(|&i| {
                members
                    .iter()
                    .all(|&j| subset.contains(self.add(i, j)) && subset.contains(self.mul(i, j)))
            });
        if !closed {
            return Err(Error::NotSubalgebra(self.render(subset)));
        }
        let local = |g: usize| members.iter().position(|&m| m == g).expect("closed subset");
        FiniteSemiring::from_fns(
            name,
            members.iter().map(|&i| self.names[i].clone()).collect(),
            0,
            |i, j| local(self.add(members[i], members[j])),
            |i, j| local(self.mul(members[i], members[j])),
        )
    }
}

/// The multiplicative unit, if there is one. Commutativity makes it unique.
pub fn is_unitary(s: &FiniteSemiring) -> Option<usize> {
    (0..s.len()).find(|&e| (0..s.len()).all(|x| s.mul(e, x) == x))
}

pub fn is_idempotent(s: &FiniteSemiring) -> bool {
    (0..s.len()).all(|x| s.mul(x, x) == x)
}

/// True when `s` is a field: a unit distinct from zero, additive inverses,
/// and a multiplicative inverse for every non-zero element.
pub fn is_field(s: &FiniteSemiring) -> bool {
    let n = s.len();
    let Some(one) = is_unitary(s) else {
        return false;
    };
    one != s.zero()
        && (0..n).all(|x| (0..n).any(|y| s.add(x, y) == s.zero()))
        && (1..n).all(|x| (0..n).any(|y| s.mul(x, y) == one))
}

/// `S1 × S2` with componentwise operations.
///
/// Element `(a, b)` is named `"(a|b)"` and has index `a * |S2| + b`.
#[derive(Debug, Clone)]
pub struct ProductSemiring {
    pub base: FiniteSemiring,
    pub left: FiniteSemiring,
    pub right: FiniteSemiring,
}

impl ProductSemiring {
    pub fn pair_of(&self, i: usize) -> (usize, usize) {
        (i / self.right.len(), i % self.right.len())
    }

    pub fn index_of(&self, l: usize, r: usize) -> usize {
        l * self.right.len() + r
    }

    /// `S1 × {0}`.
    pub fn left_axis(&self) -> ElemSet {
        (0..self.left.len()).map(|l| self.index_of(l, 0)).collect()
    }

    /// `{0} × S2`.
    pub fn right_axis(&self) -> ElemSet {
        (0..self.right.len()).map(|r| self.index_of(0, r)).collect()
    }

    pub fn project_left(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|i| self.pair_of(i).0).collect()
    }

    pub fn project_right(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|i| self.pair_of(i).1).collect()
    }

    /// `A × B` as a subset of the product.
    pub fn product_set(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        a.iter()
            .flat_map(|l| b.iter().map(move |r| (l, r)))
            .map(|(l, r)| self.index_of(l, r))
            .collect()
    }
}

pub fn direct_product(s1: &FiniteSemiring, s2: &FiniteSemiring) -> Result<ProductSemiring> {
    let (n1, n2) = (s1.len(), s2.len());
    let n = n1 * n2;
    if n > CAPACITY {
        return Err(Error::Capacity(n));
    }
    let names = (0..n)
        .map(|i| format!("({}|{})", s1.element_name(i / n2), s2.element_name(i % n2)))
        .collect();
    let base = FiniteSemiring::from_fns(
        format!("{}x{}", s1.name(), s2.name()),
        names,
        0,
        |i, j| s1.add(i / n2, j / n2) * n2 + s2.add(i % n2, j % n2),
        |i, j| s1.mul(i / n2, j / n2) * n2 + s2.mul(i % n2, j % n2),
    )?;
    Ok(ProductSemiring {
        base,
        left: s1.clone(),
        right: s2.clone(),
    })
}

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 7] = ["R2", "R4", "D2", "D3", "S8", "Z2F", "Z3F"];

/// Addition of the 8-element zero-semiring on `{0,a,b,c,d,e,f,g}`.
const S8_ADD: [&str; 8] = [
    "0abcdefg", "abc0efgd", "bc0afgde", "c0abgdef", "defgdefg", "efgdefgd", "fgdefgde", "gdefgdef",
];

/// Addition of the Klein four-group on `{0,a,b,c}`.
const KLEIN_ADD: [&str; 4] = ["0abc", "a0cb", "bc0a", "cba0"];

/// A zero-semiring whose addition is given row by row, one char per element.
fn zero_semiring(name: &str, elems: &str, add_rows: &[&str]) -> Result<FiniteSemiring> {
    let names: Vec<String> = elems.chars().map(String::from).collect();
    let pos = |c: char| elems.find(c).expect("table uses declared elements");
    let add: Vec<Vec<usize>> = add_rows.iter().map(|r| r.chars().map(pos).collect()).collect();
    FiniteSemiring::from_fns(name, names, 0, |i, j| add[i][j], |_, _| 0)
}

/// The catalog of small algebras: zero-rings `R2`, `R4`, chains `D2`, `D3`,
/// the 8-element zero-semiring `S8`, and the prime fields `Z2F`, `Z3F`.
pub fn builtin(name: &str) -> Result<FiniteSemiring> {
    let chain = |name: &str, elems: &[&str]| {
        FiniteSemiring::from_fns(
            name,
            elems.iter().map(|s| s.to_string()).collect(),
            0,
            |i, j| i.max(j),
            |i, j| i.min(j),
        )
    };
    let field = |name: &str, p: usize| {
        FiniteSemiring::from_fns(
            name,
            (0..p).map(|i| i.to_string()).collect(),
            0,
            |i, j| (i + j) % p,
            |i, j| (i * j) % p,
        )
    };
    match name {
        "R2" => FiniteSemiring::from_fns("R2", vec!["0".into(), "1".into()], 0, |i, j| i ^ j, |_, _| 0),
        "R4" => zero_semiring("R4", "0abc", &KLEIN_ADD),
        "D2" => chain("D2", &["0", "1"]),
        "D3" => chain("D3", &["0", "a", "1"]),
        "S8" => zero_semiring("S8", "0abcdefg", &S8_ADD),
        "Z2F" => field("Z2F", 2),
        "Z3F" => field("Z3F", 3),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn rows(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|r| strings(r)).collect()
    }

    #[test]
    fn d2_tables_are_valid() {
        let report = verify_axioms(
            &strings(&["0", "1"]),
            &rows(&[&["0", "1"], &["1", "1"]]),
            &rows(&[&["0", "0"], &["0", "1"]]),
            "0",
        )
        .unwrap();
        assert!(report.valid());
    }

    #[test]
    fn s8_table_is_valid_zero_semiring() {
        let names = strings(&["0", "a", "b", "c", "d", "e", "f", "g"]);
        let add: Vec<Vec<String>> = S8_ADD.iter().map(|r| r.chars().map(String::from).collect()).collect();
        let mul = vec![vec!["0".to_string(); 8]; 8];
        assert!(verify_axioms(&names, &add, &mul, "0").unwrap().valid());
    }

    #[test]
    fn distributivity_failure_is_named() {
        // Z3 addition with every non-zero product equal to 1: (1+1)*1 = 1 but 1*1+1*1 = 2.
        let names = strings(&["0", "1", "2"]);
        let add = rows(&[&["0", "1", "2"], &["1", "2", "0"], &["2", "0", "1"]]);
        let mul = rows(&[&["0", "0", "0"], &["0", "1", "1"], &["0", "1", "1"]]);
        let report = verify_axioms(&names, &add, &mul, "0").unwrap();
        assert!(!report.valid());
        assert_eq!(report.violations.len(), 1);
        let v = report.violation(Axiom::Distributive).unwrap();
        assert_eq!(v.witness, vec![1, 1, 1]);
        assert!(matches!(
            FiniteSemiring::from_tables("bad", &names, &add, &mul, "0"),
            Err(Error::Axioms(_))
        ));
    }

    #[test]
    fn format_errors_are_distinct_from_axioms() {
        let add = rows(&[&["0", "1"], &["1", "1"]]);
        let mul = rows(&[&["0", "0"], &["0", "1"]]);
        assert_eq!(
            verify_axioms(&strings(&["0", "0"]), &add, &mul, "0"),
            Err(FormatError::DuplicateName("0".into()))
        );
        assert_eq!(
            verify_axioms(&strings(&["0", "1"]), &add, &mul, "z"),
            Err(FormatError::UnknownZero("z".into()))
        );
        let bad = rows(&[&["0", "1"], &["1", "q"]]);
        assert!(matches!(
            verify_axioms(&strings(&["0", "1"]), &bad, &mul, "0"),
            Err(FormatError::UnknownEntry { row: 1, col: 1, .. })
        ));
        assert!(matches!(
            verify_axioms(&strings(&["0", "1"]), &add[..1], &mul, "0"),
            Err(FormatError::RowCount { .. })
        ));
    }

    #[test]
    fn zero_is_moved_to_front() {
        // D2 declared with the zero last.
        let s = FiniteSemiring::from_str_tables(
            "D2'",
            &["1", "0"],
            &[&["1", "1"], &["1", "0"]],
            &[&["1", "0"], &["0", "0"]],
            "0",
        )
        .unwrap();
        assert_eq!(s.names(), &["0".to_string(), "1".to_string()]);
        assert_eq!(s.declared_index(), &[1, 0]);
        assert_eq!(
            s,
            FiniteSemiring {
                name: "D2'".into(),
                ..builtin("D2").unwrap()
            }
            .with_declared(vec![1, 0])
        );
        assert_eq!(is_unitary(&s), Some(1));
    }

    impl FiniteSemiring {
        fn with_declared(mut self, d: Vec<usize>) -> Self {
            self.declared_index = d;
            self
        }
    }

    #[test]
    fn units_and_idempotence() {
        let b = |n| builtin(n).unwrap();
        assert_eq!(is_unitary(&b("D2")), Some(1));
        assert_eq!(is_unitary(&b("R2")), None);
        assert_eq!(is_unitary(&b("R4")), None);
        assert_eq!(is_unitary(&b("Z2F")), Some(1));
        assert!(is_idempotent(&b("D3")));
        assert!(!is_idempotent(&b("R2")));
        assert!(!is_idempotent(&b("S8")));
        assert!(is_idempotent(&b("Z2F")));
        assert!(!is_idempotent(&b("Z3F")));
        assert!(is_field(&b("Z2F")) && is_field(&b("Z3F")));
        assert!(!is_field(&b("D2")) && !is_field(&b("R2")));
    }

    #[test]
    fn r4_is_klein_group() {
        let r4 = builtin("R4").unwrap();
        for (i, row) in KLEIN_ADD.iter().enumerate() {
            for (j, c) in row.chars().enumerate() {
                assert_eq!(r4.element_name(r4.add(i, j)), c.to_string());
            }
        }
    }

    #[test]
    fn products_of_builtins() {
        let r2d2 = direct_product(&builtin("R2").unwrap(), &builtin("D2").unwrap()).unwrap();
        assert_eq!(r2d2.base.len(), 4);
        assert_eq!(r2d2.base.element_name(0), "(0|0)");
        assert_eq!(r2d2.base.element_name(3), "(1|1)");
        let r4d2 = direct_product(&builtin("R4").unwrap(), &builtin("D2").unwrap()).unwrap();
        assert_eq!(r4d2.base.len(), 8);
        let s8 = builtin("S8").unwrap();
        let s8s8 = direct_product(&s8, &s8).unwrap();
        assert_eq!(s8s8.base.len(), 64);
        let d2 = builtin("D2").unwrap();
        assert!(matches!(direct_product(&s8s8.base, &d2), Err(Error::Capacity(128))));
    }

    #[test]
    fn subsemiring_restricts_tables() {
        let d3 = builtin("D3").unwrap();
        let sub = d3.subsemiring(ElemSet::from_indices([0, 2]), "D2").unwrap();
        assert_eq!(sub.names(), &["0".to_string(), "1".to_string()]);
        assert_eq!(is_unitary(&sub), Some(1));
        assert!(d3.subsemiring(ElemSet::from_indices([1, 2]), "x").is_err());
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("Q"), Err(Error::UnknownBuiltin(_))));
    }
}
