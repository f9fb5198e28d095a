//! Direct decomposability of ideals and congruence kernels of `S1 × S2`.
//!
//! Every condition is evaluated literally on enumerated sets and relations.
//! The audits then cross-check the conditions against each other, so each
//! implication or equivalence compares two independent computations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::congruences::{enumerate_congruences, Congruence, UnionFind};
use crate::elemset::{ElemSet, IdealSet, KernelSet};
use crate::error::{Error, Result};
use crate::ideals::{enumerate_ideals, sum_set};
use crate::semiring::{direct_product, is_field, is_idempotent, is_unitary, FiniteSemiring, ProductSemiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    T1I,
    T1Ii,
    T1Iii,
    T1Iv,
    T2Strong,
    T3Direct,
    T4Sufficient,
}

impl Condition {
    pub const IDEAL: [Condition; 4] = [Condition::T1I, Condition::T1Ii, Condition::T1Iii, Condition::T1Iv];
    pub const KERNEL: [Condition; 3] = [Condition::T2Strong, Condition::T3Direct, Condition::T4Sufficient];

    pub fn name(self) -> &'static str {
        match self {
            Condition::T1I => "T1.i",
            Condition::T1Ii => "T1.ii",
            Condition::T1Iii => "T1.iii",
            Condition::T1Iv => "T1.iv",
            Condition::T2Strong => "T2.strong",
            Condition::T3Direct => "T3.direct",
            Condition::T4Sufficient => "T4.sufficient",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Product elements explaining why a condition is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn render(&self, ctx: &ProductSemiring) -> String {
        let names: Vec<&str> = self.elements.iter().map(|&i| ctx.base.element_name(i)).collect();
        format!("{}: {}", self.condition, names.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    /// Index into the canonical ideal list.
    Ideal(usize),
    /// Index into the canonical congruence list.
    Congruence(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Ideal(i) => write!(f, "I{i}"),
            Subject::Congruence(i) => write!(f, "C{i}"),
        }
    }
}

/// One audited ideal or kernel.
#[derive(Debug, Clone)]
pub struct DecompositionVerdict {
    pub subject: Subject,
    /// The ideal, or the kernel `[(0,0)]Θ`.
    pub set: ElemSet,
    pub conditions: BTreeMap<Condition, bool>,
    /// One witness per false condition that has one.
    pub witnesses: Vec<Witness>,
    /// `(π1, π2)` of the set when it equals their product.
    pub factors: Option<(ElemSet, ElemSet)>,
}

impl DecompositionVerdict {
    pub fn get(&self, c: Condition) -> Option<bool> {
        self.conditions.get(&c).copied()
    }

    /// Panics if `c` was not evaluated for this subject.
    pub fn flag(&self, c: Condition) -> bool {
        self.conditions[&c]
    }
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

/// First `(a,b) ∈ I` with `(a,0) ∉ I` or `(0,b) ∉ I`.
pub fn t1_iii_violation(ctx: &ProductSemiring, ideal: IdealSet) -> Option<usize> {
    ideal.iter().find(|&x| {
        let (a, b) = ctx.pair_of(x);
        !ideal.contains(ctx.index_of(a, 0)) || !ideal.contains(ctx.index_of(0, b))
    })
}

pub fn t1_condition_iii(ctx: &ProductSemiring, ideal: IdealSet) -> bool {
    t1_iii_violation(ctx, ideal).is_none()
}

/// `(π1(I), π2(I))` when `π1(I) × π2(I) = I`.
pub fn t1_condition_i(ctx: &ProductSemiring, ideal: IdealSet) -> Option<(IdealSet, IdealSet)> {
    let (p1, p2) = (ctx.project_left(ideal), ctx.project_right(ideal));
    (ctx.product_set(p1, p2) == ideal).then_some((p1, p2))
}

fn t1_i_violation(ctx: &ProductSemiring, ideal: IdealSet) -> Option<usize> {
    let hull = ctx.product_set(ctx.project_left(ideal), ctx.project_right(ideal));
    hull.difference(ideal).iter().next()
}

/// First element of `(S1×{0}) ∩ (({0}×S2) + I)` or of
/// `((S1×{0}) + I) ∩ ({0}×S2)` lying outside `I`.
pub fn t1_ii_violation(ctx: &ProductSemiring, ideal: IdealSet) -> Option<usize> {
    let (left, right) = (ctx.left_axis(), ctx.right_axis());
    let first = left.intersection(sum_set(&ctx.base, right, ideal));
    let second = sum_set(&ctx.base, left, ideal).intersection(right);
    first
        .difference(ideal)
        .iter()
        .next()
        .or_else(|| second.difference(ideal).iter().next())
}

pub fn t1_condition_ii(ctx: &ProductSemiring, ideal: IdealSet) -> bool {
    t1_ii_violation(ctx, ideal).is_none()
}

/// First element of the symmetric difference between
/// `((S1×{0}) + I) ∩ (({0}×S2) + I)` and `I`.
pub fn t1_iv_violation(ctx: &ProductSemiring, ideal: IdealSet) -> Option<usize> {
    let lhs = sum_set(&ctx.base, ctx.left_axis(), ideal).intersection(sum_set(&ctx.base, ctx.right_axis(), ideal));
    lhs.difference(ideal).union(ideal.difference(lhs)).iter().next()
}

pub fn t1_condition_iv(ctx: &ProductSemiring, ideal: IdealSet) -> bool {
    t1_iv_violation(ctx, ideal).is_none()
}

/// Ideals that are not a product of factor ideals, in canonical order.
pub fn skew_ideals(ctx: &ProductSemiring) -> Vec<IdealSet> {
    enumerate_ideals(&ctx.base)
        .into_iter()
        .filter(|&i| t1_condition_i(ctx, i).is_none())
        .collect()
}

pub fn ideal_verdict(ctx: &ProductSemiring, index: usize, ideal: IdealSet) -> DecompositionVerdict {
    let checks = [
        (Condition::T1I, t1_i_violation(ctx, ideal)),
        (Condition::T1Ii, t1_ii_violation(ctx, ideal)),
        (Condition::T1Iii, t1_iii_violation(ctx, ideal)),
        (Condition::T1Iv, t1_iv_violation(ctx, ideal)),
    ];
    DecompositionVerdict {
        subject: Subject::Ideal(index),
        set: ideal,
        conditions: checks.iter().map(|(c, w)| (*c, w.is_none())).collect(),
        witnesses: checks
            .iter()
            .filter_map(|(c, w)| {
                w.map(|x| Witness {
                    condition: *c,
                    elements: vec![x],
                })
            })
            .collect(),
        factors: t1_condition_i(ctx, ideal),
    }
}

#[derive(Debug, Clone)]
pub struct Theorem1Audit {
    pub rows: Vec<DecompositionVerdict>,
    /// Row indices where (ii) holds but (iii) fails.
    pub strictness_witnesses: Vec<usize>,
}

impl Theorem1Audit {
    pub fn skew_count(&self) -> usize {
        self.rows.iter().filter(|r| !r.flag(Condition::T1I)).count()
    }
}

/// Verdicts for every ideal of the product. A row breaking
/// (iii) ⇔ (i) ⇒ (iv) ⇒ (ii) is reported as [`Error::Internal`].
pub fn audit_theorem1(ctx: &ProductSemiring) -> Result<Theorem1Audit> {
    let ideals = enumerate_ideals(&ctx.base);
    let rows: Vec<DecompositionVerdict> = ideals
        .par_iter()
        .enumerate()
        .map(|(k, &i)| ideal_verdict(ctx, k, i))
        .collect();
    let mut strictness_witnesses = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let [i, ii, iii, iv] = Condition::IDEAL.map(|c| row.flag(c));
        let factors_ok = row.factors.map_or(!i, |(a, b)| i && ctx.product_set(a, b) == row.set);
        if iii != i || (i && !iv) || (iv && !ii) || !factors_ok {
            return Err(Error::Internal(format!(
                "implication chain broken at ideal {}",
                ctx.base.render(row.set)
            )));
        }
        if ii && !iii {
            strictness_witnesses.push(k);
        }
    }
    Ok(Theorem1Audit {
        rows,
        strictness_witnesses,
    })
}

/// Hypotheses on the factors under which no ideal of the product is skew.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryCase {
    BothUnitary,
    UnitaryIdempotent,
    BothIdempotent,
}

impl fmt::Display for CorollaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorollaryCase::BothUnitary => "both factors unitary",
            CorollaryCase::UnitaryIdempotent => "one factor unitary, the other idempotent",
            CorollaryCase::BothIdempotent => "both factors idempotent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorollaryOutcome {
    Inapplicable,
    Checked { case: CorollaryCase, no_skew_ideals: bool },
}

pub fn corollary_case(s1: &FiniteSemiring, s2: &FiniteSemiring) -> Option<CorollaryCase> {
    let (u1, u2) = (is_unitary(s1).is_some(), is_unitary(s2).is_some());
    let (i1, i2) = (is_idempotent(s1), is_idempotent(s2));
    if u1 && u2 {
        Some(CorollaryCase::BothUnitary)
    } else if (u1 && i2) || (i1 && u2) {
        Some(CorollaryCase::UnitaryIdempotent)
    } else if i1 && i2 {
        Some(CorollaryCase::BothIdempotent)
    } else {
        None
    }
}

/// When one of the [`CorollaryCase`] hypotheses holds, checks that no ideal is skew.
pub fn corollary_decomposability_check(ctx: &ProductSemiring) -> CorollaryOutcome {
    match corollary_case(&ctx.left, &ctx.right) {
        None => CorollaryOutcome::Inapplicable,
        Some(case) => CorollaryOutcome::Checked {
            case,
            no_skew_ideals: skew_ideals(ctx).is_empty(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldOutcome {
    /// The second argument is not a field.
    Inapplicable,
    Checked {
        /// The field has exactly the ideals `{0}` and `F`.
        field_ideals_trivial: bool,
        /// Every ideal of `S × F` is directly decomposable.
        all_decomposable: bool,
    },
}

impl FieldOutcome {
    pub fn holds(&self) -> bool {
        matches!(
            self,
            FieldOutcome::Checked {
                field_ideals_trivial: true,
                all_decomposable: true
            }
        )
    }
}

pub fn field_proposition_check(s: &FiniteSemiring, f: &FiniteSemiring) -> Result<FieldOutcome> {
    if !is_field(f) {
        return Ok(FieldOutcome::Inapplicable);
    }
    let field_ideals = enumerate_ideals(f);
    let field_ideals_trivial = field_ideals == vec![ElemSet::singleton(f.zero()), f.universe()];
    let ctx = direct_product(s, f)?;
    Ok(FieldOutcome::Checked {
        field_ideals_trivial,
        all_decomposable: skew_ideals(&ctx).is_empty(),
    })
}

// ---------------------------------------------------------------------------
// Congruence kernels
// ---------------------------------------------------------------------------

/// `Π1`: pairs with equal first coordinate.
pub fn pi_left(ctx: &ProductSemiring) -> Congruence {
    let labels: Vec<usize> = (0..ctx.base.len()).map(|x| ctx.pair_of(x).0).collect();
    Congruence::from_labels(&labels)
}

/// `Π2`: pairs with equal second coordinate.
pub fn pi_right(ctx: &ProductSemiring) -> Congruence {
    let labels: Vec<usize> = (0..ctx.base.len()).map(|x| ctx.pair_of(x).1).collect();
    Congruence::from_labels(&labels)
}

/// `Θ1 × Θ2` on the product.
pub fn product_congruence(ctx: &ProductSemiring, left: &Congruence, right: &Congruence) -> Congruence {
    let labels: Vec<(u8, u8)> = (0..ctx.base.len())
        .map(|x| {
            let (a, b) = ctx.pair_of(x);
            (left.block_of()[a], right.block_of()[b])
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// The coordinate congruences `Π1, Π2` and the projections `πi(Θ)`.
#[derive(Debug, Clone)]
pub struct ProjectionPair {
    pub pi_left: Congruence,
    pub pi_right: Congruence,
    /// Equivalence generated by `π1(Θ)` on the left factor.
    pub theta_left: Congruence,
    pub theta_right: Congruence,
    /// Whether the projected relations were already transitive.
    pub raw_transitive: (bool, bool),
    /// `{a | (a, b) Θ (0, c) for some b, c}`: the 0-class of `π1(Θ)`.
    pub zero_class_left: ElemSet,
    /// `{e | (d, e) Θ (f, 0) for some d, f}`.
    pub zero_class_right: ElemSet,
}

impl ProjectionPair {
    pub fn new(ctx: &ProductSemiring, theta: &Congruence) -> Self {
        let n = ctx.base.len();
        let (n1, n2) = (ctx.left.len(), ctx.right.len());
        let mut rel_left = vec![vec![false; n1]; n1];
        let mut rel_right = vec![vec![false; n2]; n2];
        for x in 0..n {
            for y in (0..n).filter(|&y| theta.related(x, y)) {
                let ((a, b), (c, d)) = (ctx.pair_of(x), ctx.pair_of(y));
                rel_left[a][c] = true;
                rel_right[b][d] = true;
            }
        }
        let (theta_left, t1) = closure(&rel_left);
        let (theta_right, t2) = closure(&rel_right);
        let zero_class_left = (0..n1).filter(|&a| rel_left[a][0]).collect();
        let zero_class_right = (0..n2).filter(|&b| rel_right[b][0]).collect();
        ProjectionPair {
            pi_left: pi_left(ctx),
            pi_right: pi_right(ctx),
            theta_left,
            theta_right,
            raw_transitive: (t1, t2),
            zero_class_left,
            zero_class_right,
        }
    }
}

/// Equivalence closure of a reflexive symmetric relation, and whether the
/// relation was already transitive.
fn closure(rel: &[Vec<bool>]) -> (Congruence, bool) {
    let n = rel.len();
    let mut uf = UnionFind::new(n);
    for (a, row) in rel.iter().enumerate() {
        for (b, &r) in row.iter().enumerate() {
            if r {
                uf.union(a, b);
            }
        }
    }
    let eq = uf.into_congruence();
    let transitive = (0..n).all(|a| (0..n).all(|b| rel[a][b] == eq.related(a, b)));
    (eq, transitive)
}

/// Outcome of one kernel condition, paired with the set-level form it is
/// equivalent to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCheck {
    /// The quantified condition.
    pub holds: bool,
    /// The product-form equation for the kernel.
    pub product_form: bool,
    pub witness: Option<Witness>,
}

/// Direct decomposability: `(a,b),(c,d) ∈ [(0,0)]Θ ⇒ (a,d) ∈ [(0,0)]Θ`,
/// alongside `[(0,0)]Θ = π1([(0,0)]Θ) × π2([(0,0)]Θ)`.
pub fn kernel_directly_decomposable(ctx: &ProductSemiring, theta: &Congruence) -> KernelCheck {
    let k = theta.kernel();
    let mut witness = None;
    'search: for x in k {
        for y in k {
            let ((a, _), (_, d)) = (ctx.pair_of(x), ctx.pair_of(y));
            if !k.contains(ctx.index_of(a, d)) {
                witness = Some(Witness {
                    condition: Condition::T3Direct,
                    elements: vec![x, y],
                });
                break 'search;
            }
        }
    }
    let product_form = ctx.product_set(ctx.project_left(k), ctx.project_right(k)) == k;
    KernelCheck {
        holds: witness.is_none(),
        product_form,
        witness,
    }
}

/// Strong decomposability: `(a,b) Θ (0,c)` and `(d,e) Θ (f,0)` imply
/// `(a,e) Θ (0,0)`, alongside `[(0,0)]Θ = [0]Θ1 × [0]Θ2`.
pub fn kernel_strongly_decomposable(ctx: &ProductSemiring, theta: &Congruence) -> KernelCheck {
    let n = ctx.base.len();
    let k = theta.kernel();
    let left_axis = ctx.left_axis();
    let right_axis = ctx.right_axis();
    let mut witness = None;
    'search: for x in 0..n {
        for y in right_axis.iter().filter(|&y| theta.related(x, y)) {
            for u in 0..n {
                for w in left_axis.iter().filter(|&w| theta.related(u, w)) {
                    let (a, e) = (ctx.pair_of(x).0, ctx.pair_of(u).1);
                    if !k.contains(ctx.index_of(a, e)) {
                        witness = Some(Witness {
                            condition: Condition::T2Strong,
                            elements: vec![x, y, u, w],
                        });
                        break 'search;
                    }
                }
            }
        }
    }
    let proj = ProjectionPair::new(ctx, theta);
    let product_form = ctx.product_set(proj.zero_class_left, proj.zero_class_right) == k;
    KernelCheck {
        holds: witness.is_none(),
        product_form,
        witness,
    }
}

/// `[(0,0)]((Θ∨Π1)∩Π2) ⊆ [(0,0)]Θ` and `[(0,0)]((Θ∨Π2)∩Π1) ⊆ [(0,0)]Θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Check {
    pub first_inclusion: bool,
    pub second_inclusion: bool,
    pub witness: Option<Witness>,
}

impl Theorem4Check {
    pub fn holds(&self) -> bool {
        self.first_inclusion && self.second_inclusion
    }
}

pub fn theorem4_sufficient(ctx: &ProductSemiring, theta: &Congruence) -> Theorem4Check {
    let (p1, p2) = (pi_left(ctx), pi_right(ctx));
    let k = theta.kernel();
    let first: KernelSet = theta.join(&p1).meet(&p2).kernel();
    let second: KernelSet = theta.join(&p2).meet(&p1).kernel();
    let outside = first.difference(k).union(second.difference(k));
    Theorem4Check {
        first_inclusion: first.is_subset(k),
        second_inclusion: second.is_subset(k),
        witness: outside.iter().next().map(|x| Witness {
            condition: Condition::T4Sufficient,
            elements: vec![x],
        }),
    }
}

pub fn kernel_verdict(
    ctx: &ProductSemiring,
    index: usize,
    theta: &Congruence,
) -> (DecompositionVerdict, KernelCheck, KernelCheck) {
    let strong = kernel_strongly_decomposable(ctx, theta);
    let direct = kernel_directly_decomposable(ctx, theta);
    let t4 = theorem4_sufficient(ctx, theta);
    let k = theta.kernel();
    let verdict = DecompositionVerdict {
        subject: Subject::Congruence(index),
        set: k,
        conditions: [
            (Condition::T2Strong, strong.holds),
            (Condition::T3Direct, direct.holds),
            (Condition::T4Sufficient, t4.holds()),
        ]
        .into_iter()
        .collect(),
        witnesses: [&strong.witness, &direct.witness, &t4.witness]
            .into_iter()
            .flatten()
            .cloned()
            .collect(),
        factors: direct.product_form.then(|| (ctx.project_left(k), ctx.project_right(k))),
    };
    (verdict, strong, direct)
}

#[derive(Debug, Clone)]
pub struct KernelAudit {
    pub congruences: Vec<Congruence>,
    pub rows: Vec<DecompositionVerdict>,
}

/// Verdicts for the kernel of every congruence on the product.
///
/// Fails with [`Error::Internal`] if any of the following breaks on some
/// row: quantified strong condition ⇔ `[(0,0)]Θ = [0]Θ1 × [0]Θ2`;
/// (equ2) ⇔ product of projections; T4 ⇒ strong; strong ⇒ direct;
/// `πi([(0,0)]Θ) ⊆ [0]Θi`; `Π1 ∩ Π2 = Δ`.
pub fn audit_kernels(ctx: &ProductSemiring) -> Result<KernelAudit> {
    audit_kernels_of(ctx, enumerate_congruences(&ctx.base))
}

pub fn audit_kernels_of(ctx: &ProductSemiring, congruences: Vec<Congruence>) -> Result<KernelAudit> {
    if pi_left(ctx).meet(&pi_right(ctx)) != Congruence::identity(ctx.base.len()) {
        return Err(Error::Internal("Π1 ∩ Π2 is not the identity".into()));
    }
    let checked: Vec<Result<DecompositionVerdict>> = congruences
        .par_iter()
        .enumerate()
        .map(|(idx, theta)| {
            let (verdict, strong, direct) = kernel_verdict(ctx, idx, theta);
            let proj = ProjectionPair::new(ctx, theta);
            let k = theta.kernel();
            let fail = |what: &str| Err(Error::Internal(format!("{what} fails for {}", theta.render(&ctx.base))));
            if strong.holds != strong.product_form {
                return fail("strong-decomposability equivalence");
            }
            if direct.holds != direct.product_form {
                return fail("direct-decomposability equivalence");
            }
            if verdict.flag(Condition::T4Sufficient) && !strong.holds {
                return fail("sufficient-condition implication");
            }
            if strong.holds && !direct.holds {
                return fail("strong-implies-direct");
            }
            if !ctx.project_left(k).is_subset(proj.zero_class_left)
                || !ctx.project_right(k).is_subset(proj.zero_class_right)
            {
                return fail("projection inclusion");
            }
            Ok(verdict)
        })
        .collect();
    let rows = checked.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(KernelAudit { congruences, rows })
}

// ---------------------------------------------------------------------------
// CSV report
// ---------------------------------------------------------------------------

const CSV_HEADER: [&str; 11] = [
    "subject",
    "set",
    "T1.i",
    "T1.ii",
    "T1.iii",
    "T1.iv",
    "T2.strong",
    "T3.direct",
    "T4.sufficient",
    "witness",
    "factors",
];

/// One CSV line per audited ideal and kernel. Inapplicable flags are empty.
pub fn audit_csv(ctx: &ProductSemiring, rows: &[&DecompositionVerdict]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        let mut record = vec![row.subject.to_string(), ctx.base.render(row.set)];
        for c in Condition::IDEAL.iter().chain(Condition::KERNEL.iter()) {
            record.push(row.get(*c).map(|b| b.to_string()).unwrap_or_default());
        }
        record.push(
            row.witnesses
                .iter()
                .map(|w| w.render(ctx))
                .collect::<Vec<_>>()
                .join("; "),
        );
        record.push(
            row.factors
                .map(|(a, b)| format!("{} x {}", ctx.left.render(a), ctx.right.render(b)))
                .unwrap_or_default(),
        );
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::builtin;

    fn product(a: &str, b: &str) -> ProductSemiring {
        direct_product(&builtin(a).unwrap(), &builtin(b).unwrap()).unwrap()
    }

    fn set(ctx: &ProductSemiring, names: &[&str]) -> ElemSet {
        names.iter().map(|n| ctx.base.index_of(n).unwrap()).collect()
    }

    #[test]
    fn separating_ideal_of_r4_d2() {
        let ctx = product("R4", "D2");
        let i = set(&ctx, &["(0|0)", "(0|1)", "(a|1)"]);
        assert_eq!(t1_iii_violation(&ctx, i), ctx.base.index_of("(a|1)"));
        assert!(t1_condition_ii(&ctx, i));
        assert!(t1_condition_i(&ctx, i).is_none());
        // The two intersections displayed for this ideal.
        let (left, right) = (ctx.left_axis(), ctx.right_axis());
        assert_eq!(left.intersection(sum_set(&ctx.base, right, i)), set(&ctx, &["(0|0)"]));
        assert_eq!(
            sum_set(&ctx.base, left, i).intersection(right),
            set(&ctx, &["(0|0)", "(0|1)"])
        );
    }

    #[test]
    fn decomposable_ideals_have_factors() {
        let ctx = product("R4", "D2");
        let r4_zero = ctx.product_set(ctx.left.universe(), ElemSet::singleton(0));
        assert!(t1_condition_iii(&ctx, r4_zero));
        let i = set(&ctx, &["(0|0)", "(0|1)", "(a|0)", "(a|1)"]);
        let (a, b) = t1_condition_i(&ctx, i).unwrap();
        assert_eq!(ctx.left.render(a), "{0,a}");
        assert_eq!(b, ctx.right.universe());
        assert_eq!(
            t1_condition_i(&ctx, ElemSet::singleton(0)),
            Some((ElemSet::singleton(0), ElemSet::singleton(0)))
        );
        assert!(t1_condition_ii(&ctx, ctx.base.universe()) && t1_condition_iv(&ctx, ctx.base.universe()));
    }

    #[test]
    fn skew_counts() {
        assert_eq!(skew_ideals(&product("R2", "D2")).len(), 1);
        assert_eq!(skew_ideals(&product("R4", "D2")).len(), 7);
        assert!(skew_ideals(&product("D2", "D2")).is_empty());
    }

    #[test]
    fn corollary_cases() {
        assert_eq!(
            corollary_decomposability_check(&product("R2", "D2")),
            CorollaryOutcome::Inapplicable
        );
        assert_eq!(
            corollary_decomposability_check(&product("D2", "D3")),
            CorollaryOutcome::Checked {
                case: CorollaryCase::BothUnitary,
                no_skew_ideals: true
            }
        );
        assert_eq!(corollary_case(&builtin("S8").unwrap(), &builtin("D2").unwrap()), None);
        assert_eq!(
            corollary_case(&builtin("Z3F").unwrap(), &builtin("D2").unwrap()),
            Some(CorollaryCase::BothUnitary)
        );
    }

    #[test]
    fn field_checks() {
        let r2 = builtin("R2").unwrap();
        assert!(field_proposition_check(&r2, &builtin("Z2F").unwrap()).unwrap().holds());
        assert_eq!(
            field_proposition_check(&r2, &builtin("D2").unwrap()).unwrap(),
            FieldOutcome::Inapplicable
        );
    }

    #[test]
    fn trivial_congruences_decompose() {
        for (a, b) in [("R2", "D2"), ("R4", "D2"), ("D2", "D3")] {
            let ctx = product(a, b);
            let n = ctx.base.len();
            for theta in [Congruence::identity(n), Congruence::total(n)] {
                assert!(kernel_directly_decomposable(&ctx, &theta).holds);
                assert!(kernel_strongly_decomposable(&ctx, &theta).holds);
            }
            assert!(theorem4_sufficient(&ctx, &Congruence::total(n)).holds());
        }
    }

    #[test]
    fn product_congruence_kernel() {
        let ctx = product("D3", "D2");
        let l = crate::congruences::principal_congruence(&ctx.left, 0, 1);
        let r = Congruence::total(2);
        let theta = product_congruence(&ctx, &l, &r);
        assert!(crate::congruences::is_congruence(&ctx.base, &theta));
        assert_eq!(theta.kernel(), ctx.product_set(l.kernel(), r.kernel()));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let ctx = product("R2", "D2");
        let audit = audit_theorem1(&ctx).unwrap();
        let rows: Vec<_> = audit.rows.iter().collect();
        let text = audit_csv(&ctx, &rows);
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with("subject,set,T1.i,"));
    }
}
