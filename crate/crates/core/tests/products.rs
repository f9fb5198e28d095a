mod common;

use common::*;
use proptest::prelude::*;
use semiring_lab::congruences::{enumerate_congruences, is_congruence, principal_congruence};
use semiring_lab::ideals::enumerate_ideals;
use semiring_lab::products::*;
use semiring_lab::semiring::ProductSemiring;
use semiring_lab::{Congruence, ElemSet};

fn theorem_products() -> Vec<ProductSemiring> {
    vec![
        product("R2", "D2"),
        product("R2", "R2"),
        product("D2", "D2"),
        product("D2", "D3"),
        product("R4", "D2"),
        product("D2", "R4"),
        product("D3", "R2"),
        product("Z2F", "R2"),
        product("R2", "Z3F"),
        product("S8", "Z2F"),
    ]
}

#[test]
fn theorem1_chain_on_every_ideal() {
    for ctx in theorem_products() {
        let audit = audit_theorem1(&ctx).unwrap();
        assert_eq!(audit.rows.len(), enumerate_ideals(&ctx.base).len());
    }
}

#[test]
fn skew_sets_of_r4_d2() {
    let ctx = product("R4", "D2");
    let as_names = |set: ElemSet| {
        let mut v: Vec<String> = set.iter().map(|e| ctx.base.element_name(e).to_string()).collect();
        v.sort();
        v
    };
    let mut got: Vec<Vec<String>> = skew_ideals(&ctx).into_iter().map(as_names).collect();
    let mut expected: Vec<Vec<String>> = [
        "{(0|0),(0|1),(a|1)}",
        "{(0|0),(0|1),(b|1)}",
        "{(0|0),(0|1),(c|1)}",
        "{(0|0),(0|1),(a|1),(b|1),(c|1)}",
        "{(0|0),(0|1),(a|0),(a|1),(b|1),(c|1)}",
        "{(0|0),(0|1),(b|0),(a|1),(b|1),(c|1)}",
        "{(0|0),(0|1),(c|0),(a|1),(b|1),(c|1)}",
    ]
    .iter()
    .map(|r| {
        let mut v: Vec<String> = r[1..r.len() - 1].split(',').map(String::from).collect();
        v.sort();
        v
    })
    .collect();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    let audit = audit_theorem1(&ctx).unwrap();
    let small = named(&ctx.base, &["(0|0)", "(0|1)", "(a|1)"]);
    assert!(audit.strictness_witnesses.iter().any(|&k| audit.rows[k].set == small));
}

#[test]
fn kernel_theorems_hold_exhaustively() {
    for ctx in theorem_products().into_iter().filter(|c| c.base.len() <= 8) {
        let audit = audit_kernels(&ctx).unwrap();
        assert_eq!(
            audit.congruences,
            congruences_by_partition_filter(&ctx.base),
            "{}",
            ctx.base.name()
        );
    }
}

#[test]
fn idempotent_products_have_strong_kernels() {
    for (l, r) in [("D2", "D3"), ("D2", "D2"), ("D3", "Z2F")] {
        let ctx = product(l, r);
        for theta in enumerate_congruences(&ctx.base) {
            assert!(kernel_strongly_decomposable(&ctx, &theta).holds);
            assert!(theorem4_sufficient(&ctx, &theta).holds());
        }
    }
}

/// Direct test of (equ2) on Cg((0,0),(1,1)) in R2 x D2, compared with the
/// kernel computed from the partition oracle.
#[test]
fn r2_d2_principal_kernel() {
    let ctx = product("R2", "D2");
    let (zero, one_one) = (ctx.base.index_of("(0|0)").unwrap(), ctx.base.index_of("(1|1)").unwrap());
    let theta = principal_congruence(&ctx.base, zero, one_one);
    let oracle = congruences_by_partition_filter(&ctx.base)
        .into_iter()
        .filter(|c| c.related(zero, one_one))
        .min_by_key(|c| std::cmp::Reverse(c.num_blocks()))
        .unwrap();
    assert_eq!(theta, oracle);
    let k = theta.kernel();
    let mut equ2 = true;
    for x in k {
        for y in k {
            let (a, _) = ctx.pair_of(x);
            let (_, d) = ctx.pair_of(y);
            equ2 &= k.contains(ctx.index_of(a, d));
        }
    }
    assert_eq!(kernel_directly_decomposable(&ctx, &theta).holds, equ2);
}

#[test]
fn projections_are_congruences_on_factors() {
    for ctx in builtin_products(16) {
        for theta in enumerate_congruences(&ctx.base) {
            let proj = ProjectionPair::new(&ctx, &theta);
            assert!(is_congruence(&ctx.left, &proj.theta_left));
            assert!(is_congruence(&ctx.right, &proj.theta_right));
            assert_eq!(proj.raw_transitive, (true, true), "{}", theta.render(&ctx.base));
            assert_eq!(proj.zero_class_left, proj.theta_left.kernel());
            assert_eq!(proj.pi_left.meet(&proj.pi_right), Congruence::identity(ctx.base.len()));
        }
    }
}

#[test]
fn product_congruences_have_product_kernels() {
    for ctx in [product("D3", "R4"), product("R2", "D2"), product("Z3F", "D2")] {
        for l in enumerate_congruences(&ctx.left) {
            for r in enumerate_congruences(&ctx.right) {
                let theta = product_congruence(&ctx, &l, &r);
                assert!(is_congruence(&ctx.base, &theta));
                assert_eq!(theta.kernel(), ctx.product_set(l.kernel(), r.kernel()));
                assert!(kernel_strongly_decomposable(&ctx, &theta).holds);
            }
        }
    }
}

#[test]
fn corollary_and_field_cases() {
    for (l, r) in [("D2", "D2"), ("D2", "D3"), ("Z2F", "Z2F"), ("Z2F", "D2")] {
        match corollary_decomposability_check(&product(l, r)) {
            CorollaryOutcome::Checked { no_skew_ideals, .. } => assert!(no_skew_ideals),
            CorollaryOutcome::Inapplicable => panic!("{l}x{r} should satisfy a hypothesis"),
        }
    }
    for s in ["R2", "R4", "S8", "D3", "Z3F"] {
        for f in ["Z2F", "Z3F"] {
            let outcome = field_proposition_check(&b(s), &b(f)).unwrap();
            assert!(outcome.holds(), "{s} x {f}");
        }
    }
}

#[test]
fn strictness_requires_non_ring() {
    // With additive inverses, (ii) and (iii) coincide.
    for ctx in [product("R2", "R2"), product("R4", "Z2F"), product("Z2F", "Z3F")] {
        assert!(audit_theorem1(&ctx).unwrap().strictness_witnesses.is_empty());
    }
}

proptest! {
    /// Random subsets closed up to ideals of R4 x D2 obey the chain too.
    #[test]
    fn generated_ideals_satisfy_chain(mask in 0u64..256) {
        let ctx = product("R4", "D2");
        let ideal = semiring_lab::ideals::ideal_generated_by(&ctx.base, ElemSet::from_bits(mask));
        let i = t1_condition_i(&ctx, ideal).is_some();
        prop_assert_eq!(i, t1_condition_iii(&ctx, ideal));
        prop_assert!(!i || t1_condition_iv(&ctx, ideal));
        prop_assert!(!t1_condition_iv(&ctx, ideal) || t1_condition_ii(&ctx, ideal));
    }
}
