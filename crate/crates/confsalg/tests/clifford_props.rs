//! Property tests for Clifford algebras on a null basis.

use proptest::prelude::*;

use confsalg::clifford::{CliffordAlgebra, CliffordElement};
use confsalg::scalar::Scalar;

/// A random sparse element of `Cl(V)` with `dim Cl(V) = 2^dim_v`.
fn element(dim_v: usize) -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((0usize..(1 << dim_v), -3i64..=3), 1..=5)
        .prop_map(|terms| CliffordElement::from_terms(terms.into_iter().map(|(w, c)| (w, Scalar::from_int(c)))))
}

fn triple() -> impl Strategy<Value = (usize, CliffordElement, CliffordElement, CliffordElement)> {
    (1usize..=8).prop_flat_map(|d| (Just(d), element(d), element(d), element(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_associative((d, x, y, z) in triple()) {
        let cl = CliffordAlgebra::new(d);
        prop_assert_eq!(cl.mul(&cl.mul(&x, &y), &z), cl.mul(&x, &cl.mul(&y, &z)));
    }

    #[test]
    fn generators_satisfy_clifford_relation(d in 1usize..=8, a in 0usize..8, b in 0usize..8) {
        let cl = CliffordAlgebra::new(d);
        let (a, b) = (a % d, b % d);
        let (u, v) = (cl.gen(a), cl.gen(b));
        // uv + vu = 2(u, v) with the convention v² = (v, v).
        let anti = cl.mul(&u, &v).add(&cl.mul(&v, &u));
        let two_form = Scalar::from_int(2) * cl.form(a, b);
        prop_assert_eq!(anti, cl.one().scale(&two_form));
    }
}

#[test]
fn modules_are_left_submodules_and_fill_the_algebra() {
    for d in 1..=8 {
        let cl = CliffordAlgebra::new(d);
        let mods = cl.module_decompose();
        let total: usize = mods.iter().map(|m| m.space.dim()).sum();
        assert_eq!(total, 1 << d, "dim V = {d}");
        for m in &mods {
            assert!(cl.is_left_submodule(&m.space), "dim V = {d}, {}", m.label());
        }
    }
}

#[test]
fn modules_are_irreducible_up_to_dim_six() {
    for d in 1..=6 {
        let cl = CliffordAlgebra::new(d);
        for m in cl.module_decompose() {
            assert!(cl.is_irreducible(&m), "dim V = {d}, {}", m.label());
        }
    }
}

#[test]
fn spinor_representation_is_faithful_in_even_dimension() {
    for d in [2, 4, 6] {
        assert!(CliffordAlgebra::new(d).spinor_rep_is_faithful().unwrap(), "dim V = {d}");
    }
}
