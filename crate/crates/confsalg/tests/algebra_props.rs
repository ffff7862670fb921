//! Property tests for reduced algebras: grading bookkeeping, P ⇔ H on
//! mutated algebras, the Clifford action on V and A, the V∧V form and
//! ideal closures.

use std::sync::OnceLock;

use proptest::prelude::*;

use confsalg::algebra::{Element, ReducedAlgebra, Subspace};
use confsalg::catalog::{self, CatalogName};
use confsalg::scalar::Scalar;

fn n4_zero() -> &'static ReducedAlgebra {
    static R: OnceLock<ReducedAlgebra> = OnceLock::new();
    R.get_or_init(|| catalog::build(CatalogName::N4Alpha, Some(&Scalar::zero())).unwrap())
}

fn n4_one() -> &'static ReducedAlgebra {
    static R: OnceLock<ReducedAlgebra> = OnceLock::new();
    R.get_or_init(|| catalog::build(CatalogName::N4Alpha, Some(&Scalar::one())).unwrap())
}

fn k3() -> &'static ReducedAlgebra {
    static R: OnceLock<ReducedAlgebra> = OnceLock::new();
    R.get_or_init(|| catalog::build(CatalogName::K3, None).unwrap())
}

/// Multiplies the `t`-th stored term of the `e`-th stored product by `c`.
fn mutate(r: &ReducedAlgebra, e: usize, t: usize, c: &Scalar) -> ReducedAlgebra {
    let entries: Vec<_> = r.product_entries().into_iter().filter(|(_, _, _, x)| !x.is_zero()).collect();
    let (n, a, b, x) = &entries[e % entries.len()];
    let terms: Vec<_> = x.iter().map(|(k, v)| (*k, v.clone())).collect();
    let (k, v) = &terms[t % terms.len()];
    let changed = x.add_scaled(&(v.clone() * (c.clone() - Scalar::one())), &Element::basis(*k));
    r.with_entry(*n, *a, *b, changed).unwrap()
}

fn apply_rho(r: &ReducedAlgebra, u: &Element, x: &Element) -> Element {
    r.circ(u, x).add(&r.bullet(u, x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn p_and_h_agree_on_mutations(e in 0usize..10_000, t in 0usize..8, c in prop::sample::select(vec![-1i64, 0, 2, 3])) {
        for r in [k3(), n4_zero()] {
            let m = mutate(r, e, t, &Scalar::from_int(c));
            let p = m.check_p_axioms(4, 4).passed();
            let h = m.check_h_axioms().unwrap().passed();
            prop_assert_eq!(p, h);
        }
    }

    #[test]
    fn wrong_weight_products_are_rejected(a in 0usize..16, b in 0usize..16, k in 0usize..16) {
        let r = n4_zero();
        let (a, b, k) = (a % r.dim(), b % r.dim(), k % r.dim());
        // ⟨a 0 b⟩ has weight Δa + Δb − 1 and parity p(a) + p(b).
        let expected_w = r.weight(a) + r.weight(b) - confsalg::algebra::Weight::from_integer(1);
        let expected_p = r.parity(a).add(r.parity(b));
        let ok = r.weight(k) == expected_w && r.parity(k) == expected_p;
        let res = r.with_entry(0, a, b, Element::basis(k));
        if !ok {
            prop_assert!(res.is_err());
        }
    }

    #[test]
    fn ideal_closure_is_idempotent_monotone_and_ideal(
        picks in prop::collection::vec((0usize..16, -2i64..=2), 1..4),
        extra in 0usize..16,
    ) {
        for r in [n4_one(), n4_zero()] {
            let gens: Vec<Element> = picks
                .iter()
                .map(|(k, c)| Element::basis(*k % r.dim()).add_scaled(&Scalar::from_int(*c), &Element::basis((*k + 1) % r.dim())))
                .collect();
            let s = Subspace::spanned_by(gens.iter());
            let mut bigger_gens = gens.clone();
            bigger_gens.push(Element::basis(extra % r.dim()));
            let t = Subspace::spanned_by(bigger_gens.iter());
            let cs = r.ideal_closure(&s);
            prop_assert!(r.is_ideal(&cs));
            prop_assert_eq!(r.ideal_closure(&cs), cs.clone());
            prop_assert!(s.is_subspace_of(&cs));
            prop_assert!(cs.is_subspace_of(&r.ideal_closure(&t)));
        }
    }
}

#[test]
fn simple_algebras_are_generated_by_any_basis_vector() {
    for n in CatalogName::ALL {
        let r = catalog::build(n, None).unwrap();
        if n == CatalogName::N4Alpha || !r.is_simple_physical().unwrap().simple {
            continue;
        }
        for k in 0..r.dim() {
            let c = r.ideal_closure(&Subspace::spanned_by([Element::basis(k)].iter()));
            assert_eq!(c.dim(), r.dim(), "{n}: closure of {}", r.id(k));
        }
    }
}

#[test]
fn clifford_action_squares_to_the_form_on_v_and_a() {
    for n in [CatalogName::K3, CatalogName::S2, CatalogName::W2, CatalogName::N4, CatalogName::CK6] {
        let r = catalog::build(n, None).unwrap();
        let vs = r.v_indices();
        let targets: Vec<usize> = (0..r.dim())
            .filter(|&k| r.weight(k) == confsalg::algebra::w_v() || r.weight(k) == confsalg::algebra::w_a())
            .collect();
        // Null basis vectors and non-null sums u = D + D̄ with (u, u) = 2.
        let mut us: Vec<Element> = vs.iter().map(|&k| Element::basis(k)).collect();
        for w in vs.chunks(2).filter(|w| w.len() == 2) {
            us.push(Element::basis(w[0]).add(&Element::basis(w[1])));
        }
        for u in &us {
            let uu = r.inner_product_v(u, u).unwrap();
            for &k in &targets {
                let x = Element::basis(k);
                let twice = apply_rho(&r, u, &apply_rho(&r, u, &x));
                assert_eq!(twice, x.scale(&uu), "{n}: u = {}, x = {}", r.show(u), r.id(k));
            }
        }
    }
}

#[test]
fn v_wedge_v_form_is_symmetric_and_swap_invariant() {
    let src = catalog::build(CatalogName::N4Alpha, None).unwrap();
    let dst = src.substitute_alpha(&-Scalar::alpha()).unwrap();
    for r in [&src, &dst] {
        let (m, _) = r.form_v_wedge_v().unwrap();
        assert!(m.is_symmetric());
    }
    let f = catalog::n4_swap_map(&src, &dst).unwrap();
    let vs = src.v_indices();
    let fv: Vec<Element> = vs.iter().map(|&k| f[k].clone()).collect();
    let ev: Vec<Element> = vs.iter().map(|&k| Element::basis(k)).collect();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    assert_eq!(
                        dst.wedge_form(&fv[a], &fv[b], &fv[c], &fv[d]).unwrap(),
                        src.wedge_form(&ev[a], &ev[b], &ev[c], &ev[d]).unwrap()
                    );
                }
            }
        }
    }
}
