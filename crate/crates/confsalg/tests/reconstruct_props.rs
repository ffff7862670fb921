//! Property tests for the reconstructed algebra `K[∂]P`.

use std::sync::OnceLock;

use proptest::prelude::*;

use confsalg::algebra::{coeff_g, Element};
use confsalg::catalog::{self, CatalogName};
use confsalg::reconstruct::{DPolyElement, ModeSum, ReconstructedAlgebra};
use confsalg::scalar::Scalar;

fn n4() -> &'static ReconstructedAlgebra {
    static R: OnceLock<ReconstructedAlgebra> = OnceLock::new();
    R.get_or_init(|| ReconstructedAlgebra::new(catalog::build(CatalogName::N4, None).unwrap()))
}

fn w2() -> &'static ReconstructedAlgebra {
    static R: OnceLock<ReconstructedAlgebra> = OnceLock::new();
    R.get_or_init(|| ReconstructedAlgebra::new(catalog::build(CatalogName::W2, None).unwrap()))
}

fn basis(a: usize) -> DPolyElement {
    DPolyElement::term(0, a, Scalar::one())
}

/// `(−1)^{p(x)p(y)}` for basis vectors.
fn koszul(r: &ReconstructedAlgebra, a: usize, b: usize) -> Scalar {
    confsalg::algebra::koszul(r.parity_of(a), r.parity_of(b))
}

/// Applies the (C2) right-hand side to every `b₍ₖ₎a` appearing in the
/// (C2) right-hand side of `a₍ₙ₎b`.
fn c2_twice(r: &ReconstructedAlgebra, a: usize, b: usize, n: u32) -> DPolyElement {
    let p = r.reduced();
    let wsum = p.weight(a) + p.weight(b);
    let s = koszul(r, a, b);
    let mut out = DPolyElement::zero();
    let mut j = 0u32;
    while confsalg::algebra::Weight::from_integer((n + j) as i64 + 1) <= wsum {
        let inner = r.c2_rhs(&basis(b), &basis(a), n + j, &s, wsum);
        let mut c = -s.clone();
        if (n + j) % 2 == 1 {
            c = -c;
        }
        out = out.add_scaled(&c, &r.derive(&inner, j));
        j += 1;
    }
    out
}

fn dpoly() -> impl Strategy<Value = Vec<Element>> {
    prop::collection::vec(prop::collection::vec((0usize..16, -3i64..=3), 0..4), 1..5).prop_map(|parts| {
        parts
            .into_iter()
            .map(|terms| Element::from_terms(terms.into_iter().map(|(k, c)| (k, Scalar::from_int(c)))))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dpart_inverts_assembly(parts in dpoly()) {
        let x = DPolyElement::assemble(&parts);
        for (j, part) in parts.iter().enumerate() {
            prop_assert_eq!(&x.dpart(j as u32), part);
        }
        prop_assert!(x.dpart(parts.len() as u32).is_zero());
    }

    #[test]
    fn c2_is_an_involution(a in 0usize..16, b in 0usize..16, n in 0u32..=4) {
        let r = n4();
        prop_assert_eq!(c2_twice(r, a, b, n), r.full_product(&basis(a), &basis(b), n));
    }

    #[test]
    fn windowed_mode_antisymmetry(a in 0usize..12, b in 0usize..12, m in -5i64..=5, n in -5i64..=5) {
        prop_assert!(w2().antisymmetry_defect(a, m, b, n).is_zero());
    }
}

#[test]
fn j_parts_of_products_are_g_multiples_of_reduced_products() {
    for r in [n4(), w2()] {
        let p = r.reduced();
        for a in 0..p.dim() {
            for b in 0..p.dim() {
                for n in 0..=4u32 {
                    let prod = r.full_product(&basis(a), &basis(b), n);
                    assert_eq!(prod.dpart(0), p.product_n(&Element::basis(a), &Element::basis(b), n as usize));
                    for j in 0..=4u32 {
                        let reduced = p.product_n(&Element::basis(a), &Element::basis(b), (n + j) as usize);
                        let expected = reduced.scale(&coeff_g(p.weight(a), p.weight(b), n, j));
                        assert_eq!(prod.dpart(j), expected, "({} {n} {}) part {j}", p.id(a), p.id(b));
                    }
                }
            }
        }
    }
}

#[test]
fn virasoro_modes() {
    let r = ReconstructedAlgebra::new(catalog::build(CatalogName::Vir, None).unwrap());
    let l = r.reduced().l_index();
    for m in -5..=5i64 {
        for n in -5..=5i64 {
            let expected = ModeSum::term((l, m + n - 1), Scalar::from_int(m - n));
            assert_eq!(r.mode_bracket(l, m, l, n), expected, "[L({m}), L({n})]");
        }
    }
}
