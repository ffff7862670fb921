//! Catalog: dimensions against an independent Clifford-side count, axioms,
//! simplicity, isomorphisms, invariant signatures and the frozen golden files.
//!
//! Set `CONFSALG_BLESS=1` to rewrite the golden files from fresh solver output.

use std::path::PathBuf;

use confsalg::algebra::{Element, ReducedAlgebra, Weight};
use confsalg::catalog::{self, CatalogEntry, CatalogName, InvariantSignature};
use confsalg::clifford::CliffordAlgebra;
use confsalg::scalar::{Matrix, Poly, Scalar, TPoly};

fn build(n: CatalogName) -> ReducedAlgebra {
    catalog::build(n, None).unwrap()
}

fn n4a(a: i64) -> ReducedAlgebra {
    catalog::build(CatalogName::N4Alpha, Some(&Scalar::from_int(a))).unwrap()
}

/// Dimension of `Cl(V)` modulo the sum of the given `M(w)`, computed by
/// echelon rank on the Clifford side only.
fn clifford_image_dim(dim_v: usize, kernel: &[&[u8]]) -> usize {
    let cl = CliffordAlgebra::new(dim_v);
    let mut ker = confsalg::algebra::Subspace::zero();
    for w in kernel {
        for x in cl.submodule(w, None).space.basis() {
            ker.insert(&x);
        }
    }
    cl.dim() - ker.dim()
}

/// Weight split of a physical algebra of total dimension `total` with
/// `dim V = v`: the Clifford pairing gives `dim(KL ⊕ A) = dim(V ⊕ F)`.
fn split(total: usize, v: usize) -> Vec<(Weight, usize)> {
    let half = total / 2;
    let raw = [1, v, half - 1, half - v];
    let ws = [Weight::from_integer(2), Weight::new(3, 2), Weight::from_integer(1), Weight::new(1, 2)];
    ws.into_iter().zip(raw).filter(|(_, d)| *d > 0).collect()
}

#[test]
fn dimensions_match_independent_count() {
    // K_N: ker ι = 0, so the image is all of Cl(V).
    for (n, name) in [(1, CatalogName::K1), (2, CatalogName::K2), (3, CatalogName::K3)] {
        let total = clifford_image_dim(n, &[]);
        assert_eq!(total, 1 << n);
        let r = build(name);
        assert_eq!(r.dim(), total, "{name}");
    }
    let s2 = clifford_image_dim(4, &[&[0, 0], &[1, 1]]);
    assert_eq!(build(CatalogName::S2).weight_dims(), split(s2, 4));
    let n4 = clifford_image_dim(4, &[]);
    assert_eq!(build(CatalogName::N4Alpha).weight_dims(), split(n4, 4));
    assert_eq!(build(CatalogName::N4).weight_dims(), split(n4, 4));
    let ck6 = clifford_image_dim(6, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(ck6, 32);
    assert_eq!(build(CatalogName::CK6).weight_dims(), split(ck6, 6));
    // W2: S2 plus F = J⁰ (dim 2), paired by V•F into A.
    assert_eq!(build(CatalogName::W2).weight_dims(), split(s2 + 2 * 2, 4));
    assert_eq!(build(CatalogName::Vir).weight_dims(), vec![(Weight::from_integer(2), 1)]);
}

#[test]
fn entries_report_their_expected_dims() {
    for n in CatalogName::ALL {
        let e = CatalogEntry::new(n, None).unwrap();
        assert_eq!(e.build().unwrap().weight_dims(), e.expected_dims, "{n}");
    }
}

#[test]
fn construction_is_deterministic() {
    for n in [CatalogName::S2, CatalogName::W2, CatalogName::N4] {
        assert_eq!(build(n).to_json(), build(n).to_json(), "{n}");
    }
}

#[test]
fn every_entry_satisfies_p_and_h_axioms() {
    for n in CatalogName::ALL {
        let r = build(n);
        let p = r.check_p_axioms(4, 4);
        assert!(p.passed(), "{n}: P failures {}", p.total_failed());
        let h = r.check_h_axioms().unwrap();
        assert!(h.passed(), "{n}: H failures {}", h.total_failed());
    }
}

#[test]
fn simplicity_table() {
    for n in CatalogName::ALL {
        assert!(build(n).is_simple_physical().unwrap().simple, "{n}");
    }
    for a in [Scalar::zero(), Scalar::from_int(2), Scalar::from_frac(1, 2)] {
        let r = catalog::build(CatalogName::N4Alpha, Some(&a)).unwrap();
        assert!(r.is_simple_physical().unwrap().simple, "α = {a}");
    }
    for a in [1, -1] {
        let s = n4a(a).is_simple_physical().unwrap();
        assert!(!s.simple, "α = {a}");
        assert!(s.witness.is_some());
    }
}

#[test]
fn symbolic_simplicity_condition_is_one_minus_alpha_squared() {
    let c = build(CatalogName::N4Alpha).simplicity_condition().unwrap();
    assert!(c.generic);
    let one_minus_a2 = Poly::one().sub(&Poly::alpha().mul(&Poly::alpha()));
    assert_eq!(c.condition.monic(), one_minus_a2.monic());
}

#[test]
fn n4_is_simple_but_n4_one_is_not() {
    let n4 = build(CatalogName::N4);
    let n41 = n4a(1);
    assert!(n4.is_simple_physical().unwrap().simple);
    assert!(!n41.is_simple_physical().unwrap().simple);
    assert_ne!(
        catalog::invariant_signature(&n4).unwrap(),
        catalog::invariant_signature(&n41).unwrap()
    );
}

/// `((t−1)² − α²)(t² − (1+α)²)(t² − (1−α)²)`, the characteristic polynomial
/// of the block matrix read off the V∧V table by hand.
fn table_charpoly() -> TPoly {
    let a = TPoly::constant(Scalar::alpha());
    let one = TPoly::one();
    let t = TPoly::t();
    let sq = |p: &TPoly| p.mul(p);
    let f1 = sq(&t.sub(&one)).sub(&sq(&a));
    let f2 = sq(&t).sub(&sq(&one.add(&a)));
    let f3 = sq(&t).sub(&sq(&one.sub(&a)));
    f1.mul(&f2).mul(&f3)
}

#[test]
fn v_wedge_v_form_matches_table() {
    let r = build(CatalogName::N4Alpha);
    let (m, _) = r.form_v_wedge_v().unwrap();
    let a = Scalar::alpha();
    let one = Scalar::one();
    let z = Scalar::zero();
    let p = -(one.clone() + a.clone());
    let q = -(one.clone() - a.clone());
    let expected = Matrix::from_rows(vec![
        vec![one.clone(), a.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![a.clone(), one.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), p.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), q.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), q, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), p, z.clone(), z.clone(), z],
    ])
    .unwrap();
    assert_eq!(m, expected);
    assert_eq!(m.charpoly().unwrap(), table_charpoly());
}

#[test]
fn swap_map_is_isomorphism_symbolically() {
    let r = build(CatalogName::N4Alpha);
    let neg = r.substitute_alpha(&-Scalar::alpha()).unwrap();
    let f = catalog::n4_swap_map(&r, &neg).unwrap();
    assert_eq!(catalog::iso_defect(&r, &neg, &f).unwrap(), None);
}

#[test]
fn n4_zero_and_two_are_separated() {
    let r0 = n4a(0);
    let r2 = n4a(2);
    let s0 = catalog::invariant_signature(&r0).unwrap();
    let s2 = catalog::invariant_signature(&r2).unwrap();
    assert_ne!(s0.charpoly, s2.charpoly);
    assert_eq!(s0.dims, s2.dims);
    // The index-preserving bijection respects weights but not products.
    let id: Vec<Element> = (0..r0.dim()).map(Element::basis).collect();
    assert!(!catalog::iso_check(&r0, &r2, &id).unwrap());
}

#[test]
fn signatures_separate_distinct_entries() {
    let mut sigs: Vec<(String, InvariantSignature)> =
        CatalogName::ALL.iter().filter(|n| **n != CatalogName::N4Alpha).map(|&n| (n.to_string(), catalog::invariant_signature(&build(n)).unwrap())).collect();
    for a in [0, 2, 3] {
        sigs.push((format!("N4^{a}"), catalog::invariant_signature(&n4a(a)).unwrap()));
    }
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            assert_ne!(sigs[i].1, sigs[j].1, "{} vs {}", sigs[i].0, sigs[j].0);
        }
    }
    // α and −α are isomorphic and share a signature.
    assert_eq!(catalog::invariant_signature(&n4a(2)).unwrap(), catalog::invariant_signature(&n4a(-2)).unwrap());
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

fn check_golden(file: &str, fresh: &str) {
    let path = golden_path(file);
    if std::env::var_os("CONFSALG_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, fresh).unwrap();
    }
    let frozen = std::fs::read_to_string(&path).unwrap();
    assert!(frozen == fresh, "{file} drifted from the solver output");
    let back = ReducedAlgebra::from_json(&frozen).unwrap();
    assert_eq!(back.to_json(), frozen);
}

#[test]
fn golden_w2() {
    check_golden("w2.json", &build(CatalogName::W2).to_json());
}

#[test]
fn golden_ck6() {
    check_golden("ck6.json", &build(CatalogName::CK6).to_json());
}
