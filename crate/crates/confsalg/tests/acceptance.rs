//! Acceptance suite: one PASS/FAIL line per criterion 1–11.
//!
//! Every comparison is exact (tolerance 0): structure constants, polynomials
//! and dimensions are compared as canonical exact values. A criterion is
//! printed as FAIL when any of its sub-checks fails. Sub-checks that restate
//! a literal expected value which is internally inconsistent carry a
//! known-deviation note explaining why they cannot hold; the process exits
//! nonzero only if some sub-check without such a note fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use confsalg::algebra::{coeff_g, w_a, w_f, w_l, w_v, Element, ReducedAlgebra};
use confsalg::catalog::{self, CatalogName};
use confsalg::clifford::CliffordAlgebra;
use confsalg::construct::{exclusion_sweep, BranchVerdict, Contradiction, SolutionSet};
use confsalg::reconstruct::{DPolyElement, ModeSum, ReconstructedAlgebra};
use confsalg::scalar::{Matrix, Scalar, TPoly};

struct Check {
    name: String,
    pass: bool,
    detail: String,
    /// Why this check cannot pass as literally stated, if that is known.
    known_deviation: Option<&'static str>,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), known_deviation: None });
    }

    fn check_known(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>, why: &'static str) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), known_deviation: Some(why) });
    }
}

fn build(n: CatalogName) -> ReducedAlgebra {
    catalog::build(n, None).expect("catalog build")
}

fn n4a(a: Scalar) -> ReducedAlgebra {
    catalog::build(CatalogName::N4Alpha, Some(&a)).expect("catalog build")
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Canonical text of a point; exact scalars print canonically, so equal
/// strings mean equal points.
fn show_point(p: &[Scalar]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn point_set(points: &[Vec<Scalar>]) -> BTreeSet<String> {
    points.iter().map(|p| show_point(p)).collect()
}

// 1. P and H axioms on the whole catalog.
fn criterion_1(c: &mut Criterion) {
    for n in CatalogName::ALL {
        let r = build(n);
        let p = r.check_p_axioms(4, 4);
        let h = r.check_h_axioms().expect("physical");
        c.check(
            format!("{n}: P(m,n<=4) and H"),
            p.passed() && h.passed(),
            format!("P {} checked/{} failed, H {} checked/{} failed", p.total_checked(), p.total_failed(), h.total_checked(), h.total_failed()),
        );
    }
}

// 2. C axioms on every reconstruction, plus the j-part identity.
fn criterion_2(c: &mut Criterion) {
    for n in CatalogName::ALL {
        let r = ReconstructedAlgebra::new(build(n));
        let rep = r.check_c_axioms(4, 4, 4);
        c.check(
            format!("{n}: C(m,n<=4, d<=4)"),
            rep.passed(),
            format!("{} checked/{} failed", rep.total_checked(), rep.total_failed()),
        );
        let p = r.reduced();
        let mut bad = 0usize;
        let mut total = 0usize;
        for a in 0..p.dim() {
            for b in 0..p.dim() {
                for nn in 0..=4u32 {
                    let prod = r.full_product(&DPolyElement::term(0, a, Scalar::one()), &DPolyElement::term(0, b, Scalar::one()), nn);
                    for j in 0..=4u32 {
                        total += 1;
                        let reduced = p.product_n(&Element::basis(a), &Element::basis(b), (nn + j) as usize);
                        if prod.dpart(j) != reduced.scale(&coeff_g(p.weight(a), p.weight(b), nn, j)) {
                            bad += 1;
                        }
                    }
                }
            }
        }
        c.check(format!("{n}: j-part identity"), bad == 0, format!("{total} parts, {bad} mismatches"));
    }
}

// 3. Simplicity.
fn criterion_3(c: &mut Criterion) {
    for (label, a) in [("0", Scalar::zero()), ("2", Scalar::from_int(2)), ("1/2", Scalar::from_frac(1, 2))] {
        let s = n4a(a).is_simple_physical().unwrap();
        c.check(format!("N4^α simple at α = {label}"), s.simple, s.reason);
    }
    for (label, a) in [("1", Scalar::one()), ("-1", -Scalar::one())] {
        let s = n4a(a).is_simple_physical().unwrap();
        c.check(format!("N4^α not simple at α = {label}"), !s.simple, s.reason);
    }
    let cond = build(CatalogName::N4Alpha).simplicity_condition().unwrap();
    let expected = confsalg::scalar::Poly::one().sub(&confsalg::scalar::Poly::alpha().mul(&confsalg::scalar::Poly::alpha()));
    c.check(
        "symbolic condition is 1 - α² ≠ 0",
        cond.generic && cond.condition.monic() == expected.monic(),
        format!("condition {} ≠ 0", cond.condition),
    );
    let s = build(CatalogName::N4).is_simple_physical().unwrap();
    c.check("N4 (conformal vector L₁) simple", s.simple, s.reason);
}

const CHARPOLY_MISPRINT: &str = "the stated polynomial ((t+1)-α²)((t-1)²-α²)² has degree 5, but the V∧V Gram matrix \
     is 6×6, so its characteristic polynomial has degree 6; the computed polynomial equals \
     ((t-1)²-α²)(t²-(1+α)²)(t²-(1-α)²), the product of the characteristic polynomials of the three \
     blocks of the table, which also reproduces every table entry exactly";

// 4. The V∧V form and its characteristic polynomial.
fn criterion_4(c: &mut Criterion) {
    let r = build(CatalogName::N4Alpha);
    let (m, _) = r.form_v_wedge_v().unwrap();
    let a = Scalar::alpha();
    let one = Scalar::one();
    let z = Scalar::zero();
    let p = -(one.clone() + a.clone());
    let q = -(one.clone() - a.clone());
    let table = Matrix::from_rows(vec![
        vec![one.clone(), a.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![a.clone(), one.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), p.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), q.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), q, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), p, z.clone(), z.clone(), z],
    ])
    .unwrap();
    c.check("form_V_wedge_V reproduces all 36 table entries", m == table, "exact match on the standard wedge basis");

    let cp = m.charpoly().unwrap();
    let t = TPoly::t();
    let tone = TPoly::one();
    let ta = TPoly::constant(Scalar::alpha());
    let sq = |x: &TPoly| x.mul(x);
    let stated = t.add(&tone).sub(&sq(&ta)).mul(&sq(&sq(&t.sub(&tone)).sub(&sq(&ta))));
    c.check_known(
        "charpoly == ((t+1)-α²)((t-1)²-α²)²",
        cp == stated,
        format!("computed {cp}; stated {stated}"),
        CHARPOLY_MISPRINT,
    );
    let blocks = sq(&t.sub(&tone)).sub(&sq(&ta)).mul(&sq(&t).sub(&sq(&tone.add(&ta)))).mul(&sq(&t).sub(&sq(&tone.sub(&ta))));
    c.check("charpoly == product of the table's block charpolys", cp == blocks, "((t-1)²-α²)(t²-(1+α)²)(t²-(1-α)²)");
}

// 5. Isomorphism and invariants.
fn criterion_5(c: &mut Criterion) {
    let src = build(CatalogName::N4Alpha);
    let dst = src.substitute_alpha(&-Scalar::alpha()).unwrap();
    let f = catalog::n4_swap_map(&src, &dst).unwrap();
    let defect = catalog::iso_defect(&src, &dst, &f).unwrap();
    c.check("swap e₁↔e₂: N4^α ≅ N4^-α (symbolic α)", defect.is_none(), defect.unwrap_or_else(|| "isomorphism".into()));
    let s0 = catalog::invariant_signature(&n4a(Scalar::zero())).unwrap();
    let s2 = catalog::invariant_signature(&n4a(Scalar::from_int(2))).unwrap();
    let (p0, p2) = (s0.charpoly.clone().unwrap(), s2.charpoly.clone().unwrap());
    c.check("invariant_signature separates N4⁰ and N4²", s0 != s2 && p0 != p2, format!("charpolys {p0} vs {p2}"));
}

const DIM8_MISPRINT: &str = "the stated tuple (1,-1,-1,1,1,1) violates the stated constraint \
     (α_{i,j}+α_{j,k})(α_{i,k}+1) = 0 at (i,j,k) = (3,1,4), where it equals (-1-1)(1+1) = -4; \
     the solver returns (1,-1,-1,1,1,-1) in its place, which completes the pattern α_{i,j} = -s_i s_j \
     shared by the other seven nonzero tuples";

// 6. Exclusion sweeps.
fn criterion_6(c: &mut Criterion) {
    for dim in [5, 7] {
        let rep = exclusion_sweep(dim).unwrap();
        let ok = match &rep.solutions {
            SolutionSet::Unsat(Contradiction::Forced { first, second, .. }) => {
                let two = Scalar::from_int(2);
                (first == &two && second == &-two.clone()) || (first == &-two.clone() && second == &two)
            }
            _ => false,
        };
        c.check(format!("dim V = {dim}: UNSAT with α forced to ±2"), ok, rep.to_string().trim().to_string());
    }

    // dim V = 6. The stated tuples are (α12, α23, α31); the solver orders (α12, α13, α23).
    let rep6 = exclusion_sweep(6).unwrap();
    let stated6: BTreeSet<String> = [[0, 0, 0], [-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]
        .iter()
        .map(|&[a12, a23, a31]| show_point(&ints(&[a12, a31, a23])))
        .collect();
    let got6 = point_set(rep6.points());
    c.check("dim V = 6: exactly the 5 stated α-solutions", got6 == stated6, format!("{} solutions", got6.len()));
    let nonzero: Vec<String> = rep6.nonzero_solutions().iter().map(|p| show_point(p)).collect();
    let zero = ints(&[0, 0, 0]);
    let only_zero = rep6.nonzero_solutions().len() == 1 && rep6.nonzero_solutions()[0] == zero.as_slice();
    let ck6_like = rep6
        .branches
        .iter()
        .find(|b| b.alpha == zero)
        .map(|b| b.verdict == BranchVerdict::Simple && b.algebras.iter().any(|k| k.simple && k.weight_dims.iter().map(|(_, d)| d).sum::<usize>() == 32))
        .unwrap_or(false);
    c.check(
        "dim V = 6: only (0,0,0) gives a nonzero algebra (simple, dim 32)",
        only_zero && ck6_like,
        format!("nonzero branches {}", nonzero.join(" ")),
    );

    // dim V = 8.
    let t = Instant::now();
    let rep8 = exclusion_sweep(8).unwrap();
    let elapsed = t.elapsed();
    let stated8: Vec<Vec<Scalar>> = [
        [0, 0, 0, 0, 0, 0],
        [1, 1, 1, -1, -1, -1],
        [1, 1, -1, -1, 1, 1],
        [1, -1, 1, 1, -1, 1],
        [1, -1, -1, 1, 1, 1],
        [-1, 1, -1, 1, -1, 1],
        [-1, 1, 1, 1, 1, -1],
        [-1, -1, 1, -1, 1, 1],
        [-1, -1, -1, -1, -1, -1],
    ]
    .iter()
    .map(|p| ints(p))
    .collect();
    let stated8_set = point_set(&stated8);
    let got8 = point_set(rep8.points());
    let missing: Vec<String> = stated8_set.difference(&got8).cloned().collect();
    let extra: Vec<String> = got8.difference(&stated8_set).cloned().collect();
    c.check_known(
        "dim V = 8: exactly the 9 stated tuples",
        got8 == stated8_set,
        format!("{} solutions; stated but not found: [{}]; found but not stated: [{}]", got8.len(), missing.join(" "), extra.join(" ")),
        DIM8_MISPRINT,
    );
    let sys = &rep8.system;
    let violating: Vec<String> = stated8.iter().filter(|p| !sys.is_satisfied_by(p)).map(|p| show_point(p)).collect();
    c.check(
        "dim V = 8: every found tuple satisfies all constraints; the unmatched stated tuple does not",
        rep8.points().iter().all(|p| sys.is_satisfied_by(p)) && violating == missing,
        format!("stated tuples violating a constraint: [{}]", violating.join(" ")),
    );
    let all_zero = rep8.branches.len() == got8.len() && rep8.branches.iter().all(|b| b.verdict == BranchVerdict::ZeroAlgebra);
    c.check(
        "dim V = 8: every branch collapses to the zero algebra",
        all_zero,
        format!("{} branches, sweep took {:.0?}", rep8.branches.len(), elapsed),
    );
}

// 7. Dimensions, with an independent rank count on the Clifford side.
fn criterion_7(c: &mut Criterion) {
    // Frozen expected totals per weight (2, 3/2, 1, 1/2).
    let expected: [(CatalogName, [usize; 4]); 9] = [
        (CatalogName::Vir, [1, 0, 0, 0]),
        (CatalogName::K1, [1, 1, 0, 0]),
        (CatalogName::K2, [1, 2, 1, 0]),
        (CatalogName::K3, [1, 3, 3, 1]),
        (CatalogName::S2, [1, 4, 3, 0]),
        (CatalogName::W2, [1, 4, 5, 2]),
        (CatalogName::N4, [1, 4, 7, 4]),
        (CatalogName::N4Alpha, [1, 4, 7, 4]),
        (CatalogName::CK6, [1, 6, 15, 10]),
    ];
    let ws = [w_l(), w_v(), w_a(), w_f()];
    let image = |dim_v: usize, kernel: &[&[u8]]| {
        let cl = CliffordAlgebra::new(dim_v);
        let mut ker = confsalg::algebra::Subspace::zero();
        for w in kernel {
            for x in cl.submodule(w, None).space.basis() {
                ker.insert(&x);
            }
        }
        cl.dim() - ker.dim()
    };
    let independent: [(CatalogName, usize); 8] = [
        (CatalogName::K1, image(1, &[])),
        (CatalogName::K2, image(2, &[])),
        (CatalogName::K3, image(3, &[])),
        (CatalogName::S2, image(4, &[&[0, 0], &[1, 1]])),
        (CatalogName::W2, image(4, &[&[0, 0], &[1, 1]]) + 2 * 2),
        (CatalogName::N4, image(4, &[])),
        (CatalogName::N4Alpha, image(4, &[])),
        (CatalogName::CK6, image(6, &[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
    ];
    for (n, dims) in expected {
        let r = build(n);
        let got: Vec<usize> = ws.iter().map(|w| r.indices_of_weight(*w).len()).collect();
        let total: usize = dims.iter().sum();
        let indep = independent.iter().find(|(m, _)| *m == n).map(|(_, d)| *d).unwrap_or(1);
        c.check(
            format!("{n}: dims {dims:?} (total {total})"),
            got == dims && indep == total && r.dim() == total,
            format!("computed {got:?}, independent count {indep}"),
        );
    }
}

// 8. Clifford module decomposition.
fn criterion_8(c: &mut Criterion) {
    for d in [2usize, 4, 6] {
        let cl = CliffordAlgebra::new(d);
        let mods = cl.module_decompose();
        let n = d / 2;
        let dims_ok = mods.len() == 1 << n && mods.iter().all(|m| m.space.dim() == 1 << n);
        let sum: usize = mods.iter().map(|m| m.space.dim()).sum();
        let mut all = confsalg::algebra::Subspace::zero();
        for m in &mods {
            for x in m.space.basis() {
                all.insert(&x);
            }
        }
        let irreducible = mods.iter().all(|m| cl.is_left_submodule(&m.space) && cl.is_irreducible(m));
        c.check(
            format!("dim V = {d}: 2^{n} irreducible submodules of dim 2^{n}, direct sum = Cl(V)"),
            dims_ok && sum == 1 << d && all.dim() == 1 << d && irreducible,
            format!("{} modules, dimension sum {}, span {}", mods.len(), sum, all.dim()),
        );
    }
}

// 9. Mode algebra.
fn criterion_9(c: &mut Criterion) {
    let vir = ReconstructedAlgebra::new(build(CatalogName::Vir));
    let l = vir.reduced().l_index();
    let mut bad = 0;
    for m in -5..=5i64 {
        for n in -5..=5i64 {
            if vir.mode_bracket(l, m, l, n) != ModeSum::term((l, m + n - 1), Scalar::from_int(m - n)) {
                bad += 1;
            }
        }
    }
    c.check("[L(m), L(n)] = (m-n) L(m+n-1) for |m|,|n| <= 5", bad == 0, format!("121 pairs, {bad} mismatches"));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let r = ReconstructedAlgebra::new(build(CatalogName::N4));
    let d = r.dim();
    let (mut anti, mut jac) = (0, 0);
    for _ in 0..100 {
        let (a, b, cc) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
        let (m, n, k) = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
        if !r.antisymmetry_defect(a, m, b, n).is_zero() {
            anti += 1;
        }
        if !r.jacobi_defect(a, m, b, n, cc, k).is_zero() {
            jac += 1;
        }
    }
    c.check(
        "antisymmetry and Jacobi on 100 random N4 mode triples (|modes| <= 4)",
        anti == 0 && jac == 0,
        format!("{anti} antisymmetry and {jac} Jacobi failures"),
    );
}

// 10. Golden files.
fn criterion_10(c: &mut Criterion) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden");
    for (n, file) in [(CatalogName::W2, "w2.json"), (CatalogName::CK6, "ck6.json")] {
        let fresh = build(n).to_json();
        let frozen = std::fs::read_to_string(dir.join(file)).unwrap_or_default();
        c.check(format!("{n} matches golden {file} byte-for-byte"), fresh == frozen, format!("{} bytes", fresh.len()));
    }
}

// 11. Mutation sensitivity on N4⁰.
fn criterion_11(c: &mut Criterion) {
    let r = n4a(Scalar::zero());
    let mut flipped = 0usize;
    let mut undetected = Vec::new();
    for (n, a, b, x) in r.product_entries() {
        for (k, v) in x.iter() {
            flipped += 1;
            let changed = x.add_scaled(&(-v.clone() - v.clone()), &Element::basis(*k));
            let m = r.with_entry(n, a, b, changed).expect("grading unchanged by a sign flip");
            let caught = !m.check_p_axioms(1, 1).passed()
                || !m.check_p_axioms(4, 4).passed()
                || !m.check_h_axioms().expect("physical").passed();
            if !caught {
                undetected.push(format!("⟨{} {} {}⟩ coefficient of {}", r.id(a), n, r.id(b), r.id(*k)));
            }
        }
    }
    c.check(
        "every single sign flip in N4⁰ is caught by P or H",
        undetected.is_empty() && flipped > 0,
        format!("{flipped} constants flipped, {} undetected {}", undetected.len(), undetected.join("; ")),
    );
}

fn main() {
    let criteria: [(u8, &str, fn(&mut Criterion)); 11] = [
        (1, "catalog axiom suite", criterion_1),
        (2, "reconstruction suite", criterion_2),
        (3, "simplicity", criterion_3),
        (4, "V∧V invariant", criterion_4),
        (5, "isomorphism", criterion_5),
        (6, "exclusions", criterion_6),
        (7, "dimensions", criterion_7),
        (8, "Clifford modules", criterion_8),
        (9, "mode algebra", criterion_9),
        (10, "golden files", criterion_10),
        (11, "mutation sensitivity", criterion_11),
    ];
    println!("acceptance: all comparisons exact (tolerance 0)");
    let mut unexplained = 0;
    let mut failed = 0;
    for (id, title, run) in criteria {
        let t = Instant::now();
        let mut c = Criterion::default();
        if let Err(e) = catch_unwind(AssertUnwindSafe(|| run(&mut c))) {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
            c.check("ran to completion", false, format!("panicked: {msg}"));
        }
        let pass = c.checks.iter().all(|k| k.pass);
        if !pass {
            failed += 1;
        }
        println!("criterion {id:>2}: {} — {title} ({:.1?})", if pass { "PASS" } else { "FAIL" }, t.elapsed());
        for k in &c.checks {
            let mark = match (k.pass, k.known_deviation) {
                (true, _) => "ok  ",
                (false, Some(_)) => "FAIL (known deviation)",
                (false, None) => "FAIL",
            };
            println!("    [{mark}] {}: {}", k.name, k.detail);
            if let (false, Some(why)) = (k.pass, k.known_deviation) {
                println!("           reason: {why}");
            }
            if !k.pass && k.known_deviation.is_none() {
                unexplained += 1;
            }
        }
    }
    println!("acceptance: {} of 11 criteria pass; {unexplained} unexplained failing checks", 11 - failed);
    if unexplained > 0 {
        std::process::exit(1);
    }
}
