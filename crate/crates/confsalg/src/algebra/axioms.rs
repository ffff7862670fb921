//! Mechanical verification of the reduced axioms (P0, P2, P3, PV) and of the
//! `∘`/`•` identities (D0–D6, H0–H6) of physical algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::coeffs::{binomial, coeff_f_rational, coeff_g_rational, in_neg_half_nat, Weight};
use super::{koszul, w_a, w_f, w_v, AlgebraError, Element, Parity, ReducedAlgebra};
use crate::scalar::Scalar;

/// Maximum number of detailed violations kept per axiom.
const MAX_DETAILS: usize = 32;

/// One failed axiom instance with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: lhs = {}, rhs = {}", self.axiom, self.instance, self.lhs, self.rhs)
    }
}

/// Per-axiom counts of checked and failed instances plus detailed violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: BTreeMap<String, usize>,
    pub failed: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed.values().all(|&n| n == 0)
    }

    pub fn total_checked(&self) -> usize {
        self.checked.values().sum()
    }

    pub fn total_failed(&self) -> usize {
        self.failed.values().sum()
    }

    /// Records one instance; `lhs`/`rhs` are rendered only on failure.
    pub fn record(&mut self, axiom: &str, ok: bool, instance: impl FnOnce() -> String, sides: impl FnOnce() -> (String, String)) {
        *self.checked.entry(axiom.to_string()).or_default() += 1;
        let failed = self.failed.entry(axiom.to_string()).or_default();
        if !ok {
            *failed += 1;
            if *failed <= MAX_DETAILS {
                let (lhs, rhs) = sides();
                self.violations.push(Violation { axiom: axiom.to_string(), instance: instance(), lhs, rhs });
            }
        }
    }

    /// Compares two elements of `r` and records the outcome.
    pub fn compare(&mut self, r: &ReducedAlgebra, axiom: &str, instance: impl FnOnce() -> String, lhs: &Element, rhs: &Element) {
        let ok = lhs == rhs;
        self.record(axiom, ok, instance, || (r.show(lhs), r.show(rhs)));
    }

    pub fn merge(&mut self, o: Report) {
        for (k, v) in o.checked {
            *self.checked.entry(k).or_default() += v;
        }
        for (k, v) in o.failed {
            let e = self.failed.entry(k.clone()).or_default();
            *e += v;
        }
        let mut per: HashMap<String, usize> = HashMap::new();
        for v in &self.violations {
            *per.entry(v.axiom.clone()).or_default() += 1;
        }
        for v in o.violations {
            let c = per.entry(v.axiom.clone()).or_default();
            if *c < MAX_DETAILS {
                *c += 1;
                self.violations.push(v);
            }
        }
    }

    /// Sorts violations deterministically (parallel sweeps finish in any order).
    pub fn normalize(&mut self) {
        self.violations.sort_by(|a, b| (&a.axiom, &a.instance).cmp(&(&b.axiom, &b.instance)));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in &self.checked {
            let bad = self.failed.get(k).copied().unwrap_or(0);
            writeln!(f, "{:<6} checked {:>8}  failed {:>6}  {}", k, n, bad, if bad == 0 { "PASS" } else { "FAIL" })?;
        }
        for v in &self.violations {
            writeln!(f, "  {}", v)?;
        }
        Ok(())
    }
}

/// Memo of `G`/`F` values (few distinct weight combinations occur in a sweep).
#[derive(Default)]
pub(crate) struct CoeffCache {
    g: HashMap<(Weight, Weight, u32, u32), Scalar>,
    f: HashMap<(Weight, Weight, u32, u32, u32), Scalar>,
}

impl CoeffCache {
    pub(crate) fn g(&mut self, da: Weight, db: Weight, n: u32, j: u32) -> Scalar {
        self.g
            .entry((da, db, n, j))
            .or_insert_with(|| Scalar::from_rational(&coeff_g_rational(da, db, n, j)))
            .clone()
    }

    pub(crate) fn f(&mut self, da: Weight, db: Weight, m: u32, n: u32, t: u32) -> Scalar {
        self.f
            .entry((da, db, m, n, t))
            .or_insert_with(|| Scalar::from_rational(&coeff_f_rational(da, db, m, n, t)))
            .clone()
    }
}

pub(crate) fn big_binom(m: u32, j: u32) -> Scalar {
    Scalar::from_rational(&num_rational::BigRational::from_integer(binomial(m as i64, j as i64)))
}

impl ReducedAlgebra {
    /// `⟨a k e⟩` for a basis vector `a` and an element `e`.
    pub(crate) fn left_mul(&self, a: usize, k: usize, e: &Element) -> Element {
        let mut acc = Element::zero();
        if k >= self.product_bound() {
            return acc;
        }
        for (c, cc) in e.iter() {
            let t = self.table(k, a, *c);
            if !t.is_zero() {
                acc = acc.add_scaled(cc, t);
            }
        }
        acc
    }

    /// `⟨e k c⟩` for an element `e` and a basis vector `c`.
    pub(crate) fn right_mul(&self, e: &Element, k: usize, c: usize) -> Element {
        let mut acc = Element::zero();
        if k >= self.product_bound() {
            return acc;
        }
        for (a, ca) in e.iter() {
            let t = self.table(k, *a, c);
            if !t.is_zero() {
                acc = acc.add_scaled(ca, t);
            }
        }
        acc
    }

    /// The difference `LHS − RHS` of the Jacobi-type axiom (P3) on basis vectors,
    /// returned as `(LHS, RHS)`.
    pub(crate) fn p3_sides(&self, cache: &mut CoeffCache, a: usize, b: usize, c: usize, m: u32, n: u32) -> (Element, Element) {
        let (da, db, dc) = (self.weight(a), self.weight(b), self.weight(c));
        let mut lhs = Element::zero();
        for j in 0..=m {
            let inner = self.table((n + j) as usize, b, c);
            if inner.is_zero() {
                continue;
            }
            let g = cache.g(db, dc, n, j);
            if g.is_zero() {
                continue;
            }
            let t = self.left_mul(a, (m - j) as usize, inner);
            lhs = lhs.add_scaled(&(&big_binom(m, j) * &g), &t);
        }
        let sign = -koszul(self.parity(a), self.parity(b));
        for j in 0..=n {
            let inner = self.table((m + j) as usize, a, c);
            if inner.is_zero() {
                continue;
            }
            let g = cache.g(da, dc, m, j);
            if g.is_zero() {
                continue;
            }
            let t = self.left_mul(b, (n - j) as usize, inner);
            lhs = lhs.add_scaled(&(&(&big_binom(n, j) * &g) * &sign), &t);
        }
        let mut rhs = Element::zero();
        for t in 0..=(m + n) {
            let inner = self.table(t as usize, a, b);
            if inner.is_zero() {
                continue;
            }
            let f = cache.f(da, db, m, n, t);
            if f.is_zero() {
                continue;
            }
            let x = self.right_mul(inner, (m + n - t) as usize, c);
            rhs = rhs.add_scaled(&f, &x);
        }
        (lhs, rhs)
    }

    /// Verifies (P0), (P2) for `n ≤ n_max`, (P3) for all basis triples with
    /// `m ≤ m_max`, `n ≤ n_max`, and (PV).
    pub fn check_p_axioms(&self, m_max: u32, n_max: u32) -> Report {
        let dim = self.dim();
        let bound = self.product_bound();
        let mut report = Report::default();

        // (P0): every table at or beyond the stored bound vanishes by construction;
        // the trimmed bound is recorded as one checked instance.
        report.record("P0", true, String::new, || (String::new(), String::new()));

        // (P2)
        for n in 0..=n_max as usize {
            for a in 0..dim {
                for b in 0..dim {
                    let lhs = self.table(n, a, b).clone();
                    let mut s = -koszul(self.parity(a), self.parity(b));
                    if n % 2 == 1 {
                        s = -s;
                    }
                    let rhs = self.table(n, b, a).scale(&s);
                    report.compare(self, "P2", || format!("(a={}, b={}, n={})", self.id(a), self.id(b), n), &lhs, &rhs);
                }
            }
        }

        // (P3): an instance can only be nonzero when m + n ≤ 2(bound − 1).
        let reach = 2 * bound.saturating_sub(1) as u32;
        let p3 = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut cache = CoeffCache::default();
                let mut rep = Report::default();
                for b in 0..dim {
                    for c in 0..dim {
                        for m in 0..=m_max {
                            for n in 0..=n_max {
                                if bound == 0 || m + n > reach {
                                    rep.record("P3", true, String::new, || (String::new(), String::new()));
                                    continue;
                                }
                                let (lhs, rhs) = self.p3_sides(&mut cache, a, b, c, m, n);
                                rep.compare(
                                    self,
                                    "P3",
                                    || format!("(a={}, b={}, c={}, m={}, n={})", self.id(a), self.id(b), self.id(c), m, n),
                                    &lhs,
                                    &rhs,
                                );
                            }
                        }
                    }
                }
                rep
            })
            .reduce(Report::default, |mut x, y| {
                x.merge(y);
                x
            });
        report.merge(p3);

        self.check_pv(&mut report);
        report.normalize();
        report
    }

    fn check_pv(&self, report: &mut Report) {
        let dim = self.dim();
        let l = self.l_index();
        let zero = Element::zero();
        report.record("PV", self.parity(l) == Parity::Even, || "L even".into(), || ("odd".into(), "even".into()));
        let two_l = self.l().scale(&Scalar::from_int(2));
        report.compare(self, "PV", || "<L 1 L> = 2L".into(), self.table(1, l, l), &two_l);
        for a in 0..dim {
            report.compare(self, "PV", || format!("<L 0 {}> = 0", self.id(a)), self.table(0, l, a), &zero);
            // ⟨L 1 ·⟩ is diagonal on the homogeneous basis with the declared weights.
            let w = self.weight(a);
            let expect = Element::term(a, Scalar::from_frac(*w.numer(), *w.denom()));
            report.compare(self, "PV", || format!("<L 1 {}> = weight*{}", self.id(a), self.id(a)), self.table(1, l, a), &expect);
            // ⟨L 2 a⟩ ∈ P⁰.
            let t2 = self.table(2, l, a);
            let ok = t2.keys().all(|&k| self.weight(k) == Weight::from_integer(0));
            report.record("PV", ok, || format!("<L 2 {}> in P^0", self.id(a)), || (self.show(t2), "P^0".into()));
        }
        // P⁰ is central.
        for v in self.indices_of_weight(Weight::from_integer(0)) {
            for n in 0..self.product_bound() {
                for x in 0..dim {
                    report.compare(self, "PV", || format!("<{} {} {}> = 0 (P^0 central)", self.id(v), n, self.id(x)), self.table(n, v, x), &zero);
                }
            }
        }
        // Weight set avoids −½ℕ \ {0}; bounded below holds for finite bases.
        for b in self.basis() {
            let w = num_rational::BigRational::new((*b.weight.numer()).into(), (*b.weight.denom()).into());
            let ok = b.weight == Weight::from_integer(0) || !in_neg_half_nat(&w);
            report.record("PV", ok, || format!("weight of {}", b.id), || (b.weight.to_string(), "not in -N/2".into()));
        }
    }

    /// Verifies the identities (D0)–(D6) on all basis triples and (H0)–(H6) per
    /// their quantifications. Requires a physical algebra.
    pub fn check_h_axioms(&self) -> Result<Report, AlgebraError> {
        self.physical_check()?;
        let dim = self.dim();
        let l = self.l_index();
        let mut report = Report::default();
        let one = Scalar::one();
        let wt = |k: usize| -> Scalar {
            let w = self.weight(k);
            Scalar::from_frac(*w.numer(), *w.denom())
        };

        // Pairwise identities.
        for a in 0..dim {
            let ea = Element::basis(a);
            report.compare(self, "D0", || format!("L o {}", self.id(a)), self.circ_basis(l, a), &ea);
            report.compare(self, "D0", || format!("L . {}", self.id(a)), self.bullet_basis(l, a), &Element::zero());
            for b in 0..dim {
                let s = koszul(self.parity(a), self.parity(b));
                report.compare(
                    self,
                    "D1",
                    || format!("({}, {})", self.id(a), self.id(b)),
                    self.circ_basis(a, b),
                    &self.circ_basis(b, a).scale(&s),
                );
                report.compare(
                    self,
                    "D2",
                    || format!("({}, {})", self.id(a), self.id(b)),
                    self.bullet_basis(a, b),
                    &self.bullet_basis(b, a).scale(&-&s),
                );
            }
        }
        report.record("H0", true, || "see D0".into(), || (String::new(), String::new()));

        // Triple identities, parallel over the first argument.
        let triples = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut rep = Report::default();
                let ea = Element::basis(a);
                for b in 0..dim {
                    let eb = Element::basis(b);
                    let s = koszul(self.parity(a), self.parity(b));
                    let (wa, wb) = (wt(a), wt(b));
                    let ab_circ = self.circ_basis(a, b);
                    let ab_bullet = self.bullet_basis(a, b);
                    for c in 0..dim {
                        let ec = Element::basis(c);
                        let wc = wt(c);
                        let inst = || format!("({}, {}, {})", self.id(a), self.id(b), self.id(c));
                        let b_circ_c = self.circ_basis(b, c);
                        let b_bullet_c = self.bullet_basis(b, c);
                        let a_circ_c = self.circ_basis(a, c);
                        let a_bullet_c = self.bullet_basis(a, c);
                        let a_o_bc = self.circ(&ea, b_circ_c); // a∘b∘c
                        let ab_o_c = self.circ(ab_circ, &ec); // (a∘b)∘c
                        // (D3)
                        let k3 = &wb - &one;
                        rep.compare(self, "D3", inst, &a_o_bc.scale(&k3), &ab_o_c.scale(&k3));
                        // (D4)
                        let b_o_ac = self.circ(&eb, a_circ_c);
                        let lhs4 = a_o_bc
                            .scale(&(&(&wb + &wc) - &Scalar::from_int(2)))
                            .sub(&b_o_ac.scale(&(&s * &(&(&wa + &wc) - &Scalar::from_int(2)))));
                        let rhs4 = ab_o_c.scale(&(&wb - &wa));
                        rep.compare(self, "D4", inst, &lhs4, &rhs4);
                        // (D5)
                        let k5 = &(&(&wa + &wb) + &wc) - &Scalar::from_int(3);
                        let a_o_b_dot_c = self.circ(&ea, b_bullet_c);
                        let a_dot_b_o_c = self.bullet(&ea, b_circ_c);
                        let b_dot_a_o_c = self.bullet(&eb, a_circ_c);
                        let lhs5 = a_o_b_dot_c
                            .scale(&k5)
                            .add(&a_dot_b_o_c.scale(&k3))
                            .sub(&b_dot_a_o_c.scale(&(&s * &(&(&wa + &wc) - &Scalar::from_int(2)))));
                        let ab_dot_o_c = self.circ(ab_bullet, &ec);
                        let ab_o_dot_c = self.bullet(ab_circ, &ec);
                        let rhs5 = ab_dot_o_c.scale(&k5).add(&ab_o_dot_c.scale(&k3));
                        rep.compare(self, "D5", inst, &lhs5, &rhs5);
                        // (D6)
                        let a_dot_b_dot_c = self.bullet(&ea, b_bullet_c);
                        let b_dot_a_dot_c = self.bullet(&eb, a_bullet_c);
                        let lhs6 = a_dot_b_dot_c.sub(&b_dot_a_dot_c.scale(&s));
                        let rhs6 = self.bullet(ab_bullet, &ec);
                        rep.compare(self, "D6", inst, &lhs6, &rhs6);
                        // (H1) Jacobi = (D6); (H2) associativity.
                        rep.compare(self, "H1", inst, &lhs6, &rhs6);
                        rep.compare(self, "H2", inst, &ab_o_c, &a_o_bc);
                        // (H3): a ∈ A acts by derivations of ∘.
                        if self.weight(a) == w_a() {
                            let lhs = self.bullet(&ea, b_circ_c);
                            let rhs = self.circ(ab_bullet, &ec).add(&self.circ(&eb, a_bullet_c).scale(&s));
                            rep.compare(self, "H3", inst, &lhs, &rhs);
                        }
                        // (H4): u∘v•f = (u∘v)•f + (u•v)∘f.
                        if self.weight(a) == w_v() && self.weight(b) == w_v() && self.weight(c) == w_f() {
                            let lhs = a_o_b_dot_c.clone();
                            let rhs = ab_o_dot_c.add(&ab_dot_o_c);
                            rep.compare(self, "H4", inst, &lhs, &rhs);
                        }
                        // (H5)/(H6), polarized: u₁·u₂·x + u₂·u₁·x = 2(u₁,u₂)x.
                        if self.weight(a) == w_v() && self.weight(b) == w_v() && b >= a {
                            let axiom = if self.weight(c) == w_v() {
                                Some("H5")
                            } else if self.weight(c) == w_a() {
                                Some("H6")
                            } else {
                                None
                            };
                            if let Some(axiom) = axiom {
                                let act = |u: &Element, x: &Element| self.circ(u, x).add(&self.bullet(u, x));
                                let lhs = act(&ea, &act(&eb, &ec)).add(&act(&eb, &act(&ea, &ec)));
                                let ip = self.l_coeff(ab_bullet);
                                let rhs = ec.scale(&(&Scalar::from_int(2) * &ip));
                                rep.compare(self, axiom, inst, &lhs, &rhs);
                            }
                        }
                    }
                }
                rep
            })
            .reduce(Report::default, |mut x, y| {
                x.merge(y);
                x
            });
        report.merge(triples);
        report.normalize();
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::virasoro;
    use super::*;

    #[test]
    fn vir_passes() {
        let vir = virasoro();
        let r = vir.check_p_axioms(4, 4);
        assert!(r.passed(), "{}", r);
        let h = vir.check_h_axioms().unwrap();
        assert!(h.passed(), "{}", h);
    }

    #[test]
    fn vir_mutation_fails() {
        let vir = virasoro();
        let bad = vir.with_entry(1, 0, 0, Element::term(0, Scalar::from_int(3))).unwrap();
        assert!(!bad.check_p_axioms(4, 4).passed());
    }
}
