//! Verification of the conformal-superalgebra axioms (C1)–(C3) and of the
//! conformal-vector identities on `R_P`.

use num_traits::Zero;
use rayon::prelude::*;

use super::{DPolyElement, ReconstructedAlgebra};
use crate::algebra::{big_binom, Report, Weight};
use crate::scalar::Scalar;

/// Which ∂-shifts `(k, l, r)` of a triple `(a, b, c)` are checked in (C3):
/// the unshifted triple and each single argument shifted by `1..=d_max`.
fn c3_shifts(d_max: u32) -> Vec<[u32; 3]> {
    let mut out = vec![[0, 0, 0]];
    for s in 1..=d_max {
        out.push([s, 0, 0]);
        out.push([0, s, 0]);
        out.push([0, 0, s]);
    }
    out
}

impl ReconstructedAlgebra {
    fn shifted(&self, k: u32, a: usize) -> DPolyElement {
        self.derive(&DPolyElement::term(0, a, Scalar::one()), k)
    }

    fn sign(&self, a: usize, b: usize) -> Scalar {
        self.koszul(a, b)
    }

    fn label(&self, k: u32, a: usize) -> String {
        if k == 0 {
            self.p.id(a).to_string()
        } else {
            format!("d^({}){}", k, self.p.id(a))
        }
    }

    fn record(&self, rep: &mut Report, axiom: &str, lhs: &DPolyElement, rhs: &DPolyElement, instance: impl FnOnce() -> String) {
        rep.record(axiom, lhs == rhs, instance, || (self.show(lhs), self.show(rhs)));
    }

    /// Right-hand side of (C2): `−p(x,y) Σ_j (−1)^{n+j} ∂^{(j)}(y₍ₙ₊ⱼ₎x)`.
    pub fn c2_rhs(&self, x: &DPolyElement, y: &DPolyElement, n: u32, sign: &Scalar, weight_sum: Weight) -> DPolyElement {
        let mut out = DPolyElement::zero();
        let mut j = 0u32;
        while Weight::from_integer((n + j) as i64 + 1) <= weight_sum {
            let t = self.full_product(y, x, n + j);
            if !t.is_zero() {
                let mut c = -sign.clone();
                if (n + j) % 2 == 1 {
                    c = -c;
                }
                out = out.add_scaled(&c, &self.derive(&t, j));
            }
            j += 1;
        }
        out
    }

    /// `B(x, y, z, m, n) = x₍ₘ₎(y₍ₙ₎z) − p(x,y) y₍ₙ₎(x₍ₘ₎z) − Σ_j C(m,j)(x₍ⱼ₎y)₍ₘ₊ₙ₋ⱼ₎z`.
    pub fn c3_defect(&self, x: &DPolyElement, y: &DPolyElement, z: &DPolyElement, m: u32, n: u32, sign: &Scalar) -> DPolyElement {
        let mut out = self.full_product(x, &self.full_product(y, z, n), m);
        out = out.add_scaled(&-sign.clone(), &self.full_product(y, &self.full_product(x, z, m), n));
        for j in 0..=m {
            let xy = self.full_product(x, y, j);
            if xy.is_zero() {
                continue;
            }
            out = out.add_scaled(&-big_binom(m, j), &self.full_product(&xy, z, m + n - j));
        }
        out
    }

    /// Checks (C1), the derivation property of `∂`, (C2) and (C3) on basis
    /// vectors shifted by `∂`-degrees up to `d_max`, plus the identities
    /// `L₍₀₎ = ∂`, `L₍₁₎∂^{(k)}a = (Δa+k)∂^{(k)}a` and
    /// `L₍₂₎∂^{(k)}a = (k−1+2Δa)∂^{(k−1)}a`.
    pub fn check_c_axioms(&self, m_max: u32, n_max: u32, d_max: u32) -> Report {
        let dim = self.dim();
        let mut rep = self.check_conformal_vector(d_max);
        let pair_reports: Vec<Report> = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut rep = Report::default();
                for b in 0..dim {
                    let sign = self.sign(a, b);
                    for k in 0..=d_max {
                        let x = self.shifted(k, a);
                        let dx = self.derive(&x, 1);
                        for l in 0..=d_max {
                            let y = self.shifted(l, b);
                            let dy = self.derive(&y, 1);
                            let wsum = self.weight_of(k, a) + self.weight_of(l, b);
                            for n in 0..=n_max {
                                let xy = self.full_product(&x, &y, n);
                                let inst = || format!("{}, {}, n={}", self.label(k, a), self.label(l, b), n);
                                let lhs = self.full_product(&dx, &y, n);
                                let rhs = if n == 0 {
                                    DPolyElement::zero()
                                } else {
                                    self.full_product(&x, &y, n - 1).scale(&-Scalar::from_int(n as i64))
                                };
                                self.record(&mut rep, "C1", &lhs, &rhs, inst);
                                let der = lhs.add(&self.full_product(&x, &dy, n));
                                self.record(&mut rep, "C1-derivation", &self.derive(&xy, 1), &der, inst);
                                let c2 = self.c2_rhs(&x, &y, n, &sign, wsum);
                                self.record(&mut rep, "C2", &xy, &c2, inst);
                            }
                        }
                    }
                }
                rep
            })
            .collect();
        for r in pair_reports {
            rep.merge(r);
        }
        let shifts = c3_shifts(d_max);
        let triple_reports: Vec<Report> = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut rep = Report::default();
                for b in 0..dim {
                    let sign = self.sign(a, b);
                    for c in 0..dim {
                        for &[k, l, r] in &shifts {
                            let (x, y, z) = (self.shifted(k, a), self.shifted(l, b), self.shifted(r, c));
                            for m in 0..=m_max {
                                for n in 0..=n_max {
                                    let d = self.c3_defect(&x, &y, &z, m, n, &sign);
                                    rep.record(
                                        "C3",
                                        d.is_zero(),
                                        || {
                                            format!(
                                                "{}, {}, {}, m={}, n={}",
                                                self.label(k, a),
                                                self.label(l, b),
                                                self.label(r, c),
                                                m,
                                                n
                                            )
                                        },
                                        || (self.show(&d), "0".into()),
                                    );
                                }
                            }
                        }
                    }
                }
                rep
            })
            .collect();
        for r in triple_reports {
            rep.merge(r);
        }
        rep.normalize();
        rep
    }

    /// The operator identities of the conformal vector on `∂^{(k)}a`.
    fn check_conformal_vector(&self, d_max: u32) -> Report {
        let mut rep = Report::default();
        let l = DPolyElement::term(0, self.p.l_index(), Scalar::one());
        for a in 0..self.dim() {
            let da = self.p.weight(a);
            for k in 0..=d_max {
                let x = self.shifted(k, a);
                let inst = || self.label(k, a);
                self.record(&mut rep, "V-L0", &self.full_product(&l, &x, 0), &self.derive(&x, 1), inst);
                let w = da + Weight::from_integer(k as i64);
                let wl = Scalar::from_frac(*w.numer(), *w.denom());
                self.record(&mut rep, "V-L1", &self.full_product(&l, &x, 1), &x.scale(&wl), inst);
                let expect = if k == 0 {
                    DPolyElement::zero()
                } else {
                    let c = Weight::from_integer(k as i64 - 1) + da * Weight::from_integer(2);
                    self.shifted(k - 1, a).scale(&Scalar::from_frac(*c.numer(), *c.denom()))
                };
                let got = self.full_product(&l, &x, 2);
                // Products landing in weight 0 are allowed (P⁰ is central data).
                let got_pos = DPolyElement::from_lincomb(crate::lincomb::LinComb::from_terms(
                    got.iter().filter(|(j, b, _)| !self.weight_of(*j, *b).is_zero()).map(|(j, b, c)| ((j, b), c.clone())),
                ));
                self.record(&mut rep, "V-L2", &got_pos, &expect, inst);
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{w_l, BasisVector, Element, Parity, ReducedAlgebra};

    #[test]
    fn virasoro_passes_and_corruption_fails() {
        let basis = vec![BasisVector::new("L", w_l(), Parity::Even)];
        let good = ReducedAlgebra::new(basis.clone(), "L", vec![(1, 0, 0, Element::term(0, Scalar::from_int(2)))]).unwrap();
        assert!(ReconstructedAlgebra::new(good).check_c_axioms(3, 3, 3).passed());
        let bad = ReducedAlgebra::new(basis, "L", vec![(1, 0, 0, Element::term(0, Scalar::from_int(3)))]).unwrap();
        let rep = ReconstructedAlgebra::new(bad).check_c_axioms(2, 2, 2);
        assert!(!rep.passed());
        assert!(!rep.violations.is_empty());
    }
}
