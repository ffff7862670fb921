//! Changing the conformal vector: the reduced subspace of `R_P` with respect
//! to a new conformal vector `L'` and its `⟨n⟩` products.
//!
//! The new reduced subspace `{x | L'₍₂₎x ∈ R⁰}` is computed on the window of
//! ∂-degrees `≤ 2` (all weights of a physical algebra are `≤ 2`), graded by
//! the eigenvalues of `L'₍₁₎`; products are re-decomposed as
//! `x₍ₙ₎y = Σ_j ∂^{(j)} z^j` in the new basis and `⟨x n y⟩ = z⁰`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{DPolyElement, ReconstructError, ReconstructedAlgebra};
use crate::algebra::{BasisVector, Element, Parity, ReducedAlgebra, Weight};
use crate::coords::Coords;
use crate::lincomb::LinComb;
use crate::scalar::{Matrix, Scalar};

/// Largest ∂-degree of the window.
const WINDOW: u32 = 2;

type Key = (u32, usize);

fn weight_scalar(w: Weight) -> Scalar {
    Scalar::from_frac(*w.numer(), *w.denom())
}

impl ReconstructedAlgebra {
    fn drop_weight_zero(&self, x: &DPolyElement) -> DPolyElement {
        DPolyElement::from_lincomb(LinComb::from_terms(
            x.iter().filter(|(j, b, _)| !self.weight_of(*j, *b).is_zero()).map(|(j, b, c)| ((j, b), c.clone())),
        ))
    }

    /// Checks axiom (V) for a candidate conformal vector.
    fn check_axiom_v(&self, l: &DPolyElement) -> Result<(), ReconstructError> {
        let fail = |what: &str, got: &DPolyElement| ReconstructError::AxiomVFails(format!("{}: got {}", what, self.show(got)));
        let ll0 = self.full_product(l, l, 0);
        if ll0 != self.derive(l, 1) {
            return Err(fail("L(0)L = dL", &ll0));
        }
        let ll1 = self.full_product(l, l, 1);
        if ll1 != l.scale(&Scalar::from_int(2)) {
            return Err(fail("L(1)L = 2L", &ll1));
        }
        let ll2 = self.full_product(l, l, 2);
        if !ll2.is_zero() {
            return Err(fail("L(2)L = 0", &ll2));
        }
        let ll3 = self.drop_weight_zero(&self.full_product(l, l, 3));
        if !ll3.is_zero() {
            return Err(fail("L(3)L central", &ll3));
        }
        for b in 0..self.dim() {
            let x = DPolyElement::term(0, b, Scalar::one());
            let got = self.full_product(l, &x, 0);
            if got != self.derive(&x, 1) {
                return Err(fail(&format!("L(0){} = d{}", self.p.id(b), self.p.id(b)), &got));
            }
        }
        Ok(())
    }

    /// The reduced algebra of `R_P` with conformal vector `l`.
    pub fn with_conformal_vector(&self, l: &DPolyElement) -> Result<ReducedAlgebra, ReconstructError> {
        self.check_axiom_v(l)?;
        let dim = self.dim();
        // Window keys grouped by (old weight, parity); L'₍₂₎ and L'₍₁₎ respect both.
        let mut groups: BTreeMap<(Weight, Parity), Vec<Key>> = BTreeMap::new();
        for j in 0..=WINDOW {
            for b in 0..dim {
                if j > 0 && self.p.weight(b).is_zero() {
                    continue;
                }
                groups.entry((self.weight_of(j, b), self.parity_of(b))).or_default().push((j, b));
            }
        }
        // (new weight, parity, vector)
        let mut found: Vec<(Weight, Parity, DPolyElement)> = Vec::new();
        for ((_, parity), keys) in &groups {
            let images: Vec<DPolyElement> = keys
                .iter()
                .map(|&(j, b)| self.drop_weight_zero(&self.full_product(l, &DPolyElement::term(j, b, Scalar::one()), 2)))
                .collect();
            let mut rows: Vec<Key> = images.iter().flat_map(|x| x.terms().keys().cloned()).collect();
            rows.sort();
            rows.dedup();
            let mut t = Matrix::zeros(rows.len(), keys.len());
            for (c, img) in images.iter().enumerate() {
                for (j, b, v) in img.iter() {
                    let r = rows.binary_search(&(j, b)).expect("row key");
                    t.set(r, c, v.clone());
                }
            }
            let kernel: Vec<DPolyElement> = if rows.is_empty() {
                keys.iter().map(|&(j, b)| DPolyElement::term(j, b, Scalar::one())).collect()
            } else {
                t.kernel()
                    .into_iter()
                    .map(|v| {
                        DPolyElement::from_lincomb(LinComb::from_terms(keys.iter().zip(v).map(|(k, c)| (*k, c))))
                    })
                    .collect()
            };
            if kernel.is_empty() {
                continue;
            }
            // Matrix of L'₍₁₎ on the kernel.
            let mut coords: Coords<Key> = Coords::new();
            for v in &kernel {
                coords.insert(v.terms()).map_err(|_| ReconstructError::Decomposition("dependent kernel".into()))?;
            }
            let kd = kernel.len();
            let mut m = Matrix::zeros(kd, kd);
            for (i, v) in kernel.iter().enumerate() {
                let img = self.full_product(l, v, 1);
                let e = coords.express(img.terms()).ok_or_else(|| {
                    ReconstructError::Decomposition("L(1) does not preserve the reduced subspace".into())
                })?;
                for (r, c) in e.iter() {
                    m.set(*r, i, c.clone());
                }
            }
            let mut total = 0;
            for twice in (-4..=8).rev() {
                let w = Weight::new(twice, 2);
                let mut shifted = m.clone();
                for i in 0..kd {
                    let d = shifted.get(i, i) - &weight_scalar(w);
                    shifted.set(i, i, d);
                }
                for ev in shifted.kernel() {
                    let mut x = DPolyElement::zero();
                    for (c, v) in ev.iter().zip(&kernel) {
                        x = x.add_scaled(c, v);
                    }
                    found.push((w, *parity, x));
                    total += 1;
                }
            }
            if total != kd {
                return Err(ReconstructError::Decomposition(
                    "L(1) is not diagonalizable with half-integer weights on the reduced subspace".into(),
                ));
            }
        }
        self.assemble_reduced(l, found)
    }

    /// Labels the new basis, decomposes all products and builds the algebra.
    fn assemble_reduced(
        &self,
        l: &DPolyElement,
        found: Vec<(Weight, Parity, DPolyElement)>,
    ) -> Result<ReducedAlgebra, ReconstructError> {
        // Echelonize each (weight, parity) block so every vector has a distinct
        // leading ∂-key; label vectors by that key.
        let mut blocks: BTreeMap<(std::cmp::Reverse<Weight>, Parity), Vec<DPolyElement>> = BTreeMap::new();
        for (w, p, x) in found {
            blocks.entry((std::cmp::Reverse(w), p)).or_default().push(x);
        }
        let two = Weight::from_integer(2);
        let mut vecs: Vec<DPolyElement> = Vec::new();
        let mut basis: Vec<BasisVector> = Vec::new();
        let mut used: HashMap<String, usize> = HashMap::new();
        let l_id = self.p.id(self.p.l_index()).to_string();
        for ((std::cmp::Reverse(w), p), xs) in blocks {
            let echelon = if w == two && p == Parity::Even {
                if xs.len() != 1 {
                    return Err(ReconstructError::Decomposition("the weight-2 space is not one-dimensional".into()));
                }
                vec![l.clone()]
            } else {
                echelonize(&xs)
            };
            for x in echelon {
                let mut id = if w == two && p == Parity::Even {
                    l_id.clone()
                } else {
                    let (j, b, _) = x.iter().next().expect("nonzero vector");
                    if j == 0 {
                        self.p.id(b).to_string()
                    } else {
                        format!("d{}{}", j, self.p.id(b))
                    }
                };
                let n = used.entry(id.clone()).or_default();
                *n += 1;
                if *n > 1 {
                    id = format!("{}'{}", id, n);
                }
                basis.push(BasisVector::new(id, w, p));
                vecs.push(x);
            }
        }
        // Spanning sets {∂^{(j)} r_k} per total weight.
        let mut spans: HashMap<Weight, (Coords<Key>, Vec<(u32, usize)>)> = HashMap::new();
        let max_w = basis.iter().map(|b| b.weight).max().unwrap_or_else(Weight::zero);
        let mut products = Vec::new();
        for x in 0..vecs.len() {
            for y in 0..vecs.len() {
                let mut n = 0u32;
                loop {
                    let w = basis[x].weight + basis[y].weight - Weight::from_integer(n as i64 + 1);
                    if w < Weight::zero() {
                        break;
                    }
                    let z = self.full_product(&vecs[x], &vecs[y], n);
                    if !z.is_zero() {
                        let (coords, ids) = spans.entry(w).or_insert_with(|| self.span_for(w, max_w, &basis, &vecs));
                        let e = coords.express(z.terms()).ok_or_else(|| {
                            ReconstructError::Decomposition(format!(
                                "{}({}){} leaves the span of the new basis",
                                basis[x].id, n, basis[y].id
                            ))
                        })?;
                        let zero_part = Element::from_terms(
                            e.iter().filter(|(id, _)| ids[**id].0 == 0).map(|(id, c)| (ids[*id].1, c.clone())),
                        );
                        if !zero_part.is_zero() {
                            products.push((n as usize, x, y, zero_part));
                        }
                    }
                    n += 1;
                }
            }
        }
        Ok(ReducedAlgebra::new(basis, &l_id, products)?)
    }

    /// Coordinates on `span{∂^{(j)} r_k : Δr_k + j = w}`.
    fn span_for(&self, w: Weight, max_w: Weight, basis: &[BasisVector], vecs: &[DPolyElement]) -> (Coords<Key>, Vec<(u32, usize)>) {
        let mut coords = Coords::new();
        let mut ids = Vec::new();
        let _ = max_w;
        for (k, b) in basis.iter().enumerate() {
            let j = w - b.weight;
            if !j.is_integer() || j < Weight::zero() || (b.weight.is_zero() && !j.is_zero()) {
                continue;
            }
            let j = j.to_integer() as u32;
            let v = self.derive(&vecs[k], j);
            if coords.insert(v.terms()).is_ok() {
                ids.push((j, k));
            }
        }
        (coords, ids)
    }
}

/// Reduced echelon form of a list of ∂-polynomials (keys in increasing order).
fn echelonize(xs: &[DPolyElement]) -> Vec<DPolyElement> {
    let mut rows: Vec<LinComb<Key>> = Vec::new();
    for x in xs {
        let mut v = x.terms().clone();
        for r in &rows {
            let (p, _) = r.iter().next().expect("row");
            let c = v.coeff(p);
            if !c.is_zero() {
                v = v.add_scaled(&-c, r);
            }
        }
        let lead = v.iter().next().map(|(_, c)| c.clone());
        if let Some(c) = lead {
            let inv = c.inv().expect("nonzero");
            let v = v.scale(&inv);
            let (p, _) = v.iter().next().expect("row");
            let p = *p;
            rows = rows
                .into_iter()
                .map(|r| {
                    let c = r.coeff(&p);
                    if c.is_zero() {
                        r
                    } else {
                        r.add_scaled(&-c, &v)
                    }
                })
                .collect();
            rows.push(v);
        }
    }
    rows.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
    rows.into_iter().map(DPolyElement::from_lincomb).collect()
}

impl ReconstructedAlgebra {
    /// The shifted conformal vector `L − (α/2)∂U` with `U = e₁•e₂∘e₃∘e₄` for an
    /// orthonormal basis `e_k` of `V` (`dim V = 4`), and the resulting reduced algebra.
    pub fn change_conformal_vector(&self, alpha: &Scalar) -> Result<ReducedAlgebra, ReconstructError> {
        let u = self.n4_current()?;
        let l = DPolyElement::term(0, self.p.l_index(), Scalar::one());
        let l_new = l.add_scaled(&(&-alpha.clone() * &Scalar::from_frac(1, 2)), &self.derive(&DPolyElement::from_element(&u), 1));
        self.with_conformal_vector(&l_new)
    }

    /// `U = e₁•e₂∘e₃∘e₄` with `e₁ = (D₁+D̄₁)/√2`, `e₂ = i(D₁−D̄₁)/√2` and
    /// likewise `e₃`, `e₄` from the second null pair.
    pub fn n4_current(&self) -> Result<Element, ReconstructError> {
        let frame = self.p.null_frame().map_err(|e| ReconstructError::NotN4Shape(e.to_string()))?;
        if frame.odd || frame.pairs != 2 {
            return Err(ReconstructError::NotN4Shape(format!("dim V = {} (expected 4)", frame.dim())));
        }
        let d = |k: usize| Element::basis(frame.vecs[k]);
        let i = Scalar::i();
        let e1 = d(0).add(&d(1));
        let e2 = d(0).sub(&d(1)).scale(&i);
        let e3 = d(2).add(&d(3));
        let e4 = d(2).sub(&d(3)).scale(&i);
        // The four factors 1/√2 combine to 1/4.
        let u = self.p.chain(&[('.', &e1), ('o', &e2), ('o', &e3)], &e4).scale(&Scalar::from_frac(1, 4));
        if u.is_zero() {
            return Err(ReconstructError::NotN4Shape("e1•e2∘e3∘e4 vanishes".into()));
        }
        Ok(u)
    }
}
