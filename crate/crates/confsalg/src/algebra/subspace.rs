//! Subspaces of a reduced algebra: echelon bases, the center, ideal closure,
//! the subspace `F³`, simplicity and quotients.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};

use super::forms::SymbolicSimplicity;
use super::{w_f, w_v, AlgebraError, BasisVector, Element, ReducedAlgebra};
use crate::scalar::{Matrix, Poly, Scalar};

/// A subspace given by a fully reduced echelon basis: each row has its
/// smallest basis index (the pivot) with coefficient one, and no row contains
/// another row's pivot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subspace {
    rows: BTreeMap<usize, Element>,
}

impl Subspace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn spanned_by<'a>(gens: impl IntoIterator<Item = &'a Element>) -> Self {
        let mut s = Self::zero();
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows.values().cloned().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `x` modulo the subspace; the result has no pivot components.
    pub fn reduce(&self, x: &Element) -> Element {
        let mut x = x.clone();
        for (p, row) in &self.rows {
            let c = x.coeff(p);
            if !c.is_zero() {
                x = x.add_scaled(&-c, row);
            }
        }
        x
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.reduce(x).is_zero()
    }

    /// Adds `x`; returns true when the dimension grew.
    pub fn insert(&mut self, x: &Element) -> bool {
        let r = self.reduce(x);
        let Some((&p, c)) = r.iter().next() else { return false };
        let row = r.scale(&c.inv().expect("nonzero"));
        for other in self.rows.values_mut() {
            let c = other.coeff(&p);
            if !c.is_zero() {
                *other = other.add_scaled(&-c, &row);
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.rows.values().all(|r| o.contains(r))
    }
}

/// Result of the physical simplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// Human-readable reason.
    pub reason: String,
    /// A generator of a proper nonzero ideal when not simple.
    pub witness: Option<Element>,
}

impl ReducedAlgebra {
    /// `{v | ⟨v n x⟩ = 0 for all basis x and all n}` by an exact kernel computation.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for n in 0..self.product_bound() {
            for x in 0..dim {
                // Row per output coordinate k: Σ_a c_a ⟨a n x⟩_k.
                let mut per_k: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
                for a in 0..dim {
                    for (k, c) in self.table(n, a, x).iter() {
                        per_k.entry(*k).or_insert_with(|| vec![Scalar::zero(); dim])[a] = c.clone();
                    }
                }
                rows.extend(per_k.into_values());
            }
        }
        if rows.is_empty() {
            return Subspace::spanned_by((0..dim).map(Element::basis).collect::<Vec<_>>().iter());
        }
        let m = Matrix::from_rows(rows).expect("rectangular");
        let ker: Vec<Element> = m.kernel().into_iter().map(|v| Element::from_terms(v.into_iter().enumerate())).collect();
        Subspace::spanned_by(ker.iter())
    }

    /// The smallest subspace containing `s` and closed under `⟨x n ·⟩` and
    /// `⟨· n x⟩` for all basis `x` and all `n`.
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        let mut out = Subspace::zero();
        let mut queue: Vec<Element> = s.basis();
        while let Some(y) = queue.pop() {
            if !out.insert(&y) {
                continue;
            }
            for n in 0..self.product_bound() {
                for x in 0..self.dim() {
                    let l = self.left_mul(x, n, &y);
                    if !l.is_zero() && !out.contains(&l) {
                        queue.push(l);
                    }
                    let r = self.right_mul_elem(&y, n, x);
                    if !r.is_zero() && !out.contains(&r) {
                        queue.push(r);
                    }
                }
            }
        }
        out
    }

    fn right_mul_elem(&self, y: &Element, n: usize, x: usize) -> Element {
        self.right_mul(y, n, x)
    }

    /// True when `s` is closed under all products with basis vectors.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|y| {
            (0..self.product_bound()).all(|n| {
                (0..self.dim()).all(|x| s.contains(&self.left_mul(x, n, y)) && s.contains(&self.right_mul(y, n, x)))
            })
        })
    }

    /// Matrix of the map `f ↦ (v₁•v₂•v₃•f)_L` from `F` to scalars indexed by `V³`.
    fn f3_matrix(&self) -> (Matrix, Vec<usize>) {
        let vs = self.v_indices();
        let fs = self.indices_of_weight(w_f());
        let mut rows = Vec::new();
        for &v1 in &vs {
            for &v2 in &vs {
                for &v3 in &vs {
                    let row: Vec<Scalar> = fs
                        .iter()
                        .map(|&f| {
                            let x = self.bullet_basis(v3, f).clone();
                            let x = self.left_mul(v2, 0, &x);
                            let x = self.left_mul(v1, 0, &x);
                            self.l_coeff(&x)
                        })
                        .collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let m = if rows.is_empty() { Matrix::zeros(0, fs.len()) } else { Matrix::from_rows(rows).expect("rect") };
        (m, fs)
    }

    /// `F³ = {f ∈ F | v₁•v₂•v₃•f = 0 for all v_k ∈ V}`.
    pub fn f3_subspace(&self) -> Result<Subspace, AlgebraError> {
        self.physical_check()?;
        let (m, fs) = self.f3_matrix();
        if m.rows() == 0 {
            return Ok(Subspace::spanned_by(fs.iter().map(|&f| Element::basis(f)).collect::<Vec<_>>().iter()));
        }
        let ker: Vec<Element> = m
            .kernel()
            .into_iter()
            .map(|v| Element::from_terms(v.into_iter().enumerate().map(|(i, c)| (fs[i], c))))
            .collect();
        Ok(Subspace::spanned_by(ker.iter()))
    }

    /// Simplicity test: for `V ≠ 0`, simple iff `F³ = 0` and the inner product is
    /// nondegenerate; for `V = 0`, every basis vector must generate the whole algebra.
    pub fn is_simple_physical(&self) -> Result<Simplicity, AlgebraError> {
        self.physical_check()?;
        let vs = self.v_indices();
        if vs.is_empty() {
            let full = self.dim();
            for k in 0..full {
                let i = self.ideal_closure(&Subspace::spanned_by([Element::basis(k)].iter()));
                if i.dim() < full {
                    return Ok(Simplicity {
                        simple: false,
                        reason: format!("proper ideal generated by {}", self.id(k)),
                        witness: Some(Element::basis(k)),
                    });
                }
            }
            return Ok(Simplicity { simple: true, reason: "every basis vector generates the algebra".into(), witness: None });
        }
        let g = self.gram_v();
        let ker = g.kernel();
        if let Some(v) = ker.into_iter().next() {
            let w = Element::from_terms(v.into_iter().enumerate().map(|(i, c)| (vs[i], c)));
            return Ok(Simplicity {
                simple: false,
                reason: "inner product on V is degenerate; witness ideal generator in V".into(),
                witness: Some(w),
            });
        }
        let f3 = self.f3_subspace()?;
        if let Some(f) = f3.basis().into_iter().next() {
            return Ok(Simplicity { simple: false, reason: "witness ideal generator in F³".into(), witness: Some(f) });
        }
        Ok(Simplicity { simple: true, reason: "F³ = 0 and the inner product is nondegenerate".into(), witness: None })
    }

    /// Symbolic simplicity over Q(i)(α): the square-free polynomial whose zeros
    /// are exactly the α where the simplicity criterion fails (determinant of
    /// the `V` Gram matrix times the gcd of maximal minors of the `F³` map).
    pub fn simplicity_condition(&self) -> Result<SymbolicSimplicity, AlgebraError> {
        self.physical_check()?;
        let mut cond = Poly::one();
        let g = self.gram_v();
        if g.rows() > 0 {
            let d = g.det()?;
            if d.is_zero() {
                return Ok(SymbolicSimplicity { generic: false, condition: Poly::zero() });
            }
            cond = cond.mul(d.numerator()).mul(d.denominator());
        }
        let (m, fs) = self.f3_matrix();
        if !fs.is_empty() {
            if m.rank() < fs.len() {
                return Ok(SymbolicSimplicity { generic: false, condition: Poly::zero() });
            }
            // gcd of maximal minors via Cauchy–Binet with seeded random combinations,
            // after clearing row denominators (poles count as special values).
            let mut rows: Vec<Vec<Scalar>> = m.to_rows();
            for row in rows.iter_mut() {
                let mut den = Poly::one();
                for c in row.iter() {
                    let d = c.denominator();
                    den = den.mul(&d.divrem(&den.gcd(d)).0);
                }
                if !den.is_one() {
                    cond = cond.mul(&den);
                    let ds = Scalar::from_polys(den, Poly::one())?;
                    for c in row.iter_mut() {
                        *c = &*c * &ds;
                    }
                }
            }
            let k = fs.len();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
            let mut gcd = Poly::zero();
            for _ in 0..4 {
                let mut comb = Matrix::zeros(k, k);
                for r in 0..k {
                    let mut acc = vec![Scalar::zero(); k];
                    for row in &rows {
                        let w = Scalar::from_int(rng.gen_range(-7..=7));
                        for c in 0..k {
                            acc[c] = acc[c].add_mul(&w, &row[c]);
                        }
                    }
                    for c in 0..k {
                        comb.set(r, c, acc[c].clone());
                    }
                }
                let d = comb.det()?;
                gcd = gcd.gcd(d.numerator());
            }
            cond = cond.mul(&gcd);
        }
        let sq = squarefree(&cond);
        Ok(SymbolicSimplicity { generic: true, condition: normalize_condition(&sq) })
    }

    /// The quotient by a graded ideal not containing `L`; the complement basis is
    /// the set of basis vectors that are not pivots of the ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<ReducedAlgebra, AlgebraError> {
        if ideal.contains(&self.l()) {
            return Err(AlgebraError::ContainsConformalVector);
        }
        if !self.is_ideal(ideal) {
            return Err(AlgebraError::NotAnIdeal);
        }
        for row in ideal.basis() {
            self.homogeneous_weight(&row).map_err(|_| AlgebraError::NotAnIdeal)?;
        }
        let pivots = ideal.pivots();
        let keep: Vec<usize> = (0..self.dim()).filter(|k| !pivots.contains(k)).collect();
        let new_index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let basis: Vec<BasisVector> = keep.iter().map(|&k| self.basis_vector(k).clone()).collect();
        let mut entries = Vec::new();
        for (n, a, b, e) in self.product_entries() {
            let (Some(&na), Some(&nb)) = (new_index.get(&a), new_index.get(&b)) else { continue };
            let r = ideal.reduce(&e);
            let mapped = r.map_keys(|k| new_index[k]);
            if !mapped.is_zero() {
                entries.push((n, na, nb, mapped));
            }
        }
        ReducedAlgebra::new(basis, self.id(self.l_index()), entries)
    }

    /// Index positions of `V` (convenience for callers that need the weight check).
    pub fn v_dim(&self) -> usize {
        self.indices_of_weight(w_v()).len()
    }
}

fn squarefree(p: &Poly) -> Poly {
    if p.is_constant() {
        return Poly::one();
    }
    let g = p.gcd(&p.derivative());
    p.divrem(&g).0
}

/// Scales a condition polynomial so that its constant term is one when nonzero,
/// otherwise makes it monic.
fn normalize_condition(p: &Poly) -> Poly {
    let c = p.constant_term();
    if !c.is_zero() {
        p.scale(&c.inv().expect("nonzero"))
    } else {
        p.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::virasoro;
    use super::super::{w_a, w_l, Parity};
    use super::*;

    #[test]
    fn echelon_subspace() {
        let mut s = Subspace::zero();
        let x = Element::from_terms([(0, Scalar::one()), (1, Scalar::one())]);
        let y = Element::from_terms([(1, Scalar::one()), (2, Scalar::one())]);
        assert!(s.insert(&x));
        assert!(s.insert(&y));
        assert!(!s.insert(&x.add(&y)));
        assert!(s.contains(&x.sub(&y)));
        assert!(!s.contains(&Element::basis(2).add(&Element::basis(0))) || s.dim() == 3);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn vir_center_and_simplicity() {
        let vir = virasoro();
        assert!(vir.center().is_zero());
        assert!(vir.is_simple_physical().unwrap().simple);
        assert!(vir.ideal_closure(&Subspace::zero()).is_zero());
    }

    #[test]
    fn abelian_center() {
        let basis = vec![
            BasisVector::new("L", w_l(), Parity::Even),
            BasisVector::new("J1", w_a(), Parity::Even),
            BasisVector::new("J2", w_a(), Parity::Even),
        ];
        let mut prods = vec![(1, 0, 0, Element::term(0, Scalar::from_int(2)))];
        for k in 1..3 {
            prods.push((1, 0, k, Element::basis(k)));
            prods.push((1, k, 0, Element::basis(k)));
        }
        let r = ReducedAlgebra::new(basis, "L", prods).unwrap();
        // ⟨L 1 J⟩ = J ≠ 0, so J is not central in the strict sense; the center is {0}.
        assert!(r.center().is_zero());
        let zero_prods = ReducedAlgebra::new(
            vec![BasisVector::new("L", w_l(), Parity::Even), BasisVector::new("J", w_a(), Parity::Even)],
            "L",
            vec![],
        )
        .unwrap();
        assert_eq!(zero_prods.center().dim(), 2);
    }
}
