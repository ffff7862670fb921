//! The spinor representation of `Cl(V)` (even `dim V = 2n`) on the Grassmann
//! algebra `Λ[x₁, …, x_n]`: `D_i ↦ c·x_i`, `D̄_i ↦ c·∂/∂x_i` with `c² = 2`.
//!
//! Values live in `Λ ⊕ c·Λ`, so no square root ever has to be represented.

use super::{CliffordAlgebra, CliffordElement, CliffordError};
use crate::algebra::Subspace;
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// A Grassmann polynomial; monomials are bitmasks of the odd variables `x_i`.
pub type GrassmannPoly = LinComb<usize>;

/// `rational + c·c_part` with `c² = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpinorValue {
    pub rational: GrassmannPoly,
    pub c_part: GrassmannPoly,
}

impl SpinorValue {
    pub fn from_poly(p: GrassmannPoly) -> Self {
        SpinorValue { rational: p, c_part: GrassmannPoly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.c_part.is_zero()
    }

    fn add_scaled(&self, k: &Scalar, o: &SpinorValue) -> SpinorValue {
        SpinorValue { rational: self.rational.add_scaled(k, &o.rational), c_part: self.c_part.add_scaled(k, &o.c_part) }
    }

    /// Multiplication by `c`: `c(r + c s) = 2s + c r`.
    fn times_c(&self) -> SpinorValue {
        SpinorValue { rational: self.c_part.scale(&Scalar::from_int(2)), c_part: self.rational.clone() }
    }
}

fn sign_below(m: usize, i: usize) -> Scalar {
    if (m & ((1 << i) - 1)).count_ones() % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Left multiplication by `x_i`.
pub fn mul_x(i: usize, p: &GrassmannPoly) -> GrassmannPoly {
    GrassmannPoly::from_terms(
        p.iter().filter(|(m, _)| **m & (1 << i) == 0).map(|(m, c)| (m | (1 << i), &sign_below(*m, i) * c)),
    )
}

/// Left derivative `∂/∂x_i`.
pub fn d_x(i: usize, p: &GrassmannPoly) -> GrassmannPoly {
    GrassmannPoly::from_terms(
        p.iter().filter(|(m, _)| **m & (1 << i) != 0).map(|(m, c)| (m & !(1 << i), &sign_below(*m, i) * c)),
    )
}

impl CliffordAlgebra {
    fn apply_gen(&self, g: usize, v: &SpinorValue) -> Result<SpinorValue, CliffordError> {
        if Some(g) == self.e() {
            return Err(CliffordError::OddGeneratorInEvenRep);
        }
        let i = g / 2;
        let op = |p: &GrassmannPoly| if g % 2 == 0 { mul_x(i, p) } else { d_x(i, p) };
        let applied = SpinorValue { rational: op(&v.rational), c_part: op(&v.c_part) };
        Ok(applied.times_c())
    }

    /// `ρ(u) f` for `u ∈ Cl(V)` and a Grassmann polynomial `f`.
    pub fn spinor_apply(&self, u: &CliffordElement, f: &GrassmannPoly) -> Result<SpinorValue, CliffordError> {
        let mut out = SpinorValue::default();
        for (w, c) in u.iter() {
            let mut v = SpinorValue::from_poly(f.clone());
            for g in (0..self.dim_v()).rev() {
                if w & (1 << g) != 0 {
                    v = self.apply_gen(g, &v)?;
                }
            }
            out = out.add_scaled(c, &v);
        }
        Ok(out)
    }

    /// True when the spinor representation is injective on `Cl(V)` (`dim V` even).
    pub fn spinor_rep_is_faithful(&self) -> Result<bool, CliffordError> {
        let n_mon = 1usize << self.pairs();
        let mut images = Vec::with_capacity(self.dim());
        for w in 0..self.dim() {
            let u = CliffordElement::basis(w);
            let mut img = LinComb::zero();
            for m in 0..n_mon {
                let v = self.spinor_apply(&u, &GrassmannPoly::basis(m))?;
                let key = |out: usize, part: usize| ((m * n_mon + out) << 1) | part;
                img = img.add(&LinComb::from_terms(v.rational.iter().map(|(o, c)| (key(*o, 0), c.clone()))));
                img = img.add(&LinComb::from_terms(v.c_part.iter().map(|(o, c)| (key(*o, 1), c.clone()))));
            }
            images.push(img);
        }
        Ok(Subspace::spanned_by(images.iter()).dim() == self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_in_rep() {
        let cl = CliffordAlgebra::new(4);
        let f = GrassmannPoly::basis(0b01).add(&GrassmannPoly::basis(0b10));
        for a in 0..4 {
            for b in 0..4 {
                let ga = cl.gen(a);
                let gb = cl.gen(b);
                let anti = cl.mul(&ga, &gb).add(&cl.mul(&gb, &ga));
                let lhs = cl.spinor_apply(&anti, &f).unwrap();
                let expect = f.scale(&(&Scalar::from_int(2) * &cl.form(a, b)));
                assert_eq!(lhs, SpinorValue::from_poly(expect));
            }
        }
        assert!(cl.spinor_rep_is_faithful().unwrap());
    }

    #[test]
    fn odd_generator_rejected() {
        let cl = CliffordAlgebra::new(3);
        let e = cl.gen(cl.e().unwrap());
        assert_eq!(cl.spinor_apply(&e, &GrassmannPoly::basis(0)), Err(CliffordError::OddGeneratorInEvenRep));
    }
}
