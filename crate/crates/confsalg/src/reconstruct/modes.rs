//! The Lie superalgebra of modes: `[a₍ₘ₎, b₍ₙ₎] = Σ_j C(m, j)(a₍ⱼ₎b)₍ₘ₊ₙ₋ⱼ₎`
//! with all coefficients rewritten in modes of basis vectors of `P` via
//! `(∂^{(i)}z)₍ₖ₎ = (−1)^i C(k, i) z₍ₖ₋ᵢ₎`.

use super::ReconstructedAlgebra;
use crate::algebra::binomial;
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// A formal sum `Σ c · x₍ₖ₎` of modes of basis vectors; keys are `(x, k)`.
pub type ModeSum = LinComb<(usize, i64)>;

fn binom(m: i64, k: i64) -> Scalar {
    Scalar::from_rational(&num_rational::BigRational::from_integer(binomial(m, k)))
}

impl ReconstructedAlgebra {
    /// `[a₍ₘ₎, b₍ₙ₎]` for basis vectors `a`, `b` and integer modes.
    pub fn mode_bracket(&self, a: usize, m: i64, b: usize, n: i64) -> ModeSum {
        let mut out = ModeSum::zero();
        for j in 0..self.p.product_bound() as u32 {
            let cm = binom(m, j as i64);
            if cm.is_zero() {
                continue;
            }
            let ab = self.basis_product(a, b, j);
            for (i, z, c) in ab.iter() {
                let k = m + n - j as i64;
                let mut coef = &(&cm * c) * &binom(k, i as i64);
                if i % 2 == 1 {
                    coef = -coef;
                }
                out = out.add(&ModeSum::term((z, k - i as i64), coef));
            }
        }
        out
    }

    /// Bilinear extension of [`mode_bracket`](Self::mode_bracket).
    pub fn bracket(&self, x: &ModeSum, y: &ModeSum) -> ModeSum {
        let mut out = ModeSum::zero();
        for ((a, m), ca) in x.iter() {
            for ((b, n), cb) in y.iter() {
                out = out.add_scaled(&(ca * cb), &self.mode_bracket(*a, *m, *b, *n));
            }
        }
        out
    }

    /// `[x, y] + (−1)^{p(x)p(y)}[y, x]` for single modes (zero in a Lie superalgebra).
    pub fn antisymmetry_defect(&self, a: usize, m: i64, b: usize, n: i64) -> ModeSum {
        let s = self.koszul(a, b);
        self.mode_bracket(a, m, b, n).add_scaled(&s, &self.mode_bracket(b, n, a, m))
    }

    /// `[x,[y,z]] − [[x,y],z] − (−1)^{p(x)p(y)}[y,[x,z]]` for single modes.
    pub fn jacobi_defect(&self, a: usize, m: i64, b: usize, n: i64, c: usize, k: i64) -> ModeSum {
        let (x, y, z) = (ModeSum::basis((a, m)), ModeSum::basis((b, n)), ModeSum::basis((c, k)));
        let lhs = self.bracket(&x, &self.bracket(&y, &z));
        let r1 = self.bracket(&self.bracket(&x, &y), &z);
        let r2 = self.bracket(&y, &self.bracket(&x, &z)).scale(&self.koszul(a, b));
        lhs.sub(&r1).sub(&r2)
    }

    /// Human-readable form of a mode sum.
    pub fn show_modes(&self, x: &ModeSum) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter().map(|((b, k), c)| format!("({})*{}_({})", c, self.p.id(*b), k)).collect::<Vec<_>>().join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{w_l, BasisVector, Element, Parity, ReducedAlgebra};

    #[test]
    fn virasoro_modes() {
        let basis = vec![BasisVector::new("L", w_l(), Parity::Even)];
        let p = ReducedAlgebra::new(basis, "L", vec![(1, 0, 0, Element::term(0, Scalar::from_int(2)))]).unwrap();
        let r = ReconstructedAlgebra::new(p);
        for m in -5..=5i64 {
            for n in -5..=5i64 {
                let expect = ModeSum::term((0, m + n - 1), Scalar::from_int(m - n));
                assert_eq!(r.mode_bracket(0, m, 0, n), expect, "m={} n={}", m, n);
            }
        }
    }
}
