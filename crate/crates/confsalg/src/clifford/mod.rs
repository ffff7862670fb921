//! Clifford algebras `Cl(V)` on a null basis, the decomposition of the left
//! regular module, the spinor representation on Grassmann polynomials and the
//! multidegree projections.
//!
//! Generators are ordered `D₁ < D̄₁ < D₂ < D̄₂ < … < e` and indexed `0, 1, …`;
//! a basis word is the bitmask of its (strictly increasing) generators.

mod spinor;

use std::fmt;

pub use spinor::{d_x, mul_x, GrassmannPoly, SpinorValue};

use crate::algebra::Subspace;
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// An element of `Cl(V)`: a linear combination of normal-ordered words.
pub type CliffordElement = LinComb<usize>;

/// Errors raised by Clifford computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("elements belong to different Clifford algebras")]
    MismatchedAlgebra,
    #[error("the generator e has no action in the even spinor representation")]
    OddGeneratorInEvenRep,
    #[error("invalid kernel description: {0}")]
    InvalidKernelDescription(String),
}

/// `Cl(V, (·,·))` with `dim V = 2n` or `2n + 1` on the null basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CliffordAlgebra {
    pairs: usize,
    odd: bool,
}

/// A left submodule `M(w) = Cl(V)D^w` or `M^±(w) = Cl(V)D^w(1 ± e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSubmodule {
    /// Digits `w_i` (0 selects `D_i`, 1 selects `D̄_i`).
    pub w: Vec<u8>,
    /// `Some(+1)`/`Some(-1)` for the odd-dimensional `M^±(w)`.
    pub sign: Option<i8>,
    pub generator: CliffordElement,
    pub space: Subspace,
}

impl CliffordSubmodule {
    /// Label such as `M(01)` or `M+(1)`.
    pub fn label(&self) -> String {
        let digits: String = self.w.iter().map(|d| char::from(b'0' + d)).collect();
        match self.sign {
            None => format!("M({})", digits),
            Some(s) if s > 0 => format!("M+({})", digits),
            Some(_) => format!("M-({})", digits),
        }
    }
}

impl CliffordAlgebra {
    pub fn new(dim_v: usize) -> Self {
        assert!(dim_v <= 30, "dimension too large for bitmask words");
        CliffordAlgebra { pairs: dim_v / 2, odd: dim_v % 2 == 1 }
    }

    pub fn dim_v(&self) -> usize {
        2 * self.pairs + usize::from(self.odd)
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// Dimension of the algebra, `2^{dim V}`.
    pub fn dim(&self) -> usize {
        1 << self.dim_v()
    }

    pub fn d(&self, i: usize) -> usize {
        2 * i
    }

    pub fn dbar(&self, i: usize) -> usize {
        2 * i + 1
    }

    pub fn e(&self) -> Option<usize> {
        if self.odd {
            Some(2 * self.pairs)
        } else {
            None
        }
    }

    /// Generator name: `D1`, `Db1`, …, `e`.
    pub fn gen_name(&self, g: usize) -> String {
        if Some(g) == self.e() {
            "e".into()
        } else if g % 2 == 0 {
            format!("D{}", g / 2 + 1)
        } else {
            format!("Db{}", g / 2 + 1)
        }
    }

    /// The pairing `(g_a, g_b)` of generators.
    pub fn form(&self, a: usize, b: usize) -> Scalar {
        if Some(a) == self.e() && a == b {
            return Scalar::one();
        }
        if Some(a) == self.e() || Some(b) == self.e() {
            return Scalar::zero();
        }
        if a / 2 == b / 2 && a != b {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    pub fn one(&self) -> CliffordElement {
        CliffordElement::basis(0)
    }

    pub fn gen(&self, g: usize) -> CliffordElement {
        CliffordElement::basis(1 << g)
    }

    /// Left multiplication of a word by a generator, in normal form.
    pub fn gen_times_word(&self, g: usize, word: usize) -> CliffordElement {
        if word == 0 {
            return CliffordElement::basis(1 << g);
        }
        let low = word.trailing_zeros() as usize;
        if g < low {
            return CliffordElement::basis(word | (1 << g));
        }
        let rest = word & !(1 << low);
        if g == low {
            return CliffordElement::term(rest, self.form(g, g));
        }
        // g_g g_low = −g_low g_g + 2(g_g, g_low)
        let moved = self.gen_times_word(g, rest);
        let prefixed = CliffordElement::from_terms(moved.iter().map(|(w, c)| (w | (1 << low), -c)));
        let f = self.form(g, low);
        if f.is_zero() {
            prefixed
        } else {
            prefixed.add_scaled(&(&Scalar::from_int(2) * &f), &CliffordElement::basis(rest))
        }
    }

    /// Product of two words.
    pub fn word_mul(&self, a: usize, b: usize) -> CliffordElement {
        let mut acc = CliffordElement::basis(b);
        for g in (0..self.dim_v()).rev() {
            if a & (1 << g) != 0 {
                acc = acc.linear_map(|&w| self.gen_times_word(g, w));
            }
        }
        acc
    }

    /// Associative product in normal form.
    pub fn mul(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        let mut acc = CliffordElement::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                acc = acc.add_scaled(&(ca * cb), &self.word_mul(*a, *b));
            }
        }
        acc
    }

    /// Product of a sequence of elements.
    pub fn product(&self, xs: &[CliffordElement]) -> CliffordElement {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// `D^w = D₁^{w₁} ⋯ D_n^{w_n}`.
    pub fn d_w(&self, w: &[u8]) -> CliffordElement {
        let gens: Vec<CliffordElement> =
            w.iter().enumerate().map(|(i, &d)| self.gen(if d == 0 { self.d(i) } else { self.dbar(i) })).collect();
        self.product(&gens)
    }

    /// All digit vectors `w ∈ (Z/2)^n` in lexicographic order.
    pub fn all_w(&self) -> Vec<Vec<u8>> {
        (0..1usize << self.pairs).map(|m| (0..self.pairs).map(|i| ((m >> (self.pairs - 1 - i)) & 1) as u8).collect()).collect()
    }

    /// The left submodule `Cl(V) x` generated by `x`.
    pub fn generated_submodule(&self, x: &CliffordElement) -> Subspace {
        let span: Vec<CliffordElement> = (0..self.dim()).map(|w| self.mul(&CliffordElement::basis(w), x)).collect();
        Subspace::spanned_by(span.iter())
    }

    /// The submodule `M(w)` (even case) or `M^±(w)` (odd case, `sign = ±1`).
    pub fn submodule(&self, w: &[u8], sign: Option<i8>) -> CliffordSubmodule {
        let mut g = self.d_w(w);
        if let (Some(e), Some(s)) = (self.e(), sign) {
            let one_pm_e = self.one().add_scaled(&Scalar::from_int(s as i64), &self.gen(e));
            g = self.mul(&g, &one_pm_e);
        }
        let space = self.generated_submodule(&g);
        CliffordSubmodule { w: w.to_vec(), sign, generator: g, space }
    }

    /// The decomposition of the left regular module into irreducibles:
    /// `2^n` modules `M(w)` for even `dim V`, `2^{n+1}` modules `M^±(w)` for odd.
    pub fn module_decompose(&self) -> Vec<CliffordSubmodule> {
        let mut out = Vec::new();
        for w in self.all_w() {
            if self.odd {
                out.push(self.submodule(&w, Some(1)));
                out.push(self.submodule(&w, Some(-1)));
            } else {
                out.push(self.submodule(&w, None));
            }
        }
        out
    }

    /// True when the subspace is closed under left multiplication by every generator.
    pub fn is_left_submodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| (0..self.dim_v()).all(|g| s.contains(&self.mul(&self.gen(g), x))))
    }

    /// Irreducibility over a spanning set: every echelon basis element (and the
    /// generator) generates the whole module.
    pub fn is_irreducible(&self, m: &CliffordSubmodule) -> bool {
        let d = m.space.dim();
        std::iter::once(m.generator.clone())
            .chain(m.space.basis())
            .all(|x| self.generated_submodule(&x).dim() == d)
    }

    /// Multidegree shift of a word: per pair `+1` for `D_i` alone, `−1` for `D̄_i`
    /// alone, `0` otherwise (the generator `e` carries no shift).
    pub fn word_shift(&self, word: usize) -> Vec<i8> {
        (0..self.pairs)
            .map(|i| {
                let d = word & (1 << self.d(i)) != 0;
                let db = word & (1 << self.dbar(i)) != 0;
                match (d, db) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => 0,
                }
            })
            .collect()
    }

    /// `π_t` on `Cl(V)/I` for `I` a sum of the irreducible submodules; the class is
    /// represented by its reduced form modulo `I`. For odd `dim V` this is the sum
    /// of the `±` projections.
    pub fn project_multidegree(
        &self,
        kernel: &Subspace,
        u: &CliffordElement,
        t: &[i8],
    ) -> Result<CliffordElement, CliffordError> {
        if t.len() != self.pairs {
            return Err(CliffordError::InvalidKernelDescription(format!("t has {} digits, expected {}", t.len(), self.pairs)));
        }
        if !self.is_left_submodule(kernel) {
            return Err(CliffordError::InvalidKernelDescription("kernel is not a left submodule".into()));
        }
        let u = kernel.reduce(u);
        let part = CliffordElement::from_terms(u.iter().filter(|(w, _)| self.word_shift(**w) == t).map(|(w, c)| (*w, c.clone())));
        Ok(kernel.reduce(&part))
    }

    /// All `t ∈ {−1, 0, 1}^n`.
    pub fn all_t(&self) -> Vec<Vec<i8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.pairs {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i8>| {
                    [-1i8, 0, 1].into_iter().map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Renders an element with generator names.
    pub fn show(&self, x: &CliffordElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|(w, c)| {
                let word: Vec<String> = (0..self.dim_v()).filter(|g| w & (1 << g) != 0).map(|g| self.gen_name(g)).collect();
                let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
                if c.is_one() {
                    word
                } else {
                    format!("({})*{}", c, word)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for CliffordAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({})", self.dim_v())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let cl = CliffordAlgebra::new(5);
        let d1 = cl.gen(cl.d(0));
        let db1 = cl.gen(cl.dbar(0));
        let e = cl.gen(cl.e().unwrap());
        assert!(cl.mul(&d1, &d1).is_zero());
        let anti = cl.mul(&d1, &db1).add(&cl.mul(&db1, &d1));
        assert_eq!(anti, cl.one().scale(&Scalar::from_int(2)));
        assert_eq!(cl.mul(&e, &e), cl.one());
        let d2 = cl.gen(cl.d(1));
        assert!(cl.mul(&d1, &d2).add(&cl.mul(&d2, &d1)).is_zero());
    }

    #[test]
    fn decomposition_counts() {
        for (dim, count, each) in [(2, 2, 2), (4, 4, 4), (5, 8, 4)] {
            let cl = CliffordAlgebra::new(dim);
            let mods = cl.module_decompose();
            assert_eq!(mods.len(), count);
            assert!(mods.iter().all(|m| m.space.dim() == each));
            let total = Subspace::spanned_by(mods.iter().flat_map(|m| m.space.basis()).collect::<Vec<_>>().iter());
            assert_eq!(total.dim(), cl.dim());
        }
    }

    #[test]
    fn projections() {
        let cl = CliffordAlgebra::new(4);
        let zero = Subspace::zero();
        let d1 = cl.gen(cl.d(0));
        assert_eq!(cl.project_multidegree(&zero, &d1, &[1, 0]).unwrap(), d1);
        assert!(cl.project_multidegree(&zero, &d1, &[0, 0]).unwrap().is_zero());
        let x = cl.mul(&d1, &cl.gen(cl.dbar(1)));
        assert_eq!(cl.project_multidegree(&zero, &x, &[1, -1]).unwrap(), x);
    }
}
