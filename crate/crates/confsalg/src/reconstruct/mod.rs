//! The conformal superalgebra `R_P = K[∂]P` reconstructed from a reduced
//! algebra `P`.
//!
//! Elements are finite ∂-polynomials `x = Σ_j ∂^{(j)} x^j` (divided powers
//! `∂^{(j)} = ∂^j / j!`) with `x^j ∈ P`; basis vectors of weight `0` are
//! annihilated by `∂`. Products of basis vectors are
//! `a₍ₙ₎b = Σ_j G(Δa, Δb, n, j) ∂^{(j)} ⟨a n+j b⟩`, extended to ∂-shifted
//! arguments by `(∂^{(k)}a)₍ₙ₎(∂^{(l)}b) =
//! (−1)^k Σ_j n!/(k! j! (n−k−j)!) ∂^{(l−j)}(a₍ₙ₋ₖ₋ⱼ₎b)`.

mod axioms;
mod conformal;
mod modes;

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;

use crate::algebra::{big_binom, coeff_g, AlgebraError, Element, Parity, ReducedAlgebra, Weight};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

pub use modes::ModeSum;

/// Errors of the reconstruction layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReconstructError {
    #[error("not of N4 shape: {0}")]
    NotN4Shape(String),
    #[error("the new conformal vector violates axiom (V): {0}")]
    AxiomVFails(String),
    #[error("no reduced subspace for the new conformal vector: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A ∂-polynomial `Σ c · ∂^{(j)} b` over the basis of `P`; keys are `(j, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DPolyElement(LinComb<(u32, usize)>);

impl DPolyElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `∂^{(j)} b` for a basis index `b`.
    pub fn term(j: u32, b: usize, c: Scalar) -> Self {
        DPolyElement(LinComb::term((j, b), c))
    }

    /// An element of `P` (∂-degree zero).
    pub fn from_element(x: &Element) -> Self {
        DPolyElement(x.map_keys(|&b| (0, b)))
    }

    /// Assembles `Σ_j ∂^{(j)} parts[j]`.
    pub fn assemble(parts: &[Element]) -> Self {
        let mut out = LinComb::zero();
        for (j, p) in parts.iter().enumerate() {
            out = out.add(&p.map_keys(|&b| (j as u32, b)));
        }
        DPolyElement(out)
    }

    /// The `j`-part `x^j`.
    pub fn dpart(&self, j: u32) -> Element {
        Element::from_terms(self.0.iter().filter(|((jj, _), _)| *jj == j).map(|((_, b), c)| (*b, c.clone())))
    }

    /// Largest ∂-degree present.
    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(|(j, _)| *j).max()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, usize, &Scalar)> {
        self.0.iter().map(|((j, b), c)| (*j, *b, c))
    }

    pub fn terms(&self) -> &LinComb<(u32, usize)> {
        &self.0
    }

    pub fn add(&self, o: &Self) -> Self {
        DPolyElement(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        DPolyElement(self.0.sub(&o.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DPolyElement(self.0.scale(c))
    }

    pub fn add_scaled(&self, c: &Scalar, o: &Self) -> Self {
        DPolyElement(self.0.add_scaled(c, &o.0))
    }

    pub(crate) fn from_lincomb(x: LinComb<(u32, usize)>) -> Self {
        DPolyElement(x)
    }
}

/// `R_P` with lazily cached products of ∂-shifted basis vectors.
pub struct ReconstructedAlgebra {
    p: ReducedAlgebra,
    cache: RwLock<HashMap<(u32, usize, u32, usize, u32), DPolyElement>>,
}

impl fmt::Debug for ReconstructedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReconstructedAlgebra").field("p", &self.p).finish()
    }
}

impl Clone for ReconstructedAlgebra {
    fn clone(&self) -> Self {
        ReconstructedAlgebra::new(self.p.clone())
    }
}

fn factorial_ratio(n: u32, k: u32, j: u32) -> Scalar {
    // n! / (k! j! (n−k−j)!) = C(n, k) · C(n−k, j)
    &big_binom(n, k) * &big_binom(n - k, j)
}

impl ReconstructedAlgebra {
    pub fn new(p: ReducedAlgebra) -> Self {
        ReconstructedAlgebra { p, cache: RwLock::new(HashMap::new()) }
    }

    /// The underlying reduced algebra.
    pub fn reduced(&self) -> &ReducedAlgebra {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// Weight of `∂^{(j)} b`.
    pub fn weight_of(&self, j: u32, b: usize) -> Weight {
        self.p.weight(b) + Weight::from_integer(j as i64)
    }

    pub fn parity_of(&self, b: usize) -> Parity {
        self.p.parity(b)
    }

    /// Drops components `∂^{(j)} b` with `j ≥ 1` and `Δb = 0`.
    fn normalize(&self, x: LinComb<(u32, usize)>) -> DPolyElement {
        if x.keys().any(|&(j, b)| j > 0 && self.p.weight(b).is_zero()) {
            DPolyElement(LinComb::from_terms(
                x.into_terms().into_iter().filter(|((j, b), _)| *j == 0 || !self.p.weight(*b).is_zero()),
            ))
        } else {
            DPolyElement(x)
        }
    }

    /// `∂^{(m)} x`, using `∂^{(m)}∂^{(j)} = C(j+m, m) ∂^{(j+m)}`.
    pub fn derive(&self, x: &DPolyElement, m: u32) -> DPolyElement {
        if m == 0 {
            return x.clone();
        }
        let terms = x.0.iter().map(|((j, b), c)| ((j + m, *b), c * &big_binom(j + m, m)));
        self.normalize(LinComb::from_terms(terms))
    }

    /// `a₍ₙ₎b` for basis vectors: `Σ_j G(Δa, Δb, n, j) ∂^{(j)} ⟨a n+j b⟩`.
    pub fn basis_product(&self, a: usize, b: usize, n: u32) -> DPolyElement {
        let (da, db) = (self.p.weight(a), self.p.weight(b));
        let mut out = LinComb::zero();
        let mut j = 0u32;
        while ((n + j) as usize) < self.p.product_bound() {
            let e = self.p.table((n + j) as usize, a, b);
            if !e.is_zero() {
                let g = coeff_g(da, db, n, j);
                if !g.is_zero() {
                    out = out.add(&e.map_keys(|&k| (j, k)).scale(&g));
                }
            }
            j += 1;
        }
        self.normalize(out)
    }

    /// `(∂^{(k)}a)₍ₙ₎(∂^{(l)}b)` for basis vectors, cached.
    pub fn shifted_product(&self, k: u32, a: usize, l: u32, b: usize, n: u32) -> DPolyElement {
        if k > n {
            return DPolyElement::zero();
        }
        let key = (k, a, l, b, n);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let mut out = DPolyElement::zero();
        if k == 0 || !self.p.weight(a).is_zero() {
            for j in 0..=l.min(n - k) {
                let inner = self.basis_product(a, b, n - k - j);
                if inner.is_zero() {
                    continue;
                }
                let mut c = factorial_ratio(n, k, j);
                if k % 2 == 1 {
                    c = -c;
                }
                out = out.add_scaled(&c, &self.derive(&inner, l - j));
            }
        }
        if l > 0 && self.p.weight(b).is_zero() {
            out = DPolyElement::zero();
        }
        self.cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    /// The `(n)`-product of two ∂-polynomials.
    pub fn full_product(&self, x: &DPolyElement, y: &DPolyElement, n: u32) -> DPolyElement {
        let mut out = LinComb::zero();
        for ((k, a), ca) in x.0.iter() {
            for ((l, b), cb) in y.0.iter() {
                let p = self.shifted_product(*k, *a, *l, *b, n);
                if !p.is_zero() {
                    out = out.add_scaled(&(ca * cb), &p.0);
                }
            }
        }
        DPolyElement(out)
    }

    /// Koszul sign `(−1)^{p(a)p(b)}` of two basis vectors.
    pub(crate) fn koszul(&self, a: usize, b: usize) -> Scalar {
        crate::algebra::koszul(self.p.parity(a), self.p.parity(b))
    }

    /// Human-readable form of a ∂-polynomial.
    pub fn show(&self, x: &DPolyElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .0
            .iter()
            .map(|((j, b), c)| {
                let id = self.p.id(*b);
                let v = if *j == 0 { id.to_string() } else { format!("d^({}){}", j, id) };
                format!("({})*{}", c, v)
            })
            .collect();
        parts.join(" + ")
    }
}
