//! Reduced algebras `(P, {⟨n⟩}, L)`: the finite data from which a regular
//! conformal superalgebra is reconstructed.
//!
//! A [`ReducedAlgebra`] stores a weight-homogeneous basis, the distinguished
//! conformal vector `L` (a basis vector) and dense product tables
//! `⟨a n b⟩` for `n` below a stored bound. Everything else — the derived
//! products `∘` and `•`, axiom checkers, invariant forms, ideals and
//! simplicity tests — is computed from this data.

mod axioms;
mod coeffs;
mod forms;
mod json;
mod subspace;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

pub use axioms::{Report, Violation};
pub(crate) use axioms::{big_binom, CoeffCache};
pub use coeffs::{binomial, coeff_f, coeff_f_rational, coeff_g, coeff_g_rational, in_neg_half_nat, Weight};
pub use forms::{NullFrame, SymbolicSimplicity, V3Basis, WedgeBasis};
pub use json::{AlgebraJson, BasisJson, ProductJson, TermJson};
pub use subspace::{Simplicity, Subspace};

use crate::lincomb::LinComb;
use crate::scalar::{Scalar, ScalarError};

/// An element of a reduced algebra: a linear combination of basis indices.
pub type Element = LinComb<usize>;

/// Errors raised by reduced-algebra operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown basis vector {0:?}")]
    UnknownBasisVector(String),
    #[error("duplicate basis vector {0:?}")]
    DuplicateBasisVector(String),
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("input is not weight/parity homogeneous")]
    NonHomogeneousInput,
    #[error("not a physical algebra: {0}")]
    NotPhysical(String),
    #[error("wrong weight: {0}")]
    WrongWeight(String),
    #[error("wrong dimension: {0}")]
    WrongDimension(String),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace contains the conformal vector")]
    ContainsConformalVector,
    #[error("invalid algebra data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Parity of a homogeneous vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Option<Parity> {
        match b {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A named homogeneous basis vector with conformal weight and parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub id: String,
    pub weight: Weight,
    pub parity: Parity,
}

impl BasisVector {
    pub fn new(id: impl Into<String>, weight: Weight, parity: Parity) -> Self {
        BasisVector { id: id.into(), weight, parity }
    }
}

/// Weight of the physical subspaces.
pub fn w_l() -> Weight {
    Weight::from_integer(2)
}
pub fn w_v() -> Weight {
    Weight::new(3, 2)
}
pub fn w_a() -> Weight {
    Weight::from_integer(1)
}
pub fn w_f() -> Weight {
    Weight::new(1, 2)
}

/// `(−1)^{p q}` as a scalar.
pub fn koszul(p: Parity, q: Parity) -> Scalar {
    if p == Parity::Odd && q == Parity::Odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// The data `(P, {⟨n⟩}, L)` with a homogeneous basis and dense product tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedAlgebra {
    basis: Vec<BasisVector>,
    index: HashMap<String, usize>,
    l: usize,
    /// `tables[n][a * dim + b] = ⟨a n b⟩`; trailing all-zero tables are trimmed.
    tables: Vec<Vec<Element>>,
    circ: Vec<Element>,
}

impl ReducedAlgebra {
    /// Builds an algebra from a basis, the id of `L`, and product entries
    /// `(n, a, b, ⟨a n b⟩)`; validates weight and parity bookkeeping.
    pub fn new(
        basis: Vec<BasisVector>,
        l_id: &str,
        products: Vec<(usize, usize, usize, Element)>,
    ) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (k, b) in basis.iter().enumerate() {
            if index.insert(b.id.clone(), k).is_some() {
                return Err(AlgebraError::DuplicateBasisVector(b.id.clone()));
            }
        }
        let l = *index.get(l_id).ok_or_else(|| AlgebraError::UnknownBasisVector(l_id.to_string()))?;
        let dim = basis.len();
        let mut tables: Vec<Vec<Element>> = Vec::new();
        for (n, a, b, e) in products {
            if a >= dim || b >= dim || e.keys().any(|&k| k >= dim) {
                return Err(AlgebraError::Invalid("basis index out of range".into()));
            }
            while tables.len() <= n {
                tables.push(vec![Element::zero(); dim * dim]);
            }
            let slot = &mut tables[n][a * dim + b];
            *slot = slot.add(&e);
        }
        let mut alg = ReducedAlgebra { basis, index, l, tables, circ: Vec::new() };
        alg.trim();
        alg.validate_grading()?;
        alg.rebuild_circ();
        Ok(alg)
    }

    fn trim(&mut self) {
        while self.tables.last().is_some_and(|t| t.iter().all(|e| e.is_zero())) {
            self.tables.pop();
        }
    }

    fn rebuild_circ(&mut self) {
        let dim = self.dim();
        let mut circ = vec![Element::zero(); dim * dim];
        if let Some(t1) = self.tables.get(1) {
            for a in 0..dim {
                for b in 0..dim {
                    let e = &t1[a * dim + b];
                    if e.is_zero() {
                        continue;
                    }
                    let d = self.basis[a].weight + self.basis[b].weight - Weight::from_integer(2);
                    if !d.is_zero() {
                        let inv = Scalar::from_frac(*d.denom(), *d.numer());
                        circ[a * dim + b] = e.scale(&inv);
                    }
                }
            }
        }
        self.circ = circ;
    }

    fn validate_grading(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        if self.basis[self.l].parity != Parity::Even {
            return Err(AlgebraError::GradingViolation("L must be even".into()));
        }
        for (n, t) in self.tables.iter().enumerate() {
            for a in 0..dim {
                for b in 0..dim {
                    let e = &t[a * dim + b];
                    let w = self.basis[a].weight + self.basis[b].weight - Weight::from_integer(n as i64 + 1);
                    let p = self.basis[a].parity.add(self.basis[b].parity);
                    for &k in e.keys() {
                        if self.basis[k].weight != w || self.basis[k].parity != p {
                            return Err(AlgebraError::GradingViolation(format!(
                                "<{} {} {}> has a component along {} (weight {}, parity {}); expected weight {}, parity {}",
                                self.basis[a].id,
                                n,
                                self.basis[b].id,
                                self.basis[k].id,
                                self.basis[k].weight,
                                self.basis[k].parity.bit(),
                                w,
                                p.bit()
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn basis_vector(&self, k: usize) -> &BasisVector {
        &self.basis[k]
    }

    pub fn weight(&self, k: usize) -> Weight {
        self.basis[k].weight
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.basis[k].parity
    }

    pub fn id(&self, k: usize) -> &str {
        &self.basis[k].id
    }

    /// Index of a basis vector by id.
    pub fn index_of(&self, id: &str) -> Result<usize, AlgebraError> {
        self.index.get(id).copied().ok_or_else(|| AlgebraError::UnknownBasisVector(id.to_string()))
    }

    /// The basis element with the given id.
    pub fn elem(&self, id: &str) -> Result<Element, AlgebraError> {
        Ok(Element::basis(self.index_of(id)?))
    }

    /// Index of the conformal vector `L`.
    pub fn l_index(&self) -> usize {
        self.l
    }

    pub fn l(&self) -> Element {
        Element::basis(self.l)
    }

    /// Number of stored product tables: `⟨a n b⟩ = 0` for `n ≥ product_bound()`.
    pub fn product_bound(&self) -> usize {
        self.tables.len()
    }

    /// Basis indices of the given weight, in basis order.
    pub fn indices_of_weight(&self, w: Weight) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].weight == w).collect()
    }

    /// `⟨a n b⟩` on basis indices.
    pub fn table(&self, n: usize, a: usize, b: usize) -> &Element {
        static ZERO: std::sync::OnceLock<Element> = std::sync::OnceLock::new();
        match self.tables.get(n) {
            Some(t) => &t[a * self.dim() + b],
            None => ZERO.get_or_init(Element::zero),
        }
    }

    /// Basis-level `a ∘ b`.
    pub fn circ_basis(&self, a: usize, b: usize) -> &Element {
        &self.circ[a * self.dim() + b]
    }

    /// Basis-level `a • b`.
    pub fn bullet_basis(&self, a: usize, b: usize) -> &Element {
        self.table(0, a, b)
    }

    fn bilinear(&self, x: &Element, y: &Element, f: impl Fn(usize, usize) -> Element) -> Element {
        let mut acc = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let e = f(*a, *b);
                if !e.is_zero() {
                    acc = acc.add_scaled(&(ca * cb), &e);
                }
            }
        }
        acc
    }

    /// `⟨x n y⟩`, the bilinear extension of the stored tables.
    pub fn product_n(&self, x: &Element, y: &Element, n: usize) -> Element {
        if n >= self.tables.len() {
            return Element::zero();
        }
        self.bilinear(x, y, |a, b| self.table(n, a, b).clone())
    }

    /// `x ∘ y = ⟨x 1 y⟩/(Δx+Δy−2)` (zero when the denominator vanishes),
    /// extended bilinearly over homogeneous components.
    pub fn circ(&self, x: &Element, y: &Element) -> Element {
        self.bilinear(x, y, |a, b| self.circ_basis(a, b).clone())
    }

    /// `x • y = ⟨x 0 y⟩`.
    pub fn bullet(&self, x: &Element, y: &Element) -> Element {
        self.product_n(x, y, 0)
    }

    /// Homogeneity-checked `∘`.
    pub fn try_circ(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.homogeneous_weight(x)?;
        self.homogeneous_weight(y)?;
        Ok(self.circ(x, y))
    }

    /// Homogeneity-checked `•`.
    pub fn try_bullet(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.homogeneous_weight(x)?;
        self.homogeneous_weight(y)?;
        Ok(self.bullet(x, y))
    }

    /// Weight and parity of a nonzero homogeneous element (`None` for zero).
    pub fn homogeneous_weight(&self, x: &Element) -> Result<Option<(Weight, Parity)>, AlgebraError> {
        let mut it = x.keys();
        let Some(&first) = it.next() else { return Ok(None) };
        let (w, p) = (self.basis[first].weight, self.basis[first].parity);
        if it.any(|&k| self.basis[k].weight != w || self.basis[k].parity != p) {
            return Err(AlgebraError::NonHomogeneousInput);
        }
        Ok(Some((w, p)))
    }

    /// Right-nested chain `x₁ ⊙₁ (x₂ ⊙₂ (… ⊙ z))` where each operator is `∘` (`'o'`) or `•` (`'.'`).
    pub fn chain(&self, ops: &[(char, &Element)], z: &Element) -> Element {
        let mut acc = z.clone();
        for (op, x) in ops.iter().rev() {
            acc = match op {
                'o' => self.circ(x, &acc),
                _ => self.bullet(x, &acc),
            };
        }
        acc
    }

    /// Coefficient of `L` in an element.
    pub fn l_coeff(&self, x: &Element) -> Scalar {
        x.coeff(&self.l)
    }

    /// True when the weight set is contained in {2, 3/2, 1, 1/2}, parities match
    /// weights, the weight-2 space is spanned by `L`, and only `⟨0⟩`, `⟨1⟩` are nonzero.
    pub fn physical_check(&self) -> Result<(), AlgebraError> {
        for b in &self.basis {
            let expected = if b.weight == w_l() || b.weight == w_a() {
                Parity::Even
            } else if b.weight == w_v() || b.weight == w_f() {
                Parity::Odd
            } else {
                return Err(AlgebraError::NotPhysical(format!("{} has weight {}", b.id, b.weight)));
            };
            if b.parity != expected {
                return Err(AlgebraError::NotPhysical(format!("{} has the wrong parity", b.id)));
            }
        }
        if self.basis[self.l].weight != w_l() || self.indices_of_weight(w_l()).len() != 1 {
            return Err(AlgebraError::NotPhysical("the weight-2 space must be spanned by L".into()));
        }
        if self.tables.len() > 2 {
            return Err(AlgebraError::NotPhysical("products <n> with n >= 2 are nonzero".into()));
        }
        Ok(())
    }

    pub fn is_physical(&self) -> bool {
        self.physical_check().is_ok()
    }

    /// Dimensions per weight in decreasing weight order.
    pub fn weight_dims(&self) -> Vec<(Weight, usize)> {
        let mut ws: Vec<Weight> = self.basis.iter().map(|b| b.weight).collect();
        ws.sort();
        ws.dedup();
        ws.reverse();
        ws.into_iter().map(|w| (w, self.indices_of_weight(w).len())).collect()
    }

    /// All stored nonzero product entries `(n, a, b, ⟨a n b⟩)` in canonical order.
    pub fn product_entries(&self) -> Vec<(usize, usize, usize, Element)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for (n, t) in self.tables.iter().enumerate() {
            for a in 0..dim {
                for b in 0..dim {
                    let e = &t[a * dim + b];
                    if !e.is_zero() {
                        out.push((n, a, b, e.clone()));
                    }
                }
            }
        }
        out
    }

    /// Applies a coefficient map to every structure constant (e.g. α-specialization).
    pub fn try_map_scalars(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Self, AlgebraError> {
        let entries = self
            .product_entries()
            .into_iter()
            .map(|(n, a, b, e)| Ok((n, a, b, e.try_map_coeffs(&f)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        Self::new(self.basis.clone(), self.id(self.l), entries)
    }

    /// Specializes the formal parameter α to a Gaussian rational.
    pub fn evaluate_alpha(&self, v: &crate::scalar::GaussRat) -> Result<Self, AlgebraError> {
        self.try_map_scalars(|s| s.evaluate_alpha(v))
    }

    /// Substitutes a scalar (possibly itself depending on α) for α.
    pub fn substitute_alpha(&self, v: &Scalar) -> Result<Self, AlgebraError> {
        self.try_map_scalars(|s| s.substitute_alpha(v))
    }

    /// True when some structure constant depends on α.
    pub fn involves_alpha(&self) -> bool {
        self.tables.iter().flatten().any(|e| e.iter().any(|(_, c)| !c.is_alpha_free()))
    }

    /// Same algebra with one product entry replaced (used by mutation tests).
    pub fn with_entry(&self, n: usize, a: usize, b: usize, value: Element) -> Result<Self, AlgebraError> {
        let mut entries: Vec<_> =
            self.product_entries().into_iter().filter(|(nn, aa, bb, _)| !(*nn == n && *aa == a && *bb == b)).collect();
        entries.push((n, a, b, value));
        Self::new(self.basis.clone(), self.id(self.l), entries)
    }

    /// Renders an element with basis ids.
    pub fn show(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|(k, c)| if c.is_one() { self.id(*k).to_string() } else { format!("({})*{}", c, self.id(*k)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ReducedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.weight_dims().iter().map(|(w, d)| format!("{}:{}", w, d)).collect();
        write!(f, "reduced algebra of dimension {} ({})", self.dim(), dims.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn virasoro() -> ReducedAlgebra {
        ReducedAlgebra::new(
            vec![BasisVector::new("L", w_l(), Parity::Even)],
            "L",
            vec![(1, 0, 0, Element::term(0, Scalar::from_int(2)))],
        )
        .unwrap()
    }

    #[test]
    fn vir_products() {
        let vir = virasoro();
        let l = vir.l();
        assert_eq!(vir.product_n(&l, &l, 1), l.scale(&Scalar::from_int(2)));
        assert!(vir.product_n(&l, &l, 0).is_zero());
        assert_eq!(vir.circ(&l, &l), l);
        assert!(vir.bullet(&l, &l).is_zero());
        assert!(vir.is_physical());
    }

    #[test]
    fn grading_is_enforced() {
        let basis = vec![BasisVector::new("L", w_l(), Parity::Even), BasisVector::new("v", w_v(), Parity::Odd)];
        let bad = ReducedAlgebra::new(basis, "L", vec![(0, 1, 1, Element::basis(1))]);
        assert!(matches!(bad, Err(AlgebraError::GradingViolation(_))));
    }
}
