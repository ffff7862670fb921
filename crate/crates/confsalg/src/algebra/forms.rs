//! Invariant forms of physical algebras: the inner product on `V`, the
//! trilinear map `η`, the forms on `V∧V` and `V∧V∧V`, and the `α`/`β`
//! invariants in a null basis.

use std::collections::BTreeMap;

use super::{w_v, AlgebraError, Element, ReducedAlgebra};
use crate::scalar::{Matrix, Scalar};

/// A null frame of `V`: basis vectors `D₁, D̄₁, …, D_n, D̄_n` (and `e` when
/// `dim V` is odd) with `(D_i, D̄_j) = δ_ij`, all other pairings zero and `(e, e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullFrame {
    /// Basis indices in frame order `D₁, D̄₁, D₂, D̄₂, …, (e)`.
    pub vecs: Vec<usize>,
    pub pairs: usize,
    pub odd: bool,
}

impl NullFrame {
    pub fn d(&self, i: usize) -> usize {
        self.vecs[2 * i]
    }

    pub fn dbar(&self, i: usize) -> usize {
        self.vecs[2 * i + 1]
    }

    pub fn e(&self) -> Option<usize> {
        if self.odd {
            self.vecs.last().copied()
        } else {
            None
        }
    }

    pub fn dim(&self) -> usize {
        self.vecs.len()
    }

    /// Frame label of position `k`: `D1`, `Db1`, …, `e`.
    pub fn label(&self, k: usize) -> String {
        if self.odd && k + 1 == self.vecs.len() {
            "e".into()
        } else if k % 2 == 0 {
            format!("D{}", k / 2 + 1)
        } else {
            format!("Db{}", k / 2 + 1)
        }
    }
}

/// Ordered basis of `V∧V` as pairs of frame positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    pub pairs: Vec<(usize, usize)>,
}

impl WedgeBasis {
    /// The fixed order: `D̄_i∧D_i` for each `i`; then for `i < j`:
    /// `D_i∧D_j, D̄_i∧D_j, D_i∧D̄_j, D̄_i∧D̄_j`; then `D_i∧e, D̄_i∧e`.
    /// For `dim V = 4` this is `E₁ … E₆` of the standard table.
    pub fn standard(frame: &NullFrame) -> Self {
        let n = frame.pairs;
        let mut pairs = Vec::new();
        for i in 0..n {
            pairs.push((2 * i + 1, 2 * i));
        }
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((2 * i, 2 * j));
                pairs.push((2 * i + 1, 2 * j));
                pairs.push((2 * i, 2 * j + 1));
                pairs.push((2 * i + 1, 2 * j + 1));
            }
        }
        if frame.odd {
            let e = 2 * n;
            for i in 0..n {
                pairs.push((2 * i, e));
                pairs.push((2 * i + 1, e));
            }
        }
        WedgeBasis { pairs }
    }

    pub fn labels(&self, frame: &NullFrame) -> Vec<String> {
        self.pairs.iter().map(|&(a, b)| format!("{}^{}", frame.label(a), frame.label(b))).collect()
    }
}

/// Basis of `V∧V∧V`: increasing triples of frame positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V3Basis {
    pub triples: Vec<[usize; 3]>,
}

impl V3Basis {
    pub fn standard(frame: &NullFrame) -> Self {
        let d = frame.dim();
        let mut triples = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    triples.push([a, b, c]);
                }
            }
        }
        V3Basis { triples }
    }
}

/// Outcome of a symbolic simplicity analysis over Q(i)(α).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSimplicity {
    /// Simple for generic α.
    pub generic: bool,
    /// Square-free polynomial in α whose nonvanishing is equivalent to simplicity
    /// (constant when no special values exist).
    pub condition: crate::scalar::Poly,
}

impl ReducedAlgebra {
    /// Basis indices of `V`, `A`, `F`.
    pub fn v_indices(&self) -> Vec<usize> {
        self.indices_of_weight(w_v())
    }

    fn check_in_v(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.keys().all(|&k| self.weight(k) == w_v()) {
            Ok(())
        } else {
            Err(AlgebraError::WrongWeight(format!("{} is not in V", self.show(x))))
        }
    }

    /// `(u, v)`: the coefficient of `L` in `⟨u 0 v⟩`.
    pub fn inner_product_v(&self, u: &Element, v: &Element) -> Result<Scalar, AlgebraError> {
        self.check_in_v(u)?;
        self.check_in_v(v)?;
        Ok(self.l_coeff(&self.bullet(u, v)))
    }

    /// Gram matrix of the inner product on the `V` basis (in basis order).
    pub fn gram_v(&self) -> Matrix {
        let vs = self.v_indices();
        let mut m = Matrix::zeros(vs.len(), vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate() {
                m.set(i, j, self.l_coeff(self.bullet_basis(a, b)));
            }
        }
        m
    }

    /// `η(u, v, w) = u • (v ∘ w)`.
    pub fn eta(&self, u: &Element, v: &Element, w: &Element) -> Result<Element, AlgebraError> {
        self.check_in_v(u)?;
        self.check_in_v(v)?;
        self.check_in_v(w)?;
        Ok(self.bullet(u, &self.circ(v, w)))
    }

    /// Recognizes the `V` basis (in basis order) as a null frame.
    pub fn null_frame(&self) -> Result<NullFrame, AlgebraError> {
        self.physical_check()?;
        let vecs = self.v_indices();
        let g = self.gram_v();
        let d = vecs.len();
        let pairs = d / 2;
        let odd = d % 2 == 1;
        for i in 0..d {
            for j in 0..d {
                let expect = if odd && i == d - 1 && j == d - 1 {
                    Scalar::one()
                } else if i / 2 == j / 2 && i != j && i < 2 * pairs && j < 2 * pairs {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                if g.get(i, j) != &expect {
                    return Err(AlgebraError::WrongDimension(format!(
                        "the V basis is not a null frame: ({}, {}) = {}",
                        self.id(vecs[i]),
                        self.id(vecs[j]),
                        g.get(i, j)
                    )));
                }
            }
        }
        Ok(NullFrame { vecs, pairs, odd })
    }

    /// `(u∧v, w∧z)` with `(u∧v, w∧z) L = u • η(v, w, z)`.
    pub fn wedge_form(&self, u: &Element, v: &Element, w: &Element, z: &Element) -> Result<Scalar, AlgebraError> {
        let eta = self.eta(v, w, z)?;
        Ok(self.l_coeff(&self.bullet(u, &eta)))
    }

    /// Gram matrix of `(·,·)_{V∧V}` on [`WedgeBasis::standard`].
    pub fn form_v_wedge_v(&self) -> Result<(Matrix, WedgeBasis), AlgebraError> {
        let frame = self.null_frame()?;
        let wb = WedgeBasis::standard(&frame);
        let e = |k: usize| Element::basis(frame.vecs[k]);
        let n = wb.pairs.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &(u, v)) in wb.pairs.iter().enumerate() {
            for (j, &(w, z)) in wb.pairs.iter().enumerate() {
                m.set(i, j, self.wedge_form(&e(u), &e(v), &e(w), &e(z))?);
            }
        }
        Ok((m, wb))
    }

    /// `⟨u₁∧u₂∧u₃, v₁∧v₂∧v₃⟩` with value `L`-coefficient of `u₃•u₂•u₁•v₁∘v₂∘v₃`.
    pub fn v3_pairing(&self, u: [&Element; 3], v: [&Element; 3]) -> Scalar {
        let inner = self.circ(v[0], &self.circ(v[1], v[2]));
        let x = self.bullet(u[2], &self.bullet(u[1], &self.bullet(u[0], &inner)));
        self.l_coeff(&x)
    }

    /// Gram matrix of the form on `V∧V∧V` on [`V3Basis::standard`].
    pub fn form_v3(&self) -> Result<(Matrix, V3Basis), AlgebraError> {
        let frame = self.null_frame()?;
        if frame.dim() < 3 {
            return Err(AlgebraError::WrongDimension("dim V < 3".into()));
        }
        let basis = V3Basis::standard(&frame);
        let e: Vec<Element> = frame.vecs.iter().map(|&k| Element::basis(k)).collect();
        let n = basis.triples.len();
        let mut m = Matrix::zeros(n, n);
        for (i, t) in basis.triples.iter().enumerate() {
            for (j, s) in basis.triples.iter().enumerate() {
                m.set(i, j, self.v3_pairing([&e[t[0]], &e[t[1]], &e[t[2]]], [&e[s[0]], &e[s[1]], &e[s[2]]]));
            }
        }
        Ok((m, basis))
    }

    /// `α_{i,j} L = D_i • D̄_i • D_j ∘ D̄_j` (an `n × n` matrix).
    pub fn alpha_matrix(&self) -> Result<Matrix, AlgebraError> {
        let frame = self.null_frame()?;
        let n = frame.pairs;
        if n == 0 {
            return Err(AlgebraError::WrongDimension("dim V < 2".into()));
        }
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = self.chain(
                    &[('.', &Element::basis(frame.d(i))), ('.', &Element::basis(frame.dbar(i))), ('o', &Element::basis(frame.d(j)))],
                    &Element::basis(frame.dbar(j)),
                );
                m.set(i, j, self.l_coeff(&x));
            }
        }
        Ok(m)
    }

    /// Nonzero `β_{i,j,k,l}` with `β L = D_i • D_j • D_k ∘ D_l`, indices being
    /// frame positions among the `2n` null vectors.
    pub fn beta_tensor(&self) -> Result<BTreeMap<[usize; 4], Scalar>, AlgebraError> {
        let frame = self.null_frame()?;
        let nn = 2 * frame.pairs;
        let e: Vec<Element> = frame.vecs.iter().map(|&k| Element::basis(k)).collect();
        let mut out = BTreeMap::new();
        for i in 0..nn {
            for j in 0..nn {
                for k in 0..nn {
                    for l in 0..nn {
                        let x = self.chain(&[('.', &e[i]), ('.', &e[j]), ('o', &e[k])], &e[l]);
                        let c = self.l_coeff(&x);
                        if !c.is_zero() {
                            out.insert([i, j, k, l], c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
