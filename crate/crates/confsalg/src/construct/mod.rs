//! The generic builder: from an inner-product space `V` (in a null frame), a
//! symmetric form on `V∧V` and a kernel `ker ι ⊂ Cl(V)`, produce the reduced
//! algebra on `Cl(V)/ker ι`; optionally extend it by an `F`-part described by
//! a pairing `J`, and run the finite exclusion sweeps.
//!
//! The module `Cl(V)/ker ι` is graded by the weights `2, 3/2, 1, 1/2` using
//! the identities
//!
//! * `u∘v = ½ ι(uv − vu)`,
//! * `u∘v∘w = ι(uvw) − ι(η(u,v,w)) − (v,w) ι(u)`,
//! * `u•v∘w∘z = ι(uvwz) − ι(u η(v,w,z)) − (w,z) ι(uv)`,
//!
//! where `η` is recovered from the form by `(u, η(v,w,z)) = (u∧v, w∧z)`. The
//! left action `ρ(v) = v∘ + v•` is Clifford multiplication, split by weight.
//! Whenever the grading is not consistent with the requested kernel, the
//! offending elements are forced into the kernel (they must vanish in any
//! algebra with these invariants), until the structure is consistent or `1`
//! itself is forced, in which case the algebra collapses to zero. The
//! remaining products `A•A` and `A•F` are solved from the axioms.

mod complete;
mod derivation;
mod exclusion;
mod extend;

use std::collections::BTreeSet;

pub use complete::{complete_structure, CompletionProblem};
pub use exclusion::{
    branch_spec, exclusion_sweep, AffineForm, BranchReport, BranchVerdict, CaseReport, Contradiction, FactoredConstraint,
    FactoredConstraintSystem, KernelOutcome, SolutionSet,
};
pub use extend::FExtension;

use crate::coords::Coords;

use crate::algebra::{w_a, w_f, w_l, w_v, AlgebraError, BasisVector, Element, Parity, ReducedAlgebra, Subspace, Weight};
use crate::clifford::{CliffordAlgebra, CliffordElement, CliffordError};
use crate::scalar::{Matrix, Scalar};

/// Errors of the builder.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("inconsistent specification: {0}")]
    InconsistentSpec(String),
    #[error("underdetermined specification: {free} free structure constants")]
    UnderdeterminedSpec { free: usize },
    #[error("nonlinear constraint encountered: {0}")]
    NonlinearConstraint(String),
    #[error("the forced kernel contains 1: the algebra collapses to zero")]
    Collapsed,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// The symmetric form on `V∧V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VWedgeForm {
    /// `(u∧v, w∧z) = (v,w)(u,z) − (u,w)(v,z) − Σ_{i<j} α_{ij} ε_{ij}(u,v,w,z)`,
    /// `ε_{ij}` being the alternating 4-form with `ε_{ij}(D_i, D̄_i, D_j, D̄_j) = −1`.
    /// The matrix is `n × n` and only its entries above the diagonal are used.
    Alpha(Matrix),
    /// The Gram matrix on the standard wedge basis.
    Gram(Matrix),
}

/// A summand `M(w)` (even `dim V`) or `M^±(w)` (odd `dim V`) of `ker ι`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWord {
    pub w: Vec<u8>,
    pub sign: Option<i8>,
}

impl KernelWord {
    /// Parses `"011"`, `"+01"` or `"-01"`.
    pub fn parse(s: &str) -> Result<Self, ConstructError> {
        let (sign, digits) = match s.chars().next() {
            Some('+') => (Some(1), &s[1..]),
            Some('-') => (Some(-1), &s[1..]),
            _ => (None, s),
        };
        let w = digits
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(ConstructError::InvalidSpec(format!("bad kernel word {:?}", s))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(KernelWord { w, sign })
    }
}

/// Input of [`build_from_spec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuilderSpec {
    pub dim_v: usize,
    pub form: VWedgeForm,
    pub kernel_words: Vec<KernelWord>,
    pub f_extension: Option<FExtension>,
}

impl BuilderSpec {
    /// Spec with an α-matrix form and a kernel given by words such as `"011"`.
    pub fn with_alpha(dim_v: usize, alpha: Matrix, kernel: &[&str]) -> Result<Self, ConstructError> {
        Ok(BuilderSpec {
            dim_v,
            form: VWedgeForm::Alpha(alpha),
            kernel_words: kernel.iter().map(|s| KernelWord::parse(s)).collect::<Result<_, _>>()?,
            f_extension: None,
        })
    }

    /// The α-matrix with every off-diagonal entry equal to `a`.
    pub fn uniform_alpha(dim_v: usize, a: &Scalar) -> Matrix {
        let n = dim_v / 2;
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, a.clone());
                }
            }
        }
        m
    }
}

/// A basis vector of the constructed algebra together with its preimage in `Cl(V)`.
#[derive(Clone, Debug)]
struct Piece {
    label: String,
    weight: Weight,
    rep: CliffordElement,
}

/// The data of the Clifford-module model `Cl(V)/K`.
pub(crate) struct CliffordModel {
    pub(crate) cl: CliffordAlgebra,
    /// `form4[((a·d + b)·d + c)·d + e] = (g_a∧g_b, g_c∧g_e)`.
    form4: Vec<Scalar>,
}

fn sign_of_perm(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

impl CliffordModel {
    pub(crate) fn new(dim_v: usize, form: &VWedgeForm) -> Result<Self, ConstructError> {
        let cl = CliffordAlgebra::new(dim_v);
        let d = dim_v;
        let mut form4 = vec![Scalar::zero(); d * d * d * d];
        match form {
            VWedgeForm::Alpha(alpha) => {
                let n = cl.pairs();
                if alpha.rows() != n || alpha.cols() != n {
                    return Err(ConstructError::InvalidSpec(format!("α must be {}×{}", n, n)));
                }
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            for e in 0..d {
                                let mut v = &(&cl.form(b, c) * &cl.form(a, e)) - &(&cl.form(a, c) * &cl.form(b, e));
                                let quad = [a, b, c, e];
                                for i in 0..n {
                                    for j in i + 1..n {
                                        let target = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1];
                                        let mut pos = Vec::with_capacity(4);
                                        for q in quad {
                                            match target.iter().position(|&t| t == q) {
                                                Some(p) if !pos.contains(&p) => pos.push(p),
                                                _ => break,
                                            }
                                        }
                                        if pos.len() == 4 {
                                            let eps = Scalar::from_int(-sign_of_perm(&pos));
                                            v = &v - &(alpha.get(i, j) * &eps);
                                        }
                                    }
                                }
                                form4[((a * d + b) * d + c) * d + e] = v;
                            }
                        }
                    }
                }
            }
            VWedgeForm::Gram(g) => {
                let frame = crate::algebra::NullFrame { vecs: (0..d).collect(), pairs: cl.pairs(), odd: cl.is_odd() };
                let wb = crate::algebra::WedgeBasis::standard(&frame);
                if g.rows() != wb.pairs.len() || g.cols() != wb.pairs.len() {
                    return Err(ConstructError::InvalidSpec(format!("Gram matrix must be {0}×{0}", wb.pairs.len())));
                }
                let locate = |a: usize, b: usize| -> Option<(usize, Scalar)> {
                    wb.pairs.iter().enumerate().find_map(|(k, &(x, y))| {
                        if (x, y) == (a, b) {
                            Some((k, Scalar::one()))
                        } else if (x, y) == (b, a) {
                            Some((k, -Scalar::one()))
                        } else {
                            None
                        }
                    })
                };
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            for e in 0..d {
                                if let (Some((i, s1)), Some((j, s2))) = (locate(a, b), locate(c, e)) {
                                    form4[((a * d + b) * d + c) * d + e] = &(&s1 * &s2) * g.get(i, j);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(CliffordModel { cl, form4 })
    }

    fn d(&self) -> usize {
        self.cl.dim_v()
    }

    pub(crate) fn form4(&self, a: usize, b: usize, c: usize, e: usize) -> &Scalar {
        let d = self.d();
        &self.form4[((a * d + b) * d + c) * d + e]
    }

    /// The frame position dual to `k` under the inner product.
    fn dual(&self, k: usize) -> usize {
        if Some(k) == self.cl.e() {
            k
        } else {
            k ^ 1
        }
    }

    /// `η(g_v, g_w, g_z)` as a degree-one Clifford element.
    pub(crate) fn eta(&self, v: usize, w: usize, z: usize) -> CliffordElement {
        CliffordElement::from_terms((0..self.d()).map(|k| (1usize << k, self.form4(self.dual(k), v, w, z).clone())))
    }

    /// `(g_a, g_b)`.
    fn ip(&self, a: usize, b: usize) -> Scalar {
        self.cl.form(a, b)
    }

    fn g(&self, a: usize) -> CliffordElement {
        self.cl.gen(a)
    }

    fn formulas(&self) -> Vec<Piece> {
        let d = self.d();
        let cl = &self.cl;
        let name = |k: usize| cl.gen_name(k);
        let half = Scalar::from_frac(1, 2);
        let mut out = vec![Piece { label: "L".into(), weight: w_l(), rep: cl.one() }];
        for a in 0..d {
            out.push(Piece { label: name(a), weight: w_v(), rep: self.g(a) });
        }
        for a in 0..d {
            for b in a + 1..d {
                let ab = cl.mul(&self.g(a), &self.g(b));
                let ba = cl.mul(&self.g(b), &self.g(a));
                out.push(Piece { label: format!("{}o{}", name(a), name(b)), weight: w_a(), rep: ab.sub(&ba).scale(&half) });
            }
        }
        for u in 0..d {
            for v in 0..d {
                for w in 0..d {
                    for z in w + 1..d {
                        let uvwz = cl.product(&[self.g(u), self.g(v), self.g(w), self.g(z)]);
                        let ueta = cl.mul(&self.g(u), &self.eta(v, w, z));
                        let uv = cl.mul(&self.g(u), &self.g(v));
                        let rep = uvwz.sub(&ueta).add_scaled(&-self.ip(w, z), &uv);
                        out.push(Piece {
                            label: format!("{}.{}o{}o{}", name(u), name(v), name(w), name(z)),
                            weight: w_a(),
                            rep,
                        });
                    }
                }
            }
        }
        for u in 0..d {
            for v in 0..d {
                for w in v + 1..d {
                    let uvw = cl.product(&[self.g(u), self.g(v), self.g(w)]);
                    let rep = uvw.sub(&self.eta(u, v, w)).add_scaled(&-self.ip(v, w), &self.g(u));
                    out.push(Piece { label: format!("{}o{}o{}", name(u), name(v), name(w)), weight: w_f(), rep });
                }
            }
        }
        out
    }

    /// Smallest left submodule containing `k` and `extra`.
    pub(crate) fn close(&self, k: &Subspace, extra: Vec<CliffordElement>) -> Subspace {
        let mut k = k.clone();
        let mut queue = extra;
        while let Some(x) = queue.pop() {
            let r = k.reduce(&x);
            if r.is_zero() {
                continue;
            }
            k.insert(&r);
            for g in 0..self.d() {
                queue.push(self.cl.mul(&self.g(g), &r));
            }
        }
        k
    }

    /// The kernel spanned by the selected summands.
    pub(crate) fn kernel_from_words(&self, words: &[KernelWord]) -> Result<Subspace, ConstructError> {
        let mut k = Subspace::zero();
        for kw in words {
            if kw.w.len() != self.cl.pairs() {
                return Err(ConstructError::InvalidSpec(format!("kernel word must have {} digits", self.cl.pairs())));
            }
            if kw.sign.is_some() != self.cl.is_odd() {
                return Err(ConstructError::InvalidSpec("kernel words carry a sign exactly when dim V is odd".into()));
            }
            for row in self.cl.submodule(&kw.w, kw.sign).space.basis() {
                k.insert(&row);
            }
        }
        Ok(k)
    }
}

/// Result of closing a kernel under the forcing rules.
pub(crate) enum Closure {
    /// The forced kernel contains `1`.
    Collapsed,
    /// The graded pieces do not span `Cl(V)/kernel`: any admissible kernel is larger.
    Uncovered { kernel: Subspace, spanned: usize, quotient: usize },
    Model(GradedModel),
}

/// The graded model after kernel closure.
pub(crate) struct GradedModel {
    pub(crate) model: CliffordModel,
    pub(crate) kernel: Subspace,
    pieces: Vec<Piece>,
    coords: Coords,
}

impl GradedModel {
    /// Chooses graded bases and forces kernel elements until the grading and
    /// the split action `ρ(v) = v∘ + v•` are consistent.
    pub(crate) fn new(model: CliffordModel, kernel: Subspace) -> Result<Self, ConstructError> {
        match Self::analyze(model, kernel)? {
            Closure::Model(gm) => Ok(gm),
            Closure::Collapsed => Err(ConstructError::Collapsed),
            Closure::Uncovered { spanned, quotient, .. } => Err(ConstructError::InconsistentSpec(format!(
                "the graded pieces span {} of the {} dimensions of Cl(V)/ker ι",
                spanned, quotient
            ))),
        }
    }

    /// Like [`GradedModel::new`], but reports the closed kernel when the
    /// graded pieces fail to span the quotient.
    pub(crate) fn analyze(model: CliffordModel, kernel: Subspace) -> Result<Closure, ConstructError> {
        let formulas = model.formulas();
        let mut model = model;
        let mut kernel = model.close(&Subspace::zero(), kernel.basis());
        loop {
            if kernel.contains(&model.cl.one()) {
                return Ok(Closure::Collapsed);
            }
            let mut coords = Coords::new();
            let mut pieces: Vec<Piece> = Vec::new();
            let mut forced = Vec::new();
            for f in &formulas {
                let r = kernel.reduce(&f.rep);
                match coords.insert(&r) {
                    Ok(_) => pieces.push(Piece { rep: r, ..f.clone() }),
                    Err(combo) => {
                        // r = Σ combo_i piece_i: each weight component must vanish separately.
                        let mut own = r.clone();
                        let mut others: std::collections::BTreeMap<Weight, CliffordElement> = Default::default();
                        for (i, c) in combo.iter() {
                            let p = &pieces[*i];
                            if p.weight == f.weight {
                                own = own.add_scaled(&-c, &p.rep);
                            } else {
                                let e = others.entry(p.weight).or_default();
                                *e = e.add_scaled(c, &p.rep);
                            }
                        }
                        forced.push(own);
                        forced.extend(others.into_values());
                    }
                }
            }
            forced.retain(|x| !x.is_zero());
            if !forced.is_empty() {
                kernel = model.close(&kernel, forced);
                continue;
            }
            let quotient_dim = model.cl.dim() - kernel.dim();
            if coords.len() != quotient_dim {
                return Ok(Closure::Uncovered { kernel, spanned: coords.len(), quotient: quotient_dim });
            }
            let gm = GradedModel { model, kernel, pieces, coords };
            let mut forced = gm.rho_violations();
            if forced.is_empty() {
                forced = gm.derivation_violations()?;
            }
            if forced.is_empty() {
                let nv = gm.pieces.iter().filter(|p| p.weight == w_v()).count();
                if nv != gm.model.d() {
                    return Err(ConstructError::InconsistentSpec("V does not embed in the quotient".into()));
                }
                return Ok(Closure::Model(gm));
            }
            kernel = gm.model.close(&gm.kernel, forced);
            model = gm.model;
        }
    }

    /// Coordinates (in piece indices) of `x ∈ Cl(V)` modulo the kernel.
    fn express(&self, x: &CliffordElement) -> Result<Element, ConstructError> {
        self.coords
            .express(&self.kernel.reduce(x))
            .ok_or_else(|| ConstructError::InconsistentSpec("element outside the graded pieces".into()))
    }

    /// `g · piece` split into components by weight.
    fn act(&self, g: usize, x: usize) -> Result<Vec<(Weight, Element)>, ConstructError> {
        let y = self.model.cl.mul(&self.model.g(g), &self.pieces[x].rep);
        let e = self.express(&y)?;
        let mut parts: std::collections::BTreeMap<Weight, Element> = Default::default();
        for (k, c) in e.iter() {
            let slot = parts.entry(self.pieces[*k].weight).or_default();
            *slot = slot.add(&Element::term(*k, c.clone()));
        }
        Ok(parts.into_iter().collect())
    }

    fn rho_violations(&self) -> Vec<CliffordElement> {
        let half = Weight::new(1, 2);
        let mut forced = Vec::new();
        for x in 0..self.pieces.len() {
            let wx = self.pieces[x].weight;
            for g in 0..self.model.d() {
                let Ok(parts) = self.act(g, x) else { continue };
                for (w, e) in parts {
                    if w != wx - half && w != wx + half {
                        forced.push(self.lift(&e));
                    }
                }
            }
        }
        forced
    }

    fn lift(&self, e: &Element) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (k, c) in e.iter() {
            out = out.add_scaled(c, &self.pieces[*k].rep);
        }
        out
    }

    pub(crate) fn dims(&self) -> Vec<(Weight, usize)> {
        let mut m: std::collections::BTreeMap<Weight, usize> = Default::default();
        for p in &self.pieces {
            *m.entry(p.weight).or_default() += 1;
        }
        m.into_iter().rev().collect()
    }

    /// The basis vectors of the model.
    pub(crate) fn basis(&self) -> Vec<BasisVector> {
        self.pieces
            .iter()
            .map(|p| {
                let parity = if p.weight == w_v() || p.weight == w_f() { Parity::Odd } else { Parity::Even };
                BasisVector::new(p.label.clone(), p.weight, parity)
            })
            .collect()
    }

    /// Basis, known tables and the unknown `A•A`, `A•F` products.
    pub(crate) fn completion_problem(&self) -> Result<CompletionProblem, ConstructError> {
        completion_from_action(self.basis(), |g, x| self.act(g, x))
    }
}

/// The completion problem of an algebra whose L- and V-products are given by
/// `act(g, x)`: the action of the `g`-th basis vector of weight 3/2 on the
/// basis vector `x`, split by weight. Unknowns are all `A•A`, `A•F`, `F•A`.
pub(crate) fn completion_from_action(
    basis: Vec<BasisVector>,
    act: impl Fn(usize, usize) -> Result<Vec<(Weight, Element)>, ConstructError>,
) -> Result<CompletionProblem, ConstructError> {
    let dim = basis.len();
    let v_idx: Vec<usize> = (0..dim).filter(|&k| basis[k].weight == w_v()).collect();
    let mut known: Vec<(usize, usize, usize, Element)> = Vec::new();
    // L row and column.
    for x in 0..dim {
        let wx = basis[x].weight;
        let val = Element::basis(x).scale(&Scalar::from_frac(*wx.numer(), *wx.denom()));
        known.push((1, 0, x, val.clone()));
        if x != 0 {
            known.push((1, x, 0, val));
        }
    }
    // V rows (and by skew-symmetry, V columns).
    let half = Weight::new(1, 2);
    for (gi, &g) in v_idx.iter().enumerate() {
        for x in 1..dim {
            let wx = basis[x].weight;
            for (w, e) in act(gi, x)? {
                let (n, val) = if w == wx - half {
                    let k = w_v() + wx - Weight::from_integer(2);
                    (1usize, e.scale(&Scalar::from_frac(*k.numer(), *k.denom())))
                } else if w == wx + half {
                    (0usize, e)
                } else {
                    return Err(ConstructError::InconsistentSpec("weight mismatch in the V-action".into()));
                };
                if val.is_zero() {
                    continue;
                }
                known.push((n, g, x, val.clone()));
                if basis[x].weight != w_v() {
                    let mut s = -crate::algebra::koszul(basis[g].parity, basis[x].parity);
                    if n % 2 == 1 {
                        s = -s;
                    }
                    known.push((n, x, g, val.scale(&s)));
                }
            }
        }
    }
    let mut unknown = BTreeSet::new();
    for x in 0..dim {
        for y in 0..dim {
            let (wx, wy) = (basis[x].weight, basis[y].weight);
            let low = |w: Weight| w == w_a() || w == w_f();
            if low(wx) && low(wy) && !(wx == w_f() && wy == w_f()) {
                unknown.insert((0, x, y));
            }
        }
    }
    Ok(CompletionProblem { basis, l_id: "L".into(), known, unknown, harvest_left: v_idx, max_mn: 1 })
}

/// Validates a constructed algebra; never returns an algebra failing an axiom.
pub(crate) fn validate(r: &ReducedAlgebra) -> Result<(), ConstructError> {
    let p = r.check_p_axioms(1, 1);
    if !p.passed() {
        return Err(ConstructError::InconsistentSpec(format!("constructed tables violate the axioms:\n{}", p)));
    }
    let h = r.check_h_axioms()?;
    if !h.passed() {
        return Err(ConstructError::InconsistentSpec(format!("constructed tables violate the identities:\n{}", h)));
    }
    Ok(())
}

/// Builds the reduced algebra on `Cl(V)/ker ι`, extended by `F` if the spec
/// asks for it (without validation).
pub(crate) fn build_clifford_unchecked(spec: &BuilderSpec) -> Result<ReducedAlgebra, ConstructError> {
    let model = CliffordModel::new(spec.dim_v, &spec.form)?;
    let kernel = model.kernel_from_words(&spec.kernel_words)?;
    let gm = GradedModel::new(model, kernel)?;
    match &spec.f_extension {
        None => complete_structure(&gm.completion_problem()?),
        Some(ext) => extend::build_extended(&gm, ext),
    }
}

/// Builds and validates the algebra described by `spec`.
pub fn build_from_spec(spec: &BuilderSpec) -> Result<ReducedAlgebra, ConstructError> {
    let out = build_clifford_unchecked(spec)?;
    validate(&out)?;
    Ok(out)
}

/// Weight dimensions of the graded model `Cl(V)/K` after kernel closure.
pub fn graded_dims(spec: &BuilderSpec) -> Result<Vec<(Weight, usize)>, ConstructError> {
    let model = CliffordModel::new(spec.dim_v, &spec.form)?;
    let kernel = model.kernel_from_words(&spec.kernel_words)?;
    Ok(GradedModel::new(model, kernel)?.dims())
}
