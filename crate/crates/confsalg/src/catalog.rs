//! Named constructors for the simple physical conformal superalgebras
//! (`Vir`, `K1`–`K3`, `S2`, `W2`, `N4`, `N4^α`, `CK6`) and the isomorphism
//! checks among them.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraError, Element, ReducedAlgebra, Weight};
use crate::construct::{build_from_spec, BuilderSpec, ConstructError, FExtension};
use crate::coords::Coords;
use crate::reconstruct::{ReconstructError, ReconstructedAlgebra};
use crate::scalar::{Matrix, Scalar, TPoly};

/// Errors of the catalog layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name {0:?} (expected one of Vir, K1, K2, K3, S2, W2, N4, N4alpha, CK6)")]
    UnknownName(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The nine families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogName {
    Vir,
    K1,
    K2,
    K3,
    S2,
    W2,
    N4,
    N4Alpha,
    CK6,
}

impl CatalogName {
    pub const ALL: [CatalogName; 9] = [
        CatalogName::Vir,
        CatalogName::K1,
        CatalogName::K2,
        CatalogName::K3,
        CatalogName::S2,
        CatalogName::W2,
        CatalogName::N4,
        CatalogName::N4Alpha,
        CatalogName::CK6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Vir => "Vir",
            CatalogName::K1 => "K1",
            CatalogName::K2 => "K2",
            CatalogName::K3 => "K3",
            CatalogName::S2 => "S2",
            CatalogName::W2 => "W2",
            CatalogName::N4 => "N4",
            CatalogName::N4Alpha => "N4alpha",
            CatalogName::CK6 => "CK6",
        }
    }

    /// Expected dimensions per weight `(2, 3/2, 1, 1/2)`, zeros omitted.
    pub fn expected_dims(self) -> Vec<(Weight, usize)> {
        let raw: [usize; 4] = match self {
            CatalogName::Vir => [1, 0, 0, 0],
            CatalogName::K1 => [1, 1, 0, 0],
            CatalogName::K2 => [1, 2, 1, 0],
            CatalogName::K3 => [1, 3, 3, 1],
            CatalogName::S2 => [1, 4, 3, 0],
            CatalogName::W2 => [1, 4, 5, 2],
            CatalogName::N4 | CatalogName::N4Alpha => [1, 4, 7, 4],
            CatalogName::CK6 => [1, 6, 15, 10],
        };
        let weights = [Weight::from_integer(2), Weight::new(3, 2), Weight::from_integer(1), Weight::new(1, 2)];
        weights.into_iter().zip(raw).filter(|(_, d)| *d > 0).collect()
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownName(s.to_string()))
    }
}

/// A catalog entry: the family, its parameter and the expected dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: CatalogName,
    /// `α` for `N4alpha` (the symbolic `α` when absent).
    pub alpha: Option<Scalar>,
    pub expected_dims: Vec<(Weight, usize)>,
}

impl CatalogEntry {
    pub fn new(name: CatalogName, alpha: Option<Scalar>) -> Result<Self, CatalogError> {
        if alpha.is_some() && name != CatalogName::N4Alpha {
            return Err(CatalogError::InvalidParams(format!("{} takes no α parameter", name)));
        }
        Ok(CatalogEntry { name, alpha, expected_dims: name.expected_dims() })
    }

    /// Builds the algebra and checks its dimensions.
    pub fn build(&self) -> Result<ReducedAlgebra, CatalogError> {
        let r = build(self.name, self.alpha.as_ref())?;
        if r.weight_dims() != self.expected_dims {
            return Err(CatalogError::DimensionMismatch(format!(
                "{} has weight dimensions {:?}, expected {:?}",
                self.name,
                r.weight_dims(),
                self.expected_dims
            )));
        }
        Ok(r)
    }
}

/// Kernel summands and V∧V data of the Clifford-built families.
fn clifford_spec(dim_v: usize, alpha: &Scalar, kernel: &[&str]) -> Result<BuilderSpec, CatalogError> {
    Ok(BuilderSpec::with_alpha(dim_v, BuilderSpec::uniform_alpha(dim_v, alpha), kernel)?)
}

/// The spec of `S2`: `dim V = 4`, `α = −1`, `ker ι = M(00) ⊕ M(11)`.
pub fn s2_spec() -> BuilderSpec {
    clifford_spec(4, &-Scalar::one(), &["00", "11"]).expect("static spec")
}

/// The spec of `W2`: the `S2` data extended by `F` with
/// `J⁰ = span{D₁∧D̄₁∧D₂, D₁∧D₂∧D̄₂}`.
pub fn w2_spec() -> BuilderSpec {
    let mut s = s2_spec();
    s.f_extension = Some(FExtension { j0: vec![[0, 1, 2], [0, 2, 3]] });
    s
}

/// The spec of `N4^α`: `dim V = 4`, `ker ι = 0`.
pub fn n4_alpha_spec(alpha: &Scalar) -> BuilderSpec {
    clifford_spec(4, alpha, &[]).expect("static spec")
}

/// The spec of `CK6`: `dim V = 6`, `α = 0`, `ker ι = M(111) ⊕ M(100) ⊕ M(010) ⊕ M(001)`.
pub fn ck6_spec() -> BuilderSpec {
    clifford_spec(6, &Scalar::zero(), &["111", "100", "010", "001"]).expect("static spec")
}

/// The spec of `K_N` (`N ≤ 3`): full `Cl(V)`, `ker ι = 0`. For `dim V ≤ 3`
/// there is at most one pair, so the V∧V form is the one forced by the
/// inner product and no `α` enters.
pub fn k_spec(n: usize) -> BuilderSpec {
    BuilderSpec::with_alpha(n, Matrix::zeros(n / 2, n / 2), &[]).expect("static spec")
}

/// Builds a catalog algebra. `alpha` is only accepted for `N4alpha`, where
/// `None` means the symbolic `α`.
pub fn build(name: CatalogName, alpha: Option<&Scalar>) -> Result<ReducedAlgebra, CatalogError> {
    if alpha.is_some() && name != CatalogName::N4Alpha {
        return Err(CatalogError::InvalidParams(format!("{} takes no α parameter", name)));
    }
    let r = match name {
        CatalogName::Vir => build_from_spec(&k_spec(0))?,
        CatalogName::K1 => build_from_spec(&k_spec(1))?,
        CatalogName::K2 => build_from_spec(&k_spec(2))?,
        CatalogName::K3 => build_from_spec(&k_spec(3))?,
        CatalogName::S2 => build_from_spec(&s2_spec())?,
        CatalogName::W2 => build_from_spec(&w2_spec())?,
        CatalogName::N4Alpha => {
            let a = alpha.cloned().unwrap_or_else(Scalar::alpha);
            build_from_spec(&n4_alpha_spec(&a))?
        }
        CatalogName::N4 => {
            let n40 = build_from_spec(&n4_alpha_spec(&Scalar::zero()))?;
            ReconstructedAlgebra::new(n40).change_conformal_vector(&Scalar::one())?
        }
        CatalogName::CK6 => build_from_spec(&ck6_spec())?,
    };
    Ok(r)
}

/// Extends a map given on `V` to the subalgebra generated by `V` and `L`:
/// each basis vector of `src` is written through products of `V`
/// (`v∘w`, `u∘v∘w`, `u•(v∘w∘z)`) and the same products are evaluated in
/// `dst` on the images. `fv[k]` is the image of the `k`-th `V` basis vector.
pub fn extend_from_v(src: &ReducedAlgebra, dst: &ReducedAlgebra, fv: &[Element]) -> Result<Vec<Element>, CatalogError> {
    let vs = src.v_indices();
    if fv.len() != vs.len() {
        return Err(CatalogError::DimensionMismatch(format!("{} images for {} V basis vectors", fv.len(), vs.len())));
    }
    let mut coords: Coords = Coords::new();
    let mut images: Vec<Element> = Vec::new();
    let mut add = |x: Element, y: Element| {
        if coords.insert(&x).is_ok() {
            images.push(y);
        }
    };
    add(src.l(), dst.l());
    let sv: Vec<Element> = vs.iter().map(|&k| Element::basis(k)).collect();
    for (x, y) in sv.iter().zip(fv) {
        add(x.clone(), y.clone());
    }
    let n = sv.len();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            add(src.circ(&sv[a], &sv[b]), dst.circ(&fv[a], &fv[b]));
            for c in 0..n {
                let x = src.chain(&[('o', &sv[a]), ('o', &sv[b])], &sv[c]);
                let y = dst.chain(&[('o', &fv[a]), ('o', &fv[b])], &fv[c]);
                if !x.is_zero() {
                    triples.push((x.clone(), y.clone()));
                }
                add(x, y);
            }
        }
    }
    for u in 0..n {
        for (x, y) in &triples {
            add(src.bullet(&sv[u], x), dst.bullet(&fv[u], y));
        }
    }
    (0..src.dim())
        .map(|k| {
            let combo = coords.express(&Element::basis(k)).ok_or_else(|| {
                CatalogError::InvalidParams(format!("{} is not generated by V and L", src.id(k)))
            })?;
            let mut out = Element::zero();
            for (j, c) in combo.iter() {
                out = out.add_scaled(c, &images[*j]);
            }
            Ok(out)
        })
        .collect()
}

/// First violation of the isomorphism conditions for `f` (basis images of
/// `r1` in `r2`), or `None` when `f` is an isomorphism.
pub fn iso_defect(r1: &ReducedAlgebra, r2: &ReducedAlgebra, f: &[Element]) -> Result<Option<String>, CatalogError> {
    if r1.dim() != r2.dim() || f.len() != r1.dim() {
        return Err(CatalogError::DimensionMismatch(format!(
            "dim R1 = {}, dim R2 = {}, {} images",
            r1.dim(),
            r2.dim(),
            f.len()
        )));
    }
    let mut m = Matrix::zeros(f.len(), r2.dim());
    for (k, x) in f.iter().enumerate() {
        for (j, c) in x.iter() {
            m.set(k, *j, c.clone());
        }
    }
    if m.rank() != r1.dim() {
        return Ok(Some("the map is not bijective".into()));
    }
    let map = |x: &Element| {
        let mut out = Element::zero();
        for (k, c) in x.iter() {
            out = out.add_scaled(c, &f[*k]);
        }
        out
    };
    if map(&r1.l()) != r2.l() {
        return Ok(Some(format!("f(L) = {} ≠ L'", r2.show(&map(&r1.l())))));
    }
    let bound = r1.product_bound().max(r2.product_bound());
    for n in 0..bound {
        for a in 0..r1.dim() {
            for b in 0..r1.dim() {
                let lhs = map(&r1.product_n(&Element::basis(a), &Element::basis(b), n));
                let rhs = r2.product_n(&f[a], &f[b], n);
                if lhs != rhs {
                    return Ok(Some(format!(
                        "f(⟨{} {} {}⟩) = {} but ⟨f({}) {} f({})⟩ = {}",
                        r1.id(a),
                        n,
                        r1.id(b),
                        r2.show(&lhs),
                        r1.id(a),
                        n,
                        r1.id(b),
                        r2.show(&rhs)
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// `true` iff `f` is a bijection with `f(L) = L'` and
/// `f(⟨a n b⟩) = ⟨f(a) n f(b)⟩` for all basis vectors and all `n`.
pub fn iso_check(r1: &ReducedAlgebra, r2: &ReducedAlgebra, f: &[Element]) -> Result<bool, CatalogError> {
    Ok(iso_defect(r1, r2, f)?.is_none())
}

/// The isometry of `N4^α → N4^{−α}` exchanging `e₁ = D₁ + D̄₁` and
/// `e₂ = i(D₁ − D̄₁)`: `D₁ ↦ −i D̄₁`, `D̄₁ ↦ i D₁`, `D₂, D̄₂` fixed, extended
/// to the whole algebra through products of `V`.
pub fn n4_swap_map(src: &ReducedAlgebra, dst: &ReducedAlgebra) -> Result<Vec<Element>, CatalogError> {
    let fs = src.null_frame()?;
    let fd = dst.null_frame()?;
    if fs.pairs != 2 || fd.pairs != 2 || fs.odd || fd.odd {
        return Err(CatalogError::InvalidParams("the swap map needs dim V = 4".into()));
    }
    let i = Scalar::i();
    let mut fv = vec![Element::zero(); 4];
    // V basis order is the frame order D₁, D̄₁, D₂, D̄₂.
    fv[0] = Element::term(fd.dbar(0), -i.clone());
    fv[1] = Element::term(fd.d(0), i);
    fv[2] = Element::basis(fd.d(1));
    fv[3] = Element::basis(fd.dbar(1));
    extend_from_v(src, dst, &fv)
}

/// Isomorphism invariants: weight dimensions, the characteristic polynomial
/// of the V∧V Gram matrix and the simplicity flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSignature {
    pub dims: Vec<(Weight, usize)>,
    /// `None` when `dim V < 2` (no V∧V).
    pub charpoly: Option<TPoly>,
    pub simple: bool,
}

impl fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|(w, d)| format!("{}:{}", w, d)).collect();
        writeln!(f, "dims {}", dims.join(" "))?;
        match &self.charpoly {
            Some(p) => writeln!(f, "charpoly {}", p)?,
            None => writeln!(f, "charpoly (none)")?,
        }
        write!(f, "simple {}", self.simple)
    }
}

/// Computes the [`InvariantSignature`] of a physical algebra.
pub fn invariant_signature(r: &ReducedAlgebra) -> Result<InvariantSignature, CatalogError> {
    r.physical_check()?;
    let charpoly = if r.v_dim() >= 2 {
        let (m, _) = r.form_v_wedge_v()?;
        Some(m.charpoly().map_err(AlgebraError::from)?)
    } else {
        None
    };
    let simple = r.is_simple_physical()?.simple;
    Ok(InvariantSignature { dims: r.weight_dims(), charpoly, simple })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in CatalogName::ALL {
            assert_eq!(n.as_str().parse::<CatalogName>().unwrap(), n);
        }
        assert_eq!("n4ALPHA".parse::<CatalogName>().unwrap(), CatalogName::N4Alpha);
        assert!(matches!("K4".parse::<CatalogName>(), Err(CatalogError::UnknownName(_))));
    }

    #[test]
    fn alpha_only_for_n4alpha() {
        assert!(matches!(build(CatalogName::S2, Some(&Scalar::one())), Err(CatalogError::InvalidParams(_))));
    }

    #[test]
    fn small_entries_have_expected_dims() {
        for n in [CatalogName::Vir, CatalogName::K1, CatalogName::K2, CatalogName::K3, CatalogName::S2] {
            let r = CatalogEntry::new(n, None).unwrap().build().unwrap();
            assert!(r.is_simple_physical().unwrap().simple, "{}", n);
        }
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let r = build(CatalogName::N4Alpha, Some(&Scalar::zero())).unwrap();
        let id: Vec<Element> = (0..r.dim()).map(Element::basis).collect();
        assert!(iso_check(&r, &r, &id).unwrap());
        let mut bad = id.clone();
        bad.swap(1, 2);
        assert!(!iso_check(&r, &r, &bad).unwrap());
    }

    #[test]
    fn extension_of_identity_is_identity() {
        let r = build(CatalogName::K3, None).unwrap();
        let fv: Vec<Element> = r.v_indices().into_iter().map(Element::basis).collect();
        let f = extend_from_v(&r, &r, &fv).unwrap();
        let id: Vec<Element> = (0..r.dim()).map(Element::basis).collect();
        assert_eq!(f, id);
    }
}
