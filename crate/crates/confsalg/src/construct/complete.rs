//! Completion of partially known product tables by exact linear solving.
//!
//! Unknown products `⟨x n y⟩` are expanded over the basis vectors of the
//! right weight and parity with one unknown scalar per coefficient. Axiom
//! instances in which every term contains at most one unknown product are
//! harvested as linear equations and solved exactly.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::ConstructError;
use crate::algebra::{big_binom, koszul, BasisVector, CoeffCache, Element, ReducedAlgebra, Weight};
use crate::lincomb::LinComb;
use crate::scalar::{Scalar, SparseSystem};

const CONST: usize = usize::MAX;

/// Elements whose coefficients are affine in the unknowns: keys are
/// `(basis index, unknown)` with [`CONST`] marking the constant part.
type Sym = LinComb<(usize, usize)>;

/// Partially known tables plus the list of unknown products.
#[derive(Clone, Debug)]
pub struct CompletionProblem {
    pub basis: Vec<BasisVector>,
    pub l_id: String,
    pub known: Vec<(usize, usize, usize, Element)>,
    /// Unknown products `(n, x, y)`; their known value (if any) is ignored.
    pub unknown: BTreeSet<(usize, usize, usize)>,
    /// Harvest (P3) instances for `a` in this set of basis indices and every
    /// `b`, `c`, with `m, n ≤ max_mn`.
    pub harvest_left: Vec<usize>,
    pub max_mn: u32,
}

struct Block {
    offset: usize,
    outputs: Vec<usize>,
}

struct Partial {
    known: ReducedAlgebra,
    blocks: HashMap<(usize, usize, usize), Block>,
    nvars: usize,
}

impl Partial {
    fn product(&self, n: usize, x: usize, y: usize, coeff: &Scalar, var: usize) -> Result<Sym, ConstructError> {
        if let Some(b) = self.blocks.get(&(n, x, y)) {
            if var != CONST {
                return Err(ConstructError::NonlinearConstraint(format!(
                    "<{} {} {}> meets another unknown",
                    self.known.id(x),
                    n,
                    self.known.id(y)
                )));
            }
            return Ok(Sym::from_terms(b.outputs.iter().enumerate().map(|(k, &z)| ((z, b.offset + k), coeff.clone()))));
        }
        Ok(Sym::from_terms(self.known.table(n, x, y).iter().map(|(z, c)| ((*z, var), coeff * c))))
    }

    fn basis_sym(&self, n: usize, x: usize, y: usize) -> Result<Sym, ConstructError> {
        self.product(n, x, y, &Scalar::one(), CONST)
    }

    fn left(&self, n: usize, a: usize, e: &Sym) -> Result<Sym, ConstructError> {
        let mut out = Sym::zero();
        for ((z, var), c) in e.iter() {
            out = out.add(&self.product(n, a, *z, c, *var)?);
        }
        Ok(out)
    }

    fn right(&self, e: &Sym, n: usize, c: usize) -> Result<Sym, ConstructError> {
        let mut out = Sym::zero();
        for ((z, var), k) in e.iter() {
            out = out.add(&self.product(n, *z, c, k, *var)?);
        }
        Ok(out)
    }

    fn weight(&self, k: usize) -> Weight {
        self.known.weight(k)
    }

    /// `lhs − rhs` of the (P3) instance `(a, b, c, m, n)`.
    fn p3(&self, cache: &mut CoeffCache, a: usize, b: usize, c: usize, m: u32, n: u32) -> Result<Sym, ConstructError> {
        let (da, db, dc) = (self.weight(a), self.weight(b), self.weight(c));
        let mut acc = Sym::zero();
        for j in 0..=m {
            let g = cache.g(db, dc, n, j);
            if g.is_zero() {
                continue;
            }
            let inner = self.basis_sym((n + j) as usize, b, c)?;
            let t = self.left((m - j) as usize, a, &inner)?;
            acc = acc.add_scaled(&(&big_binom(m, j) * &g), &t);
        }
        let sign = -koszul(self.known.parity(a), self.known.parity(b));
        for j in 0..=n {
            let g = cache.g(da, dc, m, j);
            if g.is_zero() {
                continue;
            }
            let inner = self.basis_sym((m + j) as usize, a, c)?;
            let t = self.left((n - j) as usize, b, &inner)?;
            acc = acc.add_scaled(&(&(&big_binom(n, j) * &g) * &sign), &t);
        }
        for t in 0..=(m + n) {
            let f = cache.f(da, db, m, n, t);
            if f.is_zero() {
                continue;
            }
            let inner = self.basis_sym(t as usize, a, b)?;
            let x = self.right(&inner, (m + n - t) as usize, c)?;
            acc = acc.add_scaled(&-f, &x);
        }
        Ok(acc)
    }

    /// `⟨x n y⟩ + (−1)^{n + p_x p_y} ⟨y n x⟩`.
    fn p2(&self, n: usize, x: usize, y: usize) -> Result<Sym, ConstructError> {
        let mut s = koszul(self.known.parity(x), self.known.parity(y));
        if n % 2 == 1 {
            s = -s;
        }
        Ok(self.basis_sym(n, x, y)?.add_scaled(&s, &self.basis_sym(n, y, x)?))
    }
}

/// Splits a symbolic identity `Σ = 0` into scalar equations `(entries, rhs)`.
fn equations(e: &Sym) -> Vec<(Vec<(usize, Scalar)>, Scalar)> {
    let mut per: std::collections::BTreeMap<usize, (Vec<(usize, Scalar)>, Scalar)> = Default::default();
    for ((z, var), c) in e.iter() {
        let slot = per.entry(*z).or_insert_with(|| (Vec::new(), Scalar::zero()));
        if *var == CONST {
            slot.1 = &slot.1 - c;
        } else {
            slot.0.push((*var, c.clone()));
        }
    }
    per.into_values().collect()
}

/// Solves a completion problem; the solution must be unique.
pub fn complete_structure(p: &CompletionProblem) -> Result<ReducedAlgebra, ConstructError> {
    let known_entries: Vec<_> =
        p.known.iter().filter(|(n, a, b, _)| !p.unknown.contains(&(*n, *a, *b))).cloned().collect();
    let known = ReducedAlgebra::new(p.basis.clone(), &p.l_id, known_entries.clone())?;
    let mut blocks = HashMap::new();
    let mut nvars = 0;
    for &(n, x, y) in &p.unknown {
        let w = p.basis[x].weight + p.basis[y].weight - Weight::from_integer(n as i64 + 1);
        let par = p.basis[x].parity.add(p.basis[y].parity);
        let outputs: Vec<usize> =
            (0..p.basis.len()).filter(|&z| p.basis[z].weight == w && p.basis[z].parity == par).collect();
        let len = outputs.len();
        blocks.insert((n, x, y), Block { offset: nvars, outputs });
        nvars += len;
    }
    let partial = Partial { known, blocks, nvars };
    if partial.nvars == 0 {
        return Ok(partial.known);
    }

    let dim = p.basis.len();
    let mut eqs: Vec<Sym> = Vec::new();
    for &(n, x, y) in &p.unknown {
        eqs.push(partial.p2(n, x, y)?);
    }
    let harvested: Vec<Result<Vec<Sym>, ConstructError>> = p
        .harvest_left
        .par_iter()
        .map(|&a| {
            let mut cache = CoeffCache::default();
            let mut out = Vec::new();
            for b in 0..dim {
                for c in 0..dim {
                    for m in 0..=p.max_mn {
                        for n in 0..=p.max_mn {
                            let e = partial.p3(&mut cache, a, b, c, m, n)?;
                            if !e.is_zero() {
                                out.push(e);
                            }
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    for h in harvested {
        eqs.extend(h?);
    }

    let mut sys = SparseSystem::new(partial.nvars);
    for e in &eqs {
        for (entries, rhs) in equations(e) {
            if entries.is_empty() && !rhs.is_zero() {
                return Err(ConstructError::InconsistentSpec(
                    "a harvested axiom instance fails independently of the unknown products".into(),
                ));
            }
            sys.add_equation(entries, rhs);
            if sys.is_inconsistent() {
                return Err(ConstructError::InconsistentSpec("the completion equations have no solution".into()));
            }
        }
    }
    if !sys.is_determined() {
        return Err(ConstructError::UnderdeterminedSpec { free: partial.nvars - sys.rank() });
    }
    let x = sys.particular_solution().expect("consistent");
    let mut entries = known_entries;
    for (&(n, a, b), blk) in &partial.blocks {
        let e = Element::from_terms(blk.outputs.iter().enumerate().map(|(k, &z)| (z, x[blk.offset + k].clone())));
        if !e.is_zero() {
            entries.push((n, a, b, e));
        }
    }
    Ok(ReducedAlgebra::new(p.basis.clone(), &p.l_id, entries)?)
}
