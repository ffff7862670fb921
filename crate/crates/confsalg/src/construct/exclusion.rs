//! Nonexistence sweeps.
//!
//! For `dim V ≥ 5` the numbers `α_{i,j}` (defined by
//! `α_{i,j} L = D_i•D̄_i•D_j∘D̄_j`) must satisfy families of polynomial
//! constraints, each a product of affine forms. They come from the
//! skew-symmetry of `•` on `A` (and between `A` and the `e`-part for odd
//! `dim V`), expanded through the V-action and projected onto a single
//! multidegree component:
//!
//! * odd `dim V`: `(−1)^u α_{i,j} + 2 = 0` for both `u ∈ Z/2`;
//! * even `dim V`: `(α_{i,j} + α_{i,k})(α_{j,k} + 1) = 0` and
//!   `(α_{i,j} − α_{i,k})(α_{j,k} − 1) = 0` for all distinct `i, j, k`.
//!
//! [`FactoredConstraintSystem::solve`] enumerates all solutions by branching
//! on the affine factors left to right. [`exclusion_sweep`] then decides each
//! branch mechanically: it searches every kernel `ker ι = ⊕_{w∈S} M(w)`
//! (breadth first, up to the symmetries fixing `α`), closes it under the
//! forcing rules of the graded model, completes the product tables and
//! validates the result. A kernel whose forced closure contains `1` prunes
//! all of its supersets.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use super::{complete_structure, validate, BuilderSpec, CliffordModel, Closure, ConstructError, GradedModel, VWedgeForm};
use crate::algebra::{Subspace, Weight};
use crate::clifford::CliffordAlgebra;
use crate::scalar::{Matrix, Scalar};

/// `Σ_i coeffs[i]·x_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

impl AffineForm {
    /// The variable `x_i` among `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); nvars];
        coeffs[i] = Scalar::one();
        AffineForm { coeffs, constant: Scalar::zero() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        AffineForm { coeffs: vec![Scalar::zero(); nvars], constant: c }
    }

    pub fn add(&self, o: &AffineForm) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        }
    }

    pub fn scale(&self, s: &Scalar) -> AffineForm {
        AffineForm { coeffs: self.coeffs.iter().map(|c| c * s).collect(), constant: &self.constant * s }
    }

    pub fn sub(&self, o: &AffineForm) -> AffineForm {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn plus_constant(&self, c: i64) -> AffineForm {
        AffineForm { coeffs: self.coeffs.clone(), constant: &self.constant + &Scalar::from_int(c) }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, x)| &acc + &(c * x))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    /// Variables with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Replaces `x_var` by `value` (which must not involve `x_var`).
    fn substitute(&self, var: usize, value: &AffineForm) -> AffineForm {
        let c = self.coeffs[var].clone();
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs[var] = Scalar::zero();
        out.add(&value.scale(&c))
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.as_rational().is_some() && c.to_string().starts_with('-');
            let mag = if neg { -c } else { c.clone() };
            s.push_str(match (s.is_empty(), neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            });
            if !mag.is_one() {
                s.push_str(&format!("{}·", mag));
            }
            s.push_str(&names[i]);
        }
        let c = &self.constant;
        if s.is_empty() {
            return c.to_string();
        }
        if !c.is_zero() {
            let t = c.to_string();
            match t.strip_prefix('-') {
                Some(m) => s.push_str(&format!(" - {}", m)),
                None => s.push_str(&format!(" + {}", t)),
            }
        }
        s
    }
}

/// A constraint `Π factors = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredConstraint {
    pub factors: Vec<AffineForm>,
}

impl FactoredConstraint {
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.factors.iter().fold(Scalar::one(), |acc, f| &acc * &f.eval(point))
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| format!("({})", f.display(names))).collect();
        format!("{} = 0", parts.join(""))
    }
}

/// Why a system has no solution: the first contradiction met by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contradiction {
    /// A variable is forced to two distinct values.
    Forced { variable: String, first: Scalar, second: Scalar },
    /// Some constraint has only nonzero constant factors.
    Violated { constraint: String },
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::Forced { variable, first, second } => {
                write!(f, "{} forced to both {} and {}", variable, second, first)
            }
            Contradiction::Violated { constraint } => write!(f, "constraint {} cannot hold", constraint),
        }
    }
}

/// Solutions of a [`FactoredConstraintSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Points(Vec<Vec<Scalar>>),
    Unsat(Contradiction),
}

/// Products of affine forms in the unknowns `α_{i,j}` (`i < j`) required to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredConstraintSystem {
    pub dim_v: usize,
    /// The pair `(i, j)` (0-based, `i < j`) of every variable.
    pub pairs: Vec<(usize, usize)>,
    pub variables: Vec<String>,
    pub constraints: Vec<FactoredConstraint>,
}

/// Search state: bound variables as affine forms in the free ones.
type Subst = Vec<Option<AffineForm>>;

impl FactoredConstraintSystem {
    /// The constraint families for `dim V ∈ {5, 6, 7, 8}`.
    pub fn harvest(dim_v: usize) -> Result<Self, ConstructError> {
        if !(5..=8).contains(&dim_v) {
            return Err(ConstructError::InvalidSpec(format!("exclusion sweeps cover dim V ∈ 5..=8, not {}", dim_v)));
        }
        let n = dim_v / 2;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let variables: Vec<String> = pairs.iter().map(|(i, j)| format!("α_{{{},{}}}", i + 1, j + 1)).collect();
        let nv = pairs.len();
        let var = |i: usize, j: usize| {
            let k = pairs.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair");
            AffineForm::var(nv, k)
        };
        let mut constraints = Vec::new();
        if dim_v % 2 == 1 {
            for &(i, j) in &pairs {
                for u in 0..2 {
                    let s = if u == 0 { Scalar::one() } else { -Scalar::one() };
                    constraints.push(FactoredConstraint { factors: vec![var(i, j).scale(&s).plus_constant(2)] });
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    for k in j + 1..n {
                        if i == j || i == k {
                            continue;
                        }
                        let (aij, aik, ajk) = (var(i, j), var(i, k), var(j, k));
                        constraints.push(FactoredConstraint { factors: vec![aij.add(&aik), ajk.plus_constant(1)] });
                        constraints.push(FactoredConstraint { factors: vec![aij.sub(&aik), ajk.plus_constant(-1)] });
                    }
                }
            }
        }
        Ok(FactoredConstraintSystem { dim_v, pairs, variables, constraints })
    }

    /// Values of every constraint at `point`.
    pub fn residuals(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.constraints.iter().map(|c| c.eval(point)).collect()
    }

    pub fn is_satisfied_by(&self, point: &[Scalar]) -> bool {
        self.residuals(point).iter().all(Scalar::is_zero)
    }

    /// The `n × n` symmetric α-matrix of a solution.
    pub fn alpha_matrix(&self, point: &[Scalar]) -> Matrix {
        let n = self.dim_v / 2;
        let mut m = Matrix::zeros(n, n);
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            m.set(i, j, point[k].clone());
            m.set(j, i, point[k].clone());
        }
        m
    }

    /// Enumerates all solutions by branching on the factors left to right.
    /// A solution family with free parameters is reported as underdetermined.
    pub fn solve(&self) -> Result<SolutionSet, ConstructError> {
        let mut search = Search { sys: self, points: BTreeMap::new(), memo: HashSet::new(), first: None, free: 0 };
        search.dfs(0, vec![None; self.pairs.len()]);
        if search.free > 0 {
            return Err(ConstructError::UnderdeterminedSpec { free: search.free });
        }
        if search.points.is_empty() {
            let c = search.first.unwrap_or(Contradiction::Violated { constraint: "(empty search)".into() });
            return Ok(SolutionSet::Unsat(c));
        }
        let points: Vec<Vec<Scalar>> = search.points.into_values().collect();
        Ok(SolutionSet::Points(points))
    }
}

struct Search<'a> {
    sys: &'a FactoredConstraintSystem,
    points: BTreeMap<String, Vec<Scalar>>,
    memo: HashSet<(usize, String)>,
    first: Option<Contradiction>,
    free: usize,
}

impl Search<'_> {
    fn apply(subst: &Subst, f: &AffineForm) -> AffineForm {
        let mut out = f.clone();
        for (v, s) in subst.iter().enumerate() {
            if let Some(val) = s {
                out = out.substitute(v, val);
            }
        }
        out
    }

    /// A key identifying the affine subspace cut out by `subst`: the reduced
    /// row echelon form of its equations `x_p − value_p = 0`. Distinct
    /// branching orders reaching the same subspace share one memo entry.
    fn key(subst: &Subst) -> String {
        let nv = subst.len();
        let bound: Vec<(usize, &AffineForm)> = subst.iter().enumerate().filter_map(|(p, s)| s.as_ref().map(|f| (p, f))).collect();
        let mut m = Matrix::zeros(bound.len(), nv + 1);
        for (r, (p, f)) in bound.iter().enumerate() {
            for (v, c) in f.coeffs.iter().enumerate() {
                m.set(r, v, -c);
            }
            m.set(r, *p, &m.get(r, *p).clone() + &Scalar::one());
            m.set(r, nv, -&f.constant);
        }
        let (e, _) = m.rref();
        (0..e.rows()).map(|r| (0..=nv).map(|c| e.get(r, c).to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("|")
    }

    fn dfs(&mut self, idx: usize, subst: Subst) {
        if !self.memo.insert((idx, Self::key(&subst))) {
            return;
        }
        let sys = self.sys;
        if idx == sys.constraints.len() {
            let nfree = subst.iter().filter(|s| s.is_none()).count();
            if nfree > 0 {
                self.free = self.free.max(nfree);
                return;
            }
            let point: Vec<Scalar> = subst.iter().map(|s| s.as_ref().expect("bound").constant.clone()).collect();
            let key = point.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            self.points.insert(key, point);
            return;
        }
        let original = &sys.constraints[idx];
        let reduced: Vec<AffineForm> = original.factors.iter().map(|f| Self::apply(&subst, f)).collect();
        if reduced.iter().any(AffineForm::is_zero) {
            self.dfs(idx + 1, subst);
            return;
        }
        let live: Vec<&AffineForm> = reduced.iter().filter(|f| !f.is_constant()).collect();
        if live.is_empty() {
            self.note_contradiction(original, &subst);
            return;
        }
        for f in live {
            let pivot = f.support()[0];
            let c = f.coeffs[pivot].clone();
            let mut rest = f.clone();
            rest.coeffs[pivot] = Scalar::zero();
            let value = rest.scale(&-c.inv().expect("nonzero pivot"));
            let mut next: Subst = subst.iter().map(|s| s.as_ref().map(|g| g.substitute(pivot, &value))).collect();
            next[pivot] = Some(value);
            self.dfs(idx + 1, next);
        }
    }

    fn note_contradiction(&mut self, original: &FactoredConstraint, subst: &Subst) {
        if self.first.is_some() {
            return;
        }
        let sys = self.sys;
        let c = match original.factors.as_slice() {
            [f] if f.support().len() == 1 => {
                let v = f.support()[0];
                match &subst[v] {
                    Some(bound) if bound.is_constant() => {
                        let root = -f.constant.try_div(&f.coeffs[v]).expect("nonzero coefficient");
                        Contradiction::Forced {
                            variable: sys.variables[v].clone(),
                            first: bound.constant.clone(),
                            second: root,
                        }
                    }
                    _ => Contradiction::Violated { constraint: original.display(&sys.variables) },
                }
            }
            _ => Contradiction::Violated { constraint: original.display(&sys.variables) },
        };
        self.first = Some(c);
    }
}

/// Classification of one solution branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchVerdict {
    /// Every admissible kernel forces `ι = 0`.
    ZeroAlgebra,
    /// Nonzero algebras exist but none is simple.
    NonSimple,
    /// At least one kernel yields a simple algebra.
    Simple,
}

impl fmt::Display for BranchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchVerdict::ZeroAlgebra => "zero algebra",
            BranchVerdict::NonSimple => "non-simple",
            BranchVerdict::Simple => "simple",
        })
    }
}

/// A kernel choice yielding a valid nonzero algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutcome {
    pub kernel_words: Vec<String>,
    pub weight_dims: Vec<(Weight, usize)>,
    pub simple: bool,
}

/// Verdict for one solution `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub alpha: Vec<Scalar>,
    pub verdict: BranchVerdict,
    /// All kernels giving a nonzero algebra (full symmetry orbits).
    pub algebras: Vec<KernelOutcome>,
    /// Number of kernel orbits examined by the search.
    pub kernels_examined: usize,
    /// The solution whose kernel search decided this branch (equal to
    /// `alpha`, or a solution mapped to it by a frame symmetry).
    pub searched_as: Vec<Scalar>,
}

/// Result of [`exclusion_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub system: FactoredConstraintSystem,
    pub solutions: SolutionSet,
    pub branches: Vec<BranchReport>,
}

impl CaseReport {
    pub fn dim_v(&self) -> usize {
        self.system.dim_v
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.solutions, SolutionSet::Unsat(_))
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        match &self.solutions {
            SolutionSet::Points(p) => p,
            SolutionSet::Unsat(_) => &[],
        }
    }

    /// Solutions for which some kernel yields a nonzero algebra.
    pub fn nonzero_solutions(&self) -> Vec<&[Scalar]> {
        self.branches.iter().filter(|b| b.verdict != BranchVerdict::ZeroAlgebra).map(|b| b.alpha.as_slice()).collect()
    }
}

fn fmt_point(p: &[Scalar]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.solutions {
            SolutionSet::Unsat(c) => writeln!(f, "UNSAT: {}", c),
            SolutionSet::Points(points) => {
                writeln!(
                    f,
                    "dim V = {}: {} solutions for ({})",
                    self.dim_v(),
                    points.len(),
                    self.system.variables.join(", ")
                )?;
                for b in &self.branches {
                    write!(f, "  {}: {}", fmt_point(&b.alpha), b.verdict)?;
                    if let Some(first) = b.algebras.first() {
                        let dims: Vec<String> = first.weight_dims.iter().map(|(_, d)| d.to_string()).collect();
                        write!(f, " ({} kernels, weight dims {})", b.algebras.len(), dims.join("+"))?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
        }
    }
}

/// Symmetries of the null frame: a permutation of the pairs and a set of
/// pairs on which `D_i ↦ i·D̄_i`, `D̄_i ↦ −i·D_i`. They preserve the inner
/// product, send `α_{i,j}` to `s_i s_j α_{σ(i),σ(j)}` and `M(w)` to `M(g·w)`.
#[derive(Clone, Debug)]
struct FrameSymmetry {
    perm: Vec<usize>,
    flips: u32,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

impl FrameSymmetry {
    fn all(n: usize) -> Vec<FrameSymmetry> {
        permutations(n).into_iter().flat_map(|perm| (0..1u32 << n).map(move |flips| FrameSymmetry { perm: perm.clone(), flips })).collect()
    }

    fn sign(&self, i: usize) -> Scalar {
        if self.flips >> i & 1 == 1 {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }

    fn act_alpha(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.set(self.perm[i], self.perm[j], &(&self.sign(i) * &self.sign(j)) * a.get(i, j));
                }
            }
        }
        out
    }

    /// Image of the word index `m` (digit `i` is bit `n−1−i`).
    fn act_word(&self, n: usize, m: usize) -> usize {
        let mut out = 0;
        for i in 0..n {
            let d = (m >> (n - 1 - i) & 1) ^ (self.flips >> i & 1) as usize;
            out |= d << (n - 1 - self.perm[i]);
        }
        out
    }

    fn act_outcome(&self, n: usize, o: &KernelOutcome) -> KernelOutcome {
        let word = |s: &String| usize::from_str_radix(s, 2).expect("binary kernel word");
        let mut kernel_words: Vec<String> =
            o.kernel_words.iter().map(|w| format!("{:0width$b}", self.act_word(n, word(w)), width = n)).collect();
        kernel_words.sort();
        KernelOutcome { kernel_words, ..o.clone() }
    }

    fn act_mask(&self, n: usize, mask: u64) -> u64 {
        let mut out = 0;
        for m in 0..1usize << n {
            if mask >> m & 1 == 1 {
                out |= 1u64 << self.act_word(n, m);
            }
        }
        out
    }
}

/// Exhaustive kernel search for one `α` (even `dim V`).
fn decide_branch(dim_v: usize, alpha: &Matrix) -> Result<(BranchVerdict, Vec<KernelOutcome>, usize), ConstructError> {
    let cl = CliffordAlgebra::new(dim_v);
    let n = cl.pairs();
    let words = cl.all_w();
    let modules: Vec<Vec<_>> = words.iter().map(|w| cl.submodule(w, None).space.basis()).collect();
    let stab: Vec<FrameSymmetry> = FrameSymmetry::all(n).into_iter().filter(|g| &g.act_alpha(alpha) == alpha).collect();
    let canon = |mask: u64| stab.iter().map(|g| g.act_mask(n, mask)).min().expect("identity");
    let saturate = |k: &Subspace| -> u64 {
        (0..words.len()).filter(|&m| modules[m].iter().all(|x| k.contains(x))).fold(0, |acc, m| acc | 1 << m)
    };
    let form = VWedgeForm::Alpha(alpha.clone());
    let mut visited: HashSet<u64> = HashSet::from([0]);
    let mut queue: VecDeque<u64> = VecDeque::from([0]);
    let mut found: Vec<(u64, Vec<(Weight, usize)>, bool)> = Vec::new();
    let mut examined = 0;
    while let Some(mask) = queue.pop_front() {
        examined += 1;
        let model = CliffordModel::new(dim_v, &form)?;
        let mut kernel = Subspace::zero();
        for m in (0..words.len()).filter(|m| mask >> m & 1 == 1) {
            for x in &modules[m] {
                kernel.insert(x);
            }
        }
        let sat = match GradedModel::analyze(model, kernel) {
            Ok(Closure::Collapsed) => continue,
            Ok(Closure::Uncovered { kernel, .. }) => saturate(&kernel),
            Ok(Closure::Model(gm)) => {
                let sat = saturate(&gm.kernel);
                let built = gm.completion_problem().and_then(|p| complete_structure(&p)).and_then(|r| {
                    validate(&r)?;
                    Ok(r)
                });
                if let Ok(r) = built {
                    let simple = r.is_simple_physical()?.simple;
                    found.push((sat, gm.dims(), simple));
                }
                sat
            }
            Err(_) => mask,
        };
        for m in 0..words.len() {
            if sat >> m & 1 == 0 {
                let c = canon(sat | 1 << m);
                if visited.insert(c) {
                    queue.push_back(c);
                }
            }
        }
    }
    let word_str = |m: usize| words[m].iter().map(|d| char::from(b'0' + d)).collect::<String>();
    let mut algebras = Vec::new();
    let mut seen = HashSet::new();
    for (mask, dims, simple) in found {
        for g in &stab {
            let img = g.act_mask(n, mask);
            if seen.insert(img) {
                let kernel_words = (0..words.len()).filter(|m| img >> m & 1 == 1).map(word_str).collect();
                algebras.push(KernelOutcome { kernel_words, weight_dims: dims.clone(), simple });
            }
        }
    }
    algebras.sort_by(|a, b| a.kernel_words.cmp(&b.kernel_words));
    let verdict = if algebras.is_empty() {
        BranchVerdict::ZeroAlgebra
    } else if algebras.iter().any(|a| a.simple) {
        BranchVerdict::Simple
    } else {
        BranchVerdict::NonSimple
    };
    Ok((verdict, algebras, examined))
}

/// Runs the case analysis for `dim V ∈ {5, 6, 7, 8}`: harvests the factored
/// α-constraints, enumerates their solutions and decides every branch.
pub fn exclusion_sweep(dim_v: usize) -> Result<CaseReport, ConstructError> {
    let system = FactoredConstraintSystem::harvest(dim_v)?;
    let solutions = system.solve()?;
    let branches = match &solutions {
        SolutionSet::Unsat(_) => Vec::new(),
        SolutionSet::Points(points) => {
            if dim_v % 2 == 1 {
                return Err(ConstructError::InvalidSpec("kernel search is implemented for even dim V".into()));
            }
            // Solutions related by a frame symmetry give isomorphic branches:
            // search one representative per orbit and transport its kernels.
            let n = dim_v / 2;
            let group = FrameSymmetry::all(n);
            let identity = group.iter().position(|g| g.flips == 0 && g.perm.iter().enumerate().all(|(i, &p)| i == p)).expect("identity");
            let mut reps: Vec<usize> = Vec::new();
            let mut link: Vec<(usize, usize)> = Vec::new();
            for (k, p) in points.iter().enumerate() {
                let a = system.alpha_matrix(p);
                let hit = reps.iter().find_map(|&r| {
                    let ar = system.alpha_matrix(&points[r]);
                    group.iter().position(|g| g.act_alpha(&ar) == a).map(|g| (r, g))
                });
                match hit {
                    Some(rg) => link.push(rg),
                    None => {
                        reps.push(k);
                        link.push((k, identity));
                    }
                }
            }
            let decided: Vec<(usize, (BranchVerdict, Vec<KernelOutcome>, usize))> = reps
                .par_iter()
                .map(|&r| Ok((r, decide_branch(dim_v, &system.alpha_matrix(&points[r]))?)))
                .collect::<Result<_, ConstructError>>()?;
            let decided: BTreeMap<usize, _> = decided.into_iter().collect();
            points
                .iter()
                .zip(&link)
                .map(|(p, &(r, g))| {
                    let (verdict, algebras, kernels_examined) = &decided[&r];
                    let algebras = algebras.iter().map(|o| group[g].act_outcome(n, o)).collect();
                    BranchReport {
                        alpha: p.clone(),
                        verdict: *verdict,
                        algebras,
                        kernels_examined: *kernels_examined,
                        searched_as: points[r].clone(),
                    }
                })
                .collect()
        }
    };
    Ok(CaseReport { system, solutions, branches })
}

/// Builds the spec of one branch with an explicit kernel (used by callers that
/// want to inspect a particular algebra found by the sweep).
pub fn branch_spec(dim_v: usize, alpha: &Matrix, kernel_words: &[String]) -> Result<BuilderSpec, ConstructError> {
    let refs: Vec<&str> = kernel_words.iter().map(String::as_str).collect();
    BuilderSpec::with_alpha(dim_v, alpha.clone(), &refs)
}
