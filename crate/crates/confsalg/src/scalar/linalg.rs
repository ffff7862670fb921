//! Exact dense and sparse linear algebra over Q(i)(α).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::field::Scalar;
use super::ScalarError;

/// Dense rectangular matrix of canonical scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::linsolve`]: a particular solution plus a kernel basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Solved(Solution),
    Inconsistent,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ScalarError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ScalarError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from textual entries.
    pub fn parse(rows: &[&[&str]]) -> Result<Self, ScalarError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Scalar>, _>>())
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix, ScalarError> {
        if self.cols != o.rows {
            return Err(ScalarError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add_mul(a, b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix, ScalarError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(ScalarError::DimensionMismatch("matrix addition".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Applies a scalar map entrywise (e.g. α-substitution).
    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<Matrix, ScalarError> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, r * m.cols + k);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(r, k) * &inv;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(i, k) - &(&f * m.get(r, k));
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel `{x | A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b` exactly.
    pub fn linsolve(&self, b: &[Scalar]) -> Result<SolveOutcome, ScalarError> {
        if b.len() != self.rows {
            return Err(ScalarError::DimensionMismatch(format!(
                "matrix has {} rows, right-hand side has {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(SolveOutcome::Inconsistent);
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            particular[pc] = m.get(r, self.cols).clone();
        }
        Ok(SolveOutcome::Solved(Solution { particular, kernel: self.kernel() }))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<Scalar, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                for k in 0..n {
                    m.data.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m.get(i, k) - &(&f * m.get(c, k));
                    m.set(i, k, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(tI − A)` via similarity reduction to
    /// upper Hessenberg form.
    pub fn charpoly(&self) -> Result<TPoly, ScalarError> {
        if self.rows != self.cols {
            return Err(ScalarError::DimensionMismatch("charpoly of non-square matrix".into()));
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for k in 0..n {
                    h.data.swap(i * n + k, m * n + k);
                }
                for k in 0..n {
                    h.data.swap(k * n + i, k * n + m);
                }
            }
            let inv = h.get(m, m - 1).inv().expect("nonzero pivot");
            for j in m + 1..n {
                let u = h.get(j, m - 1) * &inv;
                if u.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let v = h.get(j, k) - &(&u * h.get(m, k));
                    h.set(j, k, v);
                }
                for k in 0..n {
                    let v = h.get(k, m).add_mul(&u, h.get(k, j));
                    h.set(k, m, v);
                }
            }
        }
        // p_m = (t − h_mm) p_{m−1} − Σ_{i<m} h_{i,m} (Π_{j=i+1}^{m} h_{j,j−1}) p_{i−1}  (1-indexed)
        let mut p: Vec<TPoly> = vec![TPoly::one()];
        for m in 1..=n {
            let lin = TPoly::from_coeffs(vec![-h.get(m - 1, m - 1), Scalar::one()]);
            let mut next = lin.mul(&p[m - 1]);
            let mut prod = Scalar::one();
            for i in (1..m).rev() {
                prod = &prod * h.get(i, i - 1);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i - 1, m - 1);
                if !c.is_zero() {
                    next = next.sub(&p[i - 1].scale(&c));
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("nonempty"))
    }
}

/// Polynomial in an auxiliary variable `t` with coefficients in Q(i)(α), ascending.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPoly {
    coeffs: Vec<Scalar>,
}

impl TPoly {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn one() -> Self {
        TPoly { coeffs: vec![Scalar::one()] }
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        TPoly { coeffs: vec![Scalar::zero(), Scalar::one()] }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        TPoly::from_coeffs(
            (0..n).map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z)).collect(),
        )
    }

    pub fn sub(&self, o: &TPoly) -> TPoly {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &TPoly) -> TPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return TPoly::from_coeffs(vec![]);
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_mul(a, b);
            }
        }
        TPoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> TPoly {
        (0..e).fold(TPoly::one(), |acc, _| acc.mul(self))
    }

    /// Evaluates the polynomial at a square matrix (Horner scheme).
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix, ScalarError> {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&Matrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// Substitutes a value for α in every coefficient.
    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>) -> Result<TPoly, ScalarError> {
        Ok(TPoly::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }
}

impl fmt::Display for TPoly {
    /// Descending powers of `t`, coefficients in the scalar grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let simple = !text[1..].contains(['+', '-']) && !text.contains('/');
            let (neg, body) = if simple && text.starts_with('-') {
                (true, text[1..].to_string())
            } else if simple {
                (false, text.clone())
            } else {
                (false, format!("({})", text))
            };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", k),
            };
            if k == 0 {
                write!(f, "{}", body)?;
            } else if body == "1" {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", body, mono)?;
            }
        }
        Ok(())
    }
}

/// Outcome of adding one equation to a [`SparseSystem`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AddOutcome {
    NewPivot,
    Redundant,
    Inconsistent,
}

#[derive(Clone, Debug)]
struct SparseRow {
    entries: Vec<(usize, Scalar)>,
    rhs: Scalar,
}

/// Incremental sparse Gaussian elimination for systems `Σ c_k x_k = rhs`.
///
/// Each stored row is normalized so that its pivot (its smallest column) has
/// coefficient one; new rows are reduced against the stored pivots on insertion.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    pivot_of_col: HashMap<usize, usize>,
    rows: Vec<SparseRow>,
    inconsistent: bool,
    equations_seen: usize,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, ..Default::default() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn is_determined(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn equations_seen(&self) -> usize {
        self.equations_seen
    }

    /// Adds the equation `Σ entries = rhs`, reducing it against known pivots.
    pub fn add_equation(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar) -> AddOutcome {
        self.equations_seen += 1;
        let mut work: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            if v.is_zero() {
                continue;
            }
            let e = work.entry(c).or_insert_with(Scalar::zero);
            *e = &*e + &v;
            if e.is_zero() {
                work.remove(&c);
            }
        }
        let mut rhs = rhs;
        let mut cursor = 0usize;
        loop {
            let Some((&c, _)) = work.range(cursor..).next() else { break };
            cursor = c + 1;
            let Some(&r) = self.pivot_of_col.get(&c) else { continue };
            let f = work.remove(&c).expect("present");
            let row = &self.rows[r];
            for (cc, vv) in row.entries.iter().skip(1) {
                let e = work.entry(*cc).or_insert_with(Scalar::zero);
                *e = &*e - &(&f * vv);
                if e.is_zero() {
                    work.remove(cc);
                }
            }
            rhs = &rhs - &(&f * &row.rhs);
        }
        let Some((&pc, pv)) = work.iter().next() else {
            if rhs.is_zero() {
                return AddOutcome::Redundant;
            }
            self.inconsistent = true;
            return AddOutcome::Inconsistent;
        };
        let inv = pv.inv().expect("nonzero pivot");
        let entries: Vec<(usize, Scalar)> = work.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        let rhs = &rhs * &inv;
        self.pivot_of_col.insert(pc, self.rows.len());
        self.rows.push(SparseRow { entries, rhs });
        AddOutcome::NewPivot
    }

    /// Columns without a pivot (free unknowns).
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivot_of_col.contains_key(c)).collect()
    }

    /// A basis of the solutions of the homogeneous system, one vector per
    /// free column (that column set to one, the other free columns to zero).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut order: Vec<(usize, usize)> = self.pivot_of_col.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![Scalar::zero(); self.ncols];
                x[f] = Scalar::one();
                for &(c, r) in &order {
                    let mut v = Scalar::zero();
                    for (cc, vv) in self.rows[r].entries.iter().skip(1) {
                        if !x[*cc].is_zero() {
                            v = &v - &(vv * &x[*cc]);
                        }
                    }
                    x[c] = v;
                }
                x
            })
            .collect()
    }

    /// Back-substitution with free unknowns set to zero; `None` if inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.ncols];
        let mut order: Vec<(usize, usize)> = self.pivot_of_col.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for (c, r) in order {
            let row = &self.rows[r];
            let mut v = row.rhs.clone();
            for (cc, vv) in row.entries.iter().skip(1) {
                if !x[*cc].is_zero() {
                    v = &v - &(vv * &x[*cc]);
                }
            }
            x[c] = v;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn spec_linsolve_examples() {
        let a = Matrix::parse(&[&["1", "0"], &["0", "1"]]).unwrap();
        match a.linsolve(&[s("a"), s("i")]).unwrap() {
            SolveOutcome::Solved(sol) => {
                assert_eq!(sol.particular, vec![s("a"), s("i")]);
                assert!(sol.kernel.is_empty());
            }
            SolveOutcome::Inconsistent => panic!(),
        }
        let a = Matrix::parse(&[&["1", "1"]]).unwrap();
        match a.linsolve(&[s("0")]).unwrap() {
            SolveOutcome::Solved(sol) => assert_eq!(sol.kernel, vec![vec![s("-1"), s("1")]]),
            SolveOutcome::Inconsistent => panic!(),
        }
        let a = Matrix::parse(&[&["1"], &["1"]]).unwrap();
        assert_eq!(a.linsolve(&[s("0"), s("1")]).unwrap(), SolveOutcome::Inconsistent);
        assert!(matches!(a.linsolve(&[s("0")]), Err(ScalarError::DimensionMismatch(_))));
    }

    #[test]
    fn spec_charpoly_examples() {
        let id = Matrix::identity(2);
        let t1 = TPoly::from_coeffs(vec![s("-1"), s("1")]);
        assert_eq!(id.charpoly().unwrap(), t1.pow(2));
        assert_eq!(Matrix::zeros(3, 3).charpoly().unwrap(), TPoly::t().pow(3));
        assert!(Matrix::zeros(2, 3).charpoly().is_err());
    }

    #[test]
    fn sparse_system_matches_dense() {
        let mut sys = SparseSystem::new(3);
        assert_eq!(sys.add_equation([(0, s("1")), (1, s("1"))], s("3")), AddOutcome::NewPivot);
        assert_eq!(sys.add_equation([(1, s("1")), (2, s("-1"))], s("1")), AddOutcome::NewPivot);
        assert_eq!(sys.add_equation([(0, s("1")), (2, s("1"))], s("2")), AddOutcome::Redundant);
        assert_eq!(sys.add_equation([(2, s("2"))], s("a")), AddOutcome::NewPivot);
        let x = sys.particular_solution().unwrap();
        assert_eq!(x[2], s("a/2"));
        assert_eq!(x[1], s("1+a/2"));
        assert_eq!(x[0], s("2-a/2"));
        assert_eq!(sys.add_equation([(0, s("1"))], s("0")), AddOutcome::Inconsistent);
    }
}
