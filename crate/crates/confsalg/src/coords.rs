//! Coordinates with respect to a growing list of vectors.

use std::collections::BTreeMap;

use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Echelon rows that remember how they were obtained from the inserted
/// vectors, so that any element of the span can be expressed in them.
#[derive(Clone, Debug)]
pub(crate) struct Coords<K: Ord + Clone = usize> {
    /// pivot → (row, row expressed in inserted-vector ids); each row only
    /// contains keys at or after its pivot.
    rows: BTreeMap<K, (LinComb<K>, LinComb<usize>)>,
    count: usize,
}

impl<K: Ord + Clone> Default for Coords<K> {
    fn default() -> Self {
        Coords { rows: BTreeMap::new(), count: 0 }
    }
}

impl<K: Ord + Clone> Coords<K> {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn len(&self) -> usize {
        self.count
    }

    /// Returns `(remainder, combo)` with `x = remainder + Σ combo_i v_i`.
    fn reduce(&self, x: &LinComb<K>) -> (LinComb<K>, LinComb<usize>) {
        let mut x = x.clone();
        let mut combo = LinComb::zero();
        for (p, (row, rc)) in &self.rows {
            let c = x.coeff(p);
            if !c.is_zero() {
                x = x.add_scaled(&-&c, row);
                combo = combo.add_scaled(&c, rc);
            }
        }
        (x, combo)
    }

    /// Inserts `x` with the next id when independent; otherwise returns its
    /// expression in the previously inserted vectors.
    pub(crate) fn insert(&mut self, x: &LinComb<K>) -> Result<usize, LinComb<usize>> {
        let (r, combo) = self.reduce(x);
        let Some((p, c)) = r.iter().next() else { return Err(combo) };
        let id = self.count;
        self.count += 1;
        let inv = c.inv().expect("nonzero pivot");
        let rc = LinComb::basis(id).add_scaled(&-Scalar::one(), &combo).scale(&inv);
        self.rows.insert(p.clone(), (r.scale(&inv), rc));
        Ok(id)
    }

    /// Expression of `x` in the inserted vectors, if it lies in their span.
    pub(crate) fn express(&self, x: &LinComb<K>) -> Option<LinComb<usize>> {
        let (r, combo) = self.reduce(x);
        r.is_zero().then_some(combo)
    }
}
