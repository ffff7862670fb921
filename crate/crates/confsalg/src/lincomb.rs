//! Finitely supported formal linear combinations with exact coefficients.

use std::fmt;

use crate::scalar::Scalar;

/// A sparse linear combination `Σ c_k · k`, sorted by key with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord + Clone> {
    terms: Vec<(K, Scalar)>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: Vec::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LinComb { terms: vec![(k, c)] }
        }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    /// Collects arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(it: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut v: Vec<(K, Scalar)> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(K, Scalar)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => {
                    *lc = &*lc + &c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((k, c)),
            }
        }
        LinComb { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter().map(|(k, c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.iter().map(|(k, _)| k)
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        match self.terms.binary_search_by(|(kk, _)| kk.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (k, v) = &other.terms[j];
                    out.push((k.clone(), c * v));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = self.terms[i].1.add_mul(c, &other.terms[j].1);
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LinComb { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&Scalar::from_int(-1), other)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// Relabels keys (merging collisions).
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> LinComb<K2> {
        LinComb::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Applies a fallible map to every coefficient.
    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        Ok(LinComb::from_terms(
            self.terms.iter().map(|(k, v)| Ok((k.clone(), f(v)?))).collect::<Result<Vec<_>, E>>()?,
        ))
    }

    /// Linear extension of a map on keys.
    pub fn linear_map<K2: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut acc = LinComb::zero();
        for (k, c) in &self.terms {
            acc = acc.add_scaled(c, &f(k));
        }
        acc
    }

    pub fn into_terms(self) -> Vec<(K, Scalar)> {
        self.terms
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", k)?;
            } else {
                write!(f, "({})*{}", c, k)?;
            }
        }
        Ok(())
    }
}
