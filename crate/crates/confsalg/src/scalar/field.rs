//! The field Q(i)(α) of rational functions in one formal parameter.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::BigRational;

use super::gauss::GaussRat;
use super::poly::Poly;
use super::ScalarError;

/// A canonical element `num / den` of Q(i)(α): `gcd(num, den) = 1` and `den` monic.
///
/// Canonicalization happens in every constructor and operation, so structural
/// equality coincides with field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Builds `num / den` in canonical form.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.constant_term();
            if c.is_one() {
                return Scalar { num, den };
            }
            let inv = c.inv().expect("nonzero denominator");
            return Scalar { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading().expect("nonzero").clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.inv().expect("nonzero");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: Poly::constant(GaussRat::from_int(n)), den: Poly::one() }
    }

    /// `p / q`; panics if `q == 0` (used only with literal constants).
    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator in constant");
        Scalar { num: Poly::constant(GaussRat::from_frac(p, q)), den: Poly::one() }
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_gauss(GaussRat::from_rational(r))
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    /// The formal parameter α.
    pub fn alpha() -> Self {
        Scalar { num: Poly::alpha(), den: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on α.
    pub fn is_alpha_free(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as a Gaussian rational, if α-free.
    pub fn as_gauss(&self) -> Option<GaussRat> {
        if self.is_alpha_free() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    /// The value as a rational number, if α-free and real.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gauss().and_then(|g| g.as_rational())
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Self, ScalarError> {
        if o.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if o.den.is_one() && self.den.is_one() && o.num.is_constant() {
            let inv = o.num.constant_term().inv().expect("nonzero");
            return Ok(Scalar { num: self.num.scale(&inv), den: Poly::one() });
        }
        Ok(Self::canonical(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `α = v`.
    pub fn evaluate_alpha(&self, v: &GaussRat) -> Result<Scalar, ScalarError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(ScalarError::PoleAtEvaluation);
        }
        let n = self.num.eval(v);
        Ok(Scalar::from_gauss(n.div(&d).expect("nonzero")))
    }

    /// Substitutes α by another scalar (used for the α ↦ −α symmetry).
    pub fn substitute_alpha(&self, v: &Scalar) -> Result<Scalar, ScalarError> {
        let eval = |p: &Poly| {
            let mut acc = Scalar::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * v) + &Scalar::from_gauss(c.clone());
            }
            acc
        };
        eval(&self.num).try_div(&eval(&self.den)).map_err(|_| ScalarError::PoleAtEvaluation)
    }

    /// Complex conjugation of the Gaussian coefficients (α is treated as real).
    pub fn conj(&self) -> Scalar {
        let c = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().map(|x| x.conj()).collect());
        Self::canonical(c(&self.num), c(&self.den))
    }

    /// `self + c * o`, the workhorse of elimination loops.
    pub fn add_mul(&self, c: &Scalar, o: &Scalar) -> Scalar {
        self + &(c * o)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            return Scalar::canonical(self.num.add(&o.num), self.den.clone());
        }
        Scalar::canonical(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        Scalar::canonical(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    /// Canonical text: ascending powers of `a`, e.g. `1+a`, `-1/2`, `(1+a)/(-1+a)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        self.num.write_with(&mut num, "a").map_err(|_| fmt::Error)?;
        if self.den.is_one() {
            return write!(f, "{}", num);
        }
        let mut den = String::new();
        self.den.write_with(&mut den, "a").map_err(|_| fmt::Error)?;
        // A single-term numerator parses unambiguously by left associativity; the
        // monic denominator is atomic only when it is a bare power of `a`.
        let num_atomic = self.num.term_count() == 1 && self.num.coeffs().iter().all(|c| c.is_monomial());
        let den_atomic = self.den.term_count() == 1;
        let num = if num_atomic { num } else { format!("({})", num) };
        let den = if den_atomic { den } else { format!("({})", den) };
        write!(f, "{}/{}", num, den)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
