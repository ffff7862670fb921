//! Gaussian rationals `(re + im·i) / den` with a shared positive denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of Q(i), stored as `(re + im·i) / den` with `den > 0` and
/// `gcd(re, im, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRat {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl GaussRat {
    fn normalized(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if re.is_zero() && im.is_zero() {
            return Self::zero();
        }
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        if !den.is_one() {
            let g = re.gcd(&im).gcd(&den);
            if !g.is_one() {
                re /= &g;
                im /= &g;
                den /= &g;
            }
        }
        GaussRat { re, im, den }
    }

    pub fn zero() -> Self {
        GaussRat { re: BigInt::zero(), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat { re: BigInt::zero(), im: BigInt::one(), den: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: BigInt::from(n), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussRat { re: n, im: BigInt::zero(), den: BigInt::one() }
    }

    /// `p / q` for machine integers; `q` must be nonzero.
    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::normalized(BigInt::from(p), BigInt::zero(), BigInt::from(q))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(r.numer().clone(), BigInt::zero(), r.denom().clone())
    }

    pub fn from_parts(re: &BigRational, im: &BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let a = re.numer() * (&den / re.denom());
        let b = im.numer() * (&den / im.denom());
        Self::normalized(a, b, den)
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re.clone(), self.den.clone())
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // den / (re + im i) = den (re - im i) / (re² + im²)
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::normalized(&self.den * &self.re, -(&self.den * &self.im), norm))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self * &o)
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone(), den: self.den.clone() }
    }

    /// Deterministic total order used for canonical printing and sorting.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (self.re() , self.im()).cmp(&(other.re(), other.im()))
    }

    /// Real-valued sign of the leading component (real part if nonzero, else imaginary part).
    pub fn leading_sign_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Whether the number prints as a single signed term (pure real or pure imaginary).
    pub fn is_monomial(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }

    /// Rational value when the number is real.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_real() {
            Some(self.re())
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Default for GaussRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        if self.den == o.den {
            return GaussRat::normalized(&self.re + &o.re, &self.im + &o.im, self.den.clone());
        }
        GaussRat::normalized(
            &self.re * &o.den + &o.re * &self.den,
            &self.im * &o.den + &o.im * &self.den,
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        if self.den == o.den {
            return GaussRat::normalized(&self.re - &o.re, &self.im - &o.im, self.den.clone());
        }
        GaussRat::normalized(
            &self.re * &o.den - &o.re * &self.den,
            &self.im * &o.den - &o.im * &self.den,
            &self.den * &o.den,
        )
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.is_zero() || o.is_zero() {
            return GaussRat::zero();
        }
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::normalized(&self.re * &o.re, BigInt::zero(), &self.den * &o.den);
        }
        GaussRat::normalized(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            &self.den * &o.den,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone(), den: self.den.clone() }
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, num: &BigInt, den: &BigInt) -> fmt::Result {
    if den.is_one() {
        write!(f, "{}", num)
    } else {
        write!(f, "{}/{}", num, den)
    }
}

impl fmt::Display for GaussRat {
    /// Prints `3`, `-1/2`, `i`, `-2*i`, `1/2*i`, or `(1+2*i)` for mixed values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re();
        let im = self.im();
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational, leading: bool| -> fmt::Result {
            let neg = im.is_negative();
            let abs = im.abs();
            if neg {
                write!(f, "-")?;
            } else if !leading {
                write!(f, "+")?;
            }
            if abs.is_one() {
                write!(f, "i")
            } else {
                fmt_rational(f, abs.numer(), abs.denom())?;
                write!(f, "*i")
            }
        };
        if im.is_zero() {
            fmt_rational(f, re.numer(), re.denom())
        } else if re.is_zero() {
            write_im(f, &im, true)
        } else {
            write!(f, "(")?;
            fmt_rational(f, re.numer(), re.denom())?;
            write_im(f, &im, false)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_gaussian_integer() {
        let a = &GaussRat::one() + &GaussRat::i();
        let b = &GaussRat::one() - &GaussRat::i();
        assert_eq!(&a * &b, GaussRat::from_int(2));
    }

    #[test]
    fn inverse_and_display() {
        let a = &GaussRat::from_int(1) + &(&GaussRat::from_int(2) * &GaussRat::i());
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(inv.to_string(), "(1/5-2/5*i)");
        assert_eq!(GaussRat::from_frac(-3, 6).to_string(), "-1/2");
        assert_eq!((-&GaussRat::i()).to_string(), "-i");
    }
}
