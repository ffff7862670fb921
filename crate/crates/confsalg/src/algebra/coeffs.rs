//! The coefficient functions `G` and `F` and exact binomials.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Conformal weights are rational numbers (half-integers for physical algebras).
pub type Weight = Rational64;

fn big(r: Weight) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// True when `x ∈ −½ℕ = {0, −1/2, −1, −3/2, …}`.
pub fn in_neg_half_nat(x: &BigRational) -> bool {
    !x.is_positive() && (x * BigRational::from_integer(2.into())).is_integer()
}

/// `G(Δa, Δb, n, j)` as a rational number.
pub fn coeff_g_rational(da: Weight, db: Weight, n: u32, j: u32) -> BigRational {
    let da = big(da);
    let db = big(db);
    let n = BigRational::from_integer(n.into());
    let jr = BigRational::from_integer(j.into());
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let base = &da + &db - &n - &jr - &one;
    if !in_neg_half_nat(&base) {
        let mut acc = BigRational::one();
        for k in 0..j {
            let k = BigRational::from_integer(k.into());
            let num = &two * &da - &n - &jr - &one + &k;
            let den = &two * &base + &k;
            acc = acc * num / den;
        }
        return acc;
    }
    if j == 0 && (&da + &db - &n - &one).is_zero() {
        return BigRational::one();
    }
    BigRational::zero()
}

/// The coefficient `G(Δa, Δb, n, j)` of the `j`-part formula.
pub fn coeff_g(da: Weight, db: Weight, n: u32, j: u32) -> Scalar {
    Scalar::from_rational(&coeff_g_rational(da, db, n, j))
}

/// Binomial coefficient `C(m, k)` for integer `m` (falling-factorial convention
/// for negative `m`), as a big integer.
pub fn binomial(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if m >= 0 && k > m {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(m - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// The coefficient `F(Δa, Δb, m, n, t)` of the right-hand side of the Jacobi-type axiom.
pub fn coeff_f_rational(da: Weight, db: Weight, m: u32, n: u32, t: u32) -> BigRational {
    let (m, n, t) = (m as i64, n as i64, t as i64);
    let mut acc = BigRational::zero();
    for k in 0..=t {
        let c1 = binomial(m, t - k);
        let c2 = binomial(m + n + k - t, k);
        if c1.is_zero() || c2.is_zero() {
            continue;
        }
        let g = coeff_g_rational(da, db, (t - k) as u32, k as u32);
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc += BigRational::from_integer(c1 * c2 * sign) * g;
    }
    acc
}

/// `F(Δa, Δb, m, n, t)` as a scalar.
pub fn coeff_f(da: Weight, db: Weight, m: u32, n: u32, t: u32) -> Scalar {
    Scalar::from_rational(&coeff_f_rational(da, db, m, n, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: i64, q: i64) -> Weight {
        Weight::new(p, q)
    }

    #[test]
    fn g_examples() {
        assert_eq!(coeff_g(w(2, 1), w(2, 1), 0, 1), Scalar::from_frac(1, 2));
        assert_eq!(coeff_g(w(3, 2), w(1, 1), 0, 0), Scalar::one());
        assert!(coeff_g(w(1, 2), w(1, 2), 0, 1).is_zero());
        // da + db − n − 1 = 0 with j = 0: second case.
        assert_eq!(coeff_g(w(1, 2), w(1, 2), 0, 0), Scalar::one());
    }

    #[test]
    fn f_examples() {
        // F(da, db, 1, 1, 1) = (db − da)/(da + db − 2).
        for (da, db) in [(w(3, 2), w(1, 1)), (w(2, 1), w(1, 2)), (w(5, 2), w(3, 2))] {
            let expect = Scalar::from_rational(&(big(db - da) / big(da + db - w(2, 1))));
            assert_eq!(coeff_f(da, db, 1, 1, 1), expect);
        }
        assert_eq!(coeff_f(w(3, 2), w(3, 2), 0, 0, 0), Scalar::one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(2, 3), BigInt::zero());
    }
}
