//! The exact scalar tower.
//!
//! All higher modules are written against the [`Scalar`] trait, so the same
//! series/polynomial code runs over plain rationals ([`crate::Rat`]), rational
//! functions in `q` ([`crate::QRat`]) or in `q,t` ([`crate::QtRat`]), and --
//! for the one numeric matrix experiment -- over `f64`.
//!
//! Exact scalars are kept in a canonical normal form (gcd-reduced, fixed sign
//! convention), so `==` is a structural identity test.

pub mod ratfn;
pub mod zpoly;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field element with exact (or, for `f64`, best-effort) arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Embedding of the integers.
    fn from_int(n: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// A square root within the scalar domain, if one exists.
    /// The principal (nonnegative) branch is returned where signs make sense.
    fn try_sqrt(&self) -> Option<Self>;

    /// Integer power, with negative exponents going through [`Scalar::try_inv`].
    fn pow_i64(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 {
            self.try_inv().expect("pow_i64: negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // A reduced nonnegative rational is a square iff numerator and
        // denominator are both integer squares.
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn try_sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
}

/// Parse a rational from `"p"` or `"p/q"` decimal notation.
pub fn parse_rat(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// Binomial coefficient C(n, k) inside an arbitrary scalar field,
/// computed as the product of (n-k+m)/m for m = 1..=k (exact in
/// characteristic zero).
pub fn binomial<K: Scalar>(n: u64, k: u64) -> K {
    if k > n {
        return K::zero();
    }
    let mut acc = K::one();
    for m in 1..=k {
        acc = acc * K::from_int((n - k + m) as i64) / K::from_int(m as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat(9, 4).try_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-4, 1).try_sqrt(), None);
        assert_eq!(rat(0, 1).try_sqrt(), Some(rat(0, 1)));
        assert_eq!(rat(1, 1).try_sqrt(), Some(rat(1, 1)));
    }

    #[test]
    fn pow_with_negative_exponent() {
        assert_eq!(rat(2, 3).pow_i64(-2), rat(9, 4));
        assert_eq!(rat(5, 7).pow_i64(0), rat(1, 1));
        assert_eq!(rat(5, 7).pow_i64(3), rat(125, 343));
    }

    #[test]
    fn binomials_match_pascal() {
        let mut row = vec![BigRational::one()];
        for n in 1..=12u64 {
            let mut next = vec![BigRational::one()];
            for k in 1..n {
                next.push(&row[k as usize - 1] + &row[k as usize]);
            }
            next.push(BigRational::one());
            row = next;
            for k in 0..=n {
                assert_eq!(binomial::<BigRational>(n, k), row[k as usize]);
            }
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5, 1));
        assert_eq!(parse_rat(" 1/10 ").unwrap(), rat(1, 10));
        assert!(parse_rat("x").is_err());
    }
}
