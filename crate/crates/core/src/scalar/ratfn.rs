//! Rational functions in the formal parameters, with integer-coefficient
//! numerator and denominator kept in canonical form: gcd-reduced, coprime
//! integer contents, positive leading denominator coefficient. Equality of
//! canonical forms is therefore structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zpoly::ZPoly;
use super::Scalar;

/// Rational function in `NV` formal parameters (`RatFn<1>` in `q`,
/// `RatFn<2>` in `q,t`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn<const NV: usize> {
    num: ZPoly<NV>,
    den: ZPoly<NV>,
}

impl<const NV: usize> RatFn<NV> {
    fn normalized(mut num: ZPoly<NV>, mut den: ZPoly<NV>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn {
                num,
                den: ZPoly::one(),
            };
        }
        if !den.is_one() {
            let g = ZPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.divexact(&g).expect("gcd divides numerator");
                den = den.divexact(&g).expect("gcd divides denominator");
            }
        }
        if !den.leading_coeff_sign_positive() {
            num = num.neg();
            den = den.neg();
        }
        RatFn { num, den }
    }

    pub fn from_poly(num: ZPoly<NV>) -> Self {
        RatFn {
            num,
            den: ZPoly::one(),
        }
    }

    pub fn new(num: ZPoly<NV>, den: ZPoly<NV>) -> Self {
        Self::normalized(num, den)
    }

    /// The formal parameter with index `i` (0 = `q`, 1 = `t`).
    pub fn var(i: usize) -> Self {
        Self::from_poly(ZPoly::var(i))
    }

    /// The parameter `q`.
    pub fn q() -> Self {
        Self::var(0)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
    }

    pub fn numer(&self) -> &ZPoly<NV> {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly<NV> {
        &self.den
    }

    pub fn den_is_one(&self) -> bool {
        self.den.is_one()
    }

    /// True when the denominator is a single term, i.e. the value is a
    /// Laurent polynomial in the parameters (with rational coefficients).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// Substitute the reciprocal for parameter `i` (e.g. `q -> 1/q`).
    pub fn subst_recip(&self, i: usize) -> Self {
        assert!(i < NV);
        if self.num.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree_in(i);
        let dd = self.den.degree_in(i);
        let rn = self.num.reverse_var(i);
        let rd = self.den.reverse_var(i);
        let mut e = [0u32; NV];
        if dd >= dn {
            e[i] = dd - dn;
            Self::normalized(rn.mul(&ZPoly::monomial(e, BigInt::one())), rd)
        } else {
            e[i] = dn - dd;
            Self::normalized(rn, rd.mul(&ZPoly::monomial(e, BigInt::one())))
        }
    }

    /// Evaluate every parameter at 1; `None` if the denominator vanishes there.
    pub fn eval_all_one(&self) -> Option<BigRational> {
        let d = self.den.eval_all_one();
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.eval_all_one(), d))
    }

    /// Substitute 1 for parameter `i`; `None` if the denominator vanishes.
    pub fn eval_var_one(&self, i: usize) -> Option<Self> {
        let d = self.den.eval_var_one(i);
        if d.is_zero() {
            return None;
        }
        Some(Self::normalized(self.num.eval_var_one(i), d))
    }
}

impl<const NV: usize> fmt::Display for RatFn<NV> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<const NV: usize> Add for RatFn<NV> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::normalized(num, den)
    }
}

impl<const NV: usize> Sub for RatFn<NV> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const NV: usize> Neg for RatFn<NV> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<const NV: usize> Mul for RatFn<NV> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<const NV: usize> Div for RatFn<NV> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::normalized(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl<const NV: usize> Zero for RatFn<NV> {
    fn zero() -> Self {
        RatFn {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<const NV: usize> One for RatFn<NV> {
    fn one() -> Self {
        RatFn {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl<const NV: usize> Scalar for RatFn<NV> {
    fn from_int(n: i64) -> Self {
        Self::from_poly(ZPoly::from_int(n))
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    fn try_sqrt(&self) -> Option<Self> {
        // only constant squares are recognized
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        let r = BigRational::new(n, d).try_sqrt()?;
        Some(Self::from_rational(&r))
    }
}

/// The canonical integer content of the whole fraction is coprime between
/// numerator and denominator; this normalization keeps equality structural.
impl<const NV: usize> RatFn<NV> {
    pub fn canonical_check(&self) -> bool {
        if self.num.is_zero() {
            return self.den.is_one();
        }
        let g = ZPoly::gcd(&self.num, &self.den);
        g.is_one()
            && self.den.leading_coeff_sign_positive()
            && self.num.content().gcd(&self.den.content()).is_one()
    }
}
