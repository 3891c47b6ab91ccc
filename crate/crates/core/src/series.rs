//! Truncated formal power/Laurent series in one variable.
//!
//! A series carries the exponent window it is exactly known on: all
//! coefficients from its lowest exponent through `order` inclusive, with an
//! implicit `O(x^{order+1})` tail. Binary operations track the order honestly
//! (and never report more than the minimum of the two inputs' orders), so a
//! result's coefficients are always exact.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq, Clone, Serialize)]
pub enum SeriesError {
    #[error("series variable mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("non-invertible series (no nonzero coefficient through the truncation order)")]
    NonInvertibleSeries,
    #[error("no series square root (valuation nonzero or constant term not a square)")]
    NoSeriesSquareRoot,
    #[error("series known only through order {have}, need {need}")]
    InsufficientOrder { have: i64, need: i64 },
}

/// Formal series `sum c_e x^e` for `min_exp <= e <= order`, exact on that
/// window. The zero series is stored with an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<K: Scalar> {
    var: String,
    min_exp: i64,
    coeffs: Vec<K>,
    order: i64,
}

impl<K: Scalar> TruncatedSeries<K> {
    /// Build from coefficients of `x^{min_exp}, x^{min_exp+1}, ...`;
    /// the order is `min_exp + coeffs.len() - 1`.
    pub fn from_coeffs(var: &str, min_exp: i64, coeffs: Vec<K>) -> Self {
        let order = min_exp + coeffs.len() as i64 - 1;
        let mut s = TruncatedSeries {
            var: var.to_string(),
            min_exp,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn zero(var: &str, order: i64) -> Self {
        TruncatedSeries {
            var: var.to_string(),
            min_exp: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(var: &str, c: K, order: i64) -> Self {
        let mut s = Self::zero(var, order);
        if !c.is_zero() && order >= 0 {
            s.min_exp = 0;
            s.coeffs = vec![c];
            s.pad_to_order();
        }
        s
    }

    pub fn one(var: &str, order: i64) -> Self {
        Self::constant(var, K::one(), order)
    }

    /// The monomial `c x^e`.
    pub fn monomial(var: &str, c: K, e: i64, order: i64) -> Self {
        let mut s = Self::zero(var, order);
        if !c.is_zero() && e <= order {
            s.min_exp = e;
            s.coeffs = vec![c];
            s.pad_to_order();
        }
        s
    }

    fn normalize(&mut self) {
        while self.coeffs.first().map_or(false, |c| c.is_zero()) {
            self.coeffs.remove(0);
            self.min_exp += 1;
        }
        if self.coeffs.is_empty() {
            self.min_exp = self.order + 1;
        } else {
            self.pad_to_order();
        }
    }

    fn pad_to_order(&mut self) {
        let want = (self.order - self.min_exp + 1).max(0) as usize;
        if self.coeffs.len() < want {
            self.coeffs.resize(want, K::zero());
        }
        self.coeffs.truncate(want);
        if self.coeffs.is_empty() {
            self.min_exp = self.order + 1;
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Valuation: lowest exponent with a nonzero coefficient. For a series
    /// that is zero through its order, this is `order + 1`.
    pub fn valuation(&self) -> i64 {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return self.min_exp + k as i64;
            }
        }
        self.order + 1
    }

    /// Coefficient of `x^e` (zero outside the stored window; exponents above
    /// the truncation order are unknown and must not be asked for).
    pub fn coeff(&self, e: i64) -> K {
        assert!(e <= self.order, "coefficient beyond truncation order");
        if e < self.min_exp {
            return K::zero();
        }
        self.coeffs
            .get((e - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// Restrict to a lower truncation order.
    pub fn truncated(&self, order: i64) -> Result<Self, SeriesError> {
        if order > self.order {
            return Err(SeriesError::InsufficientOrder {
                have: self.order,
                need: order,
            });
        }
        let mut s = self.clone();
        s.order = order;
        s.pad_to_order();
        s.normalize();
        Ok(s)
    }

    fn check_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var != other.var {
            return Err(SeriesError::VarMismatch(
                self.var.clone(),
                other.var.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let min_exp = self.min_exp.min(other.min_exp).min(order + 1);
        let mut coeffs = vec![K::zero(); (order - min_exp + 1).max(0) as usize];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = min_exp + k as i64;
            let mut v = K::zero();
            if e >= self.min_exp && e <= self.order {
                v = v + self.coeff(e);
            }
            if e >= other.min_exp && e <= other.order {
                v = v + other.coeff(e);
            }
            *c = v;
        }
        let mut s = TruncatedSeries {
            var: self.var.clone(),
            min_exp,
            coeffs,
            order,
        };
        s.normalize();
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            var: self.var.clone(),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let va = self.valuation();
        let vb = other.valuation();
        // exactness bound for the product, capped at min of the two orders
        let order = (self.order + vb)
            .min(other.order + va)
            .min(self.order)
            .min(other.order);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.var, order));
        }
        let min_exp = va + vb;
        let mut coeffs = vec![K::zero(); (order - min_exp + 1).max(0) as usize];
        for (i, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            for (j, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let e = ea + other.min_exp + j as i64;
                if e < min_exp || e > order {
                    continue;
                }
                let slot = (e - min_exp) as usize;
                coeffs[slot] = coeffs[slot].clone() + ca.clone() * cb.clone();
            }
        }
        let mut s = TruncatedSeries {
            var: self.var.clone(),
            min_exp,
            coeffs,
            order,
        };
        s.normalize();
        Ok(s)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut s = TruncatedSeries {
            var: self.var.clone(),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            order: self.order,
        };
        s.normalize();
        s
    }

    /// Multiply by the monomial `x^k` (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            var: self.var.clone(),
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    /// Multiplicative inverse of a series whose lowest known coefficient is
    /// invertible.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let v = self.valuation();
        if v > self.order {
            return Err(SeriesError::NonInvertibleSeries);
        }
        let lead = self.coeff(v);
        let lead_inv = lead.try_inv().ok_or(SeriesError::NonInvertibleSeries)?;
        // write self = x^v * lead * (1 + h), invert the unit part
        let order = self.order - 2 * v;
        let rel = self.order - v; // unit part known through x^rel
        let mut unit = vec![K::zero(); rel as usize + 1];
        for e in 0..=rel {
            unit[e as usize] = self.coeff(v + e) * lead_inv.clone();
        }
        let mut inv_unit = vec![K::zero(); rel as usize + 1];
        inv_unit[0] = K::one();
        for e in 1..=rel as usize {
            let mut acc = K::zero();
            for j in 1..=e {
                acc = acc + unit[j].clone() * inv_unit[e - j].clone();
            }
            inv_unit[e] = -acc;
        }
        let coeffs: Vec<K> = inv_unit
            .into_iter()
            .take((order + v + 1).max(0) as usize)
            .map(|c| c * lead_inv.clone())
            .collect();
        let mut s = TruncatedSeries {
            var: self.var.clone(),
            min_exp: -v,
            coeffs,
            order,
        };
        s.pad_to_order();
        s.normalize();
        Ok(s)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Result<Self, SeriesError> {
        let mut acc = Self::one(&self.var, self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Square root with `s(0) = +sqrt(a(0))`; requires valuation 0 and a
    /// constant term admitting a scalar square root.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.valuation() != 0 {
            return Err(SeriesError::NoSeriesSquareRoot);
        }
        let c0 = self.coeff(0);
        let s0 = c0.try_sqrt().ok_or(SeriesError::NoSeriesSquareRoot)?;
        let two_s0_inv = (K::from_int(2) * s0.clone())
            .try_inv()
            .ok_or(SeriesError::NoSeriesSquareRoot)?;
        let n = self.order as usize;
        let mut s = vec![K::zero(); n + 1];
        s[0] = s0;
        for k in 1..=n {
            let mut acc = self.coeff(k as i64);
            for i in 1..k {
                acc = acc - s[i].clone() * s[k - i].clone();
            }
            s[k] = acc * two_s0_inv.clone();
        }
        let mut out = TruncatedSeries {
            var: self.var.clone(),
            min_exp: 0,
            coeffs: s,
            order: self.order,
        };
        out.normalize();
        Ok(out)
    }

    /// All coefficients from the valuation through the order.
    pub fn coeff_window(&self) -> impl Iterator<Item = (i64, &K)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }
}

/// Dispatch wrapper for the four basic series operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Apply one of add/sub/mul/div; the result is exact through the tracked
/// truncation order (at most the minimum of the two inputs').
pub fn series_arith<K: Scalar>(
    a: &TruncatedSeries<K>,
    b: &TruncatedSeries<K>,
    op: SeriesOp,
) -> Result<TruncatedSeries<K>, SeriesError> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b),
    }
}

/// Square root with the positive branch at the constant term.
pub fn series_sqrt<K: Scalar>(a: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>, SeriesError> {
    a.sqrt()
}

impl<K: Scalar> fmt::Display for TruncatedSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.coeff_window() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{}^{}", self.var, e)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::{One, Zero};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn geom(order: i64) -> TruncatedSeries<Rat> {
        // 1/(1-g)
        let one = TruncatedSeries::one("g", order);
        let den = one
            .sub(&TruncatedSeries::monomial("g", Rat::one(), 1, order))
            .unwrap();
        one.div(&den).unwrap()
    }

    #[test]
    fn geometric_series() {
        // 1/(1-g) at order 3 -> 1 + g + g^2 + g^3
        let one = TruncatedSeries::one("g", 3);
        let den = one
            .sub(&TruncatedSeries::monomial("g", Rat::one(), 1, 3))
            .unwrap();
        let s = one.div(&den).unwrap();
        for e in 0..=3 {
            assert_eq!(s.coeff(e), Rat::one());
        }
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn difference_of_squares() {
        // (1+g)(1-g) at order 2 -> 1 - g^2
        let one = TruncatedSeries::one("g", 2);
        let g = TruncatedSeries::monomial("g", Rat::one(), 1, 2);
        let p = one.add(&g).unwrap().mul(&one.sub(&g).unwrap()).unwrap();
        assert_eq!(p.coeff(0), Rat::one());
        assert_eq!(p.coeff(1), rat(0, 1));
        assert_eq!(p.coeff(2), rat(-1, 1));
    }

    #[test]
    fn division_by_one_is_identity() {
        let one = TruncatedSeries::one("g", 1);
        let a = one
            .sub(&TruncatedSeries::monomial("g", rat(12, 1), 1, 1))
            .unwrap();
        assert_eq!(a.div(&one).unwrap(), a);
    }

    #[test]
    fn sqrt_binomial() {
        // sqrt(1-2g) at order 2 -> 1 - g - g^2/2
        let one = TruncatedSeries::one("g", 2);
        let a = one
            .sub(&TruncatedSeries::monomial("g", rat(2, 1), 1, 2))
            .unwrap();
        let s = a.sqrt().unwrap();
        assert_eq!(s.coeff(0), Rat::one());
        assert_eq!(s.coeff(1), rat(-1, 1));
        assert_eq!(s.coeff(2), rat(-1, 2));
        // sqrt(1) = 1 at any order
        assert_eq!(
            TruncatedSeries::<Rat>::one("g", 7).sqrt().unwrap(),
            TruncatedSeries::one("g", 7)
        );
    }

    #[test]
    fn sqrt_of_one_minus_12g_squares_back() {
        let one = TruncatedSeries::one("g", 3);
        let a = one
            .sub(&TruncatedSeries::monomial("g", rat(12, 1), 1, 3))
            .unwrap();
        let s = a.sqrt().unwrap();
        assert_eq!(s.coeff(1), rat(-6, 1));
        assert_eq!(s.coeff(2), rat(-18, 1));
        assert_eq!(s.coeff(3), rat(-108, 1));
        assert_eq!(s.mul(&s).unwrap(), a);
    }

    #[test]
    fn non_invertible_division_errors() {
        let z = TruncatedSeries::<Rat>::zero("g", 4);
        let one = TruncatedSeries::one("g", 4);
        assert_eq!(one.div(&z).unwrap_err(), SeriesError::NonInvertibleSeries);
    }

    #[test]
    fn var_mismatch_errors() {
        let a = TruncatedSeries::<Rat>::one("g", 2);
        let b = TruncatedSeries::<Rat>::one("x", 2);
        assert!(matches!(a.add(&b), Err(SeriesError::VarMismatch(_, _))));
    }

    #[test]
    fn laurent_inverse_shifts_orders() {
        // 1/(g + g^2 + ...) known through g^4: inverse is g^{-1}(1 - g + ...)
        let g = geom(4).shift(1); // g/(1-g) = g + g^2 + g^3 + g^4 + g^5 (order 5)
        let inv = g.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1), Rat::one());
        assert_eq!(inv.coeff(0), rat(-1, 1));
        let prod = g.mul(&inv).unwrap();
        assert_eq!(prod.coeff(0), Rat::one());
        assert!(prod.coeff_window().all(|(e, c)| (e == 0) == !c.is_zero()));
    }

    #[test]
    fn mul_order_is_capped_at_min() {
        let a = TruncatedSeries::<Rat>::one("g", 5);
        let b = TruncatedSeries::<Rat>::one("g", 3);
        assert_eq!(a.mul(&b).unwrap().order(), 3);
    }
}
