//! Sparse multivariate Laurent polynomials over an exact scalar field.
//!
//! Terms are kept in a `BTreeMap` under graded-lexicographic monomial order,
//! which fixes a deterministic canonical form for equality, iteration and
//! serialization. No zero coefficients are ever stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq, Clone, Serialize)]
pub enum MPolyError {
    #[error("polynomial arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("inexact division (remainder with leading monomial {0})")]
    InexactDivision(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not symmetric (fails under swap of variables {0} and {1})")]
    NotSymmetric(usize, usize),
}

/// Exponent vector of a Laurent monomial (entries may be negative), ordered
/// by total degree then lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate Laurent polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMPoly<K: Scalar> {
    nvars: usize,
    terms: BTreeMap<Mono, K>,
}

impl<K: Scalar> LaurentMPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        LaurentMPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono(vec![0; nvars]), c);
        p
    }

    /// The variable `x_{i}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, Mono(e), K::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: K) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &K)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Lowest exponent of variable `i` over all terms (0 for the zero polynomial).
    pub fn min_exp(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: K) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), MPolyError> {
        if self.nvars != other.nvars {
            return Err(MPolyError::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other).expect("arity mismatch");
        let mut r = self.clone();
        for (m, c) in other.iter() {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentMPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other).expect("arity mismatch");
        let mut r = Self::zero(self.nvars);
        for (ma, ca) in self.iter() {
            for (mb, cb) in other.iter() {
                let m = Mono(ma.0.iter().zip(mb.0.iter()).map(|(a, b)| a + b).collect());
                r.add_term(m, ca.clone() * cb.clone());
            }
        }
        r
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentMPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut sq = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Multiply by the Laurent monomial with exponent vector `shift`.
    pub fn mul_monomial(&self, shift: &[i32], c: &K) -> Self {
        assert_eq!(shift.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentMPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| {
                    let e = Mono(m.0.iter().zip(shift).map(|(a, b)| a + b).collect());
                    (e, x.clone() * c.clone())
                })
                .collect(),
        }
    }

    /// Substitute `x_i -> c * x_i`: each term gains a factor `c^{e_i}`
    /// (negative exponents go through the scalar inverse, so `c` must be
    /// invertible when negative exponents are present).
    pub fn scale_var(&self, i: usize, c: &K) -> Self {
        assert!(i < self.nvars);
        let mut r = Self::zero(self.nvars);
        for (m, x) in self.iter() {
            r.add_term(m.clone(), x.clone() * c.pow_i64(m.0[i] as i64));
        }
        r
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, x) in self.iter() {
            let mut e = m.0.clone();
            e.swap(i, j);
            r.add_term(Mono(e), x.clone());
        }
        r
    }

    /// Symmetric under all permutations of the variables (checked on the
    /// generating adjacent transpositions).
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    /// First adjacent transposition violating symmetry, if any.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.nvars.saturating_sub(1) {
            if &self.swap_vars(i, i + 1) != self {
                return Some((i, i + 1));
            }
        }
        None
    }

    /// Drop all terms of total degree exceeding `cap` (series-style truncation).
    pub fn truncate_total_degree(&self, cap: i64) -> Self {
        LaurentMPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division in the Laurent polynomial ring; an inexact division is
    /// an error (it signals an identity failure upstream).
    pub fn divexact(&self, den: &Self) -> Result<Self, MPolyError> {
        self.check_arity(den)?;
        if den.is_zero() {
            return Err(MPolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // normalize out monomial factors so both operands are honest polynomials
        let shift_num: Vec<i32> = (0..self.nvars).map(|i| self.min_exp(i)).collect();
        let shift_den: Vec<i32> = (0..self.nvars).map(|i| den.min_exp(i)).collect();
        let num = self.mul_monomial(&shift_num.iter().map(|e| -e).collect::<Vec<_>>(), &K::one());
        let den_p = den.mul_monomial(&shift_den.iter().map(|e| -e).collect::<Vec<_>>(), &K::one());

        let (lde, ldc) = {
            let (m, c) = den_p.leading().unwrap();
            (m.clone(), c.clone())
        };
        let ldc_inv = ldc.try_inv().ok_or(MPolyError::DivisionByZero)?;
        let mut rem = num;
        let mut quo = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (lre, lrc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut qe = vec![0i32; self.nvars];
            for i in 0..self.nvars {
                qe[i] = lre.0[i] - lde.0[i];
                if qe[i] < 0 {
                    return Err(MPolyError::InexactDivision(format!("{lre:?}")));
                }
            }
            let qc = lrc * ldc_inv.clone();
            let t = Self::monomial(self.nvars, Mono(qe), qc);
            rem = rem.sub(&t.mul(&den_p));
            quo = quo.add(&t);
        }
        // reapply the monomial shifts
        let final_shift: Vec<i32> = shift_num
            .iter()
            .zip(&shift_den)
            .map(|(a, b)| a - b)
            .collect();
        Ok(quo.mul_monomial(&final_shift, &K::one()))
    }

    /// Map coefficients into another scalar field.
    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> LaurentMPoly<L> {
        let mut r = LaurentMPoly::zero(self.nvars);
        for (m, c) in self.iter() {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Render with explicit variable names (canonical term order, descending).
    pub fn display_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    if e == 1 {
                        factors.push(names[i].to_string());
                    } else {
                        factors.push(format!("{}^{}", names[i], e));
                    }
                }
            }
            if factors.is_empty() {
                out.push_str(&format!("({c})"));
            } else {
                out.push_str(&format!("({c})*{}", factors.join("*")));
            }
        }
        out
    }
}

impl<K: Scalar> fmt::Display for LaurentMPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

/// Exact division wrapper named as in the kernel's public surface.
pub fn mpoly_exact_div<K: Scalar>(
    num: &LaurentMPoly<K>,
    den: &LaurentMPoly<K>,
) -> Result<LaurentMPoly<K>, MPolyError> {
    num.divexact(den)
}
