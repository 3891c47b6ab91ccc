//! Partitions, Schur polynomials (bialternant form) and expansion of
//! symmetric polynomials in the Schur basis by leading-monomial subtraction.

use serde::Serialize;
use thiserror::Error;

use crate::mpoly::{LaurentMPoly, MPolyError, Mono};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq, Clone, Serialize)]
pub enum SchurError {
    #[error("partition exceeds variable count ({parts} parts > {nvars} variables)")]
    PartitionTooLong { parts: usize, nvars: usize },
    #[error("not symmetric")]
    NotSymmetric,
    #[error("input has negative exponents; Schur expansion needs a polynomial")]
    NegativeExponents,
    #[error("leading monomial {0:?} is not a partition shape")]
    NotDominant(Vec<i32>),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
}

/// Weakly decreasing list of nonnegative parts (trailing zeros stripped).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle `(n^alpha)`: `alpha` parts equal to `n`.
    pub fn rectangle(n: u32, alpha: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Partition(vec![n; alpha])
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n` with at most `max_parts` parts.
    pub fn all_of(n: u32, max_parts: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(
            rem: u32,
            max_part: u32,
            slots: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            let top = rem.min(max_part);
            for p in (1..=top).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        rec(n, n.max(1), max_parts, &mut Vec::new(), &mut out);
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Vandermonde determinant `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde<K: Scalar>(nvars: usize) -> LaurentMPoly<K> {
    let mut v = LaurentMPoly::one(nvars);
    for i in 0..nvars {
        for j in (i + 1)..nvars {
            let d = LaurentMPoly::var(nvars, i).sub(&LaurentMPoly::var(nvars, j));
            v = v.mul(&d);
        }
    }
    v
}

/// The alternant `det(x_i^{mu_j})` expanded over permutations.
fn alternant<K: Scalar>(nvars: usize, mu: &[i64]) -> LaurentMPoly<K> {
    assert_eq!(mu.len(), nvars);
    let mut out = LaurentMPoly::zero(nvars);
    let mut perm: Vec<usize> = (0..nvars).collect();
    permute_with_sign(&mut perm, 0, 1, &mut |p, sign| {
        let mono = Mono((0..nvars).map(|i| mu[p[i]] as i32).collect());
        out.add_term(mono, K::from_int(sign));
    });
    out
}

fn permute_with_sign(
    perm: &mut Vec<usize>,
    k: usize,
    sign: i64,
    f: &mut impl FnMut(&[usize], i64),
) {
    let n = perm.len();
    if k == n {
        f(perm, sign);
        return;
    }
    for i in k..n {
        let s = if i == k { sign } else { -sign };
        perm.swap(k, i);
        permute_with_sign(perm, k + 1, s, f);
        perm.swap(k, i);
    }
}

/// Schur polynomial `s_lambda(x_1..x_N)` via the bialternant ratio
/// `det(x_i^{lambda_j + N - j}) / det(x_i^{N - j})`.
pub fn schur_polynomial<K: Scalar>(
    lambda: &Partition,
    nvars: usize,
) -> Result<LaurentMPoly<K>, SchurError> {
    if lambda.len() > nvars {
        return Err(SchurError::PartitionTooLong {
            parts: lambda.len(),
            nvars,
        });
    }
    if nvars == 0 {
        return Ok(LaurentMPoly::one(0));
    }
    let mu: Vec<i64> = (0..nvars)
        .map(|j| {
            let part = lambda.0.get(j).copied().unwrap_or(0) as i64;
            part + (nvars - 1 - j) as i64
        })
        .collect();
    let num = alternant::<K>(nvars, &mu);
    let den = vandermonde::<K>(nvars);
    Ok(num.divexact(&den)?)
}

/// Monomial symmetric polynomial `m_lambda(x_1..x_N)`: the sum of all
/// distinct permutations of the exponent vector.
pub fn monomial_symmetric<K: Scalar>(
    lambda: &Partition,
    nvars: usize,
) -> Result<LaurentMPoly<K>, SchurError> {
    if lambda.len() > nvars {
        return Err(SchurError::PartitionTooLong {
            parts: lambda.len(),
            nvars,
        });
    }
    let mut exps: Vec<i32> = (0..nvars)
        .map(|j| lambda.0.get(j).copied().unwrap_or(0) as i32)
        .collect();
    exps.sort_unstable();
    let mut out = LaurentMPoly::zero(nvars);
    loop {
        out.add_term(Mono(exps.clone()), K::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [i32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Expand a symmetric polynomial in the Schur basis by repeated subtraction
/// of the leading dominant monomial. The loop terminating at zero remainder
/// is itself the reconstruction check.
pub fn schur_expand<K: Scalar>(f: &LaurentMPoly<K>) -> Result<Vec<(Partition, K)>, SchurError> {
    if f.iter().any(|(m, _)| m.0.iter().any(|&e| e < 0)) {
        return Err(SchurError::NegativeExponents);
    }
    if !f.is_symmetric() {
        return Err(SchurError::NotSymmetric);
    }
    let nvars = f.nvars();
    let mut rem = f.clone();
    let mut out: Vec<(Partition, K)> = Vec::new();
    // each step strictly lowers the grlex-leading monomial; the number of
    // monomials below a fixed degree bound is finite
    let mut guard = 0usize;
    let guard_max = 200_000;
    while !rem.is_zero() {
        guard += 1;
        if guard > guard_max {
            return Err(SchurError::NotSymmetric);
        }
        let (m, c) = {
            let (m, c) = rem.leading().unwrap();
            (m.clone(), c.clone())
        };
        if m.0.windows(2).any(|w| w[0] < w[1]) {
            // cannot happen for symmetric input: the grlex-leading monomial of
            // a symmetric polynomial is weakly decreasing
            return Err(SchurError::NotDominant(m.0.clone()));
        }
        let lambda = Partition::new(m.0.iter().map(|&e| e as u32).collect());
        let s = schur_polynomial::<K>(&lambda, nvars)?;
        rem = rem.sub(&s.scale(&c));
        out.push((lambda, c));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::One;

    fn x(n: usize, i: usize) -> LaurentMPoly<Rat> {
        LaurentMPoly::var(n, i)
    }

    #[test]
    fn schur_single_box() {
        let s = schur_polynomial::<Rat>(&Partition::new(vec![1]), 2).unwrap();
        assert_eq!(s, x(2, 0).add(&x(2, 1)));
    }

    #[test]
    fn schur_empty_partition() {
        let s = schur_polynomial::<Rat>(&Partition::empty(), 3).unwrap();
        assert_eq!(s, LaurentMPoly::one(3));
    }

    #[test]
    fn schur_21_two_vars() {
        // s_(2,1)(x1,x2) = x1^2 x2 + x1 x2^2
        let s = schur_polynomial::<Rat>(&Partition::new(vec![2, 1]), 2).unwrap();
        let expect = x(2, 0)
            .pow(2)
            .mul(&x(2, 1))
            .add(&x(2, 0).mul(&x(2, 1).pow(2)));
        assert_eq!(s, expect);
    }

    #[test]
    fn schur_too_long_partition() {
        assert!(matches!(
            schur_polynomial::<Rat>(&Partition::new(vec![1, 1, 1]), 2),
            Err(SchurError::PartitionTooLong { .. })
        ));
    }

    #[test]
    fn expand_is_idempotent_on_schur() {
        let lam = Partition::new(vec![2, 1]);
        let s = schur_polynomial::<Rat>(&lam, 3).unwrap();
        let exp = schur_expand(&s).unwrap();
        assert_eq!(exp, vec![(lam, Rat::one())]);
    }

    #[test]
    fn expand_square_of_e1() {
        // (x1+x2)^2 = s_(2) + s_(1,1)
        let f = x(2, 0).add(&x(2, 1)).pow(2);
        let exp = schur_expand(&f).unwrap();
        assert_eq!(
            exp,
            vec![
                (Partition::new(vec![2]), Rat::one()),
                (Partition::new(vec![1, 1]), Rat::one()),
            ]
        );
    }

    #[test]
    fn expand_zero() {
        let z = LaurentMPoly::<Rat>::zero(2);
        assert_eq!(schur_expand(&z).unwrap(), Vec::new());
    }

    #[test]
    fn expand_rejects_asymmetric() {
        let f = x(2, 0).pow(2);
        assert_eq!(schur_expand(&f).unwrap_err(), SchurError::NotSymmetric);
    }

    #[test]
    fn schur_expand_roundtrip_small() {
        // schur_expand(s_lambda) = [(lambda, 1)] for all |lambda| <= 5, N <= 4
        for n in 0..=5u32 {
            for nvars in 1..=4usize {
                for lam in Partition::all_of(n, nvars) {
                    let s = schur_polynomial::<Rat>(&lam, nvars).unwrap();
                    let exp = schur_expand(&s).unwrap();
                    assert_eq!(exp, vec![(lam, Rat::one())], "nvars={nvars}");
                }
            }
        }
    }

    #[test]
    fn monomial_symmetric_has_distinct_permutations() {
        let m = monomial_symmetric::<Rat>(&Partition::new(vec![2, 1]), 3).unwrap();
        // 6 distinct arrangements of (2,1,0)
        assert_eq!(m.num_terms(), 6);
        assert!(m.is_symmetric());
        let m2 = monomial_symmetric::<Rat>(&Partition::new(vec![1, 1]), 3).unwrap();
        assert_eq!(m2.num_terms(), 3);
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(Partition::all_of(4, 2).len(), 3); // (4),(3,1),(2,2)
        assert_eq!(Partition::all_of(0, 3), vec![Partition::empty()]);
        assert_eq!(Partition::all_of(5, 5).len(), 7);
    }
}
