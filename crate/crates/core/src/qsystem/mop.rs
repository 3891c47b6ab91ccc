//! Difference operators on symmetric Laurent polynomials:
//!
//! `M_{a,n} = sum_{|I|=a} x_I^n prod_{i in I, j not in I} x_i/(x_i - x_j) G_I`
//!
//! and their `(q,t)` deformation with `(t x_i - x_j)` numerators, where `G_i`
//! substitutes `x_i -> q x_i`.
//!
//! Every term is put over the common Vandermonde denominator and the sum is
//! divided out exactly at the end; a nonzero remainder signals an identity
//! failure upstream and is surfaced as an error, never rounded away.

use crate::mpoly::LaurentMPoly;
use crate::scalar::Scalar;
use crate::schur::vandermonde;
use crate::{QMPoly, QRat, QtMPoly, QtRat};

use super::QsysError;

/// Sign and pair bookkeeping: `prod_{i in I, j notin I} (x_i - x_j)` equals
/// `(-1)^{inv(I)}` times the cross part of the Vandermonde, where `inv(I)`
/// counts pairs `i in I, j notin I` with `i > j`.
fn cross_inversions(nvars: usize, mask: u32) -> u32 {
    let mut inv = 0;
    for i in 0..nvars {
        if mask & (1 << i) == 0 {
            continue;
        }
        for j in 0..i {
            if mask & (1 << j) == 0 {
                inv += 1;
            }
        }
    }
    inv
}

fn vandermonde_of_subset<K: Scalar>(nvars: usize, mask: u32) -> LaurentMPoly<K> {
    let mut v = LaurentMPoly::one(nvars);
    for i in 0..nvars {
        if mask & (1 << i) == 0 {
            continue;
        }
        for j in (i + 1)..nvars {
            if mask & (1 << j) == 0 {
                continue;
            }
            let d = LaurentMPoly::var(nvars, i).sub(&LaurentMPoly::var(nvars, j));
            v = v.mul(&d);
        }
    }
    v
}

/// Apply the level-`alpha`, mode-`n` operator to `f`. With `t = None` the
/// cross numerators are `x_i` (the q-Whittaker / M-system case); with
/// `t = Some(t)` they are `(t x_i - x_j)` (the Macdonald case). `qshift` is
/// the multiplier substituted into the chosen variables (pass `q^{-1}` and
/// `t^{-1}` for the inverted currents).
pub fn apply_difference_operator<K: Scalar>(
    alpha: usize,
    n: i64,
    f: &LaurentMPoly<K>,
    qshift: &K,
    t: Option<&K>,
) -> Result<LaurentMPoly<K>, QsysError> {
    let nvars = f.nvars();
    if alpha > nvars {
        // one step beyond the boundary: the zero operator
        return Ok(LaurentMPoly::zero(nvars));
    }
    let mut total = LaurentMPoly::zero(nvars);
    for mask in 0u32..(1 << nvars) {
        if mask.count_ones() as usize != alpha {
            continue;
        }
        // G_I f: substitute x_i -> qshift * x_i for i in I
        let mut shifted = f.clone();
        for i in 0..nvars {
            if mask & (1 << i) != 0 {
                shifted = shifted.scale_var(i, qshift);
            }
        }
        // x_I^n, plus one factor x_i per cross pair in the undeformed case
        let mut exps = vec![0i32; nvars];
        for (i, e) in exps.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *e = n as i32;
                if t.is_none() {
                    *e += (nvars - alpha) as i32;
                }
            }
        }
        let mut term = shifted.mul_monomial(&exps, &K::one());
        if let Some(tval) = t {
            for i in 0..nvars {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for j in 0..nvars {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let factor = LaurentMPoly::var(nvars, i)
                        .scale(tval)
                        .sub(&LaurentMPoly::var(nvars, j));
                    term = term.mul(&factor);
                }
            }
        }
        term = term
            .mul(&vandermonde_of_subset(nvars, mask))
            .mul(&vandermonde_of_subset(nvars, !mask & ((1 << nvars) - 1)));
        if cross_inversions(nvars, mask) % 2 == 1 {
            term = term.neg();
        }
        total = total.add(&term);
    }
    total
        .divexact(&vandermonde::<K>(nvars))
        .map_err(|e| QsysError::OperatorIdentityViolated(e.to_string()))
}

/// `M_{alpha,n} f` over the `q` tower.
pub fn m_apply(alpha: usize, n: i64, f: &QMPoly) -> Result<QMPoly, QsysError> {
    apply_difference_operator(alpha, n, f, &QRat::q(), None)
}

/// `M_{alpha,n} f` with an explicit shift scalar (e.g. `q^{-1}`).
pub fn m_apply_with(alpha: usize, n: i64, f: &QMPoly, qshift: &QRat) -> Result<QMPoly, QsysError> {
    apply_difference_operator(alpha, n, f, qshift, None)
}

/// The `(q,t)`-deformed operator with explicit parameter values (pass
/// `q^{-1}, t^{-1}` for the inverted current).
pub fn mac_apply_with(
    alpha: usize,
    n: i64,
    f: &QtMPoly,
    q: &QtRat,
    t: &QtRat,
) -> Result<QtMPoly, QsysError> {
    apply_difference_operator(alpha, n, f, q, Some(t))
}

/// The `(q,t)`-deformed operator at the standard parameters.
pub fn mac_apply(alpha: usize, n: i64, f: &QtMPoly) -> Result<QtMPoly, QsysError> {
    mac_apply_with(alpha, n, f, &QtRat::var(0), &QtRat::var(1))
}

/// Parameter mode of an [`MOperator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpMode {
    /// undeformed (`q` tower)
    QWhittaker,
    /// `(q,t)` tower
    Macdonald,
}

/// A level/mode pair viewed as an operator on symmetric Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MOperator {
    pub alpha: usize,
    pub n: i64,
    pub nvars: usize,
    pub mode: OpMode,
}

impl MOperator {
    pub fn m(alpha: usize, n: i64, nvars: usize) -> Self {
        MOperator {
            alpha,
            n,
            nvars,
            mode: OpMode::QWhittaker,
        }
    }

    pub fn mac(alpha: usize, n: i64, nvars: usize) -> Self {
        MOperator {
            alpha,
            n,
            nvars,
            mode: OpMode::Macdonald,
        }
    }

    pub fn apply_q(&self, f: &QMPoly) -> Result<QMPoly, QsysError> {
        assert_eq!(self.mode, OpMode::QWhittaker);
        assert_eq!(f.nvars(), self.nvars);
        m_apply(self.alpha, self.n, f)
    }

    pub fn apply_qt(&self, f: &QtMPoly) -> Result<QtMPoly, QsysError> {
        assert_eq!(self.mode, OpMode::Macdonald);
        assert_eq!(f.nvars(), self.nvars);
        mac_apply(self.alpha, self.n, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Mono;
    use crate::schur::{monomial_symmetric, schur_polynomial, Partition};
    use num_traits::One;

    fn one(n: usize) -> QMPoly {
        LaurentMPoly::one(n)
    }

    #[test]
    fn boundary_alpha_zero_is_identity() {
        let f: QMPoly = monomial_symmetric(&Partition::new(vec![2, 1]), 3).unwrap();
        assert_eq!(m_apply(0, 5, &f).unwrap(), f);
    }

    #[test]
    fn boundary_alpha_n_shifts_everything() {
        // M_{N,n} f = (x1..xN)^n f(q x)
        let f: QMPoly = monomial_symmetric(&Partition::new(vec![1]), 2).unwrap();
        let out = m_apply(2, 3, &f).unwrap();
        let q = QRat::q();
        let shifted = f.scale_var(0, &q).scale_var(1, &q);
        let expect = shifted.mul_monomial(&[3, 3], &QRat::one());
        assert_eq!(out, expect);
    }

    #[test]
    fn m11_on_one_is_e1() {
        // Lagrange interpolation: sum_i x_i^N / prod_{j != i}(x_i - x_j) = e_1
        for nvars in 2..=3usize {
            let out = m_apply(1, 1, &one(nvars)).unwrap();
            let e1: QMPoly = monomial_symmetric(&Partition::new(vec![1]), nvars).unwrap();
            assert_eq!(out, e1, "N={nvars}");
        }
    }

    #[test]
    fn m10_on_one_is_one() {
        for nvars in 2..=3usize {
            assert_eq!(m_apply(1, 0, &one(nvars)).unwrap(), one(nvars));
        }
    }

    #[test]
    fn m_on_one_gives_rectangular_schur() {
        // M_{alpha,n} 1 = s_{(n^alpha)}
        for nvars in 2..=3usize {
            for alpha in 1..=nvars {
                for n in 0..=3i64 {
                    let out = m_apply(alpha, n, &one(nvars)).unwrap();
                    let s: QMPoly =
                        schur_polynomial(&Partition::rectangle(n as u32, alpha), nvars).unwrap();
                    assert_eq!(out, s, "alpha={alpha} n={n} N={nvars}");
                }
            }
        }
    }

    #[test]
    fn negative_modes_are_laurent() {
        let out = m_apply(1, -1, &one(2)).unwrap();
        // M_{1,-1} 1 = sum_i x_i^{-1+1}/prod(x_i-x_j) ... = (x1^0-x2^0)/(x1-x2)?
        // direct: (x1 - x2)^{-1}(x1^{0+1}... compute explicitly instead:
        // term_i = x_i^{-1} * x_i / (x_i - x_j) -> (1 - 1)/(x1 - x2) = 0
        assert!(out.is_zero());
        let out2 = m_apply(1, -2, &one(2)).unwrap();
        // sum_i x_i^{-2} x_i/(x_i-x_j) = (x1^{-1}-x2^{-1})/(x1-x2) = -1/(x1 x2)
        let expect = LaurentMPoly::monomial(2, Mono(vec![-1, -1]), -QRat::one());
        assert_eq!(out2, expect);
    }

    #[test]
    fn symmetric_in_symmetric_out() {
        // the Vandermonde denominator must always cancel: all alpha, |n| <= 2,
        // N <= 3, test degree <= 4
        for nvars in 2..=3usize {
            let fam = super::super::classical::monomial_test_family::<QRat>(nvars, 4);
            for (name, f) in &fam {
                for alpha in 0..=nvars {
                    for n in [-2i64, -1, 0, 1, 2] {
                        let out = m_apply(alpha, n, f).unwrap();
                        assert!(
                            out.is_symmetric(),
                            "asymmetric output at {name}, alpha={alpha}, n={n}, N={nvars}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mac_10_on_one_is_t_geometric() {
        // sum_i prod_{j!=i} (t x_i - x_j)/(x_i - x_j) = 1 + t + ... + t^{N-1}
        for nvars in 2..=3usize {
            let out = mac_apply(1, 0, &LaurentMPoly::one(nvars)).unwrap();
            let t = QtRat::var(1);
            let mut expect = QtRat::one();
            let mut tp = QtRat::one();
            for _ in 1..nvars {
                tp = tp * t.clone();
                expect = expect + tp.clone();
            }
            assert_eq!(out, LaurentMPoly::constant(nvars, expect), "N={nvars}");
        }
    }

    #[test]
    fn mac_boundary_equals_m_boundary() {
        // alpha = N: the deformation prefactor is an empty product
        let f: QtMPoly = monomial_symmetric(&Partition::new(vec![1]), 2).unwrap();
        let out = mac_apply(2, 1, &f).unwrap();
        let q = QtRat::var(0);
        let expect = f
            .scale_var(0, &q)
            .scale_var(1, &q)
            .mul_monomial(&[1, 1], &QtRat::one());
        assert_eq!(out, expect);
    }
}
