//! Mode-level exchange relation of the level-(0,0) currents built from the
//! `(q,t)` operators:
//!
//! `g(z,w) e(z) e(w) + g(w,z) e(w) e(z) = 0`,
//! `g(z,w) = (z - q w)(z - t^{-1} w)(z - q^{-1} t w)`.
//!
//! The scalar prefactors of the currents cancel in this homogeneous
//! relation, so the finite mode combination uses the operators `Mac_{1,n}`
//! directly and no square roots of `q` are ever materialized: extracting
//! `z^m w^n` gives, per ordering of the two currents, the operator sum
//! `sum_{a+b=3} g_{ab} Mac_{1,m-a} Mac_{1,n-b}` (first term) and
//! `sum_{a+b=3} g_{ab} Mac_{1,n-a} Mac_{1,m-b}` (second term), both sides
//! sharing the same overall `q^{(m+n-3)/2}` mode weight.
//!
//! The partner current is the same expression at `(q^{-1}, t^{-1})`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::mpoly::{LaurentMPoly, Mono};
use crate::report::Status;
use crate::scalar::Scalar;
use crate::{QtMPoly, QtRat};

use super::classical::monomial_test_family;
use super::mop::mac_apply_with;
use super::QsysError;

/// Coefficients `g_{ab}` of `z^a w^b` in `g(z,w)`, built by expanding the
/// three factors over a bivariate polynomial carrier (the expansion has
/// exactly four monomials `z^3, z^2 w, z w^2, w^3`).
pub fn structure_coefficients(q: &QtRat, t: &QtRat) -> Result<[QtRat; 4], QsysError> {
    let z = LaurentMPoly::<QtRat>::var(2, 0);
    let w = LaurentMPoly::<QtRat>::var(2, 1);
    let t_inv = t.try_inv().expect("t is invertible");
    let q_inv = q.try_inv().expect("q is invertible");
    let g = z
        .sub(&w.scale(q))
        .mul(&z.sub(&w.scale(&t_inv)))
        .mul(&z.sub(&w.scale(&(q_inv * t.clone()))));
    if g.num_terms() != 4 {
        return Err(QsysError::IdentityFailure(format!(
            "structure polynomial has {} monomials, expected 4",
            g.num_terms()
        )));
    }
    let coeff = |a: i32, b: i32| g.coeff(&Mono(vec![a, b]));
    Ok([coeff(3, 0), coeff(2, 1), coeff(1, 2), coeff(0, 3)])
}

#[derive(Clone, Debug, Serialize)]
pub struct DimExchangeReport {
    pub nvars: usize,
    pub window: i64,
    pub degree_cap: u32,
    pub mode_pairs_checked: usize,
    pub applications: usize,
    pub status: Status,
    pub first_failure: Option<String>,
}

/// Check the exchange relation for all mode pairs `|m|, |n| <= window` on
/// all monomial-symmetric polynomials of degree `<= degree_cap`, for the
/// current at `(q, t)` (`inverted = false`) or at `(q^{-1}, t^{-1})`
/// (`inverted = true`, the partner current).
pub fn dim_exchange_check(
    nvars: usize,
    window: i64,
    degree_cap: u32,
    inverted: bool,
) -> Result<DimExchangeReport, QsysError> {
    assert!((2..=3).contains(&nvars), "desk scale: N <= 3");
    assert!(window <= 2, "desk scale: |modes| <= 2");
    let (q, t) = if inverted {
        (
            QtRat::var(0).try_inv().unwrap(),
            QtRat::var(1).try_inv().unwrap(),
        )
    } else {
        (QtRat::var(0), QtRat::var(1))
    };
    let g = structure_coefficients(&q, &t)?;
    let fam = monomial_test_family::<QtRat>(nvars, degree_cap);

    let mut pairs = 0usize;
    let mut applications = 0usize;
    let mut first_failure = None;
    'outer: for m in -window..=window {
        for n in -window..=window {
            pairs += 1;
            for (name, f) in &fam {
                let mut acc: QtMPoly = LaurentMPoly::zero(nvars);
                for (idx, gab) in g.iter().enumerate() {
                    // g[idx] multiplies z^{3-idx} w^{idx}
                    let a = 3 - idx as i64;
                    let b = idx as i64;
                    if gab.is_zero() {
                        continue;
                    }
                    // g(z,w) e(z) e(w): modes (m-a, n-b), left factor acts last
                    let t1 =
                        mac_apply_with(1, m - a, &mac_apply_with(1, n - b, f, &q, &t)?, &q, &t)?;
                    // g(w,z) e(w) e(z): modes (n-a, m-b)
                    let t2 =
                        mac_apply_with(1, n - a, &mac_apply_with(1, m - b, f, &q, &t)?, &q, &t)?;
                    applications += 4;
                    acc = acc.add(&t1.add(&t2).scale(gab));
                }
                if !acc.is_zero() {
                    first_failure = Some(format!(
                        "modes ({m},{n}) on {name}: residual has {} terms",
                        acc.num_terms()
                    ));
                    break 'outer;
                }
            }
        }
    }

    Ok(DimExchangeReport {
        nvars,
        window,
        degree_cap,
        mode_pairs_checked: pairs,
        applications,
        status: Status::from_bool(first_failure.is_none()),
        first_failure,
    })
}

/// Negative control: replace `g(w,z)` by `g(z,w)` in the second term. The
/// combination must fail to vanish for some mode pair and test polynomial.
pub fn dim_exchange_negative_control(
    nvars: usize,
    window: i64,
    degree_cap: u32,
) -> Result<bool, QsysError> {
    let q = QtRat::var(0);
    let t = QtRat::var(1);
    let g = structure_coefficients(&q, &t)?;
    let fam = monomial_test_family::<QtRat>(nvars, degree_cap);
    for m in -window..=window {
        for n in -window..=window {
            for (_, f) in &fam {
                let mut acc: QtMPoly = LaurentMPoly::zero(nvars);
                for (idx, gab) in g.iter().enumerate() {
                    let a = 3 - idx as i64;
                    let b = idx as i64;
                    let t1 =
                        mac_apply_with(1, m - a, &mac_apply_with(1, n - b, f, &q, &t)?, &q, &t)?;
                    // wrong second term: e(w)e(z) contracted against g(z,w)
                    let t2 =
                        mac_apply_with(1, n - b, &mac_apply_with(1, m - a, f, &q, &t)?, &q, &t)?;
                    acc = acc.add(&t1.add(&t2).scale(gab));
                }
                if !acc.is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Coefficients of `z^{+-k}` in the diagonal series `psi^{+-}(z)`, emitted
/// for inspection. Half-integer powers of `q` are represented through the
/// formal square root `s` (first parameter, `s^2 = q`), keeping the scalar
/// tower free of radicals; the second parameter is `t`.
pub fn psi_mode_coefficients(nvars: usize, k_max: usize, plus: bool) -> Vec<LaurentMPoly<QtRat>> {
    let s = QtRat::var(0); // formal q^{1/2}
    let t = QtRat::var(1);
    let s_inv = s.try_inv().unwrap();
    let t_inv = t.try_inv().unwrap();
    // per variable x_i: (1 - s^{-1} t y)(1 - s t^{-1} y) / ((1 - s^{-1} y)(1 - s y))
    // with y = (z x_i)^{+-1}; expand each factor as a geometric series in y
    // through order k_max and collect z-powers
    let sign = if plus { 1i32 } else { -1i32 };
    let mut acc: Vec<LaurentMPoly<QtRat>> = (0..=k_max)
        .map(|k| {
            if k == 0 {
                LaurentMPoly::one(nvars)
            } else {
                LaurentMPoly::zero(nvars)
            }
        })
        .collect();
    for i in 0..nvars {
        // series of one variable's factor: numerators contribute finitely,
        // denominators geometrically
        let mut factor: Vec<LaurentMPoly<QtRat>> = vec![LaurentMPoly::zero(nvars); k_max + 1];
        // 1/((1-s^{-1}y)(1-s y)) = sum_{a,b>=0} s^{b-a} y^{a+b}
        for k in 0..=k_max {
            let mut c = QtRat::zero();
            for a in 0..=k {
                let b = k - a;
                c = c + s.pow_i64(b as i64 - a as i64);
            }
            let mono = Mono(
                (0..nvars)
                    .map(|j| if j == i { sign * k as i32 } else { 0 })
                    .collect(),
            );
            factor[k] = LaurentMPoly::monomial(nvars, mono, c);
        }
        // multiply by (1 - s^{-1} t y)(1 - s t^{-1} y)
        //   = 1 - (s^{-1} t + s t^{-1}) y + y^2
        let lin = -(s_inv.clone() * t.clone() + s.clone() * t_inv.clone());
        let mut num_applied: Vec<LaurentMPoly<QtRat>> = vec![LaurentMPoly::zero(nvars); k_max + 1];
        for k in 0..=k_max {
            let mut term = factor[k].clone();
            if k >= 1 {
                let y1 = Mono((0..nvars).map(|j| if j == i { sign } else { 0 }).collect());
                term =
                    term.add(&factor[k - 1].mul(&LaurentMPoly::monomial(nvars, y1, lin.clone())));
            }
            if k >= 2 {
                let y2 = Mono(
                    (0..nvars)
                        .map(|j| if j == i { 2 * sign } else { 0 })
                        .collect(),
                );
                term =
                    term.add(&factor[k - 2].mul(&LaurentMPoly::monomial(nvars, y2, QtRat::one())));
            }
            num_applied[k] = term;
        }
        // convolve into the accumulator
        let mut next: Vec<LaurentMPoly<QtRat>> = vec![LaurentMPoly::zero(nvars); k_max + 1];
        for k in 0..=k_max {
            for a in 0..=k {
                next[k] = next[k].add(&acc[a].mul(&num_applied[k - a]));
            }
        }
        acc = next;
    }
    acc
}
