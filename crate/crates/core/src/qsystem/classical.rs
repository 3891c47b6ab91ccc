//! The classical Q-system `Q_{a,n+1} Q_{a,n-1} = Q_{a,n}^2 - Q_{a+1,n} Q_{a-1,n}`
//! verified on its Kirillov-Reshetikhin solution `Q_{a,n} = s_{(n^a)}(x)`
//! (rectangular Schur polynomials), and the scalar `A_1` orbit with its
//! conserved quantity.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::mpoly::LaurentMPoly;
use crate::report::Status;
use crate::schur::{schur_polynomial, Partition};
use crate::{Rat, RatMPoly};

use super::QsysError;

/// `Q_{alpha,n}` for `gl_N`: the rectangular Schur polynomial `s_{(n^alpha)}`
/// in `N` variables, with `Q_{0,n} = 1` and `Q_{N,n} = (x_1...x_N)^n`.
pub fn rect_char(alpha: usize, n: u32, nvars: usize) -> Result<RatMPoly, QsysError> {
    assert!(alpha <= nvars, "alpha must lie in [0, N]");
    Ok(schur_polynomial(&Partition::rectangle(n, alpha), nvars)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalQReport {
    pub nvars: usize,
    pub n_max: u32,
    pub identities_checked: usize,
    pub status: Status,
    pub first_failure: Option<String>,
}

/// Verify the recursion as an exact polynomial identity for all
/// `alpha in [1, N-1]` and `1 <= n < n_max`, with the `gl_N` boundary
/// `Q_{N,n} = (x_1...x_N)^n`.
pub fn classical_qsystem_check(nvars: usize, n_max: u32) -> Result<ClassicalQReport, QsysError> {
    assert!((2..=4).contains(&nvars), "desk scale: 2 <= N <= 4");
    let mut checked = 0usize;
    let mut first_failure = None;
    'outer: for alpha in 1..nvars {
        for n in 1..=n_max {
            let lhs = rect_char(alpha, n + 1, nvars)?.mul(&rect_char(alpha, n - 1, nvars)?);
            let rhs = rect_char(alpha, n, nvars)?
                .pow(2)
                .sub(&rect_char(alpha + 1, n, nvars)?.mul(&rect_char(alpha - 1, n, nvars)?));
            checked += 1;
            if lhs != rhs {
                let diff = lhs.sub(&rhs);
                let lead = diff
                    .leading()
                    .map(|(m, c)| format!("{m:?} -> {c}"))
                    .unwrap_or_default();
                first_failure = Some(format!("alpha={alpha}, n={n}, first monomial {lead}"));
                break 'outer;
            }
        }
    }
    Ok(ClassicalQReport {
        nvars,
        n_max,
        identities_checked: checked,
        status: Status::from_bool(first_failure.is_none()),
        first_failure,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct A1ConservedReport {
    pub q0: String,
    pub q1: String,
    pub n_max: usize,
    pub conserved_value: String,
    pub status: Status,
}

/// Iterate the scalar `A_1` system `Q_{n+1} = (Q_n^2 - 1)/Q_{n-1}` and check
/// that `(Q_{n+1} + Q_{n-1})/Q_n` is independent of `n`.
pub fn a1_conserved_quantity(
    q0: &Rat,
    q1: &Rat,
    n_max: usize,
) -> Result<A1ConservedReport, QsysError> {
    assert!(n_max >= 1);
    let mut orbit = vec![q0.clone(), q1.clone()];
    for step in 1..=n_max {
        let prev = &orbit[step - 1];
        let cur = &orbit[step];
        if prev.is_zero() {
            return Err(QsysError::DegenerateOrbit(step));
        }
        orbit.push((cur * cur - Rat::one()) / prev);
    }
    let mut value: Option<Rat> = None;
    for n in 1..=n_max {
        if orbit[n].is_zero() {
            return Err(QsysError::DegenerateOrbit(n));
        }
        let c = (&orbit[n + 1] + &orbit[n - 1]) / &orbit[n];
        match &value {
            None => value = Some(c),
            Some(v) => {
                if *v != c {
                    return Ok(A1ConservedReport {
                        q0: q0.to_string(),
                        q1: q1.to_string(),
                        n_max,
                        conserved_value: format!("varies: {v} vs {c} at n={n}"),
                        status: Status::Fail,
                    });
                }
            }
        }
    }
    Ok(A1ConservedReport {
        q0: q0.to_string(),
        q1: q1.to_string(),
        n_max,
        conserved_value: value.unwrap().to_string(),
        status: Status::Pass,
    })
}

/// Test family used by the operator relation checks: all monomial symmetric
/// polynomials of degree at most `cap` in `nvars` variables (including the
/// constant 1).
pub fn monomial_test_family<K: crate::scalar::Scalar>(
    nvars: usize,
    cap: u32,
) -> Vec<(String, LaurentMPoly<K>)> {
    let mut out = Vec::new();
    for d in 0..=cap {
        for lam in Partition::all_of(d, nvars) {
            let m = crate::schur::monomial_symmetric::<K>(&lam, nvars)
                .expect("partition fits variable count");
            out.push((format!("m{lam}"), m));
        }
    }
    out
}
