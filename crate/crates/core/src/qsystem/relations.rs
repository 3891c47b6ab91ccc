//! Exact verification of the M-system operator relations on a finite family
//! of symmetric test polynomials:
//!
//! exchange: `M_{a,n} M_{b,n+1} = q^{min(a,b)} M_{b,n+1} M_{a,n}`
//! quantum Q-system: `q^a M_{a,n+1} M_{a,n-1} = M_{a,n}^2 - M_{a+1,n} M_{a-1,n}`
//!
//! for all levels `a, b` in `[0, N]` (with `M_{N+1,n} = 0`) and modes
//! `n in {0, 1, 2}`.

use serde::Serialize;

use crate::report::Status;
use crate::scalar::Scalar;
use crate::QRat;

use super::classical::monomial_test_family;
use super::mop::m_apply;
use super::QsysError;

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub alpha: usize,
    pub beta: Option<usize>,
    pub n: i64,
    pub test_poly: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MsystemReport {
    pub nvars: usize,
    pub degree_cap: u32,
    pub exchange_checked: usize,
    pub qsystem_checked: usize,
    pub status: Status,
    pub failures: Vec<RelationFailure>,
}

/// Run both relation families on all monomial-symmetric test polynomials of
/// degree at most `degree_cap`.
pub fn msystem_relations_check(nvars: usize, degree_cap: u32) -> Result<MsystemReport, QsysError> {
    assert!((2..=3).contains(&nvars), "desk scale: N <= 3");
    let fam = monomial_test_family::<QRat>(nvars, degree_cap);
    let q = QRat::q();
    let mut failures = Vec::new();
    let mut exchange_checked = 0usize;
    let mut qsystem_checked = 0usize;

    for n in 0..=2i64 {
        for alpha in 0..=nvars {
            for beta in 0..=nvars {
                for (name, f) in &fam {
                    exchange_checked += 1;
                    let lhs = m_apply(alpha, n, &m_apply(beta, n + 1, f)?)?;
                    let rhs = m_apply(beta, n + 1, &m_apply(alpha, n, f)?)?
                        .scale(&q.pow_i64(alpha.min(beta) as i64));
                    if lhs != rhs {
                        failures.push(RelationFailure {
                            relation: "exchange".into(),
                            alpha,
                            beta: Some(beta),
                            n,
                            test_poly: name.clone(),
                        });
                    }
                }
            }
        }
        for alpha in 1..=nvars {
            for (name, f) in &fam {
                qsystem_checked += 1;
                let lhs = m_apply(alpha, n + 1, &m_apply(alpha, n - 1, f)?)?
                    .scale(&q.pow_i64(alpha as i64));
                let square = m_apply(alpha, n, &m_apply(alpha, n, f)?)?;
                let cross = m_apply(alpha + 1, n, &m_apply(alpha - 1, n, f)?)?;
                let rhs = square.sub(&cross);
                if lhs != rhs {
                    failures.push(RelationFailure {
                        relation: "quantum-qsystem".into(),
                        alpha,
                        beta: None,
                        n,
                        test_poly: name.clone(),
                    });
                }
            }
        }
    }

    Ok(MsystemReport {
        nvars,
        degree_cap,
        exchange_checked,
        qsystem_checked,
        status: Status::from_bool(failures.is_empty()),
        failures,
    })
}
