//! The `(q,t)`-deformed operator layer: the dual q-Whittaker degeneration
//! `M_{a,n} = lim_{t->inf} t^{-a(N-a)} Mac_{a,n}` (checked exactly in
//! t-degree), and the eigenproblem of `Mac_{1,0}` on the monomial-symmetric
//! basis, whose eigenvectors are the Macdonald polynomials with eigenvalue
//! `sum_i q^{lambda_i} t^{N-i}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::mpoly::LaurentMPoly;
use crate::report::Status;
use crate::scalar::zpoly::ZPoly;
use crate::scalar::Scalar;
use crate::schur::{monomial_symmetric, Partition};
use crate::{QMPoly, QRat, QtMPoly, QtRat};

use super::mop::{m_apply, mac_apply};
use super::QsysError;

pub use super::mop::mac_apply_with;

/// Embed a rational function in `q` into the `(q,t)` tower.
pub fn qrat_to_qtrat(c: &QRat) -> QtRat {
    let embed = |p: &ZPoly<1>| -> ZPoly<2> {
        let mut out = ZPoly::zero();
        for (e, coef) in p.iter() {
            out = out.add(&ZPoly::monomial([e.0[0], 0], coef.clone()));
        }
        out
    };
    QtRat::new(embed(c.numer()), embed(c.denom()))
}

/// `deg_t(num) - deg_t(den)` of a rational function; `None` for zero.
fn t_degree_balance(c: &QtRat) -> Option<i64> {
    if c.is_zero() {
        return None;
    }
    Some(c.numer().degree_in(1) as i64 - c.denom().degree_in(1) as i64)
}

#[derive(Clone, Debug, Serialize)]
pub struct TLimitReport {
    pub alpha: usize,
    pub n: i64,
    pub nvars: usize,
    pub cases_checked: usize,
    pub status: Status,
    pub first_failure: Option<String>,
}

/// Check that `t^{-a(N-a)} Mac_{a,n} f - M_{a,n} f` vanishes as `t -> inf`:
/// every coefficient of the difference must have strictly negative t-degree
/// balance.
pub fn t_limit_check(
    alpha: usize,
    n: i64,
    test_family: &[(String, QMPoly)],
) -> Result<TLimitReport, QsysError> {
    let mut cases = 0usize;
    let mut first_failure = None;
    let mut nvars = 0;
    for (name, f) in test_family {
        nvars = f.nvars();
        cases += 1;
        let f_qt: QtMPoly = f.map_coeffs(qrat_to_qtrat);
        let mac = mac_apply(alpha, n, &f_qt)?;
        let t_pow = QtRat::var(1).pow_i64(-((alpha * (nvars - alpha)) as i64));
        let lead = mac.scale(&t_pow);
        let m = m_apply(alpha, n, f)?.map_coeffs(qrat_to_qtrat);
        let diff = lead.sub(&m);
        for (mono, c) in diff.iter() {
            if let Some(bal) = t_degree_balance(c) {
                if bal >= 0 {
                    first_failure = Some(format!(
                        "{name}: coefficient of {mono:?} has t-degree balance {bal}: {c}"
                    ));
                    break;
                }
            }
        }
        if first_failure.is_some() {
            break;
        }
    }
    Ok(TLimitReport {
        alpha,
        n,
        nvars,
        cases_checked: cases,
        status: Status::from_bool(first_failure.is_none()),
        first_failure,
    })
}

/// Eigenvalue of `Mac_{1,0}` on the Macdonald polynomial `P_lambda`:
/// `sum_{i=1}^{N} q^{lambda_i} t^{N-i}`.
pub fn macdonald_eigenvalue(lambda: &Partition, nvars: usize) -> QtRat {
    let q = QtRat::var(0);
    let t = QtRat::var(1);
    let mut e = QtRat::zero();
    for i in 0..nvars {
        let li = lambda.0.get(i).copied().unwrap_or(0) as i64;
        e = e + q.pow_i64(li) * t.pow_i64((nvars - 1 - i) as i64);
    }
    e
}

/// Expand a symmetric polynomial in the monomial-symmetric basis.
fn expand_monomial_basis(f: &QtMPoly) -> Result<Vec<(Partition, QtRat)>, QsysError> {
    let mut rem = f.clone();
    let mut out = Vec::new();
    let mut guard = 0;
    while !rem.is_zero() {
        guard += 1;
        if guard > 100_000 {
            return Err(QsysError::EigencheckFailed(
                "expansion does not terminate".into(),
            ));
        }
        let (mono, c) = {
            let (m, c) = rem.leading().unwrap();
            (m.clone(), c.clone())
        };
        if mono.0.iter().any(|&e| e < 0) || mono.0.windows(2).any(|w| w[0] < w[1]) {
            return Err(QsysError::EigencheckFailed(format!(
                "leading monomial {mono:?} is not dominant"
            )));
        }
        let lam = Partition::new(mono.0.iter().map(|&e| e as u32).collect());
        let m_lam: QtMPoly = monomial_symmetric(&lam, f.nvars())?;
        rem = rem.sub(&m_lam.scale(&c));
        out.push((lam, c));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigencheckReport {
    pub lambda: String,
    pub nvars: usize,
    pub eigenvalue: String,
    /// coefficients of P_lambda in the monomial basis, dominance-triangular
    pub coefficients: Vec<(String, String)>,
    pub triangular: bool,
    pub status: Status,
}

fn dominates(a: &Partition, b: &Partition) -> bool {
    // a >= b in dominance order (same size assumed)
    let mut pa = 0i64;
    let mut pb = 0i64;
    let len = a.0.len().max(b.0.len());
    for i in 0..len {
        pa += a.0.get(i).copied().unwrap_or(0) as i64;
        pb += b.0.get(i).copied().unwrap_or(0) as i64;
        if pa < pb {
            return false;
        }
    }
    true
}

/// Construct the Macdonald polynomial `P_lambda` by solving the triangular
/// eigenproblem of `Mac_{1,0}` in the monomial-symmetric basis (monic at
/// `m_lambda`), then verify `Mac_{1,0} P = (sum_i q^{lambda_i} t^{N-i}) P`
/// exactly.
pub fn macdonald_eigencheck(
    lambda: &Partition,
    nvars: usize,
) -> Result<EigencheckReport, QsysError> {
    if lambda.len() > nvars {
        return Err(QsysError::EigencheckFailed(
            "partition exceeds variable count".into(),
        ));
    }
    let degree = lambda.size() as u32;
    // basis: partitions of |lambda| with at most N parts, in a linear order
    // refining dominance (sort descending lexicographically)
    let mut basis = Partition::all_of(degree, nvars);
    basis.sort_by(|a, b| b.cmp(a));
    let dim = basis.len();
    let idx_of = |p: &Partition| basis.iter().position(|x| x == p).unwrap();

    // operator matrix in the monomial basis: column nu holds Mac m_nu
    let mut matrix = vec![vec![QtRat::zero(); dim]; dim];
    let mut triangular = true;
    for (col, nu) in basis.iter().enumerate() {
        let m_nu: QtMPoly = monomial_symmetric(nu, nvars)?;
        let image = mac_apply(1, 0, &m_nu)?;
        for (mu, c) in expand_monomial_basis(&image)? {
            let row = idx_of(&mu);
            if !dominates(nu, &mu) {
                triangular = false;
            }
            matrix[row][col] = c;
        }
    }

    let target = idx_of(lambda);
    let eig = macdonald_eigenvalue(lambda, nvars);

    // solve (A - eig) c = 0 with c_lambda = 1 by back-substitution down the
    // dominance-refining order (entries above `target` in the order vanish)
    let mut coeffs = vec![QtRat::zero(); dim];
    coeffs[target] = QtRat::one();
    for row in (target + 1)..dim {
        // A is lower-triangular in this ordering: row mu gets contributions
        // from columns nu with nu >= mu, i.e. col <= row
        let mut acc = QtRat::zero();
        for col in target..row {
            if !coeffs[col].is_zero() && !matrix[row][col].is_zero() {
                acc = acc + matrix[row][col].clone() * coeffs[col].clone();
            }
        }
        let diag = matrix[row][row].clone();
        let denom = eig.clone() - diag;
        if denom.is_zero() {
            return Err(QsysError::EigencheckFailed(format!(
                "eigenvalue collision between {lambda} and {}",
                basis[row]
            )));
        }
        coeffs[row] = acc / denom;
    }

    // assemble P and verify the eigen-equation exactly
    let mut p: QtMPoly = LaurentMPoly::zero(nvars);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let m: QtMPoly = monomial_symmetric(&basis[i], nvars)?;
            p = p.add(&m.scale(c));
        }
    }
    let image = mac_apply(1, 0, &p)?;
    let residual = image.sub(&p.scale(&eig));
    let status = Status::from_bool(residual.is_zero());
    if !status.passed() {
        return Err(QsysError::EigencheckFailed(format!(
            "eigen-equation residual nonzero for {lambda}: {residual}"
        )));
    }

    Ok(EigencheckReport {
        lambda: lambda.to_string(),
        nvars,
        eigenvalue: eig.to_string(),
        coefficients: basis
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b.to_string(), c.to_string()))
            .collect(),
        triangular,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsystem::classical::monomial_test_family;

    #[test]
    fn eigenvalue_formula() {
        // lambda = (1), N = 2: qt + 1
        let e = macdonald_eigenvalue(&Partition::new(vec![1]), 2);
        let q = QtRat::var(0);
        let t = QtRat::var(1);
        assert_eq!(e, q.clone() * t.clone() + QtRat::one());
        // lambda = (2), N = 2: q^2 t + 1
        let e2 = macdonald_eigenvalue(&Partition::new(vec![2]), 2);
        assert_eq!(e2, q.clone() * q.clone() * t.clone() + QtRat::one());
    }

    #[test]
    fn empty_partition_is_constant_eigenvector() {
        let rep = macdonald_eigencheck(&Partition::empty(), 2).unwrap();
        assert_eq!(rep.status, Status::Pass);
        // eigenvalue 1 + t at N = 2
        let t = QtRat::var(1);
        assert_eq!(rep.eigenvalue, (QtRat::one() + t).to_string());
    }

    #[test]
    fn single_box_n2() {
        // P_(1) = m_(1), eigenvalue qt + 1
        let rep = macdonald_eigencheck(&Partition::new(vec![1]), 2).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.coefficients.len(), 1);
    }

    #[test]
    fn row_two_n2() {
        let rep = macdonald_eigencheck(&Partition::new(vec![2]), 2).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.triangular);
        // P_(2) = m_(2) + c m_(1,1) with a genuine (q,t) coefficient
        assert_eq!(rep.coefficients.len(), 2);
    }

    #[test]
    fn several_shapes_n3() {
        for lam in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![3]] {
            let rep = macdonald_eigencheck(&Partition::new(lam.clone()), 3).unwrap();
            assert_eq!(rep.status, Status::Pass, "lambda={lam:?}");
            assert!(rep.triangular, "lambda={lam:?}");
        }
    }

    #[test]
    fn t_limit_small() {
        let fam = monomial_test_family::<QRat>(2, 2);
        for alpha in 1..=2usize {
            for n in 0..=1i64 {
                let rep = t_limit_check(alpha, n, &fam).unwrap();
                assert_eq!(rep.status, Status::Pass, "alpha={alpha} n={n}");
            }
        }
    }

    #[test]
    fn embed_preserves_arithmetic() {
        let q1 = QRat::q();
        let a = (QRat::one() + q1.clone()) / q1.clone();
        let b = qrat_to_qtrat(&a);
        let q2 = QtRat::var(0);
        assert_eq!(b, (QtRat::one() + q2.clone()) / q2);
    }
}
