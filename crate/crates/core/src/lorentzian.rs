//! Transfer matrices of 1+1D Lorentzian triangulations: exact entries, the
//! closed-form generating function of the matrix elements, and the
//! commuting-family criterion `phi(g,a) = phi(g',a')`.
//!
//! The infinite transfer matrix is truncated to finite size; commutation is
//! certified on a window of entries together with an explicit geometric tail
//! bound, so a "pass" is a rigorous statement about the infinite matrices.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::mpoly::{LaurentMPoly, Mono};
use crate::report::Status;
use crate::scalar::{binomial, Scalar};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Clone, Serialize)]
pub enum LorentzError {
    #[error("invalid state: transfer-matrix indices must be nonnegative")]
    InvalidState,
    #[error("phi undefined: requires a != 0 and g != 0")]
    PhiUndefined,
    #[error("no conjugate in family: no positive real root for a' = {0}")]
    NoConjugate(String),
    #[error("truncation not controlled: need |g|(1+|a|) < 1 for both parameter pairs")]
    TruncationNotControlled,
}

/// Boltzmann weights: `g` per triangle, `a` per same-direction adjacent pair.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzParams {
    pub g: Rat,
    pub a: Rat,
}

impl LorentzParams {
    pub fn new(g: Rat, a: Rat) -> Result<Self, LorentzError> {
        if g.is_zero() || a.is_zero() {
            return Err(LorentzError::PhiUndefined);
        }
        Ok(LorentzParams { g, a })
    }
}

/// Exact transfer-matrix entry
/// `T(g,a)_{i,j} = (ag)^{i+j} sum_k C(i,k) C(j,k) a^{-2k}`.
pub fn transfer_entry<K: Scalar>(g: &K, a: &K, i: i64, j: i64) -> Result<K, LorentzError> {
    if i < 0 || j < 0 {
        return Err(LorentzError::InvalidState);
    }
    let a_m2 = a.try_inv().ok_or(LorentzError::PhiUndefined)?.pow_i64(2);
    let mut sum = K::zero();
    let mut a_pow = K::one();
    for k in 0..=i.min(j) {
        let c = binomial::<K>(i as u64, k as u64) * binomial::<K>(j as u64, k as u64);
        sum = sum + c * a_pow.clone();
        a_pow = a_pow * a_m2.clone();
    }
    let ag = a.clone() * g.clone();
    Ok(ag.pow_i64(i + j) * sum)
}

/// Dense `size x size` truncation of the transfer matrix.
pub fn transfer_matrix<K: Scalar>(g: &K, a: &K, size: usize) -> Result<Vec<Vec<K>>, LorentzError> {
    let mut m = vec![vec![K::zero(); size]; size];
    for i in 0..size {
        for j in i..size {
            let v = transfer_entry(g, a, i as i64, j as i64)?;
            m[i][j] = v.clone();
            m[j][i] = v; // the entry formula is symmetric in (i,j)
        }
    }
    Ok(m)
}

/// A finite truncation of the (infinite, symmetric) transfer matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTransferMatrix {
    pub params: LorentzParams,
    pub size: usize,
    pub entries: Vec<Vec<Rat>>,
}

impl TruncatedTransferMatrix {
    pub fn new(params: LorentzParams, size: usize) -> Result<Self, LorentzError> {
        let entries = transfer_matrix(&params.g, &params.a, size)?;
        Ok(TruncatedTransferMatrix {
            params,
            size,
            entries,
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }
}

/// The commuting-family invariant `phi(g,a) = (1 - g^2 (1 - a^2)) / (a g)`.
pub fn phi_invariant<K: Scalar>(g: &K, a: &K) -> Result<K, LorentzError> {
    let ag_inv = (a.clone() * g.clone())
        .try_inv()
        .ok_or(LorentzError::PhiUndefined)?;
    let g2 = g.clone() * g.clone();
    let a2 = a.clone() * a.clone();
    Ok((K::one() - g2 * (K::one() - a2)) * ag_inv)
}

// ---- generating-function identity ----

#[derive(Clone, Debug, Serialize)]
pub struct GenfunMismatch {
    pub i: i64,
    pub j: i64,
    pub entry: String,
    pub series: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenfunReport {
    pub g: String,
    pub a: String,
    pub order: i64,
    pub terms_checked: usize,
    pub status: Status,
    pub first_mismatch: Option<GenfunMismatch>,
}

/// Verify that `sum_{i+j<=order} T_{i,j} z^i w^j` matches the expansion of
/// `1/(1 - ga(z+w) - g^2(1-a^2) zw)` through the given total order.
pub fn genfun_check(p: &LorentzParams, order: i64) -> GenfunReport {
    genfun_check_inner(p, order, false)
}

/// Same check against a deliberately wrong denominator (sign flip on the
/// `g^2` term); used as a negative control.
pub fn genfun_check_perturbed(p: &LorentzParams, order: i64) -> GenfunReport {
    genfun_check_inner(p, order, true)
}

fn genfun_check_inner(p: &LorentzParams, order: i64, flip_sign: bool) -> GenfunReport {
    assert!(order >= 1, "order must be >= 1");
    // variables: 0 = z, 1 = w
    let z = LaurentMPoly::<Rat>::var(2, 0);
    let w = LaurentMPoly::<Rat>::var(2, 1);
    let ga = &p.g * &p.a;
    let mut quad = &p.g * &p.g * (Rat::one() - &p.a * &p.a);
    if flip_sign {
        quad = -quad;
    }
    // expand 1/(1-D) = sum D^k with D = ga(z+w) + g^2(1-a^2) zw
    let d = z.add(&w).scale(&ga).add(&z.mul(&w).scale(&quad));
    let mut series = LaurentMPoly::<Rat>::one(2);
    let mut d_pow = LaurentMPoly::<Rat>::one(2);
    for _ in 1..=order {
        d_pow = d_pow.mul(&d).truncate_total_degree(order);
        series = series.add(&d_pow);
    }

    let mut terms_checked = 0;
    for i in 0..=order {
        for j in 0..=(order - i) {
            let entry = transfer_entry(&p.g, &p.a, i, j).expect("indices nonnegative");
            let coeff = series.coeff(&Mono(vec![i as i32, j as i32]));
            terms_checked += 1;
            if entry != coeff {
                return GenfunReport {
                    g: p.g.to_string(),
                    a: p.a.to_string(),
                    order,
                    terms_checked,
                    status: Status::Fail,
                    first_mismatch: Some(GenfunMismatch {
                        i,
                        j,
                        entry: entry.to_string(),
                        series: coeff.to_string(),
                    }),
                };
            }
        }
    }
    GenfunReport {
        g: p.g.to_string(),
        a: p.a.to_string(),
        order,
        terms_checked,
        status: Status::Pass,
        first_mismatch: None,
    }
}

// ---- conjugate parameters ----

/// `g'`-value of a conjugate family member: exact when the quadratic has a
/// rational root, otherwise a rational interval enclosure (flagged numeric).
#[derive(Clone, Debug, PartialEq)]
pub enum ConjugateG {
    Exact(Rat),
    Numeric { lo: Rat, hi: Rat },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateParams {
    pub g: ConjugateG,
    pub a: Rat,
}

impl ConjugateParams {
    pub fn exact(p: &LorentzParams) -> Self {
        ConjugateParams {
            g: ConjugateG::Exact(p.g.clone()),
            a: p.a.clone(),
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.g, ConjugateG::Numeric { .. })
    }

    /// Representative parameters: the exact value, or the enclosure midpoint.
    pub fn representative(&self) -> LorentzParams {
        let g = match &self.g {
            ConjugateG::Exact(g) => g.clone(),
            ConjugateG::Numeric { lo, hi } => (lo + hi) / Rat::from_int(2),
        };
        LorentzParams {
            g,
            a: self.a.clone(),
        }
    }

    /// Enclosure width (zero for exact values).
    pub fn width(&self) -> Rat {
        match &self.g {
            ConjugateG::Exact(_) => Rat::zero(),
            ConjugateG::Numeric { lo, hi } => hi - lo,
        }
    }
}

/// Enclosure width target for numeric conjugate roots: 2^-120.
fn enclosure_eps() -> Rat {
    Rat::new(1.into(), num_bigint::BigInt::from(2).pow(120))
}

/// Find `g'` with `phi(g', a_new) = phi(g, a)`, i.e. the smallest positive
/// root of `(1 - a_new^2) g'^2 + phi a_new g' - 1 = 0`; the smallest positive
/// root is the branch continuously deforming from `g' -> 0`.
pub fn conjugate_parameter(
    p: &LorentzParams,
    a_new: &Rat,
) -> Result<ConjugateParams, LorentzError> {
    if a_new.is_zero() {
        return Err(LorentzError::PhiUndefined);
    }
    let phi = phi_invariant(&p.g, &p.a)?;
    let qa = Rat::one() - a_new * a_new; // quadratic coefficient
    let qb = &phi * a_new;
    let qc = -Rat::one();

    if qa.is_zero() {
        // linear: qb g' = 1
        if qb.is_zero() {
            return Err(LorentzError::NoConjugate(a_new.to_string()));
        }
        let root = -&qc / &qb;
        if !root.is_positive() {
            return Err(LorentzError::NoConjugate(a_new.to_string()));
        }
        return Ok(ConjugateParams {
            g: ConjugateG::Exact(root),
            a: a_new.clone(),
        });
    }

    let disc = &qb * &qb - Rat::from_int(4) * &qa * &qc;
    if disc.is_negative() {
        return Err(LorentzError::NoConjugate(a_new.to_string()));
    }
    if let Some(sq) = disc.try_sqrt() {
        // rational roots; pick the smallest positive one
        let two_a = Rat::from_int(2) * &qa;
        let r1 = (-&qb + &sq) / &two_a;
        let r2 = (-&qb - &sq) / &two_a;
        let root = [r1, r2]
            .into_iter()
            .filter(|r| r.is_positive())
            .min()
            .ok_or_else(|| LorentzError::NoConjugate(a_new.to_string()))?;
        return Ok(ConjugateParams {
            g: ConjugateG::Exact(root),
            a: a_new.clone(),
        });
    }

    // irrational root: rational bisection enclosure of the smallest positive root
    let eval = |x: &Rat| -> Rat { &qa * x * x + &qb * x + &qc };
    // p(0) = -1 < 0 in all cases
    let mut lo = Rat::zero();
    let mut hi;
    if qa.is_positive() {
        // exactly one positive root
        hi = Rat::one();
        while !eval(&hi).is_positive() {
            hi = &hi * Rat::from_int(2);
        }
    } else {
        // two roots of equal sign; the smaller one lies left of the vertex
        let vertex = -&qb / (Rat::from_int(2) * &qa);
        if !vertex.is_positive() || !eval(&vertex).is_positive() {
            return Err(LorentzError::NoConjugate(a_new.to_string()));
        }
        hi = vertex;
    }
    let eps = enclosure_eps();
    while (&hi - &lo) > eps {
        let mid = (&lo + &hi) / Rat::from_int(2);
        if eval(&mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ConjugateParams {
        g: ConjugateG::Numeric { lo, hi },
        a: a_new.clone(),
    })
}

// ---- commutation residual with tail bound ----

#[derive(Clone, Debug, Serialize)]
pub struct CommuteReport {
    pub g1: String,
    pub a1: String,
    pub g2: String,
    pub a2: String,
    pub g2_numeric: bool,
    pub size: usize,
    pub window: usize,
    /// max |(T1 T2 - T2 T1)_{ij}| over the window, as an exact rational
    pub residual: String,
    pub residual_f64: f64,
    /// rigorous bound on truncation + enclosure-midpoint error
    pub tail_bound: String,
    pub tail_bound_f64: f64,
    pub tolerance: String,
    pub status: Status,
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    // good enough for display; exact values are carried alongside
    let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

/// Entry decay radius `rho = |g| (1 + |a|)`; entries obey
/// `|T_{i,k}| <= rho^{i+k}` (Cauchy-Schwarz on the binomial sum).
fn decay_radius(g: &Rat, a: &Rat) -> Rat {
    g.abs() * (Rat::one() + a.abs())
}

/// Compute the commutator `T1 T2 - T2 T1` on `size x size` truncations and
/// report the maximum absolute entry over the `window x window` corner,
/// together with a rigorous geometric tail bound for the truncation error
/// (plus the enclosure-midpoint perturbation when `p2` is numeric).
pub fn commutation_residual(
    p1: &LorentzParams,
    p2: &ConjugateParams,
    size: usize,
    window: usize,
    tolerance: &Rat,
) -> Result<CommuteReport, LorentzError> {
    assert!(window <= size / 2, "window must be at most size/2");
    let rep2 = p2.representative();
    let rho1 = decay_radius(&p1.g, &p1.a);
    // conservative radius for the second family member: use the enclosure sup
    let g2_abs_hi = match &p2.g {
        ConjugateG::Exact(g) => g.abs(),
        ConjugateG::Numeric { lo, hi } => lo.abs().max(hi.abs()),
    };
    let rho2 = &g2_abs_hi * (Rat::one() + rep2.a.abs());
    let rho12 = &rho1 * &rho2;
    if rho1 >= Rat::one() || rho2 >= Rat::one() || rho12 >= Rat::one() {
        return Err(LorentzError::TruncationNotControlled);
    }

    let t1 = transfer_matrix(&p1.g, &p1.a, size)?;
    let t2 = transfer_matrix(&rep2.g, &rep2.a, size)?;

    let mut residual = Rat::zero();
    for i in 0..window {
        for j in 0..window {
            let mut c = Rat::zero();
            for k in 0..size {
                c = c + &t1[i][k] * &t2[k][j] - &t2[i][k] * &t1[k][j];
            }
            let c = c.abs();
            if c > residual {
                residual = c;
            }
        }
    }

    // truncation tail:
    //   |sum_{k>=size} T1_{ik} T2_{kj} - T2_{ik} T1_{kj}|
    //     <= 2 sum_{k>=size} rho1^{i+k} rho2^{k+j}
    //     <= 2 (rho1 rho2)^size / (1 - rho1 rho2)     (i, j >= 0, rho < 1)
    let denom = Rat::one() - &rho12;
    let mut tail = Rat::from_int(2) * rho12.pow(size as i32) / &denom;
    // enclosure perturbation: entries scale as (g'/g_mid)^{i+k}, i+k < 2*size
    if p2.is_numeric() {
        let gmid = rep2.g.abs();
        let half_width = p2.width() / Rat::from_int(2);
        let rel = (Rat::one() + half_width / gmid).pow(2 * size as i32) - Rat::one();
        tail = tail + Rat::from_int(2) * rel / denom;
    }

    let bound = &tail + tolerance;
    let status = Status::from_bool(residual <= bound);
    Ok(CommuteReport {
        g1: p1.g.to_string(),
        a1: p1.a.to_string(),
        g2: match &p2.g {
            ConjugateG::Exact(g) => g.to_string(),
            ConjugateG::Numeric { lo, hi } => format!("[{lo}, {hi}]"),
        },
        a2: rep2.a.to_string(),
        g2_numeric: p2.is_numeric(),
        size,
        window,
        residual: residual.to_string(),
        residual_f64: rat_to_f64(&residual),
        tail_bound: tail.to_string(),
        tail_bound_f64: rat_to_f64(&tail),
        tolerance: tolerance.to_string(),
        status,
    })
}

/// Default tolerance for commutation residuals: 1e-10.
pub fn default_tolerance() -> Rat {
    Rat::new(1.into(), num_bigint::BigInt::from(10).pow(10))
}

/// Recorded default seed for randomized parameter draws.
pub const DEFAULT_SEED: u64 = 0xD15C0DE;

/// Deterministic stream of small generic rational parameter pairs
/// (splitmix64 under the hood, so a seed fully reproduces the run).
pub fn seeded_parameter_pairs(seed: u64, count: usize) -> Vec<LorentzParams> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let gn = (next() % 9 + 1) as i64;
        let gd = (next() % 11 + 2) as i64;
        let an = (next() % 9 + 1) as i64;
        let ad = (next() % 11 + 2) as i64;
        let g_sign = if next() % 2 == 0 { 1 } else { -1 };
        let g = Rat::new((g_sign * gn).into(), gd.into());
        let a = Rat::new(an.into(), ad.into());
        if let Ok(p) = LorentzParams::new(g, a) {
            out.push(p);
        }
    }
    out
}
