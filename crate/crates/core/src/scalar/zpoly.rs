//! Sparse integer-coefficient polynomials in a small fixed set of formal
//! parameters (`q`, or `q` and `t`). These are only the numerators and
//! denominators of [`super::ratfn::RatFn`]; the general-purpose polynomial
//! carrier for symmetric functions is [`crate::mpoly::LaurentMPoly`].
//!
//! Exponents are nonnegative; Laurent behaviour lives at the fraction level.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Expo<const NV: usize>(pub [u32; NV]);

impl<const NV: usize> Ord for Expo<NV> {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u64 = self.0.iter().map(|&e| e as u64).sum();
        let db: u64 = other.0.iter().map(|&e| e as u64).sum();
        da.cmp(&db).then_with(|| self.0.cmp(&other.0))
    }
}

impl<const NV: usize> PartialOrd for Expo<NV> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn param_name(nv: usize, i: usize) -> &'static str {
    match (nv, i) {
        (1, 0) => "q",
        (2, 0) => "q",
        (2, 1) => "t",
        _ => "v",
    }
}

/// Integer-coefficient polynomial in `NV` formal parameters.
///
/// Invariant: no explicitly stored zero coefficients; the term map is in
/// graded-lexicographic order, so iteration (and `Display`) is canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly<const NV: usize> {
    terms: BTreeMap<Expo<NV>, BigInt>,
}

impl<const NV: usize> ZPoly<NV> {
    pub fn zero() -> Self {
        ZPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Expo([0; NV]), c);
        }
        ZPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(n.into())
    }

    /// The formal parameter with index `i` (0 = `q`, 1 = `t`).
    pub fn var(i: usize) -> Self {
        assert!(i < NV, "parameter index out of range");
        let mut e = [0u32; NV];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: [u32; NV], c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Expo(exps), c);
        }
        ZPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Expo([0; NV])).map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Expo([0; NV])))
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expo<NV>, &BigInt)> {
        self.terms.iter()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Expo<NV>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff_sign_positive(&self) -> bool {
        self.leading().map_or(true, |(_, c)| c.is_positive())
    }

    fn insert_add(terms: &mut BTreeMap<Expo<NV>, BigInt>, e: Expo<NV>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        ZPoly { terms }
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0u32; NV];
                for i in 0..NV {
                    e[i] = ea.0[i] + eb.0[i];
                }
                Self::insert_add(&mut terms, Expo(e), ca * cb);
            }
        }
        ZPoly { terms }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Gcd of all integer coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero());
        ZPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let (t, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact integer division in polynomial");
                    (*e, t)
                })
                .collect(),
        }
    }

    /// Exact polynomial division; `None` if `den` does not divide `self`.
    pub fn divexact(&self, den: &Self) -> Option<Self> {
        assert!(!den.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.clone();
        let mut quo = BTreeMap::new();
        let (lde, ldc) = {
            let (e, c) = den.leading().unwrap();
            (*e, c.clone())
        };
        while !rem.is_zero() {
            let (lre, lrc) = {
                let (e, c) = rem.leading().unwrap();
                (*e, c.clone())
            };
            let mut qe = [0u32; NV];
            for i in 0..NV {
                if lre.0[i] < lde.0[i] {
                    return None;
                }
                qe[i] = lre.0[i] - lde.0[i];
            }
            let (qc, r) = lrc.div_rem(&ldc);
            if r.is_zero() {
                // fall through
            } else {
                return None;
            }
            Self::insert_add(&mut quo, Expo(qe), qc.clone());
            let t = Self::monomial(qe, qc);
            rem = rem.sub(&t.mul(den));
        }
        Some(ZPoly { terms: quo })
    }

    /// Substitute 1 for parameter `i`.
    pub fn eval_var_one(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.0;
            e2[i] = 0;
            Self::insert_add(&mut terms, Expo(e2), c.clone());
        }
        ZPoly { terms }
    }

    /// Substitute 1 for every parameter, collapsing to an integer.
    pub fn eval_all_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Reverse the exponents of parameter `i`: the numerator of
    /// `x_i^{deg_i} * p(.., 1/x_i, ..)`.
    pub fn reverse_var(&self, i: usize) -> Self {
        let d = self.degree_in(i);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.0;
            e2[i] = d - e.0[i];
            terms.insert(Expo(e2), c.clone());
        }
        ZPoly { terms }
    }

    /// Polynomial gcd over the integers, sign-normalized (positive leading
    /// coefficient) and including the integer content gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return Self::sign_normalized(b.clone());
        }
        if b.is_zero() {
            return Self::sign_normalized(a.clone());
        }
        // monomial fast path: gcd is the min-exponent monomial with content gcd
        if a.is_monomial() || b.is_monomial() {
            let mut e = [0u32; NV];
            for i in 0..NV {
                e[i] = a.min_degree_in(i).min(b.min_degree_in(i));
            }
            let c = a.content().gcd(&b.content());
            return Self::monomial(e, c);
        }
        match NV {
            1 => gcd_nv1(a, b),
            2 => gcd_nv2(a, b),
            _ => unimplemented!("gcd only provided for 1 or 2 parameters"),
        }
    }

    fn sign_normalized(p: Self) -> Self {
        if p.leading_coeff_sign_positive() {
            p
        } else {
            p.neg()
        }
    }
}

impl<const NV: usize> fmt::Display for ZPoly<NV> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // canonical form: graded-lex descending, explicit exponents
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = e.0.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const_term {
                write!(f, "{mag}")?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut need_star = false;
            for i in 0..NV {
                if e.0[i] > 0 {
                    if need_star {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", param_name(NV, i))?;
                    if e.0[i] > 1 {
                        write!(f, "^{}", e.0[i])?;
                    }
                    need_star = true;
                }
            }
            let _ = need_star;
        }
        Ok(())
    }
}

// ---- dense univariate helpers (coefficients ascending by degree) ----

type UPoly = Vec<BigInt>;

fn utrim(p: &mut UPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn udeg(p: &UPoly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    if r.len() < b.len() {
        r.resize(b.len(), BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    utrim(&mut r);
    r
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            r[i + j] += ca * cb;
        }
    }
    utrim(&mut r);
    r
}

fn uscale(a: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn ushift(a: &UPoly, k: usize) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); k];
    r.extend_from_slice(a);
    r
}

fn ucontent(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn udiv_int(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter()
        .map(|x| {
            let (t, r) = x.div_rem(c);
            debug_assert!(r.is_zero());
            t
        })
        .collect()
}

/// Exact univariate division over Z; panics if inexact (internal use only).
fn udivexact(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Vec::new();
    }
    let mut rem = a.clone();
    let db = udeg(b);
    let lb = b[db].clone();
    let mut quo = vec![BigInt::zero(); a.len() - b.len() + 1];
    while !rem.is_empty() && udeg(&rem) >= db {
        let dr = udeg(&rem);
        let (qc, r) = rem[dr].div_rem(&lb);
        assert!(r.is_zero(), "inexact univariate division");
        quo[dr - db] = qc.clone();
        rem = usub(&rem, &ushift(&uscale(b, &qc), dr - db));
    }
    assert!(rem.is_empty(), "inexact univariate division");
    quo
}

/// Primitive part (content removed), sign-normalized.
fn uprim(a: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = ucontent(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    udiv_int(a, &c)
}

/// Gcd over Z[x] by the primitive pseudo-remainder sequence.
fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return uscale(&uprim(b), &ucontent(b));
    }
    if b.is_empty() {
        return uscale(&uprim(a), &ucontent(a));
    }
    let c = ucontent(a).gcd(&ucontent(b));
    let mut p = uprim(a);
    let mut q = uprim(b);
    if udeg(&p) < udeg(&q) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        // pseudo-remainder: repeatedly cancel the top term after scaling by lc(q)
        let lq = q.last().unwrap().clone();
        let dq = udeg(&q);
        let mut r = p.clone();
        while !r.is_empty() && udeg(&r) >= dq {
            let dr = udeg(&r);
            let lr = r.last().unwrap().clone();
            r = usub(&uscale(&r, &lq), &ushift(&uscale(&q, &lr), dr - dq));
        }
        p = q;
        q = uprim(&r);
    }
    uscale(&uprim(&p), &c)
}

fn gcd_nv1<const NV: usize>(a: &ZPoly<NV>, b: &ZPoly<NV>) -> ZPoly<NV> {
    let g = ugcd(&to_dense1(a), &to_dense1(b));
    from_dense1(&g)
}

fn to_dense1<const NV: usize>(p: &ZPoly<NV>) -> UPoly {
    let mut v = vec![BigInt::zero(); p.degree_in(0) as usize + 1];
    for (e, c) in p.iter() {
        v[e.0[0] as usize] = c.clone();
    }
    utrim(&mut v);
    v
}

fn from_dense1<const NV: usize>(v: &UPoly) -> ZPoly<NV> {
    let mut r = ZPoly::zero();
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let mut e = [0u32; NV];
            e[0] = k as u32;
            r = r.add(&ZPoly::monomial(e, c.clone()));
        }
    }
    r
}

// ---- bivariate gcd: Z[t][q], primitive PRS in q with Z[t] coefficients ----

type BPoly = Vec<UPoly>; // index = q-degree, entry = dense polynomial in t

fn btrim(p: &mut BPoly) {
    while p.last().map_or(false, |c| c.is_empty()) {
        p.pop();
    }
}

fn bdeg(p: &BPoly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

fn bsub(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    if r.len() < b.len() {
        r.resize(b.len(), Vec::new());
    }
    for (i, c) in b.iter().enumerate() {
        r[i] = usub(&r[i], c);
    }
    btrim(&mut r);
    r
}

fn bscale(a: &BPoly, c: &UPoly) -> BPoly {
    if c.is_empty() {
        return Vec::new();
    }
    a.iter().map(|x| umul(x, c)).collect()
}

fn bshift(a: &BPoly, k: usize) -> BPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Vec::new(); k];
    r.extend_from_slice(a);
    r
}

/// Content of a bivariate polynomial w.r.t. q: gcd in Z[t] of the q-coefficients.
fn bcontent(a: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        g = ugcd(&g, c);
    }
    g
}

fn bprim(a: &BPoly) -> BPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = bcontent(a);
    let mut r: BPoly = a
        .iter()
        .map(|x| {
            if x.is_empty() {
                Vec::new()
            } else {
                udivexact(x, &c)
            }
        })
        .collect();
    // normalize: leading q-coefficient's leading t-coefficient positive
    if r.last()
        .and_then(|p| p.last())
        .map_or(false, |c| c.is_negative())
    {
        for x in r.iter_mut() {
            *x = uscale(x, &BigInt::from(-1));
        }
    }
    r
}

fn bgcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return bscale(&bprim(b), &bcontent(b));
    }
    if b.is_empty() {
        return bscale(&bprim(a), &bcontent(a));
    }
    let c = ugcd(&bcontent(a), &bcontent(b));
    let mut p = bprim(a);
    let mut q = bprim(b);
    if bdeg(&p) < bdeg(&q) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let lq = q.last().unwrap().clone();
        let dq = bdeg(&q);
        let mut r = p.clone();
        while !r.is_empty() && bdeg(&r) >= dq {
            let dr = bdeg(&r);
            let lr = r.last().unwrap().clone();
            r = bsub(&bscale(&r, &lq), &bshift(&bscale(&q, &lr), dr - dq));
        }
        p = q;
        q = bprim(&r);
    }
    bscale(&bprim(&p), &c)
}

fn gcd_nv2<const NV: usize>(a: &ZPoly<NV>, b: &ZPoly<NV>) -> ZPoly<NV> {
    let g = bgcd(&to_dense2(a), &to_dense2(b));
    from_dense2(&g)
}

fn to_dense2<const NV: usize>(p: &ZPoly<NV>) -> BPoly {
    let dq = p.degree_in(0) as usize;
    let dt = p.degree_in(1) as usize;
    let mut v = vec![vec![BigInt::zero(); dt + 1]; dq + 1];
    for (e, c) in p.iter() {
        v[e.0[0] as usize][e.0[1] as usize] = c.clone();
    }
    for row in v.iter_mut() {
        utrim(row);
    }
    btrim(&mut v);
    v
}

fn from_dense2<const NV: usize>(v: &BPoly) -> ZPoly<NV> {
    let mut r = ZPoly::zero();
    for (kq, row) in v.iter().enumerate() {
        for (kt, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u32; NV];
                e[0] = kq as u32;
                e[1] = kt as u32;
                r = r.add(&ZPoly::monomial(e, c.clone()));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ZPoly<1> {
        ZPoly::var(0)
    }

    #[test]
    fn univariate_gcd_of_products() {
        // (q-1)(q+2) and (q-1)(q-3) have gcd q-1
        let f = q().sub(&ZPoly::one());
        let a = f.mul(&q().add(&ZPoly::from_int(2)));
        let b = f.mul(&q().sub(&ZPoly::from_int(3)));
        assert_eq!(ZPoly::gcd(&a, &b), f);
    }

    #[test]
    fn univariate_gcd_content() {
        // gcd(6, 4q) = 2
        let a = ZPoly::<1>::from_int(6);
        let b = q().mul_int(&4.into());
        assert_eq!(ZPoly::gcd(&a, &b), ZPoly::from_int(2));
    }

    #[test]
    fn bivariate_gcd() {
        let q = ZPoly::<2>::var(0);
        let t = ZPoly::<2>::var(1);
        // (q*t - 1) is the common factor of (qt-1)(q+t) and (qt-1)(q-t)
        let f = q.mul(&t).sub(&ZPoly::one());
        let a = f.mul(&q.add(&t));
        let b = f.mul(&q.sub(&t));
        assert_eq!(ZPoly::gcd(&a, &b), f);
    }

    #[test]
    fn divexact_roundtrip() {
        let q = ZPoly::<2>::var(0);
        let t = ZPoly::<2>::var(1);
        let a = q.add(&t.mul(&t)).mul(&q.sub(&ZPoly::from_int(5)));
        let b = q.sub(&ZPoly::from_int(5));
        assert_eq!(a.divexact(&b).unwrap(), q.add(&t.mul(&t)));
        assert!(q.add(&t).divexact(&q.sub(&t)).is_none());
    }

    #[test]
    fn display_is_canonical() {
        let p = q().pow(2).mul_int(&3.into()).sub(&q()).add(&ZPoly::one());
        assert_eq!(p.to_string(), "3*q^2 - q + 1");
        assert_eq!(ZPoly::<1>::zero().to_string(), "0");
    }

    #[test]
    fn reverse_var_reverses() {
        // q^2 + 2q + 3 -> 3q^2 + 2q + 1
        let p = q()
            .pow(2)
            .add(&q().mul_int(&2.into()))
            .add(&ZPoly::from_int(3));
        let r = q()
            .pow(2)
            .mul_int(&3.into())
            .add(&q().mul_int(&2.into()))
            .add(&ZPoly::one());
        assert_eq!(p.reverse_var(0), r);
    }
}
