//! Path-model Whittaker vectors in Verma modules of finite-type Lie algebras
//! (type A by default), and exact verification of the defining relations
//! `e_i v = mu_i v` through a fixed depth.
//!
//! A truncated Whittaker vector is expanded over lowering words
//! `f_{i_1}...f_{i_k}|lambda>`; the coefficient of a word is
//! `prod_i mu_i^{beta_i}` times the product of `1/v(gamma)` over the
//! vertices `gamma` of the lattice path reading the word tail-first, with
//! `v(gamma) = (lambda+rho | gamma) - (gamma|gamma)/2`.
//!
//! Verification reduces raising words against lowering words with the
//! commutation rule `[e_i, f_j] = delta_ij h_i` alone (no PBW straightening);
//! vanishing of all pairings certifies the relation in the Verma module once
//! the pairing is shown nondegenerate on each weight space (Gram rank equal
//! to the Kostant dimension).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::report::Status;
use crate::scalar::Scalar;
use crate::Rat;

#[derive(Debug, Error, PartialEq, Clone, Serialize)]
pub enum WhittakerError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("non-generic weight: v(gamma) = 0 at gamma = {0:?}")]
    NonGenericWeight(Vec<u32>),
    #[error("verification inconclusive at this lambda: Gram rank {rank} < dimension {dim} at content {content:?}")]
    DegenerateGram {
        content: Vec<u32>,
        rank: usize,
        dim: usize,
    },
    #[error("input mismatch: {0}")]
    BadInput(String),
}

/// Cartan matrix plus symmetrizer of a finite-type root system.
///
/// Convention: `C[i][j] = 2 (a_i | a_j) / (a_i | a_i)`, symmetrizers `d_i`
/// with `d_i C[i][j]` symmetric, normalized so that short roots have
/// `(a|a) = 2` (`d_i = 1` throughout in the simply-laced case), and
/// `(rho | a_i) = d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanData {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<Rat>,
}

impl CartanData {
    /// Type `A_r` Cartan data.
    pub fn type_a(rank: usize) -> Self {
        assert!(rank >= 1);
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        CartanData {
            rank,
            cartan,
            sym: vec![Rat::one(); rank],
        }
    }

    /// Any finite-type symmetrizable Cartan matrix.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, WhittakerError> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|r| r.len() != rank) {
            return Err(WhittakerError::InvalidCartan(
                "matrix must be square".into(),
            ));
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(WhittakerError::InvalidCartan(format!("C[{i}][{i}] != 2")));
            }
            for j in 0..rank {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(WhittakerError::InvalidCartan(
                            "off-diagonal entries must be <= 0".into(),
                        ));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(WhittakerError::InvalidCartan(
                            "zero pattern must be symmetric".into(),
                        ));
                    }
                }
            }
        }
        // symmetrizer by propagation along the Dynkin graph
        let mut sym: Vec<Option<Rat>> = vec![None; rank];
        for start in 0..rank {
            if sym[start].is_some() {
                continue;
            }
            sym[start] = Some(Rat::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let di = sym[i].clone().unwrap();
                for j in 0..rank {
                    if i != j && cartan[i][j] != 0 {
                        let dj = &di * Rat::new(cartan[i][j].into(), cartan[j][i].into());
                        match &sym[j] {
                            None => {
                                sym[j] = Some(dj);
                                stack.push(j);
                            }
                            Some(v) => {
                                if *v != dj {
                                    return Err(WhittakerError::InvalidCartan(
                                        "matrix is not symmetrizable".into(),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut sym: Vec<Rat> = sym.into_iter().map(Option::unwrap).collect();
        let min = sym.iter().cloned().min().unwrap();
        for d in sym.iter_mut() {
            *d = &*d / &min;
        }
        let cd = CartanData { rank, cartan, sym };
        if !cd.is_positive_definite() {
            return Err(WhittakerError::InvalidCartan(
                "symmetrized matrix is not positive definite (not finite type)".into(),
            ));
        }
        Ok(cd)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Rat] {
        &self.sym
    }

    /// `(a_i | a_j) = d_i C[i][j]`.
    pub fn simple_ip(&self, i: usize, j: usize) -> Rat {
        &self.sym[i] * Rat::from_int(self.cartan[i][j])
    }

    fn is_positive_definite(&self) -> bool {
        // leading principal minors of the symmetrized matrix, exact
        for k in 1..=self.rank {
            let mut m: Vec<Vec<Rat>> = (0..k)
                .map(|i| (0..k).map(|j| self.simple_ip(i, j)).collect())
                .collect();
            let mut det = Rat::one();
            for col in 0..k {
                let pivot = (col..k).find(|&r| !m[r][col].is_zero());
                let Some(p) = pivot else { return false };
                if p != col {
                    m.swap(p, col);
                    det = -det;
                }
                det = det * m[col][col].clone();
                let inv = m[col][col].recip();
                for r in (col + 1)..k {
                    let factor = &m[r][col] * &inv;
                    for c in col..k {
                        let sub = &factor * &m[col][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            if det <= Rat::zero() {
                return false;
            }
        }
        true
    }

    /// Positive roots as content vectors over the simple roots, generated by
    /// the root-string closure (finite type, so all roots are real).
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = Vec::new();
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            roots.insert(e.clone());
            frontier.push(e);
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..r {
                    // p = length of the descending alpha_i-string from beta
                    let mut p = 0i64;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if cur[i] < 0 || !roots.contains(&cur) {
                            break;
                        }
                        p += 1;
                    }
                    let pairing: i64 = (0..r).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if roots.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        roots.into_iter().collect()
    }

    /// Dimension of the `beta` weight space of `U(n_-)`: the number of
    /// multisets of positive roots summing to `beta`.
    pub fn kostant_dim(&self, beta: &[u32]) -> u64 {
        let roots = self.positive_roots();
        fn rec(target: &[i64], roots: &[Vec<i64>], idx: usize) -> u64 {
            if target.iter().all(|&t| t == 0) {
                return 1;
            }
            if idx == roots.len() {
                return 0;
            }
            let mut total = rec(target, roots, idx + 1);
            let mut t: Vec<i64> = target.to_vec();
            loop {
                for (a, b) in t.iter_mut().zip(&roots[idx]) {
                    *a -= b;
                }
                if t.iter().any(|&x| x < 0) {
                    break;
                }
                total += rec(&t, roots, idx + 1);
            }
            total
        }
        let target: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
        rec(&target, &roots, 0)
    }
}

/// Highest weight data: `lambda_i = (lambda | a_i^v)` and the Whittaker
/// parameters `mu_i`, one per node.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub lambda: Vec<Rat>,
    pub mu: Vec<Rat>,
}

/// Local vertex value `v(gamma) = (lambda + rho | gamma) - (gamma|gamma)/2`.
/// A zero value means `lambda` is non-generic at this cone point and must be
/// rejected by the caller.
pub fn vertex_value(cd: &CartanData, lambda: &[Rat], gamma: &[u32]) -> Result<Rat, WhittakerError> {
    assert_eq!(lambda.len(), cd.rank());
    assert_eq!(gamma.len(), cd.rank());
    let mut v = Rat::zero();
    let half = Rat::new(1.into(), 2.into());
    for i in 0..cd.rank() {
        if gamma[i] == 0 {
            continue;
        }
        let ci = Rat::from_int(gamma[i] as i64);
        // (lambda + rho | a_i) = d_i (lambda_i + 1)
        v = v + &ci * &cd.sym[i] * (&lambda[i] + Rat::one());
        for j in 0..cd.rank() {
            if gamma[j] == 0 {
                continue;
            }
            let cj = Rat::from_int(gamma[j] as i64);
            v = v - &half * &ci * &cj * cd.simple_ip(i, j);
        }
    }
    if v.is_zero() {
        return Err(WhittakerError::NonGenericWeight(gamma.to_vec()));
    }
    Ok(v)
}

/// A word in the lowering generators, `f_{w[0]} f_{w[1]} ... |lambda>`,
/// with 0-based node indices.
pub type FWord = Vec<usize>;

/// Lattice path on the positive cone associated with an f-word: steps are
/// taken tail-first, so the path vertices are the suffix contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePath {
    pub word: FWord,
    rank: usize,
}

impl ConePath {
    pub fn new(word: FWord, rank: usize) -> Self {
        assert!(word.iter().all(|&i| i < rank));
        ConePath { word, rank }
    }

    /// Endpoint content: multiplicity of each letter.
    pub fn endpoint(&self) -> Vec<u32> {
        let mut beta = vec![0u32; self.rank];
        for &i in &self.word {
            beta[i] += 1;
        }
        beta
    }

    /// The nonzero vertices visited, in travel order (suffix sums).
    pub fn vertices(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.word.len());
        let mut acc = vec![0u32; self.rank];
        for &i in self.word.iter().rev() {
            acc[i] += 1;
            out.push(acc.clone());
        }
        out
    }
}

/// Path weight `w(p) = prod_gamma 1/v(gamma)` over the nonzero vertices.
pub fn path_weight(
    cd: &CartanData,
    lambda: &[Rat],
    path: &ConePath,
) -> Result<Rat, WhittakerError> {
    let mut w = Rat::one();
    for gamma in path.vertices() {
        w = w / vertex_value(cd, lambda, &gamma)?;
    }
    Ok(w)
}

/// A finitely supported combination of f-words acting on the highest-weight
/// vector.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VermaElement {
    pub terms: BTreeMap<FWord, Rat>,
}

impl VermaElement {
    pub fn zero() -> Self {
        VermaElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn highest_weight() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Rat::one());
        VermaElement { terms }
    }

    pub fn add_term(&mut self, w: FWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VermaElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn coeff(&self, w: &[usize]) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum word length present.
    pub fn depth(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// Truncated Whittaker vector: sum over all f-words of length at most
/// `depth` of `prod_i mu_i^{beta_i} w(path(word))` times the word.
pub fn whittaker_expansion(
    cd: &CartanData,
    hw: &HighestWeight,
    depth: usize,
) -> Result<VermaElement, WhittakerError> {
    check_weight(cd, hw, depth)?;
    let r = cd.rank();
    let mut out = VermaElement::highest_weight();
    let mut words: Vec<FWord> = vec![Vec::new()];
    for _ in 1..=depth {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..r {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        for w in &next {
            let path = ConePath::new(w.clone(), r);
            let beta = path.endpoint();
            let mut coeff = path_weight(cd, &hw.lambda, &path)?;
            for i in 0..r {
                coeff = coeff * hw.mu[i].pow_i64(beta[i] as i64);
            }
            out.add_term(w.clone(), coeff);
        }
        words = next;
    }
    Ok(out)
}

fn check_weight(cd: &CartanData, hw: &HighestWeight, depth: usize) -> Result<(), WhittakerError> {
    if hw.lambda.len() != cd.rank() || hw.mu.len() != cd.rank() {
        return Err(WhittakerError::BadInput(
            "lambda and mu must have one entry per node".into(),
        ));
    }
    if hw.mu.iter().any(|m| m.is_zero()) {
        return Err(WhittakerError::BadInput(
            "mu entries must be nonzero".into(),
        ));
    }
    // genericity: v(gamma) != 0 on every cone point reachable at this depth
    for beta in contents_up_to(cd.rank(), depth) {
        vertex_value(cd, &hw.lambda, &beta)?;
    }
    Ok(())
}

/// All nonzero content vectors with total size at most `max`.
fn contents_up_to(rank: usize, max: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(rank: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == rank {
            if cur.iter().any(|&c| c > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(rank, i + 1, left - c, cur, out);
            cur.pop();
        }
    }
    rec(rank, 0, max as u32, &mut Vec::new(), &mut out);
    out
}

/// Action of a raising generator on a single f-word:
/// `e_i f_{j_1}...f_{j_k}|l> = sum_{m: j_m = i}
///    < lambda - sum_{l>m} a_{j_l}, a_i^v > f_{j_1}..omit m..f_{j_k}|l>`,
/// from `[e_i, f_j] = delta_ij h_i` and `e_i |lambda> = 0`.
pub fn e_action(cd: &CartanData, lambda: &[Rat], i: usize, word: &[usize]) -> VermaElement {
    let mut out = VermaElement::zero();
    for m in 0..word.len() {
        if word[m] != i {
            continue;
        }
        let mut h = lambda[i].clone();
        for &jl in &word[m + 1..] {
            h = h - Rat::from_int(cd.cartan[i][jl]);
        }
        let mut w2: FWord = word.to_vec();
        w2.remove(m);
        out.add_term(w2, h);
    }
    out
}

/// Linear extension of [`e_action`] to combinations.
pub fn e_on_element(cd: &CartanData, lambda: &[Rat], i: usize, x: &VermaElement) -> VermaElement {
    let mut out = VermaElement::zero();
    for (w, c) in &x.terms {
        for (w2, c2) in e_action(cd, lambda, i, w).terms {
            out.add_term(w2, &c2 * c);
        }
    }
    out
}

/// Pairing `<lambda| e_{u_1} ... e_{u_s} x |lambda>`: reduce with the
/// raising word (rightmost letter first) and read off the empty-word
/// coefficient; this is the contragredient (Shapovalov-style) pairing.
pub fn pairing(cd: &CartanData, lambda: &[Rat], e_word: &[usize], x: &VermaElement) -> Rat {
    let mut y = x.clone();
    for &i in e_word.iter().rev() {
        y = e_on_element(cd, lambda, i, &y);
        if y.is_zero() {
            return Rat::zero();
        }
    }
    y.coeff(&[])
}

/// All distinct words with the given letter content.
pub fn words_of_content(beta: &[u32]) -> Vec<FWord> {
    let mut letters: Vec<usize> = Vec::new();
    for (i, &c) in beta.iter().enumerate() {
        for _ in 0..c {
            letters.push(i);
        }
    }
    let mut out = Vec::new();
    permutations_distinct(&mut letters, 0, &mut out);
    out.sort();
    out.dedup();
    out
}

fn permutations_distinct(v: &mut Vec<usize>, k: usize, out: &mut Vec<FWord>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    let mut used = BTreeSet::new();
    for i in k..v.len() {
        if used.insert(v[i]) {
            v.swap(k, i);
            permutations_distinct(v, k + 1, out);
            v.swap(k, i);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightSpaceCertificate {
    pub content: Vec<u32>,
    pub words: usize,
    pub kostant_dim: u64,
    pub gram_rank: usize,
    pub nondegenerate: bool,
}

/// Pairing residual counts for one weight-space content (all zero on pass).
#[derive(Clone, Debug, Serialize)]
pub struct ContentResiduals {
    pub content: Vec<u32>,
    pub checked: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhittakerReport {
    pub rank: usize,
    pub depth: usize,
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub pairings_checked: usize,
    pub nonzero_pairings: Vec<String>,
    pub residuals_by_content: Vec<ContentResiduals>,
    pub certificates: Vec<WeightSpaceCertificate>,
    pub status: Status,
}

/// Rank of a rational matrix by Gaussian elimination.
fn rat_rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..cols {
                    let sub = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Verify `e_i v = mu_i v` through depth `K`: for every node `i` and every
/// raising word `u` of length `<= K-1`, the pairing
/// `<lambda| u (e_i v^(K) - mu_i v^(K-1)) |lambda>` must vanish exactly;
/// nondegeneracy of the pairing on each weight space at depth `<= K-1`
/// (Gram rank = Kostant dimension) upgrades this to equality in the Verma
/// module.
pub fn whittaker_defect(
    cd: &CartanData,
    hw: &HighestWeight,
    depth: usize,
) -> Result<WhittakerReport, WhittakerError> {
    assert!(depth >= 1);
    let v_k = whittaker_expansion(cd, hw, depth)?;
    let v_km1 = whittaker_expansion(cd, hw, depth - 1)?;
    whittaker_defect_of(cd, hw, depth, &v_k, &v_km1)
}

/// Same check against externally supplied truncations (used for the
/// perturbation control).
pub fn whittaker_defect_of(
    cd: &CartanData,
    hw: &HighestWeight,
    depth: usize,
    v_k: &VermaElement,
    v_km1: &VermaElement,
) -> Result<WhittakerReport, WhittakerError> {
    let r = cd.rank();
    check_weight(cd, hw, depth)?;
    // Gram certificates per weight space at depths <= K-1
    let mut certificates = Vec::new();
    for beta in contents_up_to(r, depth - 1) {
        let words = words_of_content(&beta);
        let dim = cd.kostant_dim(&beta);
        let gram: Vec<Vec<Rat>> = words
            .iter()
            .map(|u| {
                words
                    .iter()
                    .map(|w| {
                        let mut x = VermaElement::zero();
                        x.add_term(w.clone(), Rat::one());
                        pairing(cd, &hw.lambda, u, &x)
                    })
                    .collect()
            })
            .collect();
        let rank = rat_rank(gram);
        let nondegenerate = rank as u64 == dim;
        certificates.push(WeightSpaceCertificate {
            content: beta.clone(),
            words: words.len(),
            kostant_dim: dim,
            gram_rank: rank,
            nondegenerate,
        });
        if !nondegenerate {
            return Err(WhittakerError::DegenerateGram {
                content: beta,
                rank,
                dim: dim as usize,
            });
        }
    }

    let mut pairings_checked = 0usize;
    let mut nonzero = Vec::new();
    let mut residuals_by_content: BTreeMap<Vec<u32>, (usize, usize)> = BTreeMap::new();
    for i in 0..r {
        let defect = e_on_element(cd, &hw.lambda, i, v_k).sub(&v_km1.scale(&hw.mu[i]));
        // the empty raising word pairs out the depth-0 component
        pairings_checked += 1;
        let p0 = defect.coeff(&[]);
        let slot0 = residuals_by_content.entry(vec![0; r]).or_insert((0, 0));
        slot0.0 += 1;
        if !p0.is_zero() {
            slot0.1 += 1;
            nonzero.push(format!("i={} u=[] pairing={}", i + 1, p0));
        }
        for beta in contents_up_to(r, depth - 1) {
            for u in words_of_content(&beta) {
                let p = pairing(cd, &hw.lambda, &u, &defect);
                pairings_checked += 1;
                let slot = residuals_by_content.entry(beta.clone()).or_insert((0, 0));
                slot.0 += 1;
                if !p.is_zero() {
                    slot.1 += 1;
                    nonzero.push(format!(
                        "i={} u={:?} pairing={}",
                        i + 1,
                        u.iter().map(|x| x + 1).collect::<Vec<_>>(),
                        p
                    ));
                }
            }
        }
    }

    let status = Status::from_bool(nonzero.is_empty());
    Ok(WhittakerReport {
        rank: r,
        depth,
        lambda: hw.lambda.iter().map(|x| x.to_string()).collect(),
        mu: hw.mu.iter().map(|x| x.to_string()).collect(),
        pairings_checked,
        nonzero_pairings: nonzero,
        residuals_by_content: residuals_by_content
            .into_iter()
            .map(|(content, (checked, nonzero))| ContentResiduals {
                content,
                checked,
                nonzero,
            })
            .collect(),
        certificates,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn a1_weight(l: Rat, mu: Rat) -> HighestWeight {
        HighestWeight {
            lambda: vec![l],
            mu: vec![mu],
        }
    }

    #[test]
    fn a_type_positive_roots() {
        assert_eq!(CartanData::type_a(1).positive_roots(), vec![vec![1]]);
        let a2 = CartanData::type_a(2).positive_roots();
        assert_eq!(a2, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(CartanData::type_a(3).positive_roots().len(), 6);
    }

    #[test]
    fn b2_positive_roots_via_general_constructor() {
        // C = [[2,-1],[-2,2]]: four positive roots, symmetrizer (2,1)
        let b2 = CartanData::from_cartan(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(b2.symmetrizer(), &[rat(2, 1), rat(1, 1)]);
        let roots = b2.positive_roots();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn affine_cartan_rejected() {
        // affine A_1^(1): determinant zero
        let res = CartanData::from_cartan(vec![vec![2, -2], vec![-2, 2]]);
        assert!(matches!(res, Err(WhittakerError::InvalidCartan(_))));
    }

    #[test]
    fn kostant_dimensions() {
        let a2 = CartanData::type_a(2);
        assert_eq!(a2.kostant_dim(&[1, 0]), 1);
        assert_eq!(a2.kostant_dim(&[1, 1]), 2); // f1 f2 and f_{12}
        assert_eq!(a2.kostant_dim(&[2, 1]), 2); // f1^2 f2, f1 f_{12}
        assert_eq!(a2.kostant_dim(&[2, 2]), 3);
        let a1 = CartanData::type_a(1);
        assert_eq!(a1.kostant_dim(&[4]), 1);
    }

    #[test]
    fn vertex_values_a1() {
        let cd = CartanData::type_a(1);
        let l = vec![rat(7, 1)];
        // v(j a) = j (l + 1 - j)
        for j in 1..=5u32 {
            let v = vertex_value(&cd, &l, &[j]).unwrap();
            assert_eq!(v, rat(j as i64 * (7 + 1 - j as i64), 1));
        }
        // lambda = 0 is non-generic at depth 1: v(a) = 0
        assert_eq!(
            vertex_value(&cd, &[Rat::zero()], &[1]).unwrap_err(),
            WhittakerError::NonGenericWeight(vec![1])
        );
    }

    #[test]
    fn path_weights_a1() {
        let cd = CartanData::type_a(1);
        let l = vec![rat(7, 1)];
        // empty path has weight 1
        assert_eq!(
            path_weight(&cd, &l, &ConePath::new(vec![], 1)).unwrap(),
            Rat::one()
        );
        // single letter: 1/l
        assert_eq!(
            path_weight(&cd, &l, &ConePath::new(vec![0], 1)).unwrap(),
            rat(1, 7)
        );
        // two letters: 1/(v(a) v(2a)) = 1/(7 * 2*6)
        assert_eq!(
            path_weight(&cd, &l, &ConePath::new(vec![0, 0], 1)).unwrap(),
            rat(1, 84)
        );
    }

    #[test]
    fn e_action_a1_closed_form() {
        let cd = CartanData::type_a(1);
        let l = vec![rat(7, 1)];
        // e f^k |l> = k(l+1-k) f^{k-1} |l>
        for k in 1..=5usize {
            let out = e_action(&cd, &l, 0, &vec![0; k]);
            let expect = rat(k as i64 * (7 + 1 - k as i64), 1);
            assert_eq!(out.coeff(&vec![0; k - 1]), expect);
            assert_eq!(out.terms.len(), 1);
        }
        // e |l> = 0
        assert!(e_action(&cd, &l, 0, &[]).is_zero());
    }

    #[test]
    fn e_action_a2_wrong_letter_kills() {
        let cd = CartanData::type_a(2);
        let l = vec![rat(5, 7), rat(3, 2)];
        assert!(e_action(&cd, &l, 0, &[1]).is_zero());
    }

    #[test]
    fn expansion_a1_closed_form() {
        let cd = CartanData::type_a(1);
        let hw = a1_weight(rat(7, 1), rat(2, 3));
        let v = whittaker_expansion(&cd, &hw, 3).unwrap();
        assert_eq!(v.coeff(&[]), Rat::one());
        // c_k = mu^k / prod_{j<=k} j(l+1-j)
        let mut denom = Rat::one();
        for k in 1..=3usize {
            denom = denom * rat(k as i64 * (7 + 1 - k as i64), 1);
            let expect = rat(2, 3).pow_i64(k as i64) / denom.clone();
            assert_eq!(v.coeff(&vec![0; k]), expect, "k={k}");
        }
    }

    #[test]
    fn a2_order_matters_in_coefficients() {
        let cd = CartanData::type_a(2);
        let hw = HighestWeight {
            lambda: vec![rat(5, 7), rat(3, 2)],
            mu: vec![Rat::one(), Rat::one()],
        };
        let v = whittaker_expansion(&cd, &hw, 2).unwrap();
        // path vertex sets differ: f1 f2 sees (a2, a1+a2), f2 f1 sees (a1, a1+a2)
        assert_ne!(v.coeff(&[0, 1]), v.coeff(&[1, 0]));
    }

    #[test]
    fn defect_vanishes_a1() {
        let cd = CartanData::type_a(1);
        let hw = a1_weight(rat(5, 7), Rat::one());
        let rep = whittaker_defect(&cd, &hw, 5).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.certificates.iter().all(|c| c.nondegenerate));
    }

    #[test]
    fn defect_vanishes_a2() {
        let cd = CartanData::type_a(2);
        let hw = HighestWeight {
            lambda: vec![rat(5, 7), rat(3, 2)],
            mu: vec![Rat::one(), Rat::one()],
        };
        let rep = whittaker_defect(&cd, &hw, 3).unwrap();
        assert_eq!(rep.status, Status::Pass);
    }

    #[test]
    fn perturbed_weight_fails() {
        let cd = CartanData::type_a(2);
        let hw = HighestWeight {
            lambda: vec![rat(5, 7), rat(3, 2)],
            mu: vec![Rat::one(), Rat::one()],
        };
        let depth = 3;
        let mut v_k = whittaker_expansion(&cd, &hw, depth).unwrap();
        let v_km1 = whittaker_expansion(&cd, &hw, depth - 1).unwrap();
        // double one specific path coefficient
        let w = vec![0, 1];
        let c = v_k.coeff(&w);
        v_k.add_term(w, c);
        let rep = whittaker_defect_of(&cd, &hw, depth, &v_k, &v_km1).unwrap();
        assert_eq!(rep.status, Status::Fail);
        assert!(!rep.nonzero_pairings.is_empty());
    }

    #[test]
    fn zero_mu_rejected() {
        let cd = CartanData::type_a(1);
        let hw = a1_weight(rat(5, 7), Rat::zero());
        assert!(matches!(
            whittaker_expansion(&cd, &hw, 2),
            Err(WhittakerError::BadInput(_))
        ));
    }

    #[test]
    fn word_path_endpoint_consistency() {
        // for every word the path endpoint equals the letter multiset
        let words = words_of_content(&[2, 1]);
        assert_eq!(words.len(), 3);
        for w in words {
            let p = ConePath::new(w.clone(), 2);
            assert_eq!(p.endpoint(), vec![2, 1]);
            assert_eq!(p.vertices().len(), w.len());
        }
    }
}
