//! Alternating sign matrices: validation, exhaustive enumeration by
//! monotone-triangle search, the statistics entering the lambda-determinant
//! expansion, and bijections to six-vertex states and osculating paths.

pub mod lambda_det;
pub mod osculating;
pub mod sixvertex;

pub use lambda_det::{lambda_det_identity, LambdaDetReport};
pub use osculating::OsculatingPaths;
pub use sixvertex::SixVertexConfig;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

/// Largest size accepted by the exhaustive enumerator.
pub const MAX_ENUM_SIZE: usize = 7;

#[derive(Debug, Error, PartialEq, Eq, Clone, Serialize)]
pub enum AsmError {
    #[error("size too large for exhaustive enumeration (n = {0}, max {MAX_ENUM_SIZE})")]
    SizeTooLarge(usize),
    #[error("invalid ASM: {0}")]
    InvalidAsm(String),
    #[error("not a DWBC configuration: {0}")]
    NotDwbc(String),
    #[error("invalid path family: {0}")]
    InvalidPaths(String),
}

/// An alternating sign matrix: entries in {-1,0,1}, every row and column
/// sums to 1, and the nonzero entries alternate in sign along each row and
/// column (equivalently, all row/column prefix sums lie in {0,1}).
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<Vec<i8>>,
}

impl Asm {
    pub fn try_new(entries: Vec<Vec<i8>>) -> Result<Self, AsmError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(AsmError::InvalidAsm(
                "matrix must be square and nonempty".into(),
            ));
        }
        for (i, row) in entries.iter().enumerate() {
            let mut prefix = 0i32;
            for &e in row {
                if !(-1..=1).contains(&(e as i32)) {
                    return Err(AsmError::InvalidAsm(format!(
                        "entry out of range in row {i}"
                    )));
                }
                prefix += e as i32;
                if !(0..=1).contains(&prefix) {
                    return Err(AsmError::InvalidAsm(format!("row {i} prefix sum {prefix}")));
                }
            }
            if prefix != 1 {
                return Err(AsmError::InvalidAsm(format!("row {i} sums to {prefix}")));
            }
        }
        for j in 0..n {
            let mut prefix = 0i32;
            for row in &entries {
                prefix += row[j] as i32;
                if !(0..=1).contains(&prefix) {
                    return Err(AsmError::InvalidAsm(format!(
                        "column {j} prefix sum {prefix}"
                    )));
                }
            }
            if prefix != 1 {
                return Err(AsmError::InvalidAsm(format!("column {j} sums to {prefix}")));
            }
        }
        Ok(Asm { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| i8::from(i == j)).collect())
            .collect();
        Asm { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.n)
            .map(|j| (0..self.n).map(|i| self.entries[i][j]).collect())
            .collect();
        Asm { n: self.n, entries }
    }

    pub fn is_permutation(&self) -> bool {
        self.entries.iter().flatten().all(|&e| e >= 0)
    }

    /// Row partial sums `H[i][j] = sum_{j' <= j} A[i][j']` for `j = 0..=n`
    /// (index 0 is the empty prefix); every value is 0 or 1.
    pub(crate) fn row_prefix(&self) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|row| {
                let mut acc = 0i8;
                let mut v = vec![0u8; self.n + 1];
                for (j, &e) in row.iter().enumerate() {
                    acc += e;
                    v[j + 1] = acc as u8;
                }
                v
            })
            .collect()
    }

    /// Column partial sums `V[i][j] = sum_{i' <= i} A[i'][j]` for `i = 0..=n`.
    pub(crate) fn col_prefix(&self) -> Vec<Vec<u8>> {
        let mut v = vec![vec![0u8; self.n]; self.n + 1];
        for i in 0..self.n {
            for j in 0..self.n {
                v[i + 1][j] = (v[i][j] as i8 + self.entries[i][j]) as u8;
            }
        }
        v
    }
}

impl std::fmt::Display for Asm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.entries {
            for &e in row {
                write!(f, "{:>2} ", e)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Statistics of an ASM used by the lambda-determinant expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsmStats {
    /// inversion number `I(A) = sum_{i>k, j<l} A_{ij} A_{kl}`
    pub inversions: i64,
    /// number of -1 entries
    pub neg_ones: usize,
    /// `m_i(A) = (Av)_i` with `v = (n-1, n-2, ..., 1, 0)^t`
    pub m: Vec<i64>,
}

/// Compute `I(A)`, `N(A)` and `m(A)` by direct summation.
pub fn asm_stats(a: &Asm) -> AsmStats {
    let n = a.size();
    let mut inversions = 0i64;
    for i in 0..n {
        for j in 0..n {
            if a.entry(i, j) == 0 {
                continue;
            }
            for k in 0..i {
                for l in (j + 1)..n {
                    inversions += a.entry(i, j) as i64 * a.entry(k, l) as i64;
                }
            }
        }
    }
    let neg_ones = a.rows().iter().flatten().filter(|&&e| e == -1).count();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.entry(i, j) as i64 * (n - 1 - j) as i64)
                .sum()
        })
        .collect();
    AsmStats {
        inversions,
        neg_ones,
        m,
    }
}

/// Visit every `n x n` ASM exactly once, in lexicographic order of the
/// monotone-triangle encoding (the chain of 1-position sets of the row
/// partial sums).
pub fn visit_asms(n: usize, mut visit: impl FnMut(&Asm)) -> Result<(), AsmError> {
    if n == 0 || n > MAX_ENUM_SIZE {
        return Err(AsmError::SizeTooLarge(n));
    }
    // rows of the triangle: prev = indicator of S_{k-1}, choose S_k with k
    // ones such that every prefix of S_k - S_{k-1} lies in {0,1}
    fn rec(n: usize, k: usize, prev: &[u8], rows: &mut Vec<Vec<u8>>, visit: &mut impl FnMut(&Asm)) {
        if k > n {
            let mut entries = vec![vec![0i8; n]; n];
            for (i, row) in entries.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let above = if i == 0 { 0 } else { rows[i - 1][j] as i8 };
                    *e = rows[i][j] as i8 - above;
                }
            }
            visit(&Asm { n, entries });
            return;
        }
        // enumerate indicator vectors with k ones in lex order of their
        // position lists: positions chosen left to right
        let mut cur = vec![0u8; n];
        fn choose(
            n: usize,
            k: usize,
            start: usize,
            placed: usize,
            prev: &[u8],
            cur: &mut Vec<u8>,
            out: &mut Vec<Vec<u8>>,
        ) {
            if placed == k {
                out.push(cur.clone());
                return;
            }
            for p in start..n {
                if n - p < k - placed {
                    break;
                }
                cur[p] = 1;
                // prefix feasibility: diff prefix in {0,1} and enough room
                if prefix_feasible(cur, prev, p, placed + 1, k) {
                    choose(n, k, p + 1, placed + 1, prev, cur, out);
                }
                cur[p] = 0;
            }
        }
        fn prefix_feasible(
            cur: &[u8],
            prev: &[u8],
            upto: usize,
            _placed: usize,
            _k: usize,
        ) -> bool {
            let mut dc = 0i32;
            let mut dp = 0i32;
            for j in 0..=upto {
                dc += cur[j] as i32;
                dp += prev[j] as i32;
                let d = dc - dp;
                if !(0..=1).contains(&d) {
                    return false;
                }
            }
            true
        }
        let mut candidates = Vec::new();
        choose(n, k, 0, 0, prev, &mut cur, &mut candidates);
        for cand in candidates {
            // full prefix check including trailing positions
            let mut ok = true;
            let mut dc = 0i32;
            let mut dp = 0i32;
            for j in 0..n {
                dc += cand[j] as i32;
                dp += prev[j] as i32;
                if !(0..=1).contains(&(dc - dp)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                rows.push(cand.clone());
                rec(n, k + 1, &cand, rows, visit);
                rows.pop();
            }
        }
    }
    let prev = vec![0u8; n];
    rec(n, 1, &prev, &mut Vec::new(), &mut visit);
    Ok(())
}

/// Collect the full enumeration (sizes up to [`MAX_ENUM_SIZE`]).
pub fn enumerate_asms(n: usize) -> Result<Vec<Asm>, AsmError> {
    let mut out = Vec::new();
    visit_asms(n, |a| out.push(a.clone()))?;
    Ok(out)
}

/// The ASM counting product formula `prod_{k=0}^{n-1} (3k+1)!/(n+k)!`,
/// evaluated independently of the enumerator.
pub fn asm_count_formula(n: usize) -> BigUint {
    let fact = |m: usize| -> BigUint {
        let mut f = BigUint::one();
        for i in 2..=m {
            f *= BigUint::from(i);
        }
        f
    };
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..n {
        num *= fact(3 * k + 1);
        den *= fact(n + k);
    }
    num / den
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub enumerated: u64,
    pub formula: String,
    pub matches: bool,
}

/// Enumerate sizes `1..=n_max` and compare with the product formula.
pub fn count_report(n_max: usize) -> Result<Vec<CountRow>, AsmError> {
    (1..=n_max)
        .map(|n| {
            let mut count = 0u64;
            visit_asms(n, |_| count += 1)?;
            let formula = asm_count_formula(n);
            Ok(CountRow {
                n,
                enumerated: count,
                matches: BigUint::from(count) == formula,
                formula: formula.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn center_minus_one() -> Asm {
        Asm::try_new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn validation_accepts_and_rejects() {
        assert!(Asm::try_new(vec![vec![1]]).is_ok());
        center_minus_one();
        // row sums fail
        assert!(Asm::try_new(vec![vec![1, 1], vec![0, 0]]).is_err());
        // alternation fails (prefix -1)
        assert!(Asm::try_new(vec![vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).is_err());
        // non-square
        assert!(Asm::try_new(vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let sizes: Vec<usize> = (1..=6).map(|n| enumerate_asms(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 7, 42, 429, 7436]);
        assert!(matches!(enumerate_asms(8), Err(AsmError::SizeTooLarge(8))));
        assert!(matches!(enumerate_asms(0), Err(AsmError::SizeTooLarge(0))));
    }

    #[test]
    fn n1_enumeration_is_trivial() {
        let all = enumerate_asms(1).unwrap();
        assert_eq!(all, vec![Asm::try_new(vec![vec![1]]).unwrap()]);
    }

    #[test]
    fn exactly_one_3x3_asm_has_a_minus_one() {
        let all = enumerate_asms(3).unwrap();
        assert_eq!(all.len(), 7);
        let with_neg: Vec<&Asm> = all
            .iter()
            .filter(|a| a.rows().iter().flatten().any(|&e| e == -1))
            .collect();
        assert_eq!(with_neg.len(), 1);
        assert_eq!(*with_neg[0], center_minus_one());
    }

    #[test]
    fn product_formula_values() {
        let vals: Vec<String> = (1..=7).map(|n| asm_count_formula(n).to_string()).collect();
        assert_eq!(vals, vec!["1", "2", "7", "42", "429", "7436", "218348"]);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        for n in 1..=5 {
            let all = enumerate_asms(n).unwrap();
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len(), "duplicates at n={n}");
            for a in &all {
                Asm::try_new(a.rows().to_vec()).expect("enumerated ASM must validate");
            }
        }
    }

    #[test]
    fn stats_of_identity() {
        for n in 1..=5 {
            let s = asm_stats(&Asm::identity(n));
            assert_eq!(s.inversions, 0);
            assert_eq!(s.neg_ones, 0);
            assert_eq!(s.m, (0..n).rev().map(|k| k as i64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn stats_of_antidiagonal() {
        let a = Asm::try_new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = asm_stats(&a);
        assert_eq!(s.inversions, 1);
        assert_eq!(s.neg_ones, 0);
        assert_eq!(s.m, vec![0, 1]);
    }

    #[test]
    fn stats_of_center_minus_one() {
        let s = asm_stats(&center_minus_one());
        assert_eq!(s.inversions, 2);
        assert_eq!(s.neg_ones, 1);
        // m = Av with v = (2,1,0): rows give 1, 2-1, 1
        assert_eq!(s.m, vec![1, 1, 1]);
    }

    #[test]
    fn stats_invariants_small_sizes() {
        for n in 1..=5usize {
            for a in enumerate_asms(n).unwrap() {
                let s = asm_stats(&a);
                assert!(s.inversions >= 0);
                // the lambda-determinant exponent I(A) - N(A) is nonnegative
                assert!(s.inversions >= s.neg_ones as i64, "I - N < 0 at\n{a}");
                // sum of m_i is n(n-1)/2 (row sums 1, v fixed)
                let total: i64 = s.m.iter().sum();
                assert_eq!(total, (n * (n - 1) / 2) as i64);
                // m is a permutation of 0..n-1 iff A is a permutation matrix
                let mut sorted = s.m.clone();
                sorted.sort_unstable();
                let is_perm_vector = sorted == (0..n as i64).collect::<Vec<_>>();
                assert_eq!(is_perm_vector, a.is_permutation(), "at\n{a}");
            }
        }
    }

    #[test]
    fn transpose_and_dihedral_symmetries() {
        for n in 1..=4usize {
            for a in enumerate_asms(n).unwrap() {
                let s = asm_stats(&a);
                let st = asm_stats(&a.transpose());
                assert_eq!(st.neg_ones, s.neg_ones);
                assert_eq!(st.inversions, s.inversions);
                // column reversal sends m_i to (n-1) - m_i
                let flipped = Asm::try_new(
                    a.rows()
                        .iter()
                        .map(|r| r.iter().rev().copied().collect())
                        .collect(),
                )
                .unwrap();
                let sf = asm_stats(&flipped);
                let expect: Vec<i64> = s.m.iter().map(|&mi| (n as i64 - 1) - mi).collect();
                assert_eq!(sf.m, expect);
                // 180-degree rotation reverses that list
                let rotated = Asm::try_new(
                    a.rows()
                        .iter()
                        .rev()
                        .map(|r| r.iter().rev().copied().collect())
                        .collect(),
                )
                .unwrap();
                let sr = asm_stats(&rotated);
                let mut expect_rot = expect;
                expect_rot.reverse();
                assert_eq!(sr.m, expect_rot);
            }
        }
    }
}
