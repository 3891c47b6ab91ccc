//! Six-vertex states with domain wall boundary conditions, and the standard
//! bijection with ASMs.
//!
//! Convention (locked by the round-trip tests): the horizontal edge in slot
//! `j` of row `i` (between vertices `(i,j-1)` and `(i,j)`, slots `0..=n`)
//! points east iff the row prefix sum `H[i][j]` is 0; the vertical edge in
//! slot `i` of column `j` points north iff the column prefix sum `V[i][j]`
//! is 0. DWBC then reads: west/east boundary arrows point into the grid,
//! north/south boundary arrows point out. The ice rule at a vertex is
//! equivalent to the row and column prefix sums changing by the same amount,
//! which is the ASM entry.

use super::{Asm, AsmError};

/// Edge orientations of an `n x n` six-vertex state (including boundary
/// stubs). `h[i][j]` = horizontal edge slot `j` of row `i` points east;
/// `v[i][j]` = vertical edge slot `i` of column `j` points north.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SixVertexConfig {
    n: usize,
    h: Vec<Vec<bool>>, // n rows x (n+1) slots
    v: Vec<Vec<bool>>, // (n+1) slots x n columns
}

impl SixVertexConfig {
    pub fn try_new(h: Vec<Vec<bool>>, v: Vec<Vec<bool>>) -> Result<Self, AsmError> {
        let n = h.len();
        if n == 0
            || h.iter().any(|r| r.len() != n + 1)
            || v.len() != n + 1
            || v.iter().any(|r| r.len() != n)
        {
            return Err(AsmError::NotDwbc("edge grids have wrong shape".into()));
        }
        let cfg = SixVertexConfig { n, h, v };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn h_east(&self, i: usize, slot: usize) -> bool {
        self.h[i][slot]
    }

    pub fn v_north(&self, slot: usize, j: usize) -> bool {
        self.v[slot][j]
    }

    fn validate(&self) -> Result<(), AsmError> {
        let n = self.n;
        // DWBC: horizontal boundary arrows point in, vertical point out
        for i in 0..n {
            if !self.h[i][0] {
                return Err(AsmError::NotDwbc(format!(
                    "west stub of row {i} must point east"
                )));
            }
            if self.h[i][n] {
                return Err(AsmError::NotDwbc(format!(
                    "east stub of row {i} must point west"
                )));
            }
        }
        for j in 0..n {
            if !self.v[0][j] {
                return Err(AsmError::NotDwbc(format!(
                    "north stub of column {j} must point north"
                )));
            }
            if self.v[n][j] {
                return Err(AsmError::NotDwbc(format!(
                    "south stub of column {j} must point south"
                )));
            }
        }
        // ice rule: two in, two out at every vertex
        for i in 0..n {
            for j in 0..n {
                let indeg = u8::from(self.h[i][j])          // west edge pointing east
                    + u8::from(!self.h[i][j + 1])           // east edge pointing west
                    + u8::from(!self.v[i][j])               // north edge pointing south
                    + u8::from(self.v[i + 1][j]); // south edge pointing north
                if indeg != 2 {
                    return Err(AsmError::NotDwbc(format!(
                        "ice rule violated at vertex ({i},{j}): in-degree {indeg}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// ASM -> DWBC six-vertex state: orientations read off the row/column
/// prefix sums.
pub fn asm_to_sixvertex(a: &Asm) -> SixVertexConfig {
    let n = a.size();
    let hp = a.row_prefix();
    let vp = a.col_prefix();
    let h = (0..n)
        .map(|i| (0..=n).map(|j| hp[i][j] == 0).collect())
        .collect();
    let v = (0..=n)
        .map(|i| (0..n).map(|j| vp[i][j] == 0).collect())
        .collect();
    SixVertexConfig { n, h, v }
}

/// DWBC six-vertex state -> ASM: the entry is the change of the row prefix
/// sum across the vertex (equal to the column change by the ice rule).
pub fn sixvertex_to_asm(c: &SixVertexConfig) -> Result<Asm, AsmError> {
    c.validate()?;
    let n = c.size();
    let mut entries = vec![vec![0i8; n]; n];
    for i in 0..n {
        for j in 0..n {
            let left = u8::from(!c.h[i][j]); // prefix sum H[i][j]
            let right = u8::from(!c.h[i][j + 1]);
            entries[i][j] = right as i8 - left as i8;
        }
    }
    Asm::try_new(entries)
}

/// Exhaustively enumerate all DWBC six-vertex states by direct search over
/// edge orientations (independent of the ASM enumerator); intended for small
/// sizes only.
pub fn enumerate_dwbc_configs(n: usize) -> Vec<SixVertexConfig> {
    assert!(
        n >= 1 && n <= 4,
        "direct six-vertex search is desk-scale only"
    );
    let mut out = Vec::new();
    let mut h = vec![vec![false; n + 1]; n];
    let mut v = vec![vec![false; n + 1]; n]; // transposed storage: v_t[j][i]
    for row in h.iter_mut() {
        row[0] = true; // west stubs point east (in)
    }
    for col in v.iter_mut() {
        col[0] = true; // north stubs point north (out)
    }
    // fill vertices row-major; west and north edges are already fixed,
    // choose east and south subject to the ice rule
    fn rec(
        n: usize,
        idx: usize,
        h: &mut Vec<Vec<bool>>,
        v_t: &mut Vec<Vec<bool>>,
        out: &mut Vec<SixVertexConfig>,
    ) {
        if idx == n * n {
            // boundary checks on east and south stubs
            if (0..n).any(|i| h[i][n]) || (0..n).any(|j| v_t[j][n]) {
                return;
            }
            let v = (0..=n)
                .map(|i| (0..n).map(|j| v_t[j][i]).collect())
                .collect();
            if let Ok(cfg) = SixVertexConfig::try_new(h.clone(), v) {
                out.push(cfg);
            }
            return;
        }
        let (i, j) = (idx / n, idx % n);
        let in_west = u8::from(h[i][j]);
        let in_north = u8::from(!v_t[j][i]);
        for east in [false, true] {
            for south_points_north in [false, true] {
                let indeg = in_west + in_north + u8::from(!east) + u8::from(south_points_north);
                if indeg != 2 {
                    continue;
                }
                h[i][j + 1] = east;
                v_t[j][i + 1] = south_points_north;
                rec(n, idx + 1, h, v_t, out);
            }
        }
    }
    rec(n, 0, &mut h, &mut v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::enumerate_asms;

    #[test]
    fn one_by_one() {
        let a = Asm::try_new(vec![vec![1]]).unwrap();
        let c = asm_to_sixvertex(&a);
        assert_eq!(sixvertex_to_asm(&c).unwrap(), a);
        // there is exactly one 1x1 DWBC state
        assert_eq!(enumerate_dwbc_configs(1), vec![c]);
    }

    #[test]
    fn roundtrip_all_small_sizes() {
        for n in 1..=4 {
            for a in enumerate_asms(n).unwrap() {
                let c = asm_to_sixvertex(&a);
                assert_eq!(
                    sixvertex_to_asm(&c).unwrap(),
                    a,
                    "roundtrip failed at n={n}"
                );
            }
        }
    }

    #[test]
    fn direct_search_matches_asm_count() {
        // independent enumeration of ice states: 1, 2, 7 for n = 1, 2, 3
        assert_eq!(enumerate_dwbc_configs(1).len(), 1);
        assert_eq!(enumerate_dwbc_configs(2).len(), 2);
        let configs = enumerate_dwbc_configs(3);
        assert_eq!(configs.len(), 7);
        // and the bijection hits all of them
        let mut from_asms: Vec<SixVertexConfig> = enumerate_asms(3)
            .unwrap()
            .iter()
            .map(asm_to_sixvertex)
            .collect();
        let mut direct = configs;
        from_asms.sort_by_key(|c| format!("{c:?}"));
        direct.sort_by_key(|c| format!("{c:?}"));
        assert_eq!(from_asms, direct);
    }

    #[test]
    fn dwbc_violations_are_rejected() {
        let a = Asm::identity(2);
        let good = asm_to_sixvertex(&a);
        // flip a boundary stub: west stub must point east
        let mut h = (0..2)
            .map(|i| (0..=2).map(|j| good.h_east(i, j)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        h[0][0] = false;
        let v = (0..=2)
            .map(|i| (0..2).map(|j| good.v_north(i, j)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        assert!(matches!(
            SixVertexConfig::try_new(h, v),
            Err(AsmError::NotDwbc(_))
        ));
    }

    #[test]
    fn ice_rule_violations_are_rejected() {
        let a = Asm::identity(2);
        let good = asm_to_sixvertex(&a);
        let h = (0..2)
            .map(|i| (0..=2).map(|j| good.h_east(i, j)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        let mut v = (0..=2)
            .map(|i| (0..2).map(|j| good.v_north(i, j)).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        // flip an interior vertical edge orientation
        v[1][0] = !v[1][0];
        assert!(matches!(
            SixVertexConfig::try_new(h, v),
            Err(AsmError::NotDwbc(_))
        ));
    }
}
