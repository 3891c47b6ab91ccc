//! Osculating-path formulation: `n` lattice paths from the west boundary
//! edges to the north boundary edges, sharing vertices ("kissing") but never
//! edges and never crossing.
//!
//! Occupied edges are the six-vertex edges whose prefix sum vanishes (west
//! stubs and north stubs are always occupied). At a vertex visited by two
//! paths both paths turn: the one entering from the west leaves north, the
//! one entering from the south leaves east.

use serde::Serialize;

use super::{Asm, AsmError};

/// One unit step of a path through the grid (rows count downward, so a
/// "north" step decreases the row index).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Step {
    East,
    North,
}

/// A family of osculating paths on the `n x n` grid. Path `i` (0-based)
/// enters at the west stub of row `i` and leaves through the north stub of
/// column `exit_cols[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OsculatingPaths {
    n: usize,
    /// steps of each path, in travel order, starting at vertex (i, 0)
    pub paths: Vec<Vec<Step>>,
    pub exit_cols: Vec<usize>,
}

impl OsculatingPaths {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Vertices visited by path `i`, starting from its entry vertex `(i,0)`.
    pub fn vertices(&self, i: usize) -> Vec<(usize, usize)> {
        let mut pos = (i, 0usize);
        let mut out = vec![pos];
        for s in &self.paths[i] {
            match s {
                Step::East => pos.1 += 1,
                Step::North => pos.0 = pos.0.wrapping_sub(1),
            }
            if pos.0 != usize::MAX {
                out.push(pos);
            }
        }
        out
    }

    /// Number of osculation vertices (shared by two paths).
    pub fn osculations(&self) -> usize {
        use std::collections::HashMap;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..self.n {
            for v in self.vertices(i) {
                *seen.entry(v).or_insert(0) += 1;
            }
        }
        seen.values().filter(|&&c| c > 1).count()
    }
}

/// ASM -> osculating paths: trace the occupied edges.
pub fn asm_to_osculating(a: &Asm) -> OsculatingPaths {
    let n = a.size();
    let hp = a.row_prefix(); // H[i][j]: horizontal slot j of row i occupied iff 0
    let vp = a.col_prefix(); // V[i][j]: vertical slot i of column j occupied iff 0
    let h_occ = |i: usize, slot: usize| hp[i][slot] == 0;
    let v_occ = |slot: usize, j: usize| vp[slot][j] == 0;

    let mut paths = Vec::with_capacity(n);
    let mut exit_cols = Vec::with_capacity(n);
    for start in 0..n {
        let mut steps = Vec::new();
        let (mut i, mut j) = (start, 0usize);
        let mut from_west = true;
        loop {
            let east = h_occ(i, j + 1);
            let north = v_occ(i, j);
            let go_north = match (east, north) {
                (true, true) => from_west, // osculation: west-in turns north
                (false, true) => true,
                (true, false) => false,
                (false, false) => unreachable!("flow conservation"),
            };
            if go_north {
                steps.push(Step::North);
                if i == 0 {
                    exit_cols.push(j);
                    break;
                }
                i -= 1;
                from_west = false;
            } else {
                steps.push(Step::East);
                j += 1;
                from_west = true;
            }
        }
        paths.push(steps);
    }
    OsculatingPaths {
        n,
        paths,
        exit_cols,
    }
}

/// Osculating paths -> ASM: rebuild the occupied-edge grids and read the
/// prefix sums back off.
pub fn osculating_to_asm(p: &OsculatingPaths) -> Result<Asm, AsmError> {
    let n = p.size();
    if p.paths.len() != n || p.exit_cols.len() != n {
        return Err(AsmError::InvalidPaths("need exactly n paths".into()));
    }
    let mut h_occ = vec![vec![false; n + 1]; n];
    let mut v_occ = vec![vec![false; n + 1]; n]; // transposed: [j][slot]
    for (start, steps) in p.paths.iter().enumerate() {
        let (mut i, mut j) = (start, 0usize);
        h_occ[i][0] = true;
        for s in steps {
            match s {
                Step::East => {
                    if j + 1 > n {
                        return Err(AsmError::InvalidPaths("path leaves the grid east".into()));
                    }
                    if h_occ[i][j + 1] {
                        return Err(AsmError::InvalidPaths("two paths share an edge".into()));
                    }
                    h_occ[i][j + 1] = true;
                    j += 1;
                }
                Step::North => {
                    if v_occ[j][i] {
                        return Err(AsmError::InvalidPaths("two paths share an edge".into()));
                    }
                    v_occ[j][i] = true;
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }
    // occupied iff prefix sum 0: rebuild the entries from the horizontal grid
    let mut entries = vec![vec![0i8; n]; n];
    for i in 0..n {
        for j in 0..n {
            let left = i8::from(!h_occ[i][j]);
            let right = i8::from(!h_occ[i][j + 1]);
            entries[i][j] = right - left;
        }
    }
    let asm = Asm::try_new(entries)
        .map_err(|e| AsmError::InvalidPaths(format!("paths do not assemble an ASM: {e}")))?;
    // cross-check the vertical grid for consistency
    let vp = asm.col_prefix();
    for j in 0..n {
        for slot in 0..=n {
            if (vp[slot][j] == 0) != v_occ[j][slot] {
                return Err(AsmError::InvalidPaths(format!(
                    "vertical occupation inconsistent at column {j}, slot {slot}"
                )));
            }
        }
    }
    Ok(asm)
}
