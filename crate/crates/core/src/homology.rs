//! Integral homology of the normalized chain complex via Smith normal form.
//!
//! Boundaries are alternating sums of non-degenerate faces; faces carrying a
//! degeneracy word contribute zero. Arithmetic is checked i128; overflow
//! aborts with a diagnostic instead of wrapping.

use crate::sset::SimplicialSet;
use crate::{Error, Result};

/// Betti numbers and torsion coefficients by degree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<i128>>,
}

impl HomologyReport {
    pub fn is_point_like(&self) -> bool {
        self.betti.first().copied().unwrap_or(0) == 1
            && self.betti.iter().skip(1).all(|&b| b == 0)
            && self.torsion.iter().all(|t| t.is_empty())
    }

    /// Restrict the report to degrees `<= max_deg`.
    pub fn up_to(&self, max_deg: usize) -> HomologyReport {
        HomologyReport {
            betti: self.betti.iter().copied().take(max_deg + 1).collect(),
            torsion: self.torsion.iter().cloned().take(max_deg + 1).collect(),
        }
    }
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn checked_sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

/// Smith normal form. Returns the non-zero diagonal entries (positive, each
/// dividing the next); their count is the rank.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let (mut r0, mut c0) = (0usize, 0usize);
    'position: while r0 < rows && c0 < cols {
        // minimal-absolute-value pivot in the remaining submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        let p = m[r0][c0];
        let mut dirty = false;
        for i in r0 + 1..rows {
            if m[i][c0] != 0 {
                let q = m[i][c0].div_euclid(p);
                if q != 0 {
                    for j in c0..cols {
                        m[i][j] = checked_sub(m[i][j], checked_mul(q, m[r0][j])?)?;
                    }
                }
                dirty |= m[i][c0] != 0;
            }
        }
        for j in c0 + 1..cols {
            if m[r0][j] != 0 {
                let q = m[r0][j].div_euclid(p);
                if q != 0 {
                    for i in r0..rows {
                        m[i][j] = checked_sub(m[i][j], checked_mul(q, m[i][c0])?)?;
                    }
                }
                dirty |= m[r0][j] != 0;
            }
        }
        if dirty {
            // a remainder smaller than |p| now exists; re-pick the pivot
            continue 'position;
        }
        for i in r0 + 1..rows {
            for j in c0 + 1..cols {
                if m[i][j] % p != 0 {
                    // fold row i into row r0 so the pivot shrinks next pass
                    for j2 in c0..cols {
                        m[r0][j2] = m[r0][j2].checked_add(m[i][j2]).ok_or(Error::Overflow)?;
                    }
                    continue 'position;
                }
            }
        }
        diag.push(p.abs());
        r0 += 1;
        c0 += 1;
    }
    Ok(diag)
}

/// Boundary matrix from degree `d` to degree `d-1` on nd simplices.
pub fn boundary_matrix(x: &SimplicialSet, d: usize) -> Vec<Vec<i128>> {
    let rows_ids = x.in_dim(d - 1);
    let cols_ids = x.in_dim(d);
    let row_of: std::collections::HashMap<usize, usize> =
        rows_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![0i128; cols_ids.len()]; rows_ids.len()];
    for (j, &c) in cols_ids.iter().enumerate() {
        for i in 0..=d {
            let f = x.face_of_nd(c, i);
            if f.is_nd() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[row_of[&f.nd]][j] += sign;
            }
        }
    }
    m
}

/// Integral homology in degrees `0..=max_deg`.
pub fn homology(x: &SimplicialSet, max_deg: usize) -> Result<HomologyReport> {
    if x.is_empty() {
        return Ok(HomologyReport {
            betti: vec![0; max_deg + 1],
            torsion: vec![Vec::new(); max_deg + 1],
        });
    }
    // rank and torsion of each boundary map d_k, k = 1..=max_deg+1
    let mut rank = vec![0usize; max_deg + 2];
    let mut tors: Vec<Vec<i128>> = vec![Vec::new(); max_deg + 2];
    for k in 1..=max_deg + 1 {
        let diag = smith_diagonal(boundary_matrix(x, k))?;
        rank[k] = diag.len();
        tors[k] = diag.into_iter().filter(|&v| v > 1).collect();
    }
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..=max_deg {
        let n_k = x.in_dim(k).len();
        betti.push(n_k - rank[k] - rank[k + 1]);
        torsion.push(tors[k + 1].clone());
    }
    Ok(HomologyReport { betti, torsion })
}
