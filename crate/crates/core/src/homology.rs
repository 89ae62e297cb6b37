//! First integral homology of a simplicial complex by Smith normal form.
//!
//! Used as an independent check on π₁: when π₁ is abelian it equals H₁.

use std::fmt;

use serde::Serialize;

use crate::finspace::SimplicialComplex;

/// `H₁ ≅ ℤ^rank ⊕ ⨁ ℤ/t` for `t` in `torsion` (each `t > 1`, dividing
/// the next).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology1 {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Homology1 {
    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for Homology1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal entries of the Smith normal form of `m` (nonzero ones only).
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let (bi, bj) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot row or column nonzero");
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

fn boundary(k: &SimplicialComplex, dim: usize) -> Vec<Vec<i128>> {
    let lower = k.faces_of_size(dim);
    let upper = k.faces_of_size(dim + 1);
    let mut m = vec![vec![0i128; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let i = lower.binary_search(&face).expect("face of a simplex is a simplex");
            m[i][j] = if skip % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// `H₁(K; ℤ)`.
pub fn homology1(k: &SimplicialComplex) -> Homology1 {
    let edges = k.faces_of_size(2).len();
    let d1 = smith_diagonal(boundary(k, 1));
    let d2 = smith_diagonal(boundary(k, 2));
    let mut torsion: Vec<u64> = d2.iter().copied().filter(|&d| d > 1).collect();
    torsion.sort_unstable();
    Homology1 { rank: edges - d1.len() - d2.len(), torsion }
}
