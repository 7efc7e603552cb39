//! Small dense complex linear algebra: rank and null space by Gaussian
//! elimination with full pivoting.

use crate::sphere::{Complex, ZERO, ONE};

/// Reduced row echelon data for a matrix.
struct Echelon {
    /// Rows of the reduced matrix (only the first `rank` are meaningful).
    rows: Vec<Vec<Complex>>,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
    ncols: usize,
}

/// Pivots below `eps · max|entry|` count as zero.
fn echelon(matrix: &[Vec<Complex>], ncols: usize, eps: f64) -> Echelon {
    let mut a: Vec<Vec<Complex>> = matrix.to_vec();
    let scale = a
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let threshold = eps * scale;
    let mut pivots = Vec::new();
    let mut free: Vec<bool> = vec![true; ncols];
    let nrows = a.len();
    for r in 0..nrows {
        // full pivot search over remaining rows and unused columns
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, z) in row.iter().enumerate() {
                if free[j] && best.is_none_or(|b| z.norm() > b.2) {
                    best = Some((i, j, z.norm()));
                }
            }
        }
        let Some((pi, pj, mag)) = best else { break };
        if mag <= threshold || mag == 0.0 {
            break;
        }
        a.swap(r, pi);
        free[pj] = false;
        let p = a[r][pj];
        for z in a[r].iter_mut() {
            *z /= p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[pj];
            if f != ZERO {
                for (z, q) in row.iter_mut().zip(&pivot_row) {
                    *z -= f * q;
                }
            }
        }
        pivots.push(pj);
    }
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

#[cfg(test)]
pub(crate) fn rank(matrix: &[Vec<Complex>], ncols: usize, eps: f64) -> usize {
    echelon(matrix, ncols, eps).pivots.len()
}

/// Basis of the right null space, one vector per free column.
pub(crate) fn nullspace(matrix: &[Vec<Complex>], ncols: usize, eps: f64) -> Vec<Vec<Complex>> {
    let e = echelon(matrix, ncols, eps);
    let free: Vec<usize> = (0..e.ncols).filter(|j| !e.pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ZERO; e.ncols];
            v[f] = ONE;
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.rows[r][f];
            }
            v
        })
        .collect()
}
