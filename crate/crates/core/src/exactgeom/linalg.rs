use num_traits::{One, Zero};

use crate::Rat;

/// Dense rational matrix as a list of rows.
pub type QMat = Vec<Vec<Rat>>;

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped) and
/// the pivot column of each.
pub fn rref(m: &[Vec<Rat>], cols: usize) -> (QMat, Vec<usize>) {
    let mut a: QMat = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[Vec<Rat>], cols: usize) -> usize {
    rref(m, cols).1.len()
}

/// Basis of `{x : m·x = 0}` (one vector per free column).
pub fn nullspace(m: &[Vec<Rat>], cols: usize) -> QMat {
    let (r, pivots) = rref(m, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rat::zero(); cols];
        x[free] = Rat::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            x[pc] = -row[free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Some solution of `m·x = b`, or `None` when inconsistent.
pub fn solve(m: &[Vec<Rat>], b: &[Rat], cols: usize) -> Option<Vec<Rat>> {
    let aug: QMat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}
