use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::Int;

/// Result of [`smith_normal_form`]: `u · m · v = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Repeatedly moves the entry of least absolute value in the trailing block to
/// the pivot, clears its row and column with Euclidean steps, and restores the
/// divisibility chain by folding offending rows into the pivot row.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match bad_row {
                Some(i) => {
                    let one = Int::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> Snf {
    for t in 0..d.rows().min(d.cols()) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped, so the
/// result is the canonical basis of the row lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut rows = m.to_rows();
    let mut out: Vec<Vec<Int>> = Vec::new();
    let mut col = 0;
    while col < cols && !rows.is_empty() {
        // Euclid on column `col` across the remaining rows.
        loop {
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            let Some(p) = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(0, p);
            let mut done = true;
            for i in 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[0][col]);
                let pivot = rows[0].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
                done &= rows[i][col].is_zero();
            }
            if done {
                let mut pivot = rows.remove(0);
                if pivot[col].is_negative() {
                    pivot.iter_mut().for_each(|x| *x = -x.clone());
                }
                out.push(pivot);
                break;
            }
        }
        col += 1;
    }
    // Reduce entries above pivots.
    for k in 0..out.len() {
        let pc = out[k].iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = out[i][pc].div_floor(&out[k][pc]);
            if !q.is_zero() {
                let pivot = out[k].clone();
                for (x, y) in out[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    IntMatrix::from_rows(&out, cols).expect("rows have matching width")
}

/// Canonical basis (Hermite form rows) of the lattice spanned by `gens` in `Zⁿ`.
pub fn lattice_basis(gens: &[Vec<Int>], n: usize) -> IntMatrix {
    let m = IntMatrix::from_rows(gens, n).expect("generator length must equal n");
    hermite_normal_form(&m)
}
