use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{clear_denominators, dot};
use crate::{Int, Rat};

/// Outcome of [`lp_minimize`].
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

/// Minimizes `c·x` subject to `a·x = b`, `x ≥ 0`.
///
/// Dense two-phase tableau simplex over exact rationals with Bland's rule, so
/// it terminates on degenerate problems. Rows of `a` must have `c.len()`
/// entries.
pub fn lp_minimize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(m, b.len(), "row count of a and b differ");
    let width = n + m + 1;
    let rhs = n + m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (row, bi) in a.iter().zip(b) {
        assert_eq!(row.len(), n, "constraint row has wrong width");
        let flip = bi.is_negative();
        let mut t = Vec::with_capacity(width);
        for x in row {
            t.push(if flip { -x.clone() } else { x.clone() });
        }
        t.extend(std::iter::repeat_n(Rat::zero(), m));
        t.push(if flip { -bi.clone() } else { bi.clone() });
        tab.push(t);
    }
    for (i, t) in tab.iter_mut().enumerate() {
        t[n + i] = Rat::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase I: minimize the sum of artificials.
    let mut cost1 = vec![Rat::zero(); n + m];
    for x in cost1.iter_mut().skip(n) {
        *x = Rat::one();
    }
    let mut tableau = Tableau { tab, basis: std::mem::take(&mut basis), width };
    tableau.run(&cost1, n + m);
    let phase1 = tableau.objective(&cost1);
    if phase1.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tableau.tab.len() {
        if tableau.basis[i] >= n {
            match (0..n).find(|&j| !tableau.tab[i][j].is_zero()) {
                Some(j) => tableau.pivot(i, j),
                None => {
                    tableau.tab.remove(i);
                    tableau.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase II on the original columns only.
    let mut cost2 = c.to_vec();
    cost2.extend(std::iter::repeat_n(Rat::zero(), m));
    if !tableau.run(&cost2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &bj) in tableau.tab.iter().zip(&tableau.basis) {
        if bj < n {
            x[bj] = row[rhs].clone();
        }
    }
    let value = dot(c, &x);
    LpOutcome::Optimal { x, value }
}

struct Tableau {
    tab: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        let rhs = self.rhs();
        self.tab
            .iter()
            .zip(&self.basis)
            .fold(Rat::zero(), |acc, (row, &bj)| acc + &cost[bj] * &row[rhs])
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.tab[r][col].recip();
        for x in self.tab[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.tab[r].clone();
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations for `cost` using entering columns `< allowed`.
    /// Returns false when the objective is unbounded below.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            // Reduced costs, computed fresh each iteration (Bland's rule only
            // needs the first negative one).
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (row, &bj) in self.tab.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bj].is_zero() {
                        rc -= &cost[bj] * &row[j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.tab.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Answer of [`lp_positive_meet`].
#[derive(Debug, Clone, PartialEq)]
pub enum PositiveMeet {
    /// `Σ coefficients[j]·generators[j]` lies in the requested orthant.
    Feasible { coefficients: Vec<Rat> },
    /// A dual vector `y` with `y·g = 0` for every generator: `y ≥ 0, y ≠ 0`
    /// in the strict case, `y > 0` in the non-strict case.
    Infeasible { farkas: Vec<Int> },
}

/// Decides whether the real span of `generators` (vectors in `R^k`) meets the
/// open positive orthant (`strict`) or the closed orthant minus the origin.
///
/// Infeasibility is certified by Gordan's alternative (strict) or Stiemke's
/// (non-strict); the certificate is scaled to a primitive integer vector.
pub fn lp_positive_meet(generators: &[Vec<Rat>], k: usize, strict: bool) -> PositiveMeet {
    assert!(k >= 1, "ambient dimension must be positive");
    if generators.is_empty() {
        return PositiveMeet::Infeasible { farkas: vec![Int::one(); k] };
    }
    // Dual side first: y with y·g = 0, y ≥ 0 and Σy = 1 (Gordan) or
    // y = 1 + w, w ≥ 0 (Stiemke).
    let mut rows: Vec<Vec<Rat>> = generators.to_vec();
    let mut b = vec![Rat::zero(); generators.len()];
    if strict {
        rows.push(vec![Rat::one(); k]);
        b.push(Rat::one());
    } else {
        // Substitute y = 1 + w: g·w = -g·1.
        for (bi, g) in b.iter_mut().zip(generators) {
            *bi = -g.iter().fold(Rat::zero(), |acc, x| acc + x);
        }
    }
    if let LpOutcome::Optimal { x, .. } = lp_minimize(&vec![Rat::zero(); k], &rows, &b) {
        let y: Vec<Rat> = if strict { x } else { x.into_iter().map(|w| w + Rat::one()).collect() };
        return PositiveMeet::Infeasible { farkas: primitive_integer(&y) };
    }
    // Primal side: λ = λ⁺ − λ⁻, Σλg − s = 1 (strict) or = s with Σs = 1.
    let m = generators.len();
    let nvar = 2 * m + k;
    let mut a = Vec::new();
    let mut bb = Vec::new();
    for coord in 0..k {
        let mut row = vec![Rat::zero(); nvar];
        for (j, g) in generators.iter().enumerate() {
            row[j] = g[coord].clone();
            row[m + j] = -g[coord].clone();
        }
        row[2 * m + coord] = -Rat::one();
        a.push(row);
        bb.push(if strict { Rat::one() } else { Rat::zero() });
    }
    if !strict {
        let mut row = vec![Rat::zero(); nvar];
        for x in row.iter_mut().skip(2 * m) {
            *x = Rat::one();
        }
        a.push(row);
        bb.push(Rat::one());
    }
    let mut cost = vec![Rat::zero(); nvar];
    for x in cost.iter_mut().take(2 * m) {
        *x = Rat::one();
    }
    match lp_minimize(&cost, &a, &bb) {
        LpOutcome::Optimal { x, .. } => PositiveMeet::Feasible {
            coefficients: (0..m).map(|j| &x[j] - &x[m + j]).collect(),
        },
        // The alternatives are exhaustive, so this is unreachable for valid input.
        other => panic!("theorem of the alternative violated: {other:?}"),
    }
}

/// Verifies a certificate returned by [`lp_positive_meet`].
pub fn check_farkas(generators: &[Vec<Rat>], farkas: &[Int], strict: bool) -> bool {
    if farkas.is_empty() || farkas.iter().all(|x| x.is_zero()) {
        return false;
    }
    let sign_ok = if strict {
        farkas.iter().all(|x| !x.is_negative())
    } else {
        farkas.iter().all(|x| x.is_positive())
    };
    let y: Vec<Rat> = farkas.iter().map(|x| Rat::from_integer(x.clone())).collect();
    sign_ok
        && generators
            .iter()
            .all(|g| g.len() == y.len() && dot(g, &y).is_zero())
}

/// Scales a rational vector to a primitive integer vector pointing the same way.
pub(crate) fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let ints = clear_denominators(v);
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
