//! Procedure A: search for an integer witness `f` of the group property.
//!
//! A witness is a tuple of position polynomials with nonnegative integer
//! coefficients that is full-image, symmetric, represents zero and
//! satisfies the accessibility criterion. Inside a box of positions
//! `(ℓ, z)`, `z ∈ [−R, R]^ñ`, the linear conditions cut out a polyhedral
//! cone, and the criterion depends only on the support. The search
//! therefore works on supports:
//!
//! 1. compute the maximal support of the cone with one LP;
//! 2. if some label is missing there is no witness in the box;
//! 3. if the criterion fails at a contraction and direction, every witness
//!    must avoid the positions of maximal contracted degree there, so they
//!    are forbidden and the loop repeats.
//!
//! When the loop ends with an accessible full-image support, positions are
//! pruned greedily to make the witness small, coefficients are minimized by
//! a second LP, and torsion is cleared by scaling.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::agraph::{PositionPolys, Skeleton};
use crate::contraction::{enumerate_contractions, find_violation, PartialContraction};
use crate::exactgeom::{lp_minimize, rref, LpOutcome};
use crate::fpmodule::CoordKey;
use crate::groupauto::SdAutomaton;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::rat::clear_denominators;
use crate::{Error, Int, Rat, Result};

use super::BudgetReport;

/// Largest number of positions considered in one box.
const MAX_POSITIONS: usize = 240;
/// Largest additive order cleared by scaling.
const TORSION_CAP: u64 = 10_000;

type Position = (usize, ExpVec);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum RowKey {
    Symmetry(usize, ExpVec),
    Module(CoordKey),
}

struct BoxSystem<'a> {
    skel: Skeleton,
    contractions: &'a [PartialContraction],
    positions: Vec<Position>,
    /// Sparse columns: for each position its nonzero row entries.
    columns: Vec<BTreeMap<usize, Rat>>,
    rows: usize,
}

fn box_points(n: usize, radius: i64) -> Vec<ExpVec> {
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    pts.into_iter().map(ExpVec).collect()
}

impl<'a> BoxSystem<'a> {
    fn new(aut: &SdAutomaton, contractions: &'a [PartialContraction], radius: i64) -> Self {
        let skel = Skeleton::of(aut);
        let g = aut.group();
        let m = g.module();
        let mut positions = Vec::new();
        for l in 0..skel.len() {
            for z in box_points(skel.n, radius) {
                positions.push((l, z));
            }
        }
        let mut keys: BTreeMap<RowKey, usize> = BTreeMap::new();
        let mut columns = Vec::with_capacity(positions.len());
        for (l, z) in &positions {
            let mut col: BTreeMap<RowKey, Rat> = BTreeMap::new();
            *col.entry(RowKey::Symmetry(skel.from[*l], z.clone())).or_insert_with(Rat::zero) += Rat::one();
            *col.entry(RowKey::Symmetry(skel.to[*l], z.add(&skel.a[*l]))).or_insert_with(Rat::zero) -= Rat::one();
            let shifted = g.act(z, &aut.transitions()[*l].ev.y);
            for (k, v) in m.rational_coordinates(&shifted) {
                col.insert(RowKey::Module(k), v);
            }
            let mut sparse = BTreeMap::new();
            for (k, v) in col {
                if !v.is_zero() {
                    let next = keys.len();
                    let idx = *keys.entry(k).or_insert(next);
                    sparse.insert(idx, v);
                }
            }
            columns.push(sparse);
        }
        BoxSystem { skel, contractions, positions, columns, rows: keys.len() }
    }

    /// Dense constraint rows restricted to `cols`, reduced to a basis of the
    /// row space.
    fn reduced_rows(&self, cols: &[usize]) -> Vec<Vec<Rat>> {
        let mut dense = vec![vec![Rat::zero(); cols.len()]; self.rows];
        for (j, &c) in cols.iter().enumerate() {
            for (&r, v) in &self.columns[c] {
                dense[r][j] = v.clone();
            }
        }
        dense.retain(|row| row.iter().any(|x| !x.is_zero()));
        rref(&dense, cols.len()).0
    }

    /// The union of the supports of all nonnegative solutions using only
    /// `allowed` positions: maximize `Σ t` subject to `W(t + s) = 0`,
    /// `t + w = 1` and `t, s, w ≥ 0`.
    fn max_support(&self, allowed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let cols: Vec<usize> = allowed.iter().copied().collect();
        let p = cols.len();
        if p == 0 {
            return BTreeSet::new();
        }
        let w = self.reduced_rows(&cols);
        let mut a = Vec::with_capacity(w.len() + p);
        let mut b = Vec::with_capacity(w.len() + p);
        for row in &w {
            let mut r = vec![Rat::zero(); 3 * p];
            r[..p].clone_from_slice(row);
            r[p..2 * p].clone_from_slice(row);
            a.push(r);
            b.push(Rat::zero());
        }
        for j in 0..p {
            let mut r = vec![Rat::zero(); 3 * p];
            r[j] = Rat::one();
            r[2 * p + j] = Rat::one();
            a.push(r);
            b.push(Rat::one());
        }
        let mut c = vec![Rat::zero(); 3 * p];
        for x in c.iter_mut().take(p) {
            *x = -Rat::one();
        }
        match lp_minimize(&c, &a, &b) {
            LpOutcome::Optimal { x, .. } => (0..p).filter(|&j| x[j].is_positive()).map(|j| cols[j]).collect(),
            other => unreachable!("support LP is feasible and bounded: {other:?}"),
        }
    }

    fn polys_of(&self, support: &BTreeSet<usize>, coeff: impl Fn(usize) -> Int) -> PositionPolys {
        let mut f = vec![LaurentPoly::zero(self.skel.n); self.skel.len()];
        for &p in support {
            let (l, z) = &self.positions[p];
            f[*l].add_term(z.clone(), coeff(p));
        }
        PositionPolys(f)
    }

    fn full_image(&self, support: &BTreeSet<usize>) -> bool {
        let labels: BTreeSet<usize> = support.iter().map(|&p| self.positions[p].0).collect();
        labels.len() == self.skel.len()
    }

    /// Largest accessible full-image support inside `allowed`, if any.
    fn refine(&self, mut allowed: BTreeSet<usize>, report: &mut BudgetReport) -> Result<Option<BTreeSet<usize>>> {
        loop {
            report.candidates += 1;
            let support = self.max_support(&allowed);
            if !self.full_image(&support) {
                return Ok(None);
            }
            let f = self.polys_of(&support, |_| Int::one());
            let Some(v) = find_violation(&self.skel, &f, self.contractions)? else {
                return Ok(Some(support));
            };
            let shift = |p: usize| {
                let (l, z) = &self.positions[p];
                v.data.potentials.get(&self.skel.from[*l]).map(|zp| v.direction.dot(&z.add(zp).0))
            };
            let top = support.iter().filter_map(|&p| shift(p)).max();
            let forbidden: Vec<usize> = support.iter().copied().filter(|&p| top.is_some() && shift(p) == top).collect();
            debug_assert!(!forbidden.is_empty());
            for p in forbidden {
                allowed.remove(&p);
            }
        }
    }

    /// Smallest positive coefficients on `support`: minimize `Σ d` with
    /// `W(1 + d) = 0`, `d ≥ 0`.
    fn coefficients(&self, support: &BTreeSet<usize>) -> Vec<Rat> {
        let cols: Vec<usize> = support.iter().copied().collect();
        let w = self.reduced_rows(&cols);
        let b: Vec<Rat> = w.iter().map(|row| -row.iter().fold(Rat::zero(), |acc, x| acc + x)).collect();
        let c = vec![Rat::one(); cols.len()];
        match lp_minimize(&c, &w, &b) {
            LpOutcome::Optimal { x, .. } => x.into_iter().map(|d| d + Rat::one()).collect(),
            other => unreachable!("a maximal support carries a positive solution: {other:?}"),
        }
    }
}

/// Searches boxes of radius `0..=radius` for a witness. The automaton must
/// be trim and primitive.
pub fn procedure_a_search(aut: &SdAutomaton, radius: u32, report: &mut BudgetReport) -> Result<Option<PositionPolys>> {
    let skel = Skeleton::of(aut);
    if skel.n > 3 {
        return Err(Error::Unsupported(format!("witness search supports at most 3 acting variables, got {}", skel.n)));
    }
    let contractions = enumerate_contractions(&skel)?;
    for r in 0..=radius as i64 {
        let count = skel.len() * (2 * r as usize + 1).pow(skel.n as u32);
        if count > MAX_POSITIONS && r > 0 {
            break;
        }
        report.max_box = report.max_box.max(r as u32);
        let sys = BoxSystem::new(aut, &contractions, r);
        let all: BTreeSet<usize> = (0..sys.positions.len()).collect();
        let Some(mut support) = sys.refine(all, report)? else {
            continue;
        };
        // Greedy pruning: farthest positions first, then smaller exponents.
        let mut order: Vec<usize> = support.iter().copied().collect();
        order.sort_by_key(|&p| {
            let (l, z) = &sys.positions[p];
            (Reverse(z.norm_inf()), z.0.clone(), *l)
        });
        for p in order {
            if !support.contains(&p) {
                continue;
            }
            let mut allowed = support.clone();
            allowed.remove(&p);
            if let Some(smaller) = sys.refine(allowed, report)? {
                support = smaller;
            }
        }
        let x = sys.coefficients(&support);
        let ints = clear_denominators(&x);
        let cols: Vec<usize> = support.iter().copied().collect();
        let by_pos: BTreeMap<usize, Int> = cols.iter().copied().zip(ints).collect();
        let mut f = sys.polys_of(&support, |p| by_pos[&p].clone());
        let m = aut.group().module();
        let rep = f.represented_element(aut);
        if !m.is_zero(&rep) {
            let k = m.additive_order(&rep, TORSION_CAP).ok_or_else(|| {
                Error::Unsupported("torsion in the represented element exceeds the order cap".into())
            })?;
            f = PositionPolys(f.0.iter().map(|p| p.scalar_mul(&k)).collect());
        }
        debug_assert!(f.is_full_image() && f.is_symmetric(&skel));
        debug_assert!(m.is_zero(&f.represented_element(aut)));
        report.max_coefficient = report.max_coefficient.clone().max(f.max_coefficient());
        return Ok(Some(f));
    }
    Ok(None)
}
