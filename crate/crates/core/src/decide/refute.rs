//! Linear systems behind the refutations and the rank-zero base case.
//!
//! Each refutation asserts that a subspace `K = ker(M)` of `Rᵗ` (one
//! coordinate per transition) contains no strictly positive vector. By
//! Gordan's alternative this is certified by `y ≥ 0`, `y ≠ 0` with `y ⟂ K`.
//! The systems `M` are rebuilt from the automaton by the checker, so a
//! certificate is just `y` (plus the evaluation point where relevant).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactgeom::{check_farkas, lp_positive_meet, nullspace, PositiveMeet, QMat};
use crate::fpmodule::CoordKey;
use crate::groupauto::SdAutomaton;
use crate::laurent::ExpVec;
use crate::{Error, Int, Rat, Result};

/// Flow conservation at every state plus `Σ x_ℓ a_ℓ = 0`.
///
/// A full-image symmetric A-graph with position polynomials `f` gives the
/// positive solution `x_ℓ = f_ℓ(1, …, 1)`.
pub fn flow_system(a: &SdAutomaton) -> QMat {
    let t = a.len();
    let mut rows = Vec::new();
    for i in 0..a.states() {
        let mut row = vec![Rat::zero(); t];
        for (l, tr) in a.transitions().iter().enumerate() {
            if tr.from == i {
                row[l] += Rat::one();
            }
            if tr.to == i {
                row[l] -= Rat::one();
            }
        }
        rows.push(row);
    }
    for k in 0..a.group().n() {
        rows.push(a.transitions().iter().map(|tr| Rat::from_integer(Int::from(tr.ev.a.0[k]))).collect());
    }
    rows
}

/// `r^e` for a positive rational point.
fn point_power(r: &[Rat], e: &ExpVec) -> Rat {
    r.iter().zip(&e.0).fold(Rat::one(), |acc, (ri, &k)| acc * ri.pow(k as i32))
}

/// The flow identities evaluated at `r`,
/// `Σ_{Ω(ℓ)=i} x_ℓ − Σ_{Δ(ℓ)=i} x_ℓ·r^{a_ℓ} = 0`, together with the module
/// rows `Σ x_ℓ·image_r(y_ℓ) = 0`. Substituting `x_ℓ = f_ℓ(r)` solves it for
/// every symmetric A-graph representing zero. `r` lives in the module's
/// variables.
pub fn point_system(a: &SdAutomaton, r: &[Rat]) -> Result<QMat> {
    let g = a.group();
    let m = g.module();
    crate::error::check_dim(m.nvars(), r.len())?;
    if r.iter().any(|x| *x <= Rat::zero()) {
        return Err(Error::Invalid("evaluation point must be positive".into()));
    }
    let t = a.len();
    let mut rows = Vec::new();
    for i in 0..a.states() {
        let mut row = vec![Rat::zero(); t];
        for (l, tr) in a.transitions().iter().enumerate() {
            if tr.from == i {
                row[l] += Rat::one();
            }
            if tr.to == i {
                row[l] -= point_power(r, &g.module_exponent(&tr.ev.a));
            }
        }
        rows.push(row);
    }
    let images: Vec<Vec<Rat>> = a.transitions().iter().map(|tr| m.point_image(&tr.ev.y, r)).collect();
    let width = images.iter().map(Vec::len).max().unwrap_or(0);
    for k in 0..width {
        rows.push(images.iter().map(|im| im.get(k).cloned().unwrap_or_else(Rat::zero)).collect());
    }
    Ok(rows)
}

/// For an automaton over `Y ⋊ Z⁰`: flow conservation plus the coordinates
/// of `Σ x_ℓ y_ℓ` in `Y ⊗ Q`.
pub fn rank_zero_system(a: &SdAutomaton) -> Result<QMat> {
    if a.group().n() != 0 {
        return Err(Error::Invalid("rank-zero system needs an automaton over Y ⋊ Z⁰".into()));
    }
    let m = a.group().module();
    let t = a.len();
    let mut rows = flow_system(a);
    let mut coord_rows: BTreeMap<CoordKey, Vec<Rat>> = BTreeMap::new();
    for (l, tr) in a.transitions().iter().enumerate() {
        for (k, v) in m.rational_coordinates(&tr.ev.y) {
            coord_rows.entry(k).or_insert_with(|| vec![Rat::zero(); t])[l] = v;
        }
    }
    rows.extend(coord_rows.into_values());
    Ok(rows)
}

/// Whether `ker(system)` meets the open positive orthant.
pub fn positive_kernel(system: &QMat, t: usize) -> PositiveMeet {
    let gens = nullspace(system, t);
    if gens.is_empty() {
        return PositiveMeet::Infeasible { farkas: vec![Int::one(); t] };
    }
    match lp_positive_meet(&gens, t, true) {
        PositiveMeet::Feasible { coefficients } => {
            let x = (0..t)
                .map(|j| gens.iter().zip(&coefficients).fold(Rat::zero(), |acc, (g, c)| acc + &g[j] * c))
                .collect();
            PositiveMeet::Feasible { coefficients: x }
        }
        inf => inf,
    }
}

/// Verifies `y ≥ 0`, `y ≠ 0`, `y ⟂ ker(system)`.
pub fn check_gordan(system: &QMat, t: usize, farkas: &[Int]) -> bool {
    farkas.len() == t && check_farkas(&nullspace(system, t), farkas, true)
}

/// Exact test of the flow relaxation. `Some(farkas)` refutes the group
/// property.
pub fn refute_flow(a: &SdAutomaton) -> Option<Vec<Int>> {
    match positive_kernel(&flow_system(a), a.len()) {
        PositiveMeet::Infeasible { farkas } => Some(farkas),
        PositiveMeet::Feasible { .. } => None,
    }
}

/// Grid points for the pointwise refutation: `1ⁿ` first, then coordinates
/// `2^k` with `|k| ≤ depth` by increasing `max |k|`, then the `extra`
/// points. At most `cap` points are returned.
pub fn grid_points(n: usize, depth: u32, extra: &[Vec<Rat>], cap: usize) -> Vec<Vec<Rat>> {
    let d = depth as i64;
    let mut exps: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|p| {
                (-d..=d).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    exps.sort_by_key(|e| (e.iter().map(|k| k.abs()).max().unwrap_or(0), e.clone()));
    let two = Rat::from_integer(Int::from(2));
    let mut out: Vec<Vec<Rat>> = exps.iter().map(|e| e.iter().map(|&k| two.pow(k as i32)).collect()).collect();
    if depth >= 1 {
        for p in extra {
            if p.len() == n && !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    out.truncate(cap);
    out
}

/// Tests `point_system` on the grid; the first point whose kernel misses
/// the positive orthant yields `(r, farkas)`.
pub fn refute_point_positivity(a: &SdAutomaton, depth: u32, extra: &[Vec<Rat>], cap: usize) -> Result<Option<(Vec<Rat>, Vec<Int>)>> {
    let n = a.group().module().nvars();
    for r in grid_points(n, depth, extra, cap) {
        let sys = point_system(a, &r)?;
        if let PositiveMeet::Infeasible { farkas } = positive_kernel(&sys, a.len()) {
            return Ok(Some((r, farkas)));
        }
    }
    Ok(None)
}

/// Base case: does the real span of `generators` meet the open positive
/// orthant of `R^k`?
pub fn decide_rank_zero(generators: &[Vec<Rat>], k: usize) -> PositiveMeet {
    lp_positive_meet(generators, k, true)
}
