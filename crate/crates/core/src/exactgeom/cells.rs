use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Polytope;
use crate::rat::{clear_denominators, dot};
use crate::{Error, Rat, Result};

/// A nonzero integer direction with coprime entries.
///
/// Only the gcd is divided out; the sign is kept because `v` and `-v` are
/// different rays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(pub Vec<i64>);

impl Direction {
    pub fn dot(&self, x: &[i64]) -> i64 {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn as_rat(&self) -> Vec<Rat> {
        crate::rat::to_rat_vec(&self.0)
    }
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn canonical_direction(v: &[i64]) -> Option<Direction> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        None
    } else {
        Some(Direction(v.iter().map(|x| x / g).collect()))
    }
}

/// One representative direction for every cell of the common refinement of
/// the normal fans of `polytopes` and the central arrangement
/// `{w : w·h = 0}` for `h` in `normals`.
///
/// Candidates are generated from the rays of the arrangement spanned by all
/// fan walls and given normals, each pushed slightly into every adjacent
/// cell. Candidates are then merged when they induce the same argmax vertex
/// sets and the same hyperplane signs, except that one-dimensional cells
/// (rays) are always kept apart, so opposite rays on a wall both survive.
///
/// Supported for `n ≤ 3`; `n = 0` has no directions.
pub fn direction_cells(
    polytopes: &[Polytope],
    normals: &[Vec<i64>],
    n: usize,
) -> Result<Vec<Direction>> {
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "direction cells are implemented for at most 3 variables, got {n}"
        )));
    }
    if n == 0 {
        return Ok(vec![]);
    }
    for p in polytopes {
        crate::error::check_dim(n, p.dim)?;
    }
    for h in normals {
        crate::error::check_dim(n, h.len())?;
    }
    // Every wall of the refinement: given normals and vertex differences.
    let mut walls: Vec<Vec<i64>> = normals.to_vec();
    for p in polytopes {
        for (i, a) in p.vertices.iter().enumerate() {
            for b in &p.vertices[i + 1..] {
                let diff: Vec<Rat> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                walls.push(
                    clear_denominators(&diff)
                        .iter()
                        .map(|x| x.to_i64().expect("vertex coordinates fit in i64"))
                        .collect(),
                );
            }
        }
    }
    let walls = dedup_lines(&walls);
    let candidates = match n {
        1 => vec![vec![1], vec![-1]],
        2 => reps_2d(&walls),
        _ => reps_3d(&walls),
    };

    let signature = |v: &[i64]| -> (Vec<Vec<usize>>, Vec<i8>) {
        let vr = crate::rat::to_rat_vec(v);
        let argmax = polytopes
            .iter()
            .map(|p| {
                let vals: Vec<Rat> = p.vertices.iter().map(|x| dot(&vr, x)).collect();
                let best = vals.iter().max().cloned();
                (0..vals.len()).filter(|&i| Some(&vals[i]) == best.as_ref()).collect()
            })
            .collect();
        let signs = normals.iter().map(|h| dot_i(v, h).signum() as i8).collect();
        (argmax, signs)
    };
    let is_ray = |v: &[i64]| -> bool {
        let vr = crate::rat::to_rat_vec(v);
        let mut through: Vec<Vec<i64>> =
            normals.iter().filter(|h| dot_i(v, h) == 0).cloned().collect();
        for p in polytopes {
            let vals: Vec<Rat> = p.vertices.iter().map(|x| dot(&vr, x)).collect();
            let best = vals.iter().max().cloned();
            let top: Vec<usize> =
                (0..vals.len()).filter(|&i| Some(&vals[i]) == best.as_ref()).collect();
            for w in top.windows(2) {
                let diff: Vec<Rat> = p.vertices[w[0]]
                    .iter()
                    .zip(&p.vertices[w[1]])
                    .map(|(x, y)| x - y)
                    .collect();
                through.push(
                    clear_denominators(&diff).iter().map(|x| x.to_i64().unwrap()).collect(),
                );
            }
        }
        rank_i(&through, n) == n - 1
    };

    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for c in candidates {
        let Some(d) = canonical_direction(&c) else { continue };
        let ray_key = if is_ray(&d.0) { Some(d.0.clone()) } else { None };
        if seen.insert((signature(&d.0), ray_key)) {
            out.insert(d);
        }
    }
    Ok(out.into_iter().collect())
}

fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn rank_i(vs: &[Vec<i64>], n: usize) -> usize {
    let rows: Vec<Vec<Rat>> = vs.iter().map(|v| crate::rat::to_rat_vec(v)).collect();
    super::rank(&rows, n)
}

/// Nonzero vectors up to sign and scaling, in first-seen order.
fn dedup_lines(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in vs {
        let Some(Direction(mut d)) = canonical_direction(v) else { continue };
        if d.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            d.iter_mut().for_each(|x| *x = -*x);
        }
        if seen.insert(d.clone()) {
            out.push(d);
        }
    }
    out
}

fn dedup_rays(vs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    vs.into_iter()
        .filter_map(|v| canonical_direction(&v))
        .filter(|d| seen.insert(d.clone()))
        .map(|d| d.0)
        .collect()
}

/// Smallest positive `k` with `|h·u| < k·|h·r|` for every `h` not orthogonal
/// to `r`, so that `k·r + u` stays on `r`'s side of those walls.
fn push_factor(walls: &[Vec<i64>], r: &[i64], u: &[i64]) -> i64 {
    walls
        .iter()
        .filter(|h| dot_i(h, r) != 0)
        .map(|h| dot_i(h, u).abs() / dot_i(h, r).abs() + 1)
        .max()
        .unwrap_or(1)
        .max(1)
}

fn reps_2d(walls: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if walls.is_empty() {
        return vec![vec![1, 0]];
    }
    let perp = |v: &[i64]| vec![-v[1], v[0]];
    let rays = dedup_rays(walls.iter().flat_map(|h| [perp(h), vec![h[1], -h[0]]]).collect());
    let mut out = Vec::new();
    for r in &rays {
        out.push(r.clone());
        let p = perp(r);
        let k = push_factor(walls, r, &p);
        out.push(vec![k * r[0] + p[0], k * r[1] + p[1]]);
        out.push(vec![k * r[0] - p[0], k * r[1] - p[1]]);
    }
    out
}

fn reps_3d(walls: &[Vec<i64>]) -> Vec<Vec<i64>> {
    match rank_i(walls, 3) {
        0 => vec![vec![1, 0, 0]],
        1 => {
            let h = &walls[0];
            let u = (0..3)
                .map(|i| {
                    let mut e = vec![0; 3];
                    e[i] = 1;
                    cross(h, &e)
                })
                .find(|c| c.iter().any(|&x| x != 0))
                .unwrap();
            vec![h.clone(), h.iter().map(|x| -x).collect(), u]
        }
        2 => {
            let d = walls
                .iter()
                .enumerate()
                .flat_map(|(i, a)| walls[i + 1..].iter().map(move |b| cross(a, b)))
                .find(|c| c.iter().any(|&x| x != 0))
                .unwrap();
            let mut out = vec![d.clone(), d.iter().map(|x| -x).collect()];
            out.extend(lift_local(walls, &d, &[0, 0, 0]));
            out
        }
        _ => {
            let mut rays = Vec::new();
            for (i, a) in walls.iter().enumerate() {
                for b in &walls[i + 1..] {
                    let c = cross(a, b);
                    if c.iter().any(|&x| x != 0) {
                        rays.push(c.clone());
                        rays.push(c.iter().map(|x| -x).collect());
                    }
                }
            }
            let mut out = Vec::new();
            for r in dedup_rays(rays) {
                out.push(r.clone());
                out.extend(lift_local(walls, &r, &r));
            }
            out
        }
    }
}

/// Representatives of the cells around the line `R·axis`: the 2D arrangement
/// of the walls containing `axis`, taken in the plane orthogonal to `axis`,
/// lifted to `push·k + u`. With `push = 0` the lift is exact (the walls all
/// contain `axis`).
fn lift_local(walls: &[Vec<i64>], axis: &[i64], push: &[i64]) -> Vec<Vec<i64>> {
    let local: Vec<Vec<i64>> = walls.iter().filter(|h| dot_i(h, axis) == 0).cloned().collect();
    let e1 = local[0].clone();
    let e2 = cross(axis, &e1);
    let local2: Vec<Vec<i64>> =
        dedup_lines(&local.iter().map(|h| vec![dot_i(h, &e1), dot_i(h, &e2)]).collect::<Vec<_>>());
    reps_2d(&local2)
        .into_iter()
        .map(|w| {
            let u: Vec<i64> = (0..3).map(|i| w[0] * e1[i] + w[1] * e2[i]).collect();
            if push.iter().all(|&x| x == 0) {
                u
            } else {
                let k = push_factor(walls, push, &u);
                (0..3).map(|i| k * push[i] + u[i]).collect()
            }
        })
        .collect()
}
