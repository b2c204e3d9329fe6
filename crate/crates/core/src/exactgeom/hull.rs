use std::collections::BTreeSet;

use num_traits::Zero;

use super::linalg::{nullspace, rref};
use crate::error::check_dim;
use crate::rat::dot;
use crate::{Int, Rat, Result};

/// A convex polytope given by its extreme points and an H-description.
///
/// `equalities` cut out the affine hull and are empty for full-dimensional
/// polytopes; `facets` are the facets relative to that affine hull, each an
/// inequality `normal·x ≤ offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub facets: Vec<(Vec<Rat>, Rat)>,
    pub equalities: Vec<(Vec<Rat>, Rat)>,
}

/// A strict face of a point configuration: the indices of the input points
/// lying on it and a direction whose maximizers over the hull are exactly
/// those points.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub points: Vec<usize>,
    pub direction: Vec<Rat>,
}

impl Polytope {
    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|(w, c)| dot(w, x) == *c)
            && self.facets.iter().all(|(w, c)| dot(w, x) <= *c)
    }

    /// The dilate `k·P`.
    pub fn scale(&self, k: &Rat) -> Polytope {
        let vertices: Vec<Vec<Rat>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        convex_hull(&vertices).expect("scaling preserves dimension")
    }

    /// All integer points of the polytope, in lexicographic order.
    pub fn integer_points(&self) -> Vec<Vec<Int>> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let lo: Vec<Int> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].ceil().to_integer()).min().unwrap())
            .collect();
        let hi: Vec<Int> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].floor().to_integer()).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        loop {
            let q: Vec<Rat> = cur.iter().map(|x| Rat::from_integer(x.clone())).collect();
            if self.contains(&q) {
                out.push(cur.clone());
            }
            // Odometer increment, last coordinate fastest.
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..self.dim].clone_from_slice(&lo[i + 1..self.dim]);
                    break;
                }
            }
            if self.dim == 0 {
                return out;
            }
        }
    }
}

/// Convex hull of a nonempty point set.
pub fn convex_hull(points: &[Vec<Rat>]) -> Result<Polytope> {
    Ok(hull_and_faces(points)?.0)
}

/// Convex hull together with every strict face (all dimensions).
///
/// Facets are found by brute force over affinely independent point subsets
/// after projecting onto the affine hull, and lower faces as intersections of
/// facets. Each face direction is the sum of the normals of the facets that
/// contain it. The instances this crate builds are tiny, so correctness is
/// preferred over asymptotics.
pub fn convex_hull_faces(points: &[Vec<Rat>]) -> Result<(Polytope, Vec<Face>)> {
    hull_and_faces(points)
}

/// Minkowski sum `{p + q}` of two polytopes of the same ambient dimension.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    check_dim(p.dim, q.dim)?;
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    convex_hull(&sums)
}

fn hull_and_faces(points: &[Vec<Rat>]) -> Result<(Polytope, Vec<Face>)> {
    let Some(first) = points.first() else {
        return Err(crate::Error::Invalid("convex hull of an empty point set".into()));
    };
    let d = first.len();
    for p in points {
        check_dim(d, p.len())?;
    }
    let distinct: Vec<Vec<Rat>> =
        points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let p0 = &distinct[0];
    let diffs: Vec<Vec<Rat>> = distinct[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let (_, pivots) = rref(&diffs, d);
    let k = pivots.len();
    let equalities: Vec<(Vec<Rat>, Rat)> = nullspace(&diffs, d)
        .into_iter()
        .map(|w| {
            let c = dot(&w, p0);
            (w, c)
        })
        .collect();
    if k == 0 {
        let poly = Polytope { dim: d, vertices: vec![p0.clone()], facets: vec![], equalities };
        return Ok((poly, vec![]));
    }
    let proj: Vec<Vec<Rat>> =
        distinct.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
    let lift = |w: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); d];
        for (&c, x) in pivots.iter().zip(w) {
            out[c] = x.clone();
        }
        out
    };

    // Facets in the projected, full-dimensional space.
    let mut facet_sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut facet_normals: Vec<Vec<Rat>> = Vec::new();
    for subset in combinations(proj.len(), k) {
        let base = &proj[subset[0]];
        let rows: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| proj[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&rows, k);
        if ns.len() != 1 {
            continue;
        }
        let w = &ns[0];
        let h = dot(w, base);
        let vals: Vec<Rat> = proj.iter().map(|p| dot(w, p)).collect();
        let le = vals.iter().all(|v| *v <= h);
        let ge = vals.iter().all(|v| *v >= h);
        let normal = if le {
            w.clone()
        } else if ge {
            w.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let on: BTreeSet<usize> = (0..proj.len()).filter(|&i| vals[i] == h).collect();
        if !facet_sets.contains(&on) {
            facet_sets.push(on);
            facet_normals.push(normal);
        }
    }

    // Close under intersection to get all nonempty proper faces.
    let mut faces: Vec<BTreeSet<usize>> = facet_sets.clone();
    let mut frontier = faces.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &facet_sets {
                let inter: BTreeSet<usize> = f.intersection(g).cloned().collect();
                if !inter.is_empty() && !faces.contains(&inter) {
                    faces.push(inter.clone());
                    next.push(inter);
                }
            }
        }
        frontier = next;
    }

    let mut out_faces = Vec::new();
    let mut vertices = Vec::new();
    for f in &faces {
        let mut dir = vec![Rat::zero(); k];
        for (g, w) in facet_sets.iter().zip(&facet_normals) {
            if f.is_subset(g) {
                for (x, y) in dir.iter_mut().zip(w) {
                    *x += y;
                }
            }
        }
        if f.len() == 1 {
            vertices.push(distinct[*f.iter().next().unwrap()].clone());
        }
        let direction = lift(&dir);
        let best = points.iter().map(|p| dot(&direction, p)).max().unwrap();
        let on: Vec<usize> =
            (0..points.len()).filter(|&i| dot(&direction, &points[i]) == best).collect();
        out_faces.push(Face { points: on, direction });
    }
    out_faces.sort_by(|a, b| a.points.cmp(&b.points));
    vertices.sort();
    let facets = facet_sets
        .iter()
        .zip(&facet_normals)
        .map(|(set, w)| {
            let lw = lift(w);
            let c = dot(&lw, &distinct[*set.iter().next().unwrap()]);
            (lw, c)
        })
        .collect();
    let poly = Polytope { dim: d, vertices, facets, equalities };
    Ok((poly, out_faces))
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Checks the face contract: the direction is maximized exactly on the face.
#[cfg(test)]
fn face_is_exact(points: &[Vec<Rat>], face: &Face) -> bool {
    let vals: Vec<Rat> = points.iter().map(|p| dot(&face.direction, p)).collect();
    let best = vals.iter().max().unwrap();
    let on: Vec<usize> = (0..points.len()).filter(|&i| vals[i] == *best).collect();
    on == face.points && face.direction.iter().any(|x| !x.is_zero())
}
