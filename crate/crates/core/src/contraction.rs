//! Partial contractions and the algebraic face-accessibility criterion.
//!
//! A partial contraction `(S, 𝒯, ρ)` picks a nonempty state set `S`, an
//! undirected spanning tree `𝒯` of `S` made of transitions, and a root
//! `ρ ∈ S`. Contracting translates each lattice `Λᵢ`, `i ∈ S`, by the
//! potential `z_{Pᵢ}` of the tree path from `qᵢ` to `q_ρ` and collapses them
//! into one copy of `Zⁿ`. A symmetric A-graph is face-accessible exactly when
//! every contraction satisfies
//! `(O_v ∪ dangling) ∩ M_v ≠ ∅` for every nonzero direction `v`, where
//! `M_v` holds the labels of maximal contracted `v`-degree and `O_v` the
//! labels whose contracted edge vector is not orthogonal to `v`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::agraph::{PositionPolys, Skeleton};
use crate::exactgeom::{direction_cells, Direction};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::{Error, Result};

/// `(S, 𝒯, ρ)` with zero-based state and label indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialContraction {
    pub states: BTreeSet<usize>,
    pub tree: BTreeSet<usize>,
    pub root: usize,
}

/// Contracted polynomials, edge vectors and tree potentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedData {
    /// `f^{(S,𝒯,ρ)}_ℓ` for `ℓ ∈ Ω⁻¹(S)`.
    pub polys: BTreeMap<usize, LaurentPoly>,
    /// `a^{(S,𝒯,ρ)}_ℓ` for `ℓ ∈ Ω⁻¹(S)`.
    pub edge_vectors: BTreeMap<usize, ExpVec>,
    /// `z_{Pᵢ}` for `i ∈ S`.
    pub potentials: BTreeMap<usize, ExpVec>,
    /// Labels in `Ω⁻¹(S)` whose target state is outside `S`.
    pub dangling: BTreeSet<usize>,
}

/// A contraction and direction at which the criterion fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub contraction: PartialContraction,
    pub data: ContractedData,
    pub direction: Direction,
}

const MAX_STATES: usize = 12;
const MAX_CONTRACTIONS: usize = 200_000;

/// Every partial contraction, ordered by state set (size, then
/// lexicographic), then tree, then root. Parallel transitions give distinct
/// trees.
pub fn enumerate_contractions(skel: &Skeleton) -> Result<Vec<PartialContraction>> {
    let s = skel.states;
    if s > MAX_STATES {
        return Err(Error::Unsupported(format!(
            "partial contractions are enumerated for at most {MAX_STATES} states, got {s}"
        )));
    }
    let mut sets: Vec<BTreeSet<usize>> = (1u32..(1u32 << s))
        .map(|mask| (0..s).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::new();
    for set in sets {
        let inner: Vec<usize> = (0..skel.len())
            .filter(|&l| skel.from[l] != skel.to[l] && set.contains(&skel.from[l]) && set.contains(&skel.to[l]))
            .collect();
        let mut trees = Vec::new();
        combinations(&inner, set.len() - 1, &mut |tree| {
            if is_spanning_tree(skel, &set, tree) {
                trees.push(tree.iter().copied().collect::<BTreeSet<usize>>());
            }
        });
        for tree in trees {
            for &root in &set {
                out.push(PartialContraction { states: set.clone(), tree: tree.clone(), root });
                if out.len() > MAX_CONTRACTIONS {
                    return Err(Error::Unsupported("too many partial contractions".into()));
                }
            }
        }
    }
    Ok(out)
}

fn combinations(items: &[usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), visit);
}

/// `tree` has `|S| − 1` edges inside `S` connecting all of `S`.
fn is_spanning_tree(skel: &Skeleton, set: &BTreeSet<usize>, tree: &[usize]) -> bool {
    if tree.len() + 1 != set.len() {
        return false;
    }
    let mut parent: BTreeMap<usize, usize> = set.iter().map(|&i| (i, i)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        r
    }
    for &l in tree {
        let (u, w) = (skel.from[l], skel.to[l]);
        if !set.contains(&u) || !set.contains(&w) {
            return false;
        }
        let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
        if ru == rw {
            return false;
        }
        parent.insert(ru, rw);
    }
    true
}

/// Computes contracted polynomials and edge vectors.
///
/// Potentials follow the tree from the root: crossing `δ_ℓ` forwards from
/// `Ω(ℓ)` to `Δ(ℓ)` adds `a_ℓ`, so `z_{P_{Ω(ℓ)}} = a_ℓ + z_{P_{Δ(ℓ)}}` on
/// tree edges and `z_{P_ρ} = 0ⁿ`.
pub fn contract(skel: &Skeleton, f: &PositionPolys, pc: &PartialContraction) -> Result<ContractedData> {
    crate::error::check_dim(skel.len(), f.len())?;
    let tree: Vec<usize> = pc.tree.iter().copied().collect();
    if !pc.states.contains(&pc.root) || !is_spanning_tree(skel, &pc.states, &tree) {
        return Err(Error::Invalid("invalid partial contraction".into()));
    }
    let mut potentials = BTreeMap::from([(pc.root, ExpVec::zero(skel.n))]);
    let mut queue = VecDeque::from([pc.root]);
    while let Some(q) = queue.pop_front() {
        let zq = potentials[&q].clone();
        for &l in &tree {
            let (u, w) = (skel.from[l], skel.to[l]);
            if w == q && !potentials.contains_key(&u) {
                potentials.insert(u, skel.a[l].add(&zq));
                queue.push_back(u);
            } else if u == q && !potentials.contains_key(&w) {
                potentials.insert(w, zq.sub(&skel.a[l]));
                queue.push_back(w);
            }
        }
    }
    let mut data = ContractedData {
        polys: BTreeMap::new(),
        edge_vectors: BTreeMap::new(),
        potentials,
        dangling: BTreeSet::new(),
    };
    for l in 0..skel.len() {
        let Some(zo) = data.potentials.get(&skel.from[l]) else {
            continue;
        };
        data.polys.insert(l, f.0[l].mul_monomial(zo));
        let ev = match data.potentials.get(&skel.to[l]) {
            Some(zd) => skel.a[l].add(zd).sub(zo),
            None => {
                data.dangling.insert(l);
                ExpVec::zero(skel.n)
            }
        };
        data.edge_vectors.insert(l, ev);
    }
    Ok(data)
}

/// `(M_v, O_v)` for the contracted data. Labels with a zero contracted
/// polynomial never belong to `M_v`.
pub fn argmax_sets(data: &ContractedData, v: &Direction) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let degs: Vec<(usize, i64)> =
        data.polys.iter().filter_map(|(&l, p)| p.deg(v).map(|d| (l, d))).collect();
    let max = degs.iter().map(|&(_, d)| d).max();
    let m = degs.iter().filter(|&&(_, d)| Some(d) == max).map(|&(l, _)| l).collect();
    let o = data.edge_vectors.iter().filter(|(_, a)| v.dot(&a.0) != 0).map(|(&l, _)| l).collect();
    (m, o)
}

/// Representative directions on which `M_v` and `O_v` are constant.
pub fn contraction_directions(data: &ContractedData, n: usize) -> Result<Vec<Direction>> {
    let polytopes = data
        .polys
        .values()
        .filter(|p| !p.is_zero())
        .map(|p| p.newton_polytope())
        .collect::<Result<Vec<_>>>()?;
    let normals: BTreeSet<Vec<i64>> =
        data.edge_vectors.values().filter(|a| !a.is_zero()).map(|a| a.0.clone()).collect();
    direction_cells(&polytopes, &normals.into_iter().collect::<Vec<_>>(), n)
}

/// The first contraction and direction violating the criterion, scanning
/// `contractions` in order. Contractions whose polynomials all vanish are
/// skipped.
pub fn find_violation(
    skel: &Skeleton,
    f: &PositionPolys,
    contractions: &[PartialContraction],
) -> Result<Option<Violation>> {
    if skel.n == 0 {
        return Ok(None);
    }
    for pc in contractions {
        let data = contract(skel, f, pc)?;
        if data.polys.values().all(|p| p.is_zero()) {
            continue;
        }
        for v in contraction_directions(&data, skel.n)? {
            let (m, o) = argmax_sets(&data, &v);
            if !m.iter().any(|l| o.contains(l) || data.dangling.contains(l)) {
                return Ok(Some(Violation { contraction: pc.clone(), data, direction: v }));
            }
        }
    }
    Ok(None)
}

/// Whether `(O_v ∪ dangling) ∩ M_v ≠ ∅` for every partial contraction and
/// every nonzero direction. Supported for `n ≤ 3`.
pub fn accessibility_condition(skel: &Skeleton, f: &PositionPolys) -> Result<bool> {
    let pcs = enumerate_contractions(skel)?;
    Ok(find_violation(skel, f, &pcs)?.is_none())
}
