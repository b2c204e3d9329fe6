//! A-graphs: finite labeled multigraphs over the lattice union
//! `Λ₁ ⊔ … ⊔ Λ_s`, where `Λᵢ = {bᵢ} × Zⁿ`.
//!
//! An edge with label `ℓ` starts at `(b_{Ω(ℓ)}, z)` and ends at
//! `(b_{Δ(ℓ)}, z + a_ℓ)`; it represents the module element `X^z·y_ℓ`. The
//! position polynomial `f_ℓ` records the source coordinates of the label-`ℓ`
//! edges with multiplicity, so an A-graph and its position polynomials carry
//! the same information once the automaton is fixed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactgeom::{convex_hull, convex_hull_faces, minkowski_sum, Polytope};
use crate::fpmodule::ModElem;
use crate::groupauto::{Run, SdAutomaton};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::{Error, Int, Rat, Result};

/// The combinatorial shape of an automaton over `Y ⋊ Zⁿ`: states,
/// endpoints and `Zⁿ`-parts of the transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub states: usize,
    pub n: usize,
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub a: Vec<ExpVec>,
}

impl Skeleton {
    pub fn new(states: usize, n: usize, transitions: Vec<(usize, usize, ExpVec)>) -> Result<Self> {
        let mut s = Skeleton { states, n, from: vec![], to: vec![], a: vec![] };
        for (f, t, a) in transitions {
            if f >= states || t >= states {
                return Err(Error::Invalid("transition endpoint out of range".into()));
            }
            crate::error::check_dim(n, a.len())?;
            s.from.push(f);
            s.to.push(t);
            s.a.push(a);
        }
        Ok(s)
    }

    pub fn of(aut: &SdAutomaton) -> Self {
        Skeleton {
            states: aut.states(),
            n: aut.group().n(),
            from: aut.transitions().iter().map(|t| t.from).collect(),
            to: aut.transitions().iter().map(|t| t.to).collect(),
            a: aut.transitions().iter().map(|t| t.ev.a.clone()).collect(),
        }
    }

    /// Number of transitions `t`.
    pub fn len(&self) -> usize {
        self.from.len()
    }

    pub fn is_empty(&self) -> bool {
        self.from.is_empty()
    }
}

/// A vertex `(b_lattice, coord)`.
pub type Vertex = (usize, ExpVec);

/// An edge of an A-graph; its target is derived from the skeleton.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lattice: usize,
    pub coord: ExpVec,
    pub label: usize,
}

/// An A-graph with parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AGraph {
    skeleton: Skeleton,
    edges: Vec<Edge>,
}

/// The tuple `(f₁, …, f_t)` of position polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionPolys(pub Vec<LaurentPoly>);

/// The three properties characterized by polynomial identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralFlags {
    pub full_image: bool,
    pub symmetric: bool,
    pub represents_zero: bool,
}

impl PositionPolys {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every label occurs, i.e. every `f_ℓ ≠ 0`.
    pub fn is_full_image(&self) -> bool {
        self.0.iter().all(|f| !f.is_zero())
    }

    /// The identities `Σ_{Ω(ℓ)=i} f_ℓ = Σ_{Δ(ℓ)=i} f_ℓ·X^{a_ℓ}` for every state.
    pub fn is_symmetric(&self, skel: &Skeleton) -> bool {
        (0..skel.states).all(|i| {
            let mut diff = LaurentPoly::zero(skel.n);
            for (l, f) in self.0.iter().enumerate() {
                if skel.from[l] == i {
                    diff = &diff + f;
                }
                if skel.to[l] == i {
                    diff = &diff - &f.mul_monomial(&skel.a[l]);
                }
            }
            diff.is_zero()
        })
    }

    /// `Σ f_ℓ · y_ℓ` in the automaton's module.
    pub fn represented_element(&self, aut: &SdAutomaton) -> ModElem {
        let g = aut.group();
        let m = g.module();
        self.0
            .iter()
            .zip(aut.transitions())
            .fold(m.zero(), |acc, (f, t)| m.add(&acc, &g.act_poly(f, &t.ev.y)))
    }

    /// Largest coefficient over all entries.
    pub fn max_coefficient(&self) -> Int {
        self.0.iter().map(|f| f.max_abs_coeff()).max().unwrap_or_else(Int::zero)
    }
}

impl std::fmt::Display for PositionPolys {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl AGraph {
    /// Validates that every edge sits in the lattice of its label's source.
    pub fn new(skeleton: Skeleton, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.label >= skeleton.len() {
                return Err(Error::Invalid(format!("edge label {} out of range", e.label + 1)));
            }
            if e.lattice != skeleton.from[e.label] {
                return Err(Error::Invalid(format!(
                    "edge with label {} must start in lattice {}",
                    e.label + 1,
                    skeleton.from[e.label] + 1
                )));
            }
            crate::error::check_dim(skeleton.n, e.coord.len())?;
        }
        Ok(AGraph { skeleton, edges })
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self, e: &Edge) -> Vertex {
        (e.lattice, e.coord.clone())
    }

    pub fn target(&self, e: &Edge) -> Vertex {
        (self.skeleton.to[e.label], e.coord.add(&self.skeleton.a[e.label]))
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| [self.source(e), self.target(e)]).collect()
    }

    /// The edge multiset in sorted order, for comparisons.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut v = self.edges.clone();
        v.sort();
        v
    }

    pub fn position_polynomials(&self) -> PositionPolys {
        let mut f = vec![LaurentPoly::zero(self.skeleton.n); self.skeleton.len()];
        for e in &self.edges {
            f[e.label].add_term(e.coord.clone(), Int::one());
        }
        PositionPolys(f)
    }

    /// `Γ + (0^s, z)`.
    pub fn translate(&self, z: &ExpVec) -> AGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { lattice: e.lattice, coord: e.coord.add(z), label: e.label })
            .collect();
        AGraph { skeleton: self.skeleton.clone(), edges }
    }

    /// The multiset union `Σ_z Γ + (0^s, z)`.
    pub fn union_of_translations(&self, zs: &[ExpVec]) -> AGraph {
        let edges = zs.iter().flat_map(|z| self.translate(z).edges).collect();
        AGraph { skeleton: self.skeleton.clone(), edges }
    }

    /// In-degree equals out-degree at every vertex.
    pub fn is_symmetric_by_degrees(&self) -> bool {
        let mut balance: BTreeMap<Vertex, i64> = BTreeMap::new();
        for e in &self.edges {
            *balance.entry(self.source(e)).or_default() += 1;
            *balance.entry(self.target(e)).or_default() -= 1;
        }
        balance.values().all(|&b| b == 0)
    }

    /// Weak connectivity of the underlying undirected graph (an empty graph
    /// counts as disconnected).
    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        let Some(start) = verts.iter().next().cloned() else {
            return false;
        };
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in &self.edges {
            let (s, t) = (self.source(e), self.target(e));
            adj.entry(s.clone()).or_default().push(t.clone());
            adj.entry(t).or_default().push(s);
        }
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen.len() == verts.len()
    }

    /// Points of `V(Γ)` embedded in `Z^{s+n}`.
    fn embedded_vertices(&self) -> Vec<Vec<Rat>> {
        let s = self.skeleton.states;
        self.vertices()
            .iter()
            .map(|(i, z)| {
                let mut p = vec![Rat::zero(); s + self.skeleton.n];
                p[*i] = Rat::one();
                for (k, &x) in z.0.iter().enumerate() {
                    p[s + k] = Rat::from_integer(Int::from(x));
                }
                p
            })
            .collect()
    }

    /// Whether every strict face of `conv(V(Γ))` has an edge whose source
    /// lies on the face and whose target does not.
    pub fn face_accessible_geometric(&self) -> Result<bool> {
        let verts: Vec<Vertex> = self.vertices().into_iter().collect();
        if verts.is_empty() {
            return Ok(true);
        }
        let (_, faces) = convex_hull_faces(&self.embedded_vertices())?;
        let index: BTreeMap<&Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let ends: Vec<(usize, usize)> =
            self.edges.iter().map(|e| (index[&self.source(e)], index[&self.target(e)])).collect();
        Ok(faces.iter().all(|face| {
            let on: BTreeSet<usize> = face.points.iter().copied().collect();
            ends.iter().any(|(s, t)| on.contains(s) && !on.contains(t))
        }))
    }

    /// An Euler circuit starting at `(b₁, z₀)`, where `z₀` is the
    /// lexicographically smallest coordinate of a lattice-1 vertex, read as
    /// a run. Edges are taken smallest label first. `None` unless the graph
    /// is nonempty, symmetric, connected and meets lattice 1.
    pub fn euler_circuit(&self) -> Option<Run> {
        if self.edges.is_empty() || !self.is_symmetric_by_degrees() || !self.is_connected() {
            return None;
        }
        let start = self.vertices().into_iter().filter(|(i, _)| *i == 0).min_by(|x, y| x.1 .0.cmp(&y.1 .0))?;
        let mut out: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&x, &y| self.edges[x].label.cmp(&self.edges[y].label).then(x.cmp(&y)));
        for &k in order.iter().rev() {
            out.entry(self.source(&self.edges[k])).or_default().push(k);
        }
        // Iterative Hierholzer: `stack` holds (vertex, edge used to reach it).
        let mut stack: Vec<(Vertex, Option<usize>)> = vec![(start, None)];
        let mut circuit: Vec<usize> = Vec::with_capacity(self.edges.len());
        while let Some((v, via)) = stack.last().cloned() {
            match out.get_mut(&v).and_then(|list| list.pop()) {
                Some(k) => stack.push((self.target(&self.edges[k]), Some(k))),
                None => {
                    stack.pop();
                    if let Some(k) = via {
                        circuit.push(k);
                    }
                }
            }
        }
        circuit.reverse();
        Some(Run(circuit.iter().map(|&k| self.edges[k].label).collect()))
    }
}

/// The A-graph of an accepting run: edge `j` starts at
/// `(b_{Ω(ℓⱼ)}, a_{ℓ₁} + … + a_{ℓ_{j−1}})`.
pub fn graph_of_run(aut: &SdAutomaton, run: &Run) -> Result<AGraph> {
    if !aut.is_accepting(run) {
        return Err(Error::Invalid("graph_of_run needs an accepting run".into()));
    }
    let skel = Skeleton::of(aut);
    let mut z = ExpVec::zero(skel.n);
    let mut edges = Vec::with_capacity(run.0.len());
    for &l in &run.0 {
        edges.push(Edge { lattice: skel.from[l], coord: z.clone(), label: l });
        z = z.add(&skel.a[l]);
    }
    Ok(AGraph { skeleton: skel, edges })
}

/// The A-graph with `c` parallel label-`ℓ` edges at `(b_{Ω(ℓ)}, z)` for each
/// term `c·X^z` of `f_ℓ`.
pub fn graph_of_polys(skel: &Skeleton, f: &PositionPolys) -> Result<AGraph> {
    crate::error::check_dim(skel.len(), f.len())?;
    let mut edges = Vec::new();
    for (l, p) in f.0.iter().enumerate() {
        crate::error::check_dim(skel.n, p.nvars())?;
        for (z, c) in p.terms() {
            if c.is_negative() {
                return Err(Error::Invalid(format!(
                    "position polynomial {} has a negative coefficient",
                    l + 1
                )));
            }
            let count = c
                .to_usize()
                .filter(|&k| k <= 1_000_000)
                .ok_or_else(|| Error::Unsupported("coefficient too large to realize as edges".into()))?;
            for _ in 0..count {
                edges.push(Edge { lattice: skel.from[l], coord: z.clone(), label: l });
            }
        }
    }
    Ok(AGraph { skeleton: skel.clone(), edges })
}

/// `Σ_e X^{π(σ(e))}·y_{λ(e)}`, summed edge by edge.
pub fn represented_element(aut: &SdAutomaton, g: &AGraph) -> ModElem {
    let grp = aut.group();
    let m = grp.module();
    g.edges
        .iter()
        .fold(m.zero(), |acc, e| m.add(&acc, &grp.act(&e.coord, &aut.transitions()[e.label].ev.y)))
}

/// Full-image, symmetric and represents-zero flags. Symmetry is computed by
/// degree counting and by the polynomial identities, which must agree.
pub fn structural_flags(aut: &SdAutomaton, g: &AGraph) -> StructuralFlags {
    let f = g.position_polynomials();
    let symmetric = g.is_symmetric_by_degrees();
    debug_assert_eq!(symmetric, f.is_symmetric(g.skeleton()));
    let rep = represented_element(aut, g);
    debug_assert_eq!(rep, f.represented_element(aut));
    StructuralFlags {
        full_image: f.is_full_image(),
        symmetric,
        represents_zero: aut.group().module().is_zero(&rep),
    }
}

/// Outcome of [`eulerian_union_search`].
#[derive(Debug, Clone)]
pub enum UnionSearch {
    Found {
        /// Translation vectors `z` (already shifted so `(b₁, 0ⁿ)` is a vertex).
        translations: Vec<ExpVec>,
        union: AGraph,
        circuit: Run,
    },
    Exhausted,
}

const MAX_TRANSLATIONS: usize = 4096;

/// Searches for a connected union of translations of a full-image,
/// symmetric, face-accessible graph.
///
/// The graph itself is tried first. Then for `N = 1..=n_max` all integer
/// points of `N·C` are used, with `C` the Minkowski sum of the per-lattice
/// hulls. On success translations are pruned greedily (largest first) while
/// the union stays connected, the union is shifted so that its smallest
/// lattice-1 coordinate becomes `0ⁿ`, and an Euler circuit is extracted.
pub fn eulerian_union_search(g: &AGraph, n_max: usize) -> Result<UnionSearch> {
    let skel = g.skeleton();
    let f = g.position_polynomials();
    if !f.is_full_image() || !g.is_symmetric_by_degrees() {
        return Err(Error::Invalid("union search needs a full-image symmetric graph".into()));
    }
    if skel.states + skel.n <= 5 && !g.face_accessible_geometric()? {
        return Err(Error::Invalid("union search needs a face-accessible graph".into()));
    }
    let zero = ExpVec::zero(skel.n);
    let mut found = if g.is_connected() { Some(vec![zero.clone()]) } else { None };
    if found.is_none() && skel.n > 0 {
        let c = lattice_hull_sum(g)?;
        for big_n in 1..=n_max {
            let pts = c.scale(&Rat::from_integer(Int::from(big_n))).integer_points();
            if pts.len() > MAX_TRANSLATIONS {
                break;
            }
            let zs: Vec<ExpVec> = pts
                .iter()
                .map(|p| ExpVec(p.iter().map(|x| x.to_i64().expect("small coordinate")).collect()))
                .collect();
            if g.union_of_translations(&zs).is_connected() {
                found = Some(zs);
                break;
            }
        }
    }
    let Some(mut zs) = found else {
        return Ok(UnionSearch::Exhausted);
    };
    zs.sort();
    let mut k = zs.len();
    while k > 0 {
        k -= 1;
        if zs.len() > 1 {
            let mut trial = zs.clone();
            trial.remove(k);
            if g.union_of_translations(&trial).is_connected() {
                zs = trial;
            }
        }
    }
    let union = g.union_of_translations(&zs);
    let z0 = union
        .vertices()
        .into_iter()
        .filter(|(i, _)| *i == 0)
        .map(|(_, z)| z)
        .min_by(|x, y| x.0.cmp(&y.0))
        .ok_or_else(|| Error::Invalid("graph has no vertex in the first lattice".into()))?;
    let zs: Vec<ExpVec> = zs.iter().map(|z| z.sub(&z0)).collect();
    let union = g.union_of_translations(&zs);
    let circuit = union.euler_circuit().expect("connected symmetric union is Eulerian");
    Ok(UnionSearch::Found { translations: zs, union, circuit })
}

/// `C₁ + … + C_s`, the Minkowski sum of the hulls of the vertex coordinates
/// in each lattice.
fn lattice_hull_sum(g: &AGraph) -> Result<Polytope> {
    let mut per: BTreeMap<usize, Vec<Vec<Rat>>> = BTreeMap::new();
    for (i, z) in g.vertices() {
        per.entry(i)
            .or_default()
            .push(z.0.iter().map(|&x| Rat::from_integer(Int::from(x))).collect());
    }
    let mut acc: Option<Polytope> = None;
    for pts in per.values() {
        let h = convex_hull(pts)?;
        acc = Some(match acc {
            None => h,
            Some(p) => minkowski_sum(&p, &h)?,
        });
    }
    acc.ok_or_else(|| Error::Invalid("empty graph".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmodule::ModulePresentation;
    use crate::groupauto::{Automaton, Transition};
    use crate::semidirect::SemidirectGroup;

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 1).unwrap()
    }

    fn skel(ts: &[(usize, usize, i64)], states: usize) -> Skeleton {
        Skeleton::new(states, 1, ts.iter().map(|&(f, t, a)| (f, t, ExpVec(vec![a]))).collect()).unwrap()
    }

    fn y0_automaton(ts: &[(usize, usize, i64)], states: usize) -> SdAutomaton {
        let g = SemidirectGroup::new(ModulePresentation::trivial(1));
        let trs = ts
            .iter()
            .map(|&(f, t, a)| Transition { from: f, to: t, ev: g.translation(ExpVec(vec![a])) })
            .collect();
        Automaton::new(g, states, trs).unwrap()
    }

    fn polys(s: &[&str]) -> PositionPolys {
        PositionPolys(s.iter().map(|x| lp(x)).collect())
    }

    #[test]
    fn figure_three_position_polynomials() {
        // q1 -1-> q2, q2 -2-> q2, q2 -3-> q3, q3 -4-> q1 with a = (1,1,-1,-1).
        let a = y0_automaton(&[(0, 1, 1), (1, 1, 1), (1, 2, -1), (2, 0, -1)], 3);
        let g = graph_of_run(&a, &Run(vec![0, 1, 1, 2, 3])).unwrap();
        assert_eq!(g.position_polynomials(), polys(&["1", "X1 + X1^2", "X1^3", "X1^2"]));
        let back = graph_of_polys(g.skeleton(), &g.position_polynomials()).unwrap();
        assert_eq!(back.sorted_edges(), g.sorted_edges());
        assert!(structural_flags(&a, &g).full_image);
    }

    #[test]
    fn parallel_edges_from_coefficients() {
        let s = skel(&[(0, 0, 0)], 1);
        let g = graph_of_polys(&s, &polys(&["2*X1"])).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert!(graph_of_polys(&s, &polys(&["-X1"])).is_err());
    }

    #[test]
    fn symmetric_two_loops() {
        let s = skel(&[(0, 0, 1), (0, 0, -1)], 1);
        let f = polys(&["1", "X1"]);
        assert!(f.is_symmetric(&s));
        let g = graph_of_polys(&s, &f).unwrap();
        assert!(g.is_symmetric_by_degrees());
        assert!(g.face_accessible_geometric().unwrap());
        assert_eq!(g.euler_circuit(), Some(Run(vec![0, 1])));
    }

    #[test]
    fn identity_loop_flags() {
        let a = y0_automaton(&[(0, 0, 0)], 1);
        let g = graph_of_run(&a, &Run(vec![0])).unwrap();
        let fl = structural_flags(&a, &g);
        assert!(fl.full_image && fl.symmetric && fl.represents_zero);
        assert!(g.face_accessible_geometric().unwrap());
        assert_eq!(g.euler_circuit(), Some(Run(vec![0])));
    }

    #[test]
    fn disjoint_cycles_union() {
        let s = skel(&[(0, 0, 1), (0, 0, -1)], 1);
        let g = graph_of_polys(&s, &polys(&["1 + X1^3", "X1 + X1^4"])).unwrap();
        assert!(!g.is_connected());
        assert!(g.euler_circuit().is_none());
        assert!(g.face_accessible_geometric().unwrap());
        let UnionSearch::Found { translations, union, circuit } = eulerian_union_search(&g, 4).unwrap() else {
            panic!("expected a connected union");
        };
        assert_eq!(translations, vec![ExpVec(vec![0]), ExpVec(vec![1]), ExpVec(vec![2])]);
        assert!(union.is_connected());
        assert_eq!(circuit.0.len(), union.edges().len());
    }

    #[test]
    fn non_accessible_loop() {
        let s = skel(&[(0, 0, 0)], 1);
        let g = graph_of_polys(&s, &polys(&["1 + X1^2"])).unwrap();
        assert!(!g.face_accessible_geometric().unwrap());
        assert!(eulerian_union_search(&g, 2).is_err());
    }

    #[test]
    fn wreath_witness_circuit() {
        let m = ModulePresentation::free(1, 1);
        let g = SemidirectGroup::new(m);
        let e = |y: &str, a: i64| g.element(vec![lp(y)], vec![a]).unwrap();
        let trs = vec![
            Transition { from: 0, to: 0, ev: e("1", 0) },
            Transition { from: 0, to: 0, ev: e("-1", 0) },
            Transition { from: 0, to: 0, ev: e("0", 1) },
            Transition { from: 0, to: 0, ev: e("0", -1) },
        ];
        let a = Automaton::new(g.clone(), 1, trs).unwrap();
        let f = polys(&["1", "1", "1", "X1"]);
        let gr = graph_of_polys(&Skeleton::of(&a), &f).unwrap();
        let fl = structural_flags(&a, &gr);
        assert!(fl.full_image && fl.symmetric && fl.represents_zero);
        let circuit = gr.euler_circuit().unwrap();
        assert_eq!(circuit, Run(vec![0, 1, 2, 3]));
        assert!(g.is_identity(&a.evaluate_run(&circuit).unwrap()));
    }

    #[test]
    fn translation_scales_represented_element() {
        let m = ModulePresentation::free(1, 1);
        let g = SemidirectGroup::new(m);
        let a = Automaton::new(
            g.clone(),
            1,
            vec![Transition { from: 0, to: 0, ev: g.element(vec![lp("1 + X1")], vec![1]).unwrap() }],
        )
        .unwrap();
        let gr = graph_of_run(&a, &Run(vec![0, 0])).unwrap();
        let z = ExpVec(vec![3]);
        let shifted = represented_element(&a, &gr.translate(&z));
        assert_eq!(shifted, g.act(&z, &represented_element(&a, &gr)));
        assert_eq!(represented_element(&a, &gr), a.evaluate_run(&Run(vec![0, 0])).unwrap().y);
    }

    use crate::groupauto::Group;
}
