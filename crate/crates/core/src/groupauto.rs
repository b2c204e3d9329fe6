//! Automata over groups.
//!
//! An [`Automaton`] has states `0..states`; state `0` (written `q₁` in the
//! documentation) is both the only initial and the only accepting state.
//! Each transition carries a group element, and the automaton recognizes the
//! set of evaluations of its accepting runs, which is a semigroup.
//!
//! Indices are zero-based in the API and one-based in JSON files.

use std::collections::VecDeque;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::exactgeom::{hermite_normal_form, IntMatrix};
use crate::laurent::ExpVec;
use crate::semidirect::{SemidirectElem, SemidirectGroup};
use crate::{Error, Int, Rat, Result};

/// A group whose elements have canonical representations.
pub trait Group: Clone + Debug {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }
}

/// A labeled transition `from → to` carrying `ev`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition<E> {
    pub from: usize,
    pub to: usize,
    pub ev: E,
}

/// A sequence of transition labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run(pub Vec<usize>);

/// An automaton over the group `G`.
#[derive(Debug, Clone)]
pub struct Automaton<G: Group> {
    group: G,
    states: usize,
    transitions: Vec<Transition<G::Elem>>,
}

/// An automaton derived from another by keeping some states and transitions,
/// with maps back to the original indices.
#[derive(Debug, Clone)]
pub struct Restricted<G: Group> {
    pub automaton: Automaton<G>,
    /// `state_map[new] = old`.
    pub state_map: Vec<usize>,
    /// `label_map[new] = old`.
    pub label_map: Vec<usize>,
}

impl<G: Group> Restricted<G> {
    /// Translates a run of the restricted automaton into original labels.
    pub fn lift_run(&self, run: &Run) -> Run {
        Run(run.0.iter().map(|&l| self.label_map[l]).collect())
    }
}

impl<G: Group> Automaton<G> {
    pub fn new(group: G, states: usize, transitions: Vec<Transition<G::Elem>>) -> Result<Self> {
        if states == 0 {
            return Err(Error::Invalid("an automaton needs at least one state".into()));
        }
        for (l, t) in transitions.iter().enumerate() {
            if t.from >= states || t.to >= states {
                return Err(Error::Invalid(format!(
                    "transition {} refers to a state outside 1..={states}",
                    l + 1
                )));
            }
        }
        Ok(Automaton { group, states, transitions })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn transitions(&self) -> &[Transition<G::Elem>] {
        &self.transitions
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    fn reach(&self, allowed: &[bool], backward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.states];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for (l, t) in self.transitions.iter().enumerate() {
                if !allowed[l] {
                    continue;
                }
                let (src, dst) = if backward { (t.to, t.from) } else { (t.from, t.to) };
                if src == q && !seen[dst] {
                    seen[dst] = true;
                    queue.push_back(dst);
                }
            }
        }
        seen
    }

    /// Labels of the transitions lying on some accepting run that only uses
    /// labels in `allowed`.
    fn useful(&self, allowed: &[bool]) -> Vec<bool> {
        let fwd = self.reach(allowed, false);
        let bwd = self.reach(allowed, true);
        self.transitions
            .iter()
            .enumerate()
            .map(|(l, t)| allowed[l] && fwd[t.from] && bwd[t.to])
            .collect()
    }

    /// Whether every state and every transition lies on an accepting run.
    pub fn is_trim(&self) -> bool {
        let all = vec![true; self.len()];
        let useful = self.useful(&all);
        if self.is_empty() || useful.iter().any(|u| !u) {
            return false;
        }
        let mut touched = vec![false; self.states];
        for t in &self.transitions {
            touched[t.from] = true;
            touched[t.to] = true;
        }
        touched.iter().all(|&x| x)
    }

    /// Keeps exactly the transitions on accepting runs. `None` means the
    /// recognized language is empty.
    pub fn trim(&self) -> Option<Restricted<G>> {
        let all = vec![true; self.len()];
        let keep = self.useful(&all);
        let labels: Vec<usize> = (0..self.len()).filter(|&l| keep[l]).collect();
        if labels.is_empty() {
            None
        } else {
            Some(self.restrict(&labels))
        }
    }

    /// Sub-automaton on the given labels (which must form a trim set),
    /// states renumbered in breadth-first order from state 0.
    pub fn restrict(&self, labels: &[usize]) -> Restricted<G> {
        let mut order = vec![0usize];
        let mut index = vec![usize::MAX; self.states];
        index[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for &l in labels {
                let t = &self.transitions[l];
                for (a, b) in [(t.from, t.to), (t.to, t.from)] {
                    if a == q && index[b] == usize::MAX {
                        index[b] = order.len();
                        order.push(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        let transitions = labels
            .iter()
            .map(|&l| {
                let t = &self.transitions[l];
                Transition { from: index[t.from], to: index[t.to], ev: t.ev.clone() }
            })
            .collect();
        Restricted {
            automaton: Automaton { group: self.group.clone(), states: order.len(), transitions },
            state_map: order,
            label_map: labels.to_vec(),
        }
    }

    /// Whether `run` is a nonempty chained path from state 0 back to state 0.
    pub fn is_accepting(&self, run: &Run) -> bool {
        self.path_endpoints(run) == Some((0, 0))
    }

    fn path_endpoints(&self, run: &Run) -> Option<(usize, usize)> {
        let first = *run.0.first()?;
        let mut cur = self.transitions.get(first)?.from;
        let start = cur;
        for &l in &run.0 {
            let t = self.transitions.get(l)?;
            if t.from != cur {
                return None;
            }
            cur = t.to;
        }
        Some((start, cur))
    }

    /// Product of the transition evaluations along a chained path.
    pub fn evaluate_run(&self, run: &Run) -> Result<G::Elem> {
        if self.path_endpoints(run).is_none() {
            return Err(Error::Invalid("run is empty, out of range, or not chained".into()));
        }
        Ok(run
            .0
            .iter()
            .fold(self.group.identity(), |acc, &l| self.group.mul(&acc, &self.transitions[l].ev)))
    }

    /// `A±`: adds, for each transition `ℓ`, the reversed transition `t + ℓ`
    /// carrying the inverse evaluation.
    pub fn plus_minus(&self) -> Automaton<G> {
        let mut transitions = self.transitions.clone();
        for t in &self.transitions {
            transitions.push(Transition { from: t.to, to: t.from, ev: self.group.inv(&t.ev) });
        }
        Automaton { group: self.group.clone(), states: self.states, transitions }
    }

    fn require_trim(&self) -> Result<()> {
        if self.is_trim() {
            Ok(())
        } else {
            Err(Error::Invalid("operation requires a trim automaton".into()))
        }
    }

    /// Shortest paths from every state back to state 0 (label sequences),
    /// ties broken by label order.
    fn paths_to_start(&self) -> Vec<Vec<usize>> {
        let mut paths: Vec<Option<Vec<usize>>> = vec![None; self.states];
        paths[0] = Some(vec![]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            for (l, t) in self.transitions.iter().enumerate() {
                if t.to == q && paths[t.from].is_none() {
                    let mut p = vec![l];
                    p.extend(paths[q].clone().unwrap());
                    paths[t.from] = Some(p);
                    queue.push_back(t.from);
                }
            }
        }
        paths.into_iter().map(|p| p.unwrap_or_default()).collect()
    }

    /// Conjugates every transition so that the recognized semigroup is
    /// unchanged while state-to-start paths evaluate to the identity:
    /// `ev'(ℓ) = B_{from}⁻¹ · ev(ℓ) · B_{to}` with `B_i` the evaluation of a
    /// shortest path from `i` to state 0.
    pub fn rebase(&self) -> Result<Automaton<G>> {
        self.require_trim()?;
        let b: Vec<G::Elem> = self
            .paths_to_start()
            .iter()
            .map(|p| {
                p.iter()
                    .fold(self.group.identity(), |acc, &l| self.group.mul(&acc, &self.transitions[l].ev))
            })
            .collect();
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                from: t.from,
                to: t.to,
                ev: self.group.mul(&self.group.mul(&self.group.inv(&b[t.from]), &t.ev), &b[t.to]),
            })
            .collect();
        Ok(Automaton { group: self.group.clone(), states: self.states, transitions })
    }

    /// Every trim sub-automaton (a nonempty transition subset whose
    /// transitions all lie on accepting runs inside the subset), ordered by
    /// size and then lexicographically by label set.
    pub fn enumerate_trim_subautomata(&self) -> Result<Vec<Restricted<G>>> {
        self.require_trim()?;
        let t = self.len();
        if t > 20 {
            return Err(Error::Unsupported(format!(
                "sub-automaton enumeration is limited to 20 transitions, got {t}"
            )));
        }
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1u32 << t) {
            let allowed: Vec<bool> = (0..t).map(|l| mask & (1 << l) != 0).collect();
            let useful = self.useful(&allowed);
            if allowed == useful {
                subsets.push((0..t).filter(|&l| allowed[l]).collect());
            }
        }
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(subsets.iter().map(|s| self.restrict(s)).collect())
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let k = table.len();
        if k == 0 || table.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return Err(Error::Invalid("multiplication table must be square with entries in range".into()));
        }
        let identity = (0..k)
            .find(|&e| (0..k).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("multiplication table has no identity".into()))?;
        for a in 0..k {
            if !(0..k).any(|b| table[a][b] == identity) {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("multiplication table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity })
    }

    /// The cyclic group `Z/k`.
    pub fn cyclic(k: usize) -> Self {
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        FiniteGroup { table, identity: 0 }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Automaton recognizing `S ∩ ker(φ)` where `S` is generated by
/// `generators` and `φ` maps generator `i` to `images[i]` in `f`.
///
/// States are the elements of `f` reachable from the identity by right
/// multiplication with generator images, in breadth-first order; `B_j` is
/// the product of generators along the discovery path of state `j`. The
/// transition for state `j` and generator `i` carries `B_j·A_i·B_{j·i}⁻¹`
/// and is numbered `j·m + i`.
pub fn coset_intersection<G: Group>(
    group: G,
    generators: &[G::Elem],
    f: &FiniteGroup,
    images: &[usize],
) -> Result<Automaton<G>> {
    if generators.len() != images.len() {
        return Err(Error::DimensionMismatch { expected: generators.len(), found: images.len() });
    }
    if generators.is_empty() {
        return Err(Error::Invalid("coset construction needs at least one generator".into()));
    }
    if images.iter().any(|&i| i >= f.order()) {
        return Err(Error::Invalid("generator image outside the finite group".into()));
    }
    let mut states = vec![f.identity()];
    let mut reps = vec![group.identity()];
    let mut index = vec![usize::MAX; f.order()];
    index[f.identity()] = 0;
    let mut j = 0;
    while j < states.len() {
        for (g, &img) in generators.iter().zip(images) {
            let next = f.mul(states[j], img);
            if index[next] == usize::MAX {
                index[next] = states.len();
                states.push(next);
                reps.push(group.mul(&reps[j], g));
            }
        }
        j += 1;
    }
    let mut transitions = Vec::new();
    for (j, &s) in states.iter().enumerate() {
        for (g, &img) in generators.iter().zip(images) {
            let k = index[f.mul(s, img)];
            let ev = group.mul(&group.mul(&reps[j], g), &group.inv(&reps[k]));
            transitions.push(Transition { from: j, to: k, ev });
        }
    }
    Automaton::new(group, states.len(), transitions)
}

/// The one-state automaton whose transitions are the given generators.
pub fn generator_automaton<G: Group>(group: G, generators: &[G::Elem]) -> Result<Automaton<G>> {
    let transitions =
        generators.iter().map(|g| Transition { from: 0, to: 0, ev: g.clone() }).collect();
    Automaton::new(group, 1, transitions)
}

/// A subgroup of `Zⁿ` given by a basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub basis: IntMatrix,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Whether the lattice is all of `Zⁿ`.
    pub fn is_full(&self) -> bool {
        self.basis.rows() == self.basis.cols() && self.basis == IntMatrix::identity(self.basis.cols())
    }
}

/// Result of [`Automaton::primitivize`].
#[derive(Debug, Clone)]
pub struct Primitive {
    pub automaton: SdAutomaton,
    /// `βᵢ`, the exponents (in the input automaton's acting variables) of the
    /// new variables `X̃ᵢ = X^{βᵢ}`.
    pub basis: Vec<ExpVec>,
}

/// Automaton over a semidirect product.
pub type SdAutomaton = Automaton<SemidirectGroup>;

impl Automaton<SemidirectGroup> {
    /// Potentials `z_i ∈ Zⁿ` along a breadth-first undirected spanning tree
    /// rooted at state 0 (`z_0 = 0`, `z_to = z_from + a` on tree edges).
    pub fn potentials(&self) -> Vec<ExpVec> {
        let n = self.group.n();
        let mut z: Vec<Option<ExpVec>> = vec![None; self.states];
        z[0] = Some(ExpVec::zero(n));
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            let zq = z[q].clone().unwrap();
            for t in &self.transitions {
                if t.from == q && z[t.to].is_none() {
                    z[t.to] = Some(zq.add(&t.ev.a));
                    queue.push_back(t.to);
                } else if t.to == q && z[t.from].is_none() {
                    z[t.from] = Some(zq.sub(&t.ev.a));
                    queue.push_back(t.from);
                }
            }
        }
        z.into_iter().map(|x| x.unwrap_or_else(|| ExpVec::zero(n))).collect()
    }

    /// The cycle vectors `a_ℓ + z_to − z_from` for the breadth-first
    /// potentials; they generate the projection lattice.
    pub fn cycle_vectors(&self) -> Vec<ExpVec> {
        let z = self.potentials();
        self.transitions.iter().map(|t| t.ev.a.add(&z[t.to]).sub(&z[t.from])).collect()
    }

    /// The lattice generated by the `Zⁿ`-parts of evaluations of `A±`.
    pub fn projection_lattice(&self) -> Result<Lattice> {
        self.require_trim()?;
        Ok(lattice_of(&self.cycle_vectors(), self.group.n()))
    }

    /// An automaton over `Y ⋊ Z^ñ` whose projection lattice is all of `Z^ñ`
    /// and which recognizes a group exactly when this one does.
    ///
    /// Each evaluation is first conjugated to `(0, z_from)·ev·(0, −z_to)`,
    /// moving every `Zⁿ`-part into the projection lattice `L`; then `L` is
    /// identified with `Z^ñ` through its Hermite basis `β`, and `Z^ñ` acts on
    /// `Y` through `X̃ᵢ = X^{βᵢ}` (restriction of scalars).
    pub fn primitivize(&self) -> Result<Primitive> {
        self.require_trim()?;
        let g = &self.group;
        let n = g.n();
        let z = self.potentials();
        let rebased: Vec<SemidirectElem> = self
            .transitions
            .iter()
            .map(|t| {
                let left = g.translation(z[t.from].clone());
                let right = g.translation(z[t.to].neg());
                g.multiply(&g.multiply(&left, &t.ev), &right)
            })
            .collect();
        let lattice = lattice_of(&rebased.iter().map(|e| e.a.clone()).collect::<Vec<_>>(), n);
        let basis_rows = lattice.basis.to_rows();
        let basis: Vec<ExpVec> = basis_rows
            .iter()
            .map(|r| ExpVec(r.iter().map(|x| i64::try_from(x).expect("small lattice basis")).collect()))
            .collect();
        let new_group = SemidirectGroup::with_basis(
            Arc::clone(g.module_arc()),
            basis.iter().map(|b| b.combine(g.basis(), g.module().nvars())).collect(),
        )?;
        // Coordinates of each a in the basis (rows of the basis matrix).
        let bt: Vec<Vec<Rat>> = (0..n)
            .map(|j| basis_rows.iter().map(|r| Rat::from_integer(r[j].clone())).collect())
            .collect();
        let transitions = self
            .transitions
            .iter()
            .zip(rebased)
            .map(|(t, e)| {
                let rhs: Vec<Rat> = e.a.0.iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
                let coords = crate::exactgeom::solve(&bt, &rhs, basis.len())
                    .expect("rebased vectors lie in the lattice");
                let a = ExpVec(
                    coords
                        .iter()
                        .map(|c| {
                            assert!(c.is_integer(), "lattice coordinates are integral");
                            i64::try_from(c.to_integer()).expect("small coordinates")
                        })
                        .collect(),
                );
                Transition { from: t.from, to: t.to, ev: SemidirectElem { y: e.y, a } }
            })
            .collect();
        Ok(Primitive {
            automaton: Automaton { group: new_group, states: self.states, transitions },
            basis,
        })
    }

    /// Appends loops `(0, h)` and `(0, −h)` at state 0 for each `h`, after
    /// checking that `(0, h)` commutes with every transition evaluation.
    pub fn attach_central_loops(&self, h_gens: &[ExpVec]) -> Result<SdAutomaton> {
        let g = &self.group;
        let mut out = self.clone();
        for h in h_gens {
            crate::error::check_dim(g.n(), h.len())?;
            let c = g.translation(h.clone());
            for t in &self.transitions {
                if g.multiply(&c, &t.ev) != g.multiply(&t.ev, &c) {
                    return Err(Error::Invalid(format!(
                        "(0, {:?}) does not commute with every transition evaluation",
                        h.0
                    )));
                }
            }
            out.transitions.push(Transition { from: 0, to: 0, ev: c });
            out.transitions.push(Transition { from: 0, to: 0, ev: g.translation(h.neg()) });
        }
        Ok(out)
    }
}

fn lattice_of(vectors: &[ExpVec], n: usize) -> Lattice {
    let rows: Vec<Vec<Int>> = vectors.iter().map(|v| v.0.iter().map(|&x| Int::from(x)).collect()).collect();
    let m = IntMatrix::from_rows(&rows, n).expect("vectors have length n");
    Lattice { basis: hermite_normal_form(&m) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmodule::ModulePresentation;
    use crate::laurent::LaurentPoly;

    fn z1() -> SemidirectGroup {
        SemidirectGroup::new(ModulePresentation::trivial(1))
    }

    fn loops(a: &[i64]) -> SdAutomaton {
        let g = z1();
        let ts = a
            .iter()
            .map(|&x| Transition { from: 0, to: 0, ev: g.translation(ExpVec(vec![x])) })
            .collect();
        Automaton::new(g, 1, ts).unwrap()
    }

    fn tr(g: &SemidirectGroup, from: usize, to: usize, a: i64) -> Transition<SemidirectElem> {
        Transition { from, to, ev: g.translation(ExpVec(vec![a])) }
    }

    #[test]
    fn trim_examples() {
        let a = loops(&[1, -1]);
        let t = a.trim().unwrap();
        assert_eq!(t.label_map, vec![0, 1]);
        assert!(t.automaton.is_trim());

        let g = z1();
        let b = Automaton::new(g.clone(), 3, vec![tr(&g, 0, 0, 1), tr(&g, 2, 0, 1)]).unwrap();
        let t = b.trim().unwrap();
        assert_eq!(t.automaton.states(), 1);
        assert_eq!(t.label_map, vec![0]);

        let empty = Automaton::new(g.clone(), 1, vec![]).unwrap();
        assert!(empty.trim().is_none());
        let dead = Automaton::new(g.clone(), 2, vec![tr(&g, 0, 1, 1)]).unwrap();
        assert!(dead.trim().is_none());
    }

    #[test]
    fn run_evaluation() {
        let a = loops(&[1, -1]);
        let g = a.group().clone();
        assert_eq!(a.evaluate_run(&Run(vec![0])).unwrap(), g.translation(ExpVec(vec![1])));
        assert!(g.is_identity(&a.evaluate_run(&Run(vec![0, 1])).unwrap()));
        let b = Automaton::new(g.clone(), 2, vec![tr(&g, 0, 1, 1), tr(&g, 1, 0, 1)]).unwrap();
        assert!(b.evaluate_run(&Run(vec![0, 0])).is_err());
        assert!(b.evaluate_run(&Run(vec![])).is_err());
        assert!(b.is_accepting(&Run(vec![0, 1])));
        assert!(!b.is_accepting(&Run(vec![0])));
    }

    #[test]
    fn plus_minus_doubles() {
        let a = loops(&[3]);
        let pm = a.plus_minus();
        assert_eq!(pm.len(), 2);
        assert!(pm.group().is_identity(&pm.evaluate_run(&Run(vec![0, 1])).unwrap()));
    }

    #[test]
    fn projection_lattices() {
        assert!(loops(&[1, -1]).projection_lattice().unwrap().is_full());
        let l = loops(&[2]).projection_lattice().unwrap();
        assert_eq!(l.basis, IntMatrix::from_i64(&[&[2]]));
        assert_eq!(loops(&[0]).projection_lattice().unwrap().rank(), 0);
    }

    #[test]
    fn primitivize_examples() {
        let p = loops(&[1, -1]).primitivize().unwrap();
        assert_eq!(p.basis, vec![ExpVec(vec![1])]);
        assert!(p.automaton.group().is_standard());

        let p = loops(&[0]).primitivize().unwrap();
        assert_eq!(p.automaton.group().n(), 0);

        let p = loops(&[2]).primitivize().unwrap();
        assert_eq!(p.basis, vec![ExpVec(vec![2])]);
        assert_eq!(p.automaton.transitions()[0].ev.a, ExpVec(vec![1]));
        assert!(p.automaton.projection_lattice().unwrap().is_full());
    }

    #[test]
    fn primitivize_zeroes_tree_edges() {
        // q1 → q2 → q1 with a = ±(1, 2) and a loop (0, 1): L = 0 × Z.
        let g = SemidirectGroup::new(ModulePresentation::trivial(2));
        let t = |from, to, a: [i64; 2]| Transition { from, to, ev: g.translation(ExpVec(a.to_vec())) };
        let a = Automaton::new(g.clone(), 2, vec![t(0, 1, [1, 2]), t(1, 0, [-1, -2]), t(0, 0, [0, 1])]).unwrap();
        let p = a.primitivize().unwrap();
        assert_eq!(p.basis, vec![ExpVec(vec![0, 1])]);
        let got: Vec<ExpVec> = p.automaton.transitions().iter().map(|t| t.ev.a.clone()).collect();
        assert_eq!(got, vec![ExpVec(vec![0]), ExpVec(vec![0]), ExpVec(vec![1])]);
        assert!(p.automaton.projection_lattice().unwrap().is_full());
    }

    #[test]
    fn rebase_two_cycle() {
        let m = ModulePresentation::free(1, 1);
        let g = SemidirectGroup::new(m);
        let x = g.element(vec![LaurentPoly::parse("1", 1).unwrap()], vec![1]).unwrap();
        let y = g.element(vec![LaurentPoly::parse("X1", 1).unwrap()], vec![-3]).unwrap();
        let a = Automaton::new(
            g.clone(),
            2,
            vec![
                Transition { from: 0, to: 1, ev: x.clone() },
                Transition { from: 1, to: 0, ev: y.clone() },
            ],
        )
        .unwrap();
        let r = a.rebase().unwrap();
        assert_eq!(r.transitions()[0].ev, g.multiply(&x, &y));
        assert!(g.is_identity(&r.transitions()[1].ev));
        let run = Run(vec![0, 1, 0, 1]);
        assert_eq!(r.evaluate_run(&run).unwrap(), a.evaluate_run(&run).unwrap());
    }

    #[test]
    fn subautomaton_counts() {
        assert_eq!(loops(&[1]).enumerate_trim_subautomata().unwrap().len(), 1);
        assert_eq!(loops(&[1, -1]).enumerate_trim_subautomata().unwrap().len(), 3);
        let g = z1();
        let c = Automaton::new(g.clone(), 2, vec![tr(&g, 0, 1, 1), tr(&g, 1, 0, 1)]).unwrap();
        assert_eq!(c.enumerate_trim_subautomata().unwrap().len(), 1);
    }

    #[test]
    fn parity_coset_automaton() {
        let g = z1();
        let gens = vec![g.translation(ExpVec(vec![1]))];
        let a = coset_intersection(g.clone(), &gens, &FiniteGroup::cyclic(2), &[1]).unwrap();
        assert_eq!(a.states(), 2);
        assert_eq!(a.transitions()[0].ev, g.identity());
        assert_eq!(a.transitions()[1].ev, g.translation(ExpVec(vec![2])));

        let trivial = coset_intersection(g.clone(), &gens, &FiniteGroup::cyclic(1), &[0]).unwrap();
        assert_eq!(trivial.states(), 1);
        let even = vec![g.translation(ExpVec(vec![2]))];
        let b = coset_intersection(g.clone(), &even, &FiniteGroup::cyclic(2), &[0]).unwrap();
        assert_eq!(b.states(), 1);
    }

    #[test]
    fn finite_group_validation() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn central_loops() {
        let a = loops(&[1]);
        assert_eq!(a.attach_central_loops(&[]).unwrap().len(), 1);
        assert_eq!(a.attach_central_loops(&[ExpVec(vec![1])]).unwrap().len(), 3);

        let m = ModulePresentation::groebner(1, 1, vec![vec![LaurentPoly::parse("X1 - 1", 1).unwrap()]])
            .unwrap();
        let g = SemidirectGroup::new(m);
        let one = g.element(vec![LaurentPoly::parse("1", 1).unwrap()], vec![0]).unwrap();
        let b = Automaton::new(g.clone(), 1, vec![Transition { from: 0, to: 0, ev: one.clone() }]).unwrap();
        assert!(b.attach_central_loops(&[ExpVec(vec![1])]).is_ok());

        let w = SemidirectGroup::new(ModulePresentation::free(1, 1));
        let one = w.element(vec![LaurentPoly::parse("1", 1).unwrap()], vec![0]).unwrap();
        let c = Automaton::new(w, 1, vec![Transition { from: 0, to: 0, ev: one }]).unwrap();
        assert!(c.attach_central_loops(&[ExpVec(vec![1])]).is_err());
    }
}
