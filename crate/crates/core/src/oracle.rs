//! Brute-force ground truth by breadth-first search over accepting runs.
//!
//! Nodes are pairs (state, accumulated element), keyed by the element's
//! normal form, so two runs reaching the same pair are merged. The search is
//! exact but bounded: a `NotFound` answer only says that no identity word of the
//! given length exists.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::groupauto::{Automaton, Group, Run};

/// Default cap on stored nodes.
pub const DEFAULT_NODE_CAP: usize = 200_000;

/// Result of [`bfs_identity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// A shortest accepting run evaluating to the identity.
    Found(Run),
    /// No identity word up to the requested length.
    NotFound,
    /// The node cap was reached before the search finished.
    Overflow,
}

/// Shortest accepting run of length `1..=depth` evaluating to the identity.
/// Ties are broken by label order. With `dedup = false` every run is kept
/// (exponential; for testing the merging only).
pub fn bfs_identity<G: Group>(a: &Automaton<G>, depth: usize, dedup: bool, cap: usize) -> OracleOutcome {
    let g = a.group();
    let e = g.identity();
    // Node storage: (state, element, parent node, label).
    let mut nodes: Vec<(usize, G::Elem, usize, usize)> = vec![(0, e.clone(), usize::MAX, usize::MAX)];
    let mut seen: BTreeSet<(usize, G::Elem)> = BTreeSet::from([(0, e)]);
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &k in &frontier {
            for (l, tr) in a.transitions().iter().enumerate() {
                if tr.from != nodes[k].0 {
                    continue;
                }
                let elem = g.mul(&nodes[k].1, &tr.ev);
                if tr.to == 0 && g.is_identity(&elem) {
                    let mut labels = vec![l];
                    let mut cur = k;
                    while cur != 0 {
                        labels.push(nodes[cur].3);
                        cur = nodes[cur].2;
                    }
                    labels.reverse();
                    return OracleOutcome::Found(Run(labels));
                }
                if dedup && !seen.insert((tr.to, elem.clone())) {
                    continue;
                }
                if nodes.len() >= cap {
                    return OracleOutcome::Overflow;
                }
                nodes.push((tr.to, elem, k, l));
                next.push(nodes.len() - 1);
            }
        }
        frontier = next;
    }
    OracleOutcome::NotFound
}

/// Evaluates an accepting run step by step, independently of
/// [`Automaton::evaluate_run`]. `None` if the run is empty or not an
/// accepting path.
pub fn replay<G: Group>(a: &Automaton<G>, run: &Run) -> Option<G::Elem> {
    let g = a.group();
    let mut state = 0;
    let mut x = g.identity();
    for &l in &run.0 {
        let t = a.transitions().get(l)?;
        if t.from != state {
            return None;
        }
        x = g.mul(&x, &t.ev);
        state = t.to;
    }
    (!run.0.is_empty() && state == 0).then_some(x)
}

/// All evaluations of accepting runs of length `1..=depth`, or `None` on
/// overflow of `cap` stored pairs.
pub fn accepted_elements<G: Group>(a: &Automaton<G>, depth: usize, cap: usize) -> Option<BTreeSet<G::Elem>> {
    let g = a.group();
    // Earliest length at which each pair is reached; earlier dominates later.
    let mut seen: BTreeMap<(usize, G::Elem), usize> = BTreeMap::new();
    seen.insert((0, g.identity()), 0);
    let mut queue = VecDeque::from([(0usize, g.identity(), 0usize)]);
    let mut out = BTreeSet::new();
    while let Some((q, x, len)) = queue.pop_front() {
        if len == depth {
            continue;
        }
        for tr in a.transitions() {
            if tr.from != q {
                continue;
            }
            let y = g.mul(&x, &tr.ev);
            if tr.to == 0 {
                out.insert(y.clone());
            }
            let key = (tr.to, y.clone());
            if !seen.contains_key(&key) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(key, len + 1);
                queue.push_back((tr.to, y, len + 1));
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmodule::ModulePresentation;
    use crate::groupauto::{SdAutomaton, Transition};
    use crate::laurent::ExpVec;
    use crate::semidirect::SemidirectGroup;

    fn loops(a: &[i64]) -> SdAutomaton {
        let g = SemidirectGroup::new(ModulePresentation::trivial(1));
        let ts = a.iter().map(|&x| Transition { from: 0, to: 0, ev: g.translation(ExpVec(vec![x])) }).collect();
        Automaton::new(g, 1, ts).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(bfs_identity(&loops(&[1, -1]), 2, true, 1000), OracleOutcome::Found(Run(vec![0, 1])));
        assert_eq!(bfs_identity(&loops(&[1]), 8, true, 1000), OracleOutcome::NotFound);
        assert_eq!(bfs_identity(&loops(&[0]), 1, true, 1000), OracleOutcome::Found(Run(vec![0])));
        assert_eq!(bfs_identity(&loops(&[2, 3, -1]), 8, true, 3), OracleOutcome::Overflow);
    }

    #[test]
    fn accepted_sets() {
        let s = accepted_elements(&loops(&[1]), 3, 100).unwrap();
        assert_eq!(s.len(), 3);
    }
}
