//! Random instance generators shared by the integration tests.

#![allow(dead_code)]

pub mod suites;

use std::collections::VecDeque;

use metabelian::agraph::{graph_of_run, AGraph};
use metabelian::fpmodule::ModulePresentation;
use metabelian::groupauto::{Automaton, Run, SdAutomaton, Transition};
use metabelian::laurent::{ExpVec, LaurentPoly};
use metabelian::semidirect::{SemidirectElem, SemidirectGroup};
use metabelian::Int;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_exp(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> ExpVec {
    ExpVec((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Random Laurent polynomial with at most `terms` terms.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, terms: usize, coeff: i64, exp: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        p.add_term(random_exp(rng, n, -exp, exp), Int::from(rng.gen_range(-coeff..=coeff)));
    }
    p
}

pub fn random_elem(rng: &mut ChaCha8Rng, g: &SemidirectGroup, coeff: i64, exp: i64) -> SemidirectElem {
    let m = g.module();
    let coords = (0..m.rank()).map(|_| random_poly(rng, m.nvars(), 2, coeff, exp)).collect();
    SemidirectElem { y: m.element(coords).unwrap(), a: random_exp(rng, g.n(), -exp, exp) }
}

/// A random automaton with at most `max_t` transitions, trimmed. Returns
/// `None` when trimming leaves nothing.
pub fn random_trim_automaton(
    rng: &mut ChaCha8Rng,
    g: &SemidirectGroup,
    max_states: usize,
    max_t: usize,
    coeff: i64,
    exp: i64,
) -> Option<SdAutomaton> {
    let states = rng.gen_range(1..=max_states);
    let t = rng.gen_range(1..=max_t);
    let transitions = (0..t)
        .map(|_| Transition {
            from: rng.gen_range(0..states),
            to: rng.gen_range(0..states),
            ev: random_elem(rng, g, coeff, exp),
        })
        .collect();
    let a = Automaton::new(g.clone(), states, transitions).unwrap();
    a.trim().map(|r| r.automaton)
}

fn path(a: &SdAutomaton, from: usize, to: usize) -> Vec<usize> {
    let mut prev: Vec<Option<usize>> = vec![None; a.states()];
    let mut seen = vec![false; a.states()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        for (l, t) in a.transitions().iter().enumerate() {
            if t.from == q && !seen[t.to] {
                seen[t.to] = true;
                prev[t.to] = Some(l);
                queue.push_back(t.to);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to;
    while cur != from {
        let l = prev[cur].expect("trim automata are strongly connected");
        out.push(l);
        cur = a.transitions()[l].from;
    }
    out.reverse();
    out
}

/// An accepting run using every transition (trim automata only).
pub fn covering_run(a: &SdAutomaton) -> Run {
    let mut run = Vec::new();
    let mut cur = 0;
    for (l, t) in a.transitions().iter().enumerate() {
        run.extend(path(a, cur, t.from));
        run.push(l);
        cur = t.to;
    }
    run.extend(path(a, cur, 0));
    Run(run)
}

/// A random accepting run of roughly `len` random steps closed up by a
/// shortest path back to state 0.
pub fn random_run(rng: &mut ChaCha8Rng, a: &SdAutomaton, len: usize) -> Run {
    let mut run = Vec::new();
    let mut cur = 0;
    for _ in 0..len.max(1) {
        let out: Vec<usize> =
            (0..a.len()).filter(|&l| a.transitions()[l].from == cur).collect();
        let l = out[rng.gen_range(0..out.len())];
        run.push(l);
        cur = a.transitions()[l].to;
    }
    run.extend(path(a, cur, 0));
    Run(run)
}

fn a_sum(a: &SdAutomaton, run: &[usize]) -> ExpVec {
    run.iter().fold(ExpVec::zero(a.group().n()), |acc, &l| acc.add(&a.transitions()[l].ev.a))
}

/// A closed run with zero `Zⁿ`-sum that starts with `prefix` (when given),
/// assembled from up to three random closed runs, within `max_len` steps.
pub fn zero_sum_run(rng: &mut ChaCha8Rng, a: &SdAutomaton, prefix: Option<Run>, max_len: usize) -> Option<Run> {
    let pool: Vec<Vec<usize>> = (0..10)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            random_run(rng, a, len).0
        })
        .collect();
    let start = prefix.map(|r| r.0).unwrap_or_default();
    let mut choices: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..pool.len() {
        choices.push(vec![i]);
        for j in i..pool.len() {
            choices.push(vec![i, j]);
            for k in j..pool.len() {
                choices.push(vec![i, j, k]);
            }
        }
    }
    let offset = rng.gen_range(0..choices.len());
    for c in choices.iter().cycle().skip(offset).take(choices.len()) {
        let mut run = start.clone();
        for &i in c {
            run.extend(&pool[i]);
        }
        if !run.is_empty() && run.len() <= max_len && a_sum(a, &run).is_zero() {
            return Some(Run(run));
        }
    }
    None
}

/// A random symmetric full-image A-graph: the graph of a zero-sum closed run
/// covering every transition, possibly joined by a translated second
/// zero-sum closed run, within `max_edges` edges and coordinates in
/// `[-bound, bound]`.
pub fn random_symmetric_graph(
    rng: &mut ChaCha8Rng,
    a: &SdAutomaton,
    max_edges: usize,
    bound: i64,
) -> Option<AGraph> {
    let n = a.group().n();
    let base = zero_sum_run(rng, a, Some(covering_run(a)), max_edges)?;
    let mut edges = graph_of_run(a, &base).ok()?.translate(&random_exp(rng, n, -1, 1)).edges().to_vec();
    if rng.gen_bool(0.5) && edges.len() < max_edges {
        if let Some(extra) = zero_sum_run(rng, a, None, max_edges - edges.len()) {
            let z = random_exp(rng, n, -3, 3);
            edges.extend(graph_of_run(a, &extra).ok()?.translate(&z).edges().iter().cloned());
        }
    }
    let g = AGraph::new(metabelian::agraph::Skeleton::of(a), edges).ok()?;
    if g.vertices().iter().any(|(_, z)| z.0.iter().any(|x| x.abs() > bound)) {
        return None;
    }
    Some(g)
}

pub fn trivial_group(n: usize) -> SemidirectGroup {
    SemidirectGroup::new(ModulePresentation::trivial(n))
}
