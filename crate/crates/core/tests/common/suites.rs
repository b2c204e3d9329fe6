//! Property and golden-value suites shared by the test targets and the
//! acceptance harness. Each suite counts its cases and records violations
//! instead of panicking, so the harness can print one line per criterion.

use std::collections::BTreeSet;

use metabelian::agraph::{graph_of_run, represented_element, structural_flags, PositionPolys, Skeleton};
use metabelian::contraction::{accessibility_condition, argmax_sets, contract, PartialContraction};
use metabelian::decide::{
    check_certificate, check_verdict, decide_group, decide_identity_rational, Certificate, Refutation,
    VerdictKind, DEFAULT_BUDGET,
};
use metabelian::exactgeom::{check_farkas, lp_positive_meet, smith_normal_form, Direction, IntMatrix, PositiveMeet};
use metabelian::fpmodule::ModulePresentation;
use metabelian::groupauto::{coset_intersection, generator_automaton, FiniteGroup, Group, Run, SdAutomaton, Transition};
use metabelian::laurent::{ExpVec, LaurentPoly};
use metabelian::matrixfront::{example_automaton, ExampleName, QMatrix};
use metabelian::oracle::{accepted_elements, bfs_identity, replay, OracleOutcome};
use metabelian::rat::{rat, ratio};
use metabelian::semidirect::SemidirectGroup;
use metabelian::{Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;

/// Cases run and violations found by a suite.
#[derive(Debug, Default)]
pub struct Outcome {
    pub cases: usize,
    pub violations: usize,
    pub messages: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.messages.len() < 5 {
                self.messages.push(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }

    pub fn assert_ok(&self) {
        assert!(self.passed(), "{} of {} cases violated: {:#?}", self.violations, self.cases, self.messages);
    }
}

fn lp(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, 1).unwrap()
}

fn polys(s: &[&str]) -> PositionPolys {
    PositionPolys(s.iter().map(|x| lp(x)).collect())
}

fn loops(a: &[i64]) -> SdAutomaton {
    let g = trivial_group(1);
    let ts = a.iter().map(|&x| Transition { from: 0, to: 0, ev: g.translation(ExpVec(vec![x])) }).collect();
    SdAutomaton::new(g, 1, ts).unwrap()
}

/// The worked contraction example: states q1..q4 and labels 1..6 are
/// indices 0..3 and 0..5.
pub fn contraction_example() -> Outcome {
    let mut out = Outcome::default();
    let ts = [(0, 3, 0), (2, 2, 1), (3, 0, 0), (3, 2, -1), (2, 1, 2), (1, 0, 0)];
    let skel = Skeleton::new(4, 1, ts.iter().map(|&(f, t, a)| (f, t, ExpVec(vec![a]))).collect()).unwrap();
    let f = polys(&["1", "X1", "X1^3", "X1^2", "X1^3", "X1^4"]);
    let pc = PartialContraction { states: BTreeSet::from([1, 2, 3]), tree: BTreeSet::from([3, 4]), root: 2 };
    let d = contract(&skel, &f, &pc).unwrap();
    let got: Vec<LaurentPoly> = (1..6).map(|l| d.polys[&l].clone()).collect();
    let want = vec![lp("X1"), lp("X1^2"), lp("X1"), lp("X1^3"), lp("X1^2")];
    out.check(got == want, || format!("contracted polynomials {got:?}"));
    let ev: Vec<i64> = (1..6).map(|l| d.edge_vectors[&l].0[0]).collect();
    out.check(ev == [1, 0, 0, 0, 0], || format!("edge vectors {ev:?}"));
    let (m_neg, o_neg) = argmax_sets(&d, &Direction(vec![-1]));
    let (m_pos, o_pos) = argmax_sets(&d, &Direction(vec![1]));
    out.check(m_neg == BTreeSet::from([1, 3]), || format!("M for v < 0: {m_neg:?}"));
    out.check(m_pos == BTreeSet::from([4]), || format!("M for v > 0: {m_pos:?}"));
    out.check(o_neg == BTreeSet::from([1]) && o_pos == BTreeSet::from([1]), || format!("O: {o_neg:?} {o_pos:?}"));
    out
}

/// Position polynomials of the run 1 2 2 3 4 on the four-transition cycle.
pub fn position_example() -> Outcome {
    let mut out = Outcome::default();
    let g = trivial_group(1);
    let ts = [(0, 1, 1), (1, 1, 1), (1, 2, -1), (2, 0, -1)]
        .iter()
        .map(|&(f, t, a)| Transition { from: f, to: t, ev: g.translation(ExpVec(vec![a])) })
        .collect();
    let a = SdAutomaton::new(g, 3, ts).unwrap();
    let got = graph_of_run(&a, &Run(vec![0, 1, 1, 2, 3])).unwrap().position_polynomials();
    let want = polys(&["1", "X1 + X1^2", "X1^3", "X1^2"]);
    out.check(got == want, || format!("position polynomials {got}"));
    out
}

pub fn loop_instances() -> Outcome {
    let mut out = Outcome::default();
    let two = loops(&[1, -1]);
    let v = decide_group(&two, DEFAULT_BUDGET).unwrap();
    out.check(v.kind == VerdictKind::Group && check_verdict(&two, &v), || format!("two loops: {v:?}"));
    let one = loops(&[1]);
    let v = decide_group(&one, DEFAULT_BUDGET).unwrap();
    let ok = matches!(&v.certificate, Certificate::Refutation(Refutation::FlowInfeasible { .. }));
    out.check(v.kind == VerdictKind::NotGroup && ok && check_verdict(&one, &v), || format!("one loop: {v:?}"));
    out
}

pub fn wreath_instance() -> Outcome {
    let mut out = Outcome::default();
    let a = example_automaton(ExampleName::WreathZZ).unwrap();
    let v = decide_group(&a, DEFAULT_BUDGET).unwrap();
    out.check(v.kind == VerdictKind::Group && check_verdict(&a, &v), || format!("{v:?}"));
    if let Certificate::Traversal(run) = &v.certificate {
        let e = replay(&a, run);
        out.check(e.is_some_and(|e| a.group().is_identity(&e)), || "traversal is not the identity".into());
        let used: BTreeSet<usize> = run.0.iter().copied().collect();
        out.check(used.len() == 4, || format!("traversal {run:?} misses a transition"));
    }
    out
}

pub fn parity_instance() -> Outcome {
    let mut out = Outcome::default();
    let a = example_automaton(ExampleName::ParityCoset).unwrap();
    let v = decide_identity_rational(&a, DEFAULT_BUDGET).unwrap();
    out.check(v.kind == VerdictKind::IdentityNo && check_verdict(&a, &v), || format!("{v:?}"));
    let o = bfs_identity(&a, 8, true, 100_000);
    out.check(o == OracleOutcome::NotFound, || format!("oracle: {o:?}"));
    out
}

/// Algebraic accessibility against the geometric definition on random
/// symmetric graphs of primitive automata.
pub fn equivalence(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let mut accessible = 0;
    while out.cases < count {
        let n = 1 + out.cases % 2;
        let g = trivial_group(n);
        let Some(a) = random_trim_automaton(&mut rng, &g, 3, 4, 0, 2) else { continue };
        // The criterion characterizes accessibility for primitive automata.
        if !a.projection_lattice().unwrap().is_full() {
            continue;
        }
        let Some(gr) = random_symmetric_graph(&mut rng, &a, 8, 3) else { continue };
        let f = gr.position_polynomials();
        let alg = accessibility_condition(&Skeleton::of(&a), &f).unwrap();
        let geo = gr.face_accessible_geometric().unwrap();
        accessible += usize::from(geo);
        out.check(alg == geo, || format!("disagreement on {:?} with f = {f}", Skeleton::of(&a)));
    }
    // Both answers must actually occur for the comparison to mean anything.
    out.check(accessible > 0 && accessible < count, || format!("{accessible} of {count} accessible"));
    out
}

/// Graphs of runs represent the run's evaluation.
pub fn representation(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let modules = [
        ModulePresentation::free(1, 1),
        ModulePresentation::free(2, 2),
        ModulePresentation::evaluation(vec![ratio(3, 2)], None).unwrap(),
        ModulePresentation::groebner(1, 1, vec![vec![LaurentPoly::constant(1, Int::from(3))]]).unwrap(),
    ];
    let mut runs = 0;
    while runs < count {
        let g = SemidirectGroup::new(modules[runs % modules.len()].clone());
        let Some(a) = random_trim_automaton(&mut rng, &g, 3, 4, 2, 2) else { continue };
        let run = random_run(&mut rng, &a, 6);
        runs += 1;
        let ev = a.evaluate_run(&run).unwrap();
        let gr = graph_of_run(&a, &run).unwrap();
        out.check(represented_element(&a, &gr) == ev.y, || format!("y-part differs for {run:?}"));
        out.check(gr.position_polynomials().represented_element(&a) == ev.y, || "polynomial form differs".into());
        let sum = gr.edges().iter().fold(ExpVec::zero(g.n()), |acc, e| acc.add(&a.transitions()[e.label].ev.a));
        out.check(sum == ev.a, || format!("a-sum {sum:?} vs {:?}", ev.a));
        let closed = ev.a.is_zero();
        out.check(structural_flags(&a, &gr).symmetric == closed, || "symmetry flag".into());
        out.check(gr.euler_circuit().is_some() == closed, || "Euler circuit existence".into());
    }
    out
}

fn small_modules() -> Vec<ModulePresentation> {
    vec![
        ModulePresentation::trivial(1),
        ModulePresentation::free(1, 1),
        ModulePresentation::evaluation(vec![rat(2)], None).unwrap(),
        ModulePresentation::evaluation(vec![rat(-1)], None).unwrap(),
        ModulePresentation::groebner(1, 1, vec![vec![LaurentPoly::constant(1, Int::from(2))]]).unwrap(),
    ]
}

/// Deciders against the breadth-first oracle on small random instances.
pub fn oracle_consistency(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let modules = small_modules();
    let mut instances = 0;
    let mut found = 0;
    while instances < count {
        let g = SemidirectGroup::new(modules[instances % modules.len()].clone());
        let Some(a) = random_trim_automaton(&mut rng, &g, 2, 3, 2, 2) else { continue };
        instances += 1;
        let oracle = bfs_identity(&a, 8, true, 200_000);
        let id = decide_identity_rational(&a, DEFAULT_BUDGET).unwrap();
        out.check(check_verdict(&a, &id), || format!("identity certificate fails on {a:?}"));
        if let OracleOutcome::Found(run) = &oracle {
            found += 1;
            out.check(id.kind == VerdictKind::IdentityYes, || format!("oracle found {run:?} but got {:?} on {a:?}", id.kind));
        }
        if id.kind == VerdictKind::IdentityNo {
            out.check(oracle == OracleOutcome::NotFound, || format!("IdentityNo but oracle says {oracle:?}"));
        }
        if let Certificate::IdentityRun(run) = &id.certificate {
            out.check(replay(&a, run).is_some_and(|e| g.is_identity(&e)), || format!("identity run {run:?}"));
        }
        let v = decide_group(&a, DEFAULT_BUDGET).unwrap();
        out.check(check_verdict(&a, &v), || format!("group certificate fails on {a:?}"));
        if let Certificate::Traversal(run) = &v.certificate {
            out.check(replay(&a, run).is_some_and(|e| g.is_identity(&e)), || format!("traversal {run:?}"));
        }
    }
    // A meaningful share of instances must have identity words.
    out.check(found * 5 >= count, || format!("only {found} of {count} instances had an identity word"));
    out
}

/// Oracle answers with and without merging of equal nodes.
pub fn dedup_safety(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let modules = small_modules();
    let mut i = 0;
    while i < count {
        let g = SemidirectGroup::new(modules[i % modules.len()].clone());
        let Some(a) = random_trim_automaton(&mut rng, &g, 2, 3, 2, 2) else { continue };
        i += 1;
        let with = bfs_identity(&a, 5, true, 1_000_000);
        let without = bfs_identity(&a, 5, false, 1_000_000);
        let same = match (&with, &without) {
            (OracleOutcome::Found(x), OracleOutcome::Found(y)) => x.0.len() == y.0.len(),
            (x, y) => x == y,
        };
        out.check(same, || format!("{with:?} vs {without:?}"));
        if let OracleOutcome::Found(run) = &with {
            out.check(check_certificate(&a, &Certificate::IdentityRun(run.clone())), || format!("{run:?}"));
        }
    }
    out
}

/// The coset automaton accepts exactly the kernel elements of the generated
/// semigroup, compared word length by word length.
pub fn coset_construction() -> Outcome {
    let mut out = Outcome::default();
    let g = trivial_group(1);
    let gens = [g.translation(ExpVec(vec![1]))];
    let coset = coset_intersection(g.clone(), &gens, &FiniteGroup::cyclic(2), &[1]).unwrap();
    let plain = generator_automaton(g.clone(), &gens).unwrap();
    for depth in 1..=6 {
        // Every coset transition reads one generator, so runs and words of
        // the same length correspond.
        let kernel: BTreeSet<_> =
            accepted_elements(&plain, depth, 10_000).unwrap().into_iter().filter(|e| e.a.0[0].rem_euclid(2) == 0).collect();
        let got = accepted_elements(&coset, depth, 10_000).unwrap();
        out.check(got == kernel, || format!("depth {depth}: {got:?} vs {kernel:?}"));
    }
    // A two-generator case over the wreath product with a Z/3 image.
    let w = SemidirectGroup::new(ModulePresentation::free(1, 1));
    let gens = [w.element(vec![lp("1")], vec![1]).unwrap(), w.element(vec![lp("-X1")], vec![-1]).unwrap()];
    let coset = coset_intersection(w.clone(), &gens, &FiniteGroup::cyclic(3), &[1, 2]).unwrap();
    let plain = generator_automaton(w.clone(), &gens).unwrap();
    for depth in 1..=6 {
        let kernel: BTreeSet<_> = accepted_elements(&plain, depth, 100_000)
            .unwrap()
            .into_iter()
            .filter(|e| e.a.0[0].rem_euclid(3) == 0)
            .collect();
        let got = accepted_elements(&coset, depth, 100_000).unwrap();
        out.check(got == kernel, || format!("wreath depth {depth}"));
    }
    out
}

/// Trim, rebase and primitivize preserve evaluations of accepting runs.
pub fn transforms_preserve_evaluation(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let modules = [ModulePresentation::free(1, 1), ModulePresentation::free(2, 1), ModulePresentation::trivial(2)];
    let mut runs = [0usize; 3];
    let mut i = 0;
    while runs.iter().any(|&r| r < count) {
        let g = SemidirectGroup::new(modules[i % modules.len()].clone());
        i += 1;
        let states = rng.gen_range(1..=3);
        let transitions = (0..rng.gen_range(1..=5))
            .map(|_| Transition {
                from: rng.gen_range(0..states),
                to: rng.gen_range(0..states),
                ev: random_elem(&mut rng, &g, 2, 2),
            })
            .collect();
        let a = SdAutomaton::new(g.clone(), states, transitions).unwrap();
        let Some(trimmed) = a.trim() else { continue };
        let t = &trimmed.automaton;
        let run = random_run(&mut rng, t, 6);
        runs[0] += 1;
        let lifted = trimmed.lift_run(&run);
        out.check(a.evaluate_run(&lifted).ok() == t.evaluate_run(&run).ok(), || "trim".into());
        let ev = t.evaluate_run(&run).unwrap();
        let rebased = t.rebase().unwrap();
        runs[1] += 1;
        out.check(rebased.evaluate_run(&run).unwrap() == ev, || "rebase".into());
        let prim = t.primitivize().unwrap();
        runs[2] += 1;
        let pe = prim.automaton.evaluate_run(&run).unwrap();
        out.check(pe.y == ev.y && pe.a.combine(&prim.basis, g.n()) == ev.a, || "primitivize".into());
        out.check(prim.automaton.projection_lattice().unwrap().is_full(), || "primitivity".into());
    }
    out
}

fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: i64) -> IntMatrix {
    let v: Vec<Vec<Int>> = (0..rows).map(|_| (0..cols).map(|_| Int::from(rng.gen_range(-r..=r))).collect()).collect();
    IntMatrix::from_rows(&v, cols).unwrap()
}

pub fn snf(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    for _ in 0..count {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let m = random_int_matrix(&mut rng, r, c, 6);
        let s = smith_normal_form(&m);
        let prod = s.u.mul(&m).unwrap().mul(&s.v).unwrap();
        out.check(prod == s.d, || format!("U·M·V ≠ D for {m:?}"));
        out.check(s.u.is_unimodular() && s.v.is_unimodular(), || format!("transforms of {m:?}"));
        out.check(s.d.is_diagonal(), || format!("D not diagonal for {m:?}"));
        let diag: Vec<Int> = (0..r.min(c)).map(|i| s.d.row(i)[i].clone()).collect();
        let chain = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        out.check(chain, || format!("divisibility chain {diag:?}"));
    }
    out
}

/// Every infeasible answer of the positive-meet LP carries a valid dual
/// vector, and every feasible answer a valid primal combination.
pub fn lp_farkas(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let mut infeasible = 0;
    for i in 0..count {
        let k = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=3);
        let gens: Vec<Vec<Rat>> = (0..m).map(|_| (0..k).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect();
        let strict = i % 2 == 0;
        match lp_positive_meet(&gens, k, strict) {
            PositiveMeet::Infeasible { farkas } => {
                infeasible += 1;
                out.check(check_farkas(&gens, &farkas, strict), || format!("bad dual {farkas:?} for {gens:?}"));
            }
            PositiveMeet::Feasible { coefficients } => {
                let mut s = vec![Rat::zero(); k];
                for (c, g) in coefficients.iter().zip(&gens) {
                    for (x, y) in s.iter_mut().zip(g) {
                        *x += c * y;
                    }
                }
                let ok = if strict {
                    s.iter().all(|x| x.is_positive())
                } else {
                    s.iter().all(|x| !x.is_negative()) && s.iter().any(|x| !x.is_zero())
                };
                out.check(ok, || format!("bad primal {s:?} for {gens:?}"));
            }
        }
    }
    out.check(infeasible > 0, || "no infeasible case drawn".into());
    out
}

fn axiom_groups() -> Vec<SemidirectGroup> {
    vec![
        SemidirectGroup::new(ModulePresentation::free(1, 1)),
        SemidirectGroup::new(ModulePresentation::free(2, 2)),
        SemidirectGroup::new(ModulePresentation::evaluation(vec![rat(2)], None).unwrap()),
        SemidirectGroup::new(ModulePresentation::evaluation(vec![ratio(2, 3), rat(5)], Some(Int::from(7))).unwrap()),
        SemidirectGroup::new(
            ModulePresentation::groebner(1, 1, vec![vec![LaurentPoly::constant(1, Int::from(3))]]).unwrap(),
        ),
        SemidirectGroup::new(ModulePresentation::groebner(1, 1, vec![vec![lp("X1^2 - 1")]]).unwrap()),
    ]
}

pub fn semidirect_axioms(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let groups = axiom_groups();
    for i in 0..count {
        let g = &groups[i % groups.len()];
        let (x, y, z) = (random_elem(&mut rng, g, 3, 2), random_elem(&mut rng, g, 3, 2), random_elem(&mut rng, g, 3, 2));
        let e = g.identity();
        out.check(g.mul(&g.mul(&x, &y), &z) == g.mul(&x, &g.mul(&y, &z)), || format!("associativity in {i}"));
        out.check(g.mul(&x, &e) == x && g.mul(&e, &x) == x, || "identity".into());
        out.check(g.is_identity(&g.mul(&x, &g.inv(&x))) && g.is_identity(&g.mul(&g.inv(&x), &x)), || "inverse".into());
    }
    out
}

/// Module laws for one presentation.
fn module_laws(out: &mut Outcome, rng: &mut ChaCha8Rng, m: &ModulePresentation, count: usize) {
    let n = m.nvars();
    let el = |rng: &mut ChaCha8Rng| {
        let coords = (0..m.rank()).map(|_| random_poly(rng, n, 3, 3, 2)).collect();
        m.element(coords).unwrap()
    };
    for _ in 0..count {
        let (a, b, c) = (el(rng), el(rng), el(rng));
        let (p, q) = (random_poly(rng, n, 2, 3, 2), random_poly(rng, n, 2, 3, 2));
        out.check(m.add(&a, &b) == m.add(&b, &a), || "commutativity".into());
        out.check(m.add(&m.add(&a, &b), &c) == m.add(&a, &m.add(&b, &c)), || "associativity".into());
        out.check(m.is_zero(&m.add(&a, &m.neg(&a))), || "negation".into());
        out.check(m.normal_form(&a) == a, || "normal form is idempotent".into());
        let pa = m.act(&p, &m.add(&a, &b)).unwrap();
        out.check(pa == m.add(&m.act(&p, &a).unwrap(), &m.act(&p, &b).unwrap()), || "p(a+b)".into());
        let sum = m.act(&(&p + &q), &a).unwrap();
        out.check(sum == m.add(&m.act(&p, &a).unwrap(), &m.act(&q, &a).unwrap()), || "(p+q)a".into());
        let prod = m.act(&(&p * &q), &a).unwrap();
        out.check(prod == m.act(&p, &m.act(&q, &a).unwrap()).unwrap(), || "(pq)a".into());
        out.check(m.act(&LaurentPoly::one(n), &a).unwrap() == a, || "1·a".into());
    }
    for rel in m.relations() {
        out.check(m.is_zero(&m.element(rel.clone()).unwrap()), || "relation is not zero".into());
    }
}

pub fn module_backends(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    let backends = [
        ModulePresentation::free(2, 2),
        ModulePresentation::evaluation(vec![ratio(3, 2), rat(-2)], None).unwrap(),
        ModulePresentation::evaluation(vec![rat(2)], Some(Int::from(9))).unwrap(),
        ModulePresentation::groebner(
            2,
            2,
            vec![vec![lp2("X1 - 1"), lp2("0")], vec![lp2("2"), lp2("X2 + 1")]],
        )
        .unwrap(),
    ];
    for m in &backends {
        module_laws(&mut out, &mut rng, m, count);
    }
    out
}

fn lp2(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, 2).unwrap()
}

fn random_triangular(rng: &mut ChaCha8Rng, d: usize) -> QMatrix {
    let entries = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => Rat::zero(),
                    std::cmp::Ordering::Equal => {
                        let v = rng.gen_range(1..=3);
                        ratio(if rng.gen_bool(0.5) { v } else { -v }, rng.gen_range(1..=3))
                    }
                    std::cmp::Ordering::Greater => ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
                })
                .collect()
        })
        .collect();
    QMatrix::new(entries).unwrap()
}

pub fn matrix_axioms(count: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = rng(seed);
    for i in 0..count {
        let d = 1 + i % 4;
        let (x, y, z) = (random_triangular(&mut rng, d), random_triangular(&mut rng, d), random_triangular(&mut rng, d));
        let id = QMatrix::identity(d);
        let xy = x.mul(&y).unwrap();
        out.check(xy.mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap(), || "associativity".into());
        out.check(x.mul(&id).unwrap() == x && id.mul(&x).unwrap() == x, || "identity".into());
        let xi = x.inv().unwrap();
        out.check(x.mul(&xi).unwrap() == id && xi.mul(&x).unwrap() == id, || "inverse".into());
        out.check(xy.is_upper_triangular() && xi.is_upper_triangular(), || "closure".into());
        out.check(xy.det() == x.det() * y.det(), || "determinant".into());
        let c = x.commutator(&y).unwrap();
        out.check(c.is_unitriangular() && c.is_upper_triangular(), || "commutators are unitriangular".into());
    }
    out
}

/// Every shipped group fixture stays a group when the budget is doubled.
pub fn monotonicity() -> Outcome {
    let mut out = Outcome::default();
    let fixtures = [
        loops(&[1, -1]),
        example_automaton(ExampleName::FreeAbelian).unwrap(),
        example_automaton(ExampleName::WreathZZ).unwrap(),
        example_automaton(ExampleName::Lamplighter(2)).unwrap(),
        example_automaton(ExampleName::Lamplighter(3)).unwrap(),
    ];
    for a in &fixtures {
        for budget in [DEFAULT_BUDGET, 2 * DEFAULT_BUDGET] {
            let v = decide_group(a, budget).unwrap();
            out.check(v.kind == VerdictKind::Group && check_verdict(a, &v), || format!("budget {budget}: {v:?}"));
        }
    }
    out
}
