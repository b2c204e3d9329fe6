//! Sound deciders for the Group and Identity problems, with certificates.
//!
//! [`decide_group`] runs, on the trimmed automaton:
//!
//! 1. the empty-language check,
//! 2. the flow relaxation (a necessary linear condition at `X = 1`),
//! 3. primitivization, after which the acting rank `ñ` is known,
//! 4. for `ñ = 0` an exact linear program that settles the question,
//! 5. otherwise the pointwise refutation on a dyadic grid, then Procedure A
//!    (see [`procedure_a_search`]); a witness is turned into an identity
//!    traversal by [`witness_to_traversal`].
//!
//! Everything after step 3 may end in [`VerdictKind::Unknown`], which is
//! never wrong. All decisive verdicts carry certificates checked by
//! [`check_certificate`] without reference to the decider's internals.

mod refute;
mod search;

pub use refute::{
    check_gordan, decide_rank_zero, flow_system, grid_points, point_system, positive_kernel,
    rank_zero_system, refute_flow, refute_point_positivity,
};
pub use search::procedure_a_search;

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use crate::agraph::{eulerian_union_search, graph_of_polys, AGraph, PositionPolys, Skeleton, UnionSearch};
use crate::exactgeom::PositiveMeet;
use crate::fpmodule::Backend;
use crate::groupauto::{generator_automaton, Group, Run, SdAutomaton};
use crate::laurent::LaurentPoly;
use crate::semidirect::SemidirectElem;
use crate::{Error, Int, Rat, Result};

/// Default value of the budget knob.
pub const DEFAULT_BUDGET: u32 = 4;

/// Cap on the number of grid points of the pointwise refutation.
const GRID_CAP: usize = 125;

/// Cap on the length of a traversal built in the rank-zero case.
const MAX_RUN_LENGTH: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Group,
    NotGroup,
    IdentityYes,
    IdentityNo,
    Unknown,
}

/// Why a semigroup cannot be a group (vectors indexed by the labels of the
/// automaton the refutation is about).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// No accepting run at all.
    EmptyLanguage,
    /// The flow system has no positive solution.
    FlowInfeasible { farkas: Vec<Int> },
    /// The point system at `point` has no positive solution.
    PointPositivityFail { point: Vec<Rat>, farkas: Vec<Int> },
    /// The rank-zero system of the primitivized automaton has no positive
    /// solution.
    RankZeroInfeasible { farkas: Vec<Int> },
}

/// A refutation for one trim sub-automaton, identified by its labels in the
/// original automaton (ascending). The refutation is indexed by the
/// positions within `labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubRefutation {
    pub labels: Vec<usize>,
    pub refutation: Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Accepting run using every useful transition, evaluating to the identity.
    Traversal(Run),
    /// Accepting run evaluating to the identity.
    IdentityRun(Run),
    Refutation(Refutation),
    /// One refutation per trim sub-automaton.
    SubRefutations(Vec<SubRefutation>),
    /// No decision; the reason is informational.
    Exhausted { reason: String },
}

/// Work counters reported with every verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BudgetReport {
    pub budget: u32,
    /// Support computations in Procedure A.
    pub candidates: u64,
    /// Largest box radius searched.
    pub max_box: u32,
    /// Largest coefficient of the witness found.
    pub max_coefficient: Int,
    /// Depth of the dyadic grid used by the pointwise refutation.
    pub grid_depth: u32,
    /// Number of translations in the Eulerian union.
    pub translations: usize,
    /// Decisions made on sub-automata.
    pub subautomata: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Certificate,
    pub budget: BudgetReport,
}

impl Verdict {
    fn unknown(reason: impl Into<String>, budget: BudgetReport) -> Self {
        Verdict { kind: VerdictKind::Unknown, certificate: Certificate::Exhausted { reason: reason.into() }, budget }
    }

    fn not_group(r: Refutation, budget: BudgetReport) -> Self {
        Verdict { kind: VerdictKind::NotGroup, certificate: Certificate::Refutation(r), budget }
    }
}

/// Spreads a vector over the trimmed labels back to all labels.
fn expand(v: Vec<Int>, label_map: &[usize], t: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); t];
    for (x, &l) in v.into_iter().zip(label_map) {
        out[l] = x;
    }
    out
}

/// Picks the trimmed coordinates of `v`, requiring zeros elsewhere.
fn restrict(v: &[Int], label_map: &[usize], t: usize) -> Option<Vec<Int>> {
    if v.len() != t {
        return None;
    }
    let kept: BTreeSet<usize> = label_map.iter().copied().collect();
    if (0..t).any(|l| !kept.contains(&l) && !v[l].is_zero()) {
        return None;
    }
    Some(label_map.iter().map(|&l| v[l].clone()).collect())
}

fn evaluation_targets(a: &SdAutomaton) -> Vec<Vec<Rat>> {
    match a.group().module().backend() {
        // The point system needs a positive point, where every position
        // polynomial is positive.
        Backend::Evaluation { targets, modulus: None } if targets.iter().all(|t| t > &Rat::zero()) => {
            vec![targets.clone()]
        }
        _ => vec![],
    }
}

/// Decides whether the semigroup recognized by `a` is a group.
///
/// Returns `Err` only for malformed input; scope limits surface as
/// [`VerdictKind::Unknown`].
pub fn decide_group(a: &SdAutomaton, budget: u32) -> Result<Verdict> {
    let mut report = BudgetReport { budget, ..Default::default() };
    let Some(trimmed) = a.trim() else {
        return Ok(Verdict::not_group(Refutation::EmptyLanguage, report));
    };
    let t_aut = &trimmed.automaton;
    let t = a.len();
    if let Some(f) = refute_flow(t_aut) {
        let farkas = expand(f, &trimmed.label_map, t);
        return Ok(Verdict::not_group(Refutation::FlowInfeasible { farkas }, report));
    }
    let prim = t_aut.primitivize()?;
    let p_aut = &prim.automaton;
    if p_aut.group().n() == 0 {
        return match solve_rank_zero(p_aut)? {
            RankZero::Infeasible(f) => {
                let farkas = expand(f, &trimmed.label_map, t);
                Ok(Verdict::not_group(Refutation::RankZeroInfeasible { farkas }, report))
            }
            RankZero::Run(run) => finish_group(a, trimmed.lift_run(&run), report),
            RankZero::Unknown(reason) => Ok(Verdict::unknown(reason, report)),
        };
    }
    report.grid_depth = budget;
    let targets = evaluation_targets(t_aut);
    if let Some((point, f)) = refute_point_positivity(t_aut, budget, &targets, GRID_CAP)? {
        let farkas = expand(f, &trimmed.label_map, t);
        return Ok(Verdict::not_group(Refutation::PointPositivityFail { point, farkas }, report));
    }
    let witness = match procedure_a_search(p_aut, budget, &mut report) {
        Ok(w) => w,
        Err(Error::Unsupported(reason)) => return Ok(Verdict::unknown(reason, report)),
        Err(e) => return Err(e),
    };
    let Some(f) = witness else {
        return Ok(Verdict::unknown(
            format!("no witness within box radius {} and no refutation applies", report.max_box),
            report,
        ));
    };
    match witness_to_traversal(p_aut, &f, budget, &mut report)? {
        Some(run) => finish_group(a, trimmed.lift_run(&run), report),
        None => Ok(Verdict::unknown("Eulerian union search exhausted", report)),
    }
}

/// Re-verifies a traversal on the original automaton before returning it.
fn finish_group(a: &SdAutomaton, run: Run, report: BudgetReport) -> Result<Verdict> {
    let cert = Certificate::Traversal(run);
    if !check_certificate(a, &cert) {
        return Err(Error::Invalid("internal error: traversal failed re-verification".into()));
    }
    Ok(Verdict { kind: VerdictKind::Group, certificate: cert, budget: report })
}

enum RankZero {
    Run(Run),
    Infeasible(Vec<Int>),
    Unknown(String),
}

/// Exact decision over `Y ⋊ Z⁰`: a positive rational solution of the
/// rank-zero system is scaled to integers, torsion is cleared, and an Euler
/// circuit over the states uses each transition the resulting number of times.
fn solve_rank_zero(p: &SdAutomaton) -> Result<RankZero> {
    let sys = rank_zero_system(p)?;
    let x = match positive_kernel(&sys, p.len()) {
        PositiveMeet::Infeasible { farkas } => return Ok(RankZero::Infeasible(farkas)),
        PositiveMeet::Feasible { coefficients } => coefficients,
    };
    let mut f = crate::rat::clear_denominators(&x);
    let polys = |f: &[Int]| PositionPolys(f.iter().map(|c| LaurentPoly::constant(0, c.clone())).collect());
    let m = p.group().module();
    let rep = polys(&f).represented_element(p);
    if !m.is_zero(&rep) {
        let Some(k) = m.additive_order(&rep, 10_000) else {
            return Ok(RankZero::Unknown("torsion order exceeds the cap".into()));
        };
        f.iter_mut().for_each(|c| *c *= &k);
    }
    let total = f.iter().try_fold(0usize, |acc, c| c.to_usize().map(|c| acc + c));
    if total.is_none_or(|s| s > MAX_RUN_LENGTH) {
        return Ok(RankZero::Unknown("rank-zero solution too large to unfold into a run".into()));
    }
    let g = graph_of_polys(&Skeleton::of(p), &polys(&f))?;
    Ok(match g.euler_circuit() {
        Some(run) => RankZero::Run(run),
        None => RankZero::Unknown("rank-zero graph is not Eulerian".into()),
    })
}

/// Realizes a witness as an A-graph, finds an Eulerian union of its
/// translations and reads off the circuit from `(b₁, 0ⁿ)`. `None` when the
/// union search is exhausted.
pub fn witness_to_traversal(
    a: &SdAutomaton,
    f: &PositionPolys,
    budget: u32,
    report: &mut BudgetReport,
) -> Result<Option<Run>> {
    let g = graph_of_polys(&Skeleton::of(a), f)?;
    match eulerian_union_search(&g, 4 * budget.max(1) as usize)? {
        UnionSearch::Found { translations, circuit, .. } => {
            report.translations = translations.len();
            let ev = a.evaluate_run(&circuit)?;
            if !a.group().is_identity(&ev) {
                return Err(Error::Invalid("internal error: circuit does not evaluate to the identity".into()));
            }
            Ok(Some(circuit))
        }
        UnionSearch::Exhausted => Ok(None),
    }
}

/// Decides whether the semigroup recognized by `a` contains the identity,
/// by deciding the group problem on every trim sub-automaton.
pub fn decide_identity_rational(a: &SdAutomaton, budget: u32) -> Result<Verdict> {
    let mut report = BudgetReport { budget, ..Default::default() };
    let Some(trimmed) = a.trim() else {
        return Ok(Verdict { kind: VerdictKind::IdentityNo, certificate: Certificate::SubRefutations(vec![]), budget: report });
    };
    let subs = match trimmed.automaton.enumerate_trim_subautomata() {
        Ok(s) => s,
        Err(Error::Unsupported(reason)) => return Ok(Verdict::unknown(reason, report)),
        Err(e) => return Err(e),
    };
    let mut refutations = Vec::new();
    let mut unknown = None;
    for sub in subs {
        let mut labels: Vec<usize> = sub.label_map.iter().map(|&l| trimmed.label_map[l]).collect();
        labels.sort_unstable();
        let restricted = a.restrict(&labels);
        let v = decide_group(&restricted.automaton, budget)?;
        report.subautomata += 1;
        report.candidates += v.budget.candidates;
        report.max_box = report.max_box.max(v.budget.max_box);
        report.grid_depth = report.grid_depth.max(v.budget.grid_depth);
        match (v.kind, v.certificate) {
            (VerdictKind::Group, Certificate::Traversal(run)) => {
                report.max_coefficient = v.budget.max_coefficient;
                report.translations = v.budget.translations;
                return Ok(Verdict {
                    kind: VerdictKind::IdentityYes,
                    certificate: Certificate::IdentityRun(restricted.lift_run(&run)),
                    budget: report,
                });
            }
            (VerdictKind::NotGroup, Certificate::Refutation(r)) => {
                refutations.push(SubRefutation { labels, refutation: r });
            }
            (_, Certificate::Exhausted { reason }) => {
                unknown.get_or_insert(reason);
            }
            _ => unreachable!("decide_group returns matching kinds and certificates"),
        }
    }
    Ok(match unknown {
        Some(reason) => Verdict::unknown(format!("some sub-automaton is undecided: {reason}"), report),
        None => Verdict { kind: VerdictKind::IdentityNo, certificate: Certificate::SubRefutations(refutations), budget: report },
    })
}

/// The Identity Problem for the semigroup generated by `generators`,
/// decided through the one-state automaton with one loop per generator.
pub fn decide_identity_fg(group: &crate::semidirect::SemidirectGroup, generators: &[SemidirectElem], budget: u32) -> Result<Verdict> {
    if generators.is_empty() {
        return Err(Error::Invalid("at least one generator is required".into()));
    }
    decide_identity_rational(&generator_automaton(group.clone(), generators)?, budget)
}

/// Checks a refutation against `a` (vectors indexed by `a`'s labels).
pub fn check_refutation(a: &SdAutomaton, r: &Refutation) -> bool {
    let trimmed = a.trim();
    let (t_aut, map) = match (&trimmed, r) {
        (None, Refutation::EmptyLanguage) => return true,
        (None, _) | (Some(_), Refutation::EmptyLanguage) => return false,
        (Some(tr), _) => (&tr.automaton, &tr.label_map),
    };
    match r {
        Refutation::EmptyLanguage => unreachable!(),
        Refutation::FlowInfeasible { farkas } => restrict(farkas, map, a.len())
            .is_some_and(|y| check_gordan(&flow_system(t_aut), t_aut.len(), &y)),
        Refutation::PointPositivityFail { point, farkas } => {
            let Some(y) = restrict(farkas, map, a.len()) else { return false };
            match point_system(t_aut, point) {
                Ok(sys) => check_gordan(&sys, t_aut.len(), &y),
                Err(_) => false,
            }
        }
        Refutation::RankZeroInfeasible { farkas } => {
            let Some(y) = restrict(farkas, map, a.len()) else { return false };
            let Ok(prim) = t_aut.primitivize() else { return false };
            match rank_zero_system(&prim.automaton) {
                Ok(sys) => check_gordan(&sys, t_aut.len(), &y),
                Err(_) => false,
            }
        }
    }
}

/// Verifies a certificate using exact arithmetic only.
///
/// * `Traversal`: accepting, evaluates to the identity, and uses every
///   transition that lies on some accepting run.
/// * `IdentityRun`: accepting and evaluates to the identity.
/// * `Refutation`: the dual vector certifies infeasibility of the rebuilt
///   linear system.
/// * `SubRefutations`: every trim sub-automaton has a valid refutation.
/// * `Exhausted` certifies nothing and is rejected.
pub fn check_certificate(a: &SdAutomaton, cert: &Certificate) -> bool {
    match cert {
        Certificate::Traversal(run) => {
            let Some(trimmed) = a.trim() else { return false };
            let used: BTreeSet<usize> = run.0.iter().copied().collect();
            identity_run(a, run) && trimmed.label_map.iter().all(|l| used.contains(l))
        }
        Certificate::IdentityRun(run) => identity_run(a, run),
        Certificate::Refutation(r) => check_refutation(a, r),
        Certificate::SubRefutations(list) => {
            let Some(trimmed) = a.trim() else { return list.is_empty() };
            let Ok(subs) = trimmed.automaton.enumerate_trim_subautomata() else { return false };
            subs.iter().all(|sub| {
                let mut labels: Vec<usize> = sub.label_map.iter().map(|&l| trimmed.label_map[l]).collect();
                labels.sort_unstable();
                let restricted = a.restrict(&labels).automaton;
                list.iter().any(|s| s.labels == labels && check_refutation(&restricted, &s.refutation))
            })
        }
        Certificate::Exhausted { .. } => false,
    }
}

/// Checks that the verdict kind matches its certificate and that the
/// certificate is valid. Unknown verdicts are consistent by construction.
pub fn check_verdict(a: &SdAutomaton, v: &Verdict) -> bool {
    match (v.kind, &v.certificate) {
        (VerdictKind::Group, Certificate::Traversal(_))
        | (VerdictKind::IdentityYes, Certificate::IdentityRun(_))
        | (VerdictKind::NotGroup, Certificate::Refutation(_))
        | (VerdictKind::IdentityNo, Certificate::SubRefutations(_)) => check_certificate(a, &v.certificate),
        (VerdictKind::Unknown, Certificate::Exhausted { .. }) => true,
        _ => false,
    }
}

fn identity_run(a: &SdAutomaton, run: &Run) -> bool {
    a.is_accepting(run) && a.evaluate_run(run).is_ok_and(|e| a.group().is_identity(&e))
}

/// Builds the A-graph with one edge per `(label, coordinate)` pair, used by
/// callers that need a graph view of a witness.
pub fn witness_graph(a: &SdAutomaton, f: &PositionPolys) -> Result<AGraph> {
    graph_of_polys(&Skeleton::of(a), f)
}
