//! JSON formats for instances and verdicts.
//!
//! Indices in files are 1-based (state 1 is initial and accepting, labels
//! start at 1); in memory they are 0-based. Polynomials use the text grammar
//! of [`LaurentPoly::parse`] and rationals are `"p/q"` strings.
//!
//! An instance file:
//!
//! ```json
//! {
//!   "n": 1,
//!   "module": {"backend": "free", "rank": 1},
//!   "states": 1,
//!   "transitions": [{"from": 1, "to": 1, "y": ["1"], "a": [1]}],
//!   "expected": "not_group"
//! }
//! ```
//!
//! Instead of `states`/`transitions` a file may list `generators`
//! (`{"y": [...], "a": [...]}` each), optionally with a `coset` block giving
//! a finite group table and one image per generator; the automaton is then
//! the coset construction for the kernel. `central_loops` lists vectors `h`
//! whose loops `(0, ±h)` are attached at state 1.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::decide::{BudgetReport, Certificate, Refutation, SubRefutation, Verdict, VerdictKind};
use crate::fpmodule::{Backend, ModulePresentation};
use crate::groupauto::{coset_intersection, generator_automaton, FiniteGroup, Run, SdAutomaton, Transition};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::rat::{format_rat, parse_rat};
use crate::semidirect::{SemidirectElem, SemidirectGroup};
use crate::{Error, Int, Result};

/// Module presentation as stored in files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub backend: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionJson {
    pub from: usize,
    pub to: usize,
    pub y: Vec<String>,
    pub a: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub y: Vec<String>,
    pub a: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetJson {
    /// Multiplication table, 0-based entries.
    pub table: Vec<Vec<usize>>,
    /// Image of each generator, 0-based.
    pub images: Vec<usize>,
}

/// An instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub n: usize,
    pub module: ModuleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transitions: Vec<TransitionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub central_loops: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset: Option<CosetJson>,
    /// Documented expected verdict, informational only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

fn field<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse(format!("{path}: {e}")))
}

impl ModuleJson {
    pub fn build(&self, n: usize) -> Result<ModulePresentation> {
        if let Some(m) = self.n {
            if m != n {
                return Err(Error::Parse(format!("module.n = {m} but instance n = {n}")));
            }
        }
        match self.backend.as_str() {
            "free" => {
                if !self.relations.is_empty() {
                    return Err(Error::Parse("module.relations: the free backend takes none".into()));
                }
                Ok(ModulePresentation::free(n, self.rank.unwrap_or(1)))
            }
            "evaluation" => {
                if self.rank.is_some_and(|r| r != 1) {
                    return Err(Error::Parse("module.rank: the evaluation backend has rank 1".into()));
                }
                let targets = self
                    .target
                    .iter()
                    .enumerate()
                    .map(|(i, s)| field(&format!("module.target[{i}]"), parse_rat(s)))
                    .collect::<Result<Vec<_>>>()?;
                let modulus = match &self.modulus {
                    None => None,
                    Some(s) => Some(
                        s.trim()
                            .parse::<Int>()
                            .map_err(|e| Error::Parse(format!("module.modulus: {e}")))?,
                    ),
                };
                if targets.len() != n {
                    return Err(Error::Parse(format!(
                        "module.target: expected {n} values, found {}",
                        targets.len()
                    )));
                }
                field("module", ModulePresentation::evaluation(targets, modulus))
            }
            "groebner" => {
                let rank = self.rank.or_else(|| self.relations.first().map(Vec::len)).unwrap_or(1);
                let relations = self
                    .relations
                    .iter()
                    .enumerate()
                    .map(|(i, rel)| parse_polys(&format!("module.relations[{i}]"), rel, n))
                    .collect::<Result<Vec<_>>>()?;
                match ModulePresentation::groebner(n, rank, relations) {
                    Err(Error::Unsupported(m)) => Err(Error::Unsupported(m)),
                    r => field("module", r),
                }
            }
            other => Err(Error::Parse(format!(
                "module.backend: unknown backend {other:?} (expected free, evaluation or groebner)"
            ))),
        }
    }

    /// The file form of a presentation.
    pub fn of(m: &ModulePresentation) -> Self {
        let mut out = ModuleJson {
            backend: String::new(),
            n: None,
            rank: Some(m.rank()),
            relations: vec![],
            target: vec![],
            modulus: None,
        };
        match m.backend() {
            Backend::Free => out.backend = "free".into(),
            Backend::Evaluation { targets, modulus } => {
                out.backend = "evaluation".into();
                out.rank = None;
                out.target = targets.iter().map(format_rat).collect();
                out.modulus = modulus.as_ref().map(|m| m.to_string());
            }
            Backend::Groebner => {
                out.backend = "groebner".into();
                out.relations =
                    m.relations().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            }
        }
        out
    }
}

fn parse_polys(path: &str, v: &[String], n: usize) -> Result<Vec<LaurentPoly>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| field(&format!("{path}[{i}]"), LaurentPoly::parse(s, n)))
        .collect()
}

fn parse_element(path: &str, g: &SemidirectGroup, y: &[String], a: &[i64]) -> Result<SemidirectElem> {
    // Evaluation-backend values may also be written as rationals, which is
    // how they are printed.
    if let (Backend::Evaluation { .. }, [s]) = (g.module().backend(), y) {
        if s.contains('/') {
            if a.len() != g.n() {
                return Err(Error::Parse(format!("{path}.a: expected {} entries, found {}", g.n(), a.len())));
            }
            let v = field(&format!("{path}.y[0]"), parse_rat(s))?;
            let y = g.module().normal_form(&crate::fpmodule::ModElem::Scalar(v));
            return Ok(SemidirectElem { y, a: ExpVec(a.to_vec()) });
        }
    }
    let coords = parse_polys(&format!("{path}.y"), y, g.n())?;
    if coords.len() != g.module().rank() {
        return Err(Error::Parse(format!(
            "{path}.y: expected {} coordinates, found {}",
            g.module().rank(),
            coords.len()
        )));
    }
    if a.len() != g.n() {
        return Err(Error::Parse(format!("{path}.a: expected {} entries, found {}", g.n(), a.len())));
    }
    field(path, g.element(coords, a.to_vec()))
}

/// Formats the `y` part of an element as polynomial strings.
pub fn element_json(g: &SemidirectGroup, e: &SemidirectElem) -> ElementJson {
    ElementJson { y: g.module().format_element(&e.y), a: e.a.0.clone() }
}

impl Instance {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    pub fn group(&self) -> Result<SemidirectGroup> {
        Ok(SemidirectGroup::new(self.module.build(self.n)?))
    }

    /// The generators, for generator-list mode.
    pub fn generator_elements(&self) -> Result<(SemidirectGroup, Vec<SemidirectElem>)> {
        let g = self.group()?;
        if self.generators.is_empty() {
            return Err(Error::Parse("generators: generator-list mode needs a nonempty list".into()));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, e)| parse_element(&format!("generators[{i}]"), &g, &e.y, &e.a))
            .collect::<Result<Vec<_>>>()?;
        Ok((g, gens))
    }

    /// The automaton described by the file, with central loops attached.
    pub fn automaton(&self) -> Result<SdAutomaton> {
        let has_transitions = self.states.is_some() || !self.transitions.is_empty();
        let base = match (has_transitions, self.generators.is_empty()) {
            (true, false) => {
                return Err(Error::Parse("give either states/transitions or generators, not both".into()))
            }
            (true, true) => {
                if self.coset.is_some() {
                    return Err(Error::Parse("coset: the coset construction needs generators".into()));
                }
                let g = self.group()?;
                let states = self.states.ok_or_else(|| Error::Parse("states: missing".into()))?;
                let mut ts = Vec::new();
                for (i, t) in self.transitions.iter().enumerate() {
                    let path = format!("transitions[{i}]");
                    if t.from == 0 || t.from > states || t.to == 0 || t.to > states {
                        return Err(Error::Parse(format!(
                            "{path}: states are numbered 1..={states}, found {} -> {}",
                            t.from, t.to
                        )));
                    }
                    let ev = parse_element(&path, &g, &t.y, &t.a)?;
                    ts.push(Transition { from: t.from - 1, to: t.to - 1, ev });
                }
                field("automaton", SdAutomaton::new(g, states, ts))?
            }
            (false, false) => {
                let (g, gens) = self.generator_elements()?;
                match &self.coset {
                    None => field("generators", generator_automaton(g, &gens))?,
                    Some(c) => {
                        let f = field("coset.table", FiniteGroup::new(c.table.clone()))?;
                        field("coset", coset_intersection(g, &gens, &f, &c.images))?
                    }
                }
            }
            (false, true) => {
                return Err(Error::Parse("instance has neither transitions nor generators".into()))
            }
        };
        let h: Vec<ExpVec> = self.central_loops.iter().map(|v| ExpVec(v.clone())).collect();
        if h.is_empty() {
            Ok(base)
        } else {
            field("central_loops", base.attach_central_loops(&h))
        }
    }

    /// The file form of an automaton.
    pub fn of_automaton(a: &SdAutomaton) -> Self {
        let g = a.group();
        Instance {
            n: g.n(),
            module: ModuleJson::of(g.module()),
            states: Some(a.states()),
            transitions: a
                .transitions()
                .iter()
                .map(|t| {
                    let e = element_json(g, &t.ev);
                    TransitionJson { from: t.from + 1, to: t.to + 1, y: e.y, a: e.a }
                })
                .collect(),
            generators: vec![],
            central_loops: vec![],
            coset: None,
            expected: None,
        }
    }
}

pub fn kind_name(k: VerdictKind) -> &'static str {
    match k {
        VerdictKind::Group => "group",
        VerdictKind::NotGroup => "not_group",
        VerdictKind::IdentityYes => "identity_yes",
        VerdictKind::IdentityNo => "identity_no",
        VerdictKind::Unknown => "unknown",
    }
}

fn kind_of(s: &str) -> Option<VerdictKind> {
    Some(match s {
        "group" => VerdictKind::Group,
        "not_group" => VerdictKind::NotGroup,
        "identity_yes" => VerdictKind::IdentityYes,
        "identity_no" => VerdictKind::IdentityNo,
        "unknown" => VerdictKind::Unknown,
        _ => return None,
    })
}

fn run_json(r: &Run) -> Value {
    json!(r.0.iter().map(|l| l + 1).collect::<Vec<_>>())
}

fn ints_json(v: &[Int]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn refutation_json(r: &Refutation) -> Value {
    match r {
        Refutation::EmptyLanguage => json!({"kind": "empty_language"}),
        Refutation::FlowInfeasible { farkas } => json!({"kind": "flow_infeasible", "farkas": ints_json(farkas)}),
        Refutation::PointPositivityFail { point, farkas } => json!({
            "kind": "point_positivity_fail",
            "point": point.iter().map(format_rat).collect::<Vec<_>>(),
            "farkas": ints_json(farkas),
        }),
        Refutation::RankZeroInfeasible { farkas } => {
            json!({"kind": "rank_zero_infeasible", "farkas": ints_json(farkas)})
        }
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Traversal(r) => json!({"run": run_json(r)}),
        Certificate::IdentityRun(r) => json!({"identity_run": run_json(r)}),
        Certificate::Refutation(r) => json!({"refutation": refutation_json(r)}),
        Certificate::SubRefutations(list) => json!({
            "sub_refutations": list
                .iter()
                .map(|s| json!({
                    "labels": s.labels.iter().map(|l| l + 1).collect::<Vec<_>>(),
                    "refutation": refutation_json(&s.refutation),
                }))
                .collect::<Vec<_>>()
        }),
        Certificate::Exhausted { reason } => json!({"exhausted": reason}),
    }
}

pub fn budget_json(b: &BudgetReport) -> Value {
    json!({
        "budget": b.budget,
        "candidates": b.candidates,
        "max_box": b.max_box,
        "max_coefficient": b.max_coefficient.to_string(),
        "grid_depth": b.grid_depth,
        "translations": b.translations,
        "subautomata": b.subautomata,
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "verdict": kind_name(v.kind),
        "certificate": certificate_json(&v.certificate),
        "budget": budget_json(&v.budget),
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_run(v: &Value, path: &str) -> Result<Run> {
    let arr = v.as_array().ok_or_else(|| bad(format!("{path}: expected a list of labels")))?;
    arr.iter()
        .map(|x| match x.as_u64() {
            Some(l) if l >= 1 => Ok(l as usize - 1),
            _ => Err(bad(format!("{path}: labels are integers ≥ 1"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Run)
}

fn parse_ints(v: Option<&Value>, path: &str) -> Result<Vec<Int>> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| bad(format!("{path}: expected a list")))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => s.trim().parse::<Int>().map_err(|e| bad(format!("{path}: {e}"))),
            Value::Number(n) => n.as_i64().map(Int::from).ok_or_else(|| bad(format!("{path}: not an integer"))),
            _ => Err(bad(format!("{path}: expected integers"))),
        })
        .collect()
}

fn parse_refutation(v: &Value, path: &str) -> Result<Refutation> {
    let o = v.as_object().ok_or_else(|| bad(format!("{path}: expected an object")))?;
    let kind = o.get("kind").and_then(Value::as_str).ok_or_else(|| bad(format!("{path}.kind: missing")))?;
    let farkas = || parse_ints(o.get("farkas"), &format!("{path}.farkas"));
    Ok(match kind {
        "empty_language" => Refutation::EmptyLanguage,
        "flow_infeasible" => Refutation::FlowInfeasible { farkas: farkas()? },
        "rank_zero_infeasible" => Refutation::RankZeroInfeasible { farkas: farkas()? },
        "point_positivity_fail" => {
            let pts = o
                .get("point")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("{path}.point: expected a list")))?;
            let point = pts
                .iter()
                .map(|p| {
                    p.as_str()
                        .ok_or_else(|| bad(format!("{path}.point: rationals are strings")))
                        .and_then(parse_rat)
                })
                .collect::<Result<Vec<_>>>()?;
            Refutation::PointPositivityFail { point, farkas: farkas()? }
        }
        other => return Err(bad(format!("{path}.kind: unknown refutation {other:?}"))),
    })
}

/// Parses a certificate object (the `certificate` field of a verdict).
pub fn parse_certificate(v: &Value) -> Result<Certificate> {
    let o: &Map<String, Value> = v.as_object().ok_or_else(|| bad("certificate: expected an object"))?;
    if o.len() != 1 {
        return Err(bad("certificate: expected exactly one key"));
    }
    let (k, v) = o.iter().next().expect("one key");
    Ok(match k.as_str() {
        "run" => Certificate::Traversal(parse_run(v, "certificate.run")?),
        "identity_run" => Certificate::IdentityRun(parse_run(v, "certificate.identity_run")?),
        "refutation" => Certificate::Refutation(parse_refutation(v, "certificate.refutation")?),
        "sub_refutations" => {
            let arr = v.as_array().ok_or_else(|| bad("certificate.sub_refutations: expected a list"))?;
            let mut out = Vec::new();
            for (i, s) in arr.iter().enumerate() {
                let path = format!("certificate.sub_refutations[{i}]");
                let labels = parse_run(s.get("labels").unwrap_or(&Value::Null), &format!("{path}.labels"))?.0;
                let refutation = parse_refutation(s.get("refutation").unwrap_or(&Value::Null), &format!("{path}.refutation"))?;
                out.push(SubRefutation { labels, refutation });
            }
            Certificate::SubRefutations(out)
        }
        "exhausted" => Certificate::Exhausted { reason: v.as_str().unwrap_or_default().to_string() },
        other => return Err(bad(format!("certificate: unknown key {other:?}"))),
    })
}

/// Parses either a full verdict (returns its kind) or a bare certificate.
pub fn parse_certificate_file(s: &str) -> Result<(Option<VerdictKind>, Certificate)> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    match v.get("certificate") {
        Some(c) => {
            let kind = v
                .get("verdict")
                .and_then(Value::as_str)
                .map(|k| kind_of(k).ok_or_else(|| bad(format!("verdict: unknown kind {k:?}"))))
                .transpose()?;
            Ok((kind, parse_certificate(c)?))
        }
        None => Ok((None, parse_certificate(&v)?)),
    }
}
