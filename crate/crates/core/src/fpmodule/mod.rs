//! Finitely presented modules over `Z[X₁^±, …, Xₙ^±]`.
//!
//! A [`ModulePresentation`] describes `Y = Z[X^±]^d / N` together with a
//! normal-form backend. Elements ([`ModElem`]) are always stored in normal
//! form, so `==` decides equality in `Y`.
//!
//! | backend | module | element storage |
//! |---|---|---|
//! | `Free` | `Z[X^±]^d` | coordinate polynomials |
//! | `Evaluation` | image of `Z[X^±]` under `X ↦ τ` in `Q` (or `Z/m`) | a rational value |
//! | `Groebner` | `Z[X^±]^d / N` for explicit relations | canonical remainder |

mod groebner;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::check_dim;
use crate::exactgeom::nullspace;
use crate::laurent::LaurentPoly;
use crate::{Error, Int, Rat, Result};

use groebner::{encoded_degree, GroebnerBasis};

/// Normal-form backend of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Free,
    Evaluation { targets: Vec<Rat>, modulus: Option<Int> },
    Groebner,
}

/// Coordinate key of the rational image `Y ⊗ Q`.
pub type CoordKey = (usize, Vec<i64>);

/// A finitely presented module with a precomputed normal-form backend.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    n: usize,
    rank: usize,
    relations: Vec<Vec<LaurentPoly>>,
    backend: Backend,
    gb: Option<GroebnerBasis>,
}

/// An element of a [`ModulePresentation`], in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModElem {
    /// Coordinates in `Z[X^±]^d` (free and Gröbner backends).
    Vector(Vec<LaurentPoly>),
    /// Value in `Q`, or a residue in `[0, m)` when a modulus is set.
    Scalar(Rat),
}

impl ModulePresentation {
    /// Validates a presentation and precomputes its normal-form data.
    pub fn new(
        n: usize,
        rank: usize,
        relations: Vec<Vec<LaurentPoly>>,
        backend: Backend,
    ) -> Result<Self> {
        for rel in &relations {
            check_dim(rank, rel.len())?;
            for p in rel {
                check_dim(n, p.nvars())?;
            }
        }
        let mut gb = None;
        match &backend {
            Backend::Free => {
                if !relations.is_empty() {
                    return Err(Error::Invalid(
                        "the free backend takes no relations; use the groebner backend".into(),
                    ));
                }
            }
            Backend::Evaluation { targets, modulus } => {
                if rank != 1 {
                    return Err(Error::Invalid(format!(
                        "the evaluation backend needs rank 1, got {rank}"
                    )));
                }
                check_dim(n, targets.len())?;
                if targets.iter().any(|t| t.is_zero()) {
                    return Err(Error::Invalid("evaluation targets must be nonzero".into()));
                }
                if !relations.is_empty() {
                    return Err(Error::Invalid("the evaluation backend takes no relations".into()));
                }
                if let Some(m) = modulus {
                    if !m.is_positive() {
                        return Err(Error::Invalid("modulus must be positive".into()));
                    }
                    for t in targets {
                        if !t.numer().gcd(m).is_one() || !t.denom().gcd(m).is_one() {
                            return Err(Error::Invalid(format!(
                                "target {t} is not invertible modulo {m}"
                            )));
                        }
                    }
                }
            }
            Backend::Groebner => {
                if n > 3 || rank > 4 {
                    return Err(Error::Unsupported(format!(
                        "the groebner backend handles n ≤ 3 and rank ≤ 4 (got n = {n}, rank = {rank})"
                    )));
                }
                if relations.iter().map(|r| encoded_degree(r)).max().unwrap_or(0) > 12 {
                    return Err(Error::Unsupported(
                        "the groebner backend handles relations of total degree ≤ 12".into(),
                    ));
                }
                gb = Some(GroebnerBasis::new(n, rank, &relations)?);
            }
        }
        Ok(ModulePresentation { n, rank, relations, backend, gb })
    }

    /// `Z[X^±]^rank` with no relations.
    pub fn free(n: usize, rank: usize) -> Self {
        Self::new(n, rank, vec![], Backend::Free).expect("free modules are always valid")
    }

    /// The zero module.
    pub fn trivial(n: usize) -> Self {
        Self::free(n, 0)
    }

    pub fn evaluation(targets: Vec<Rat>, modulus: Option<Int>) -> Result<Self> {
        Self::new(targets.len(), 1, vec![], Backend::Evaluation { targets, modulus })
    }

    pub fn groebner(n: usize, rank: usize, relations: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        Self::new(n, rank, relations, Backend::Groebner)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<LaurentPoly>] {
        &self.relations
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// Builds an element from coordinate polynomials, reducing to normal form.
    pub fn element(&self, coords: Vec<LaurentPoly>) -> Result<ModElem> {
        check_dim(self.rank, coords.len())?;
        for p in &coords {
            check_dim(self.n, p.nvars())?;
        }
        Ok(self.normal_form_coords(coords))
    }

    /// The `j`-th basis vector `e_j`.
    pub fn basis_element(&self, j: usize) -> ModElem {
        let mut coords = vec![LaurentPoly::zero(self.n); self.rank];
        coords[j] = LaurentPoly::one(self.n);
        self.normal_form_coords(coords)
    }

    pub fn zero(&self) -> ModElem {
        match self.backend {
            Backend::Evaluation { .. } => ModElem::Scalar(Rat::zero()),
            _ => ModElem::Vector(vec![LaurentPoly::zero(self.n); self.rank]),
        }
    }

    fn normal_form_coords(&self, coords: Vec<LaurentPoly>) -> ModElem {
        match &self.backend {
            Backend::Free => ModElem::Vector(coords),
            Backend::Groebner => {
                ModElem::Vector(self.gb.as_ref().expect("basis precomputed").normal_form(&coords))
            }
            Backend::Evaluation { targets, modulus } => {
                let v = coords[0].eval_unchecked(targets);
                ModElem::Scalar(self.reduce_scalar(v, modulus.as_ref()))
            }
        }
    }

    fn reduce_scalar(&self, v: Rat, modulus: Option<&Int>) -> Rat {
        match modulus {
            None => v,
            Some(m) => {
                // v = p/q with q invertible modulo m.
                let q = v.denom().mod_floor(m);
                let inv = mod_inverse(&q, m).expect("denominators are units modulo m");
                Rat::from_integer((v.numer() * inv).mod_floor(m))
            }
        }
    }

    /// Re-reduces an element (idempotent on stored elements).
    pub fn normal_form(&self, e: &ModElem) -> ModElem {
        match e {
            ModElem::Vector(c) => self.normal_form_coords(c.clone()),
            ModElem::Scalar(v) => match &self.backend {
                Backend::Evaluation { modulus, .. } => {
                    ModElem::Scalar(self.reduce_scalar(v.clone(), modulus.as_ref()))
                }
                _ => e.clone(),
            },
        }
    }

    pub fn add(&self, a: &ModElem, b: &ModElem) -> ModElem {
        match (a, b) {
            (ModElem::Vector(x), ModElem::Vector(y)) => {
                self.normal_form_coords(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (ModElem::Scalar(x), ModElem::Scalar(y)) => self.normal_form(&ModElem::Scalar(x + y)),
            _ => panic!("adding elements of different modules"),
        }
    }

    pub fn neg(&self, a: &ModElem) -> ModElem {
        match a {
            ModElem::Vector(x) => self.normal_form_coords(x.iter().map(|p| -p).collect()),
            ModElem::Scalar(x) => self.normal_form(&ModElem::Scalar(-x)),
        }
    }

    pub fn sub(&self, a: &ModElem, b: &ModElem) -> ModElem {
        self.add(a, &self.neg(b))
    }

    /// Scalar multiple by an integer.
    pub fn scale(&self, k: &Int, a: &ModElem) -> ModElem {
        self.act(&LaurentPoly::constant(self.n, k.clone()), a)
            .expect("constant has the right variable count")
    }

    /// The module action `p · e`.
    pub fn act(&self, p: &LaurentPoly, e: &ModElem) -> Result<ModElem> {
        check_dim(self.n, p.nvars())?;
        Ok(match e {
            ModElem::Vector(x) => self.normal_form_coords(x.iter().map(|q| p * q).collect()),
            ModElem::Scalar(v) => {
                let Backend::Evaluation { targets, modulus } = &self.backend else {
                    panic!("scalar element in a non-evaluation module");
                };
                let pv = self.reduce_scalar(p.eval_unchecked(targets), modulus.as_ref());
                self.normal_form(&ModElem::Scalar(pv * v))
            }
        })
    }

    /// `X^e · a`, the action of a single monomial.
    pub fn shift(&self, e: &crate::laurent::ExpVec, a: &ModElem) -> ModElem {
        self.act(&LaurentPoly::x_pow(e.clone()), a).expect("exponent length matches")
    }

    pub fn is_zero(&self, a: &ModElem) -> bool {
        match a {
            ModElem::Vector(x) => x.iter().all(|p| p.is_zero()),
            ModElem::Scalar(v) => v.is_zero(),
        }
    }

    /// Coordinates of the image of `a` in the rational vector space `Y ⊗ Q`.
    ///
    /// The map is `Z`-linear and its kernel is exactly the torsion of `Y`.
    pub fn rational_coordinates(&self, a: &ModElem) -> BTreeMap<CoordKey, Rat> {
        let mut out = BTreeMap::new();
        match (&self.backend, a) {
            (Backend::Free, ModElem::Vector(x)) => {
                for (j, p) in x.iter().enumerate() {
                    for (e, c) in p.terms() {
                        out.insert((j, e.0.clone()), Rat::from_integer(c.clone()));
                    }
                }
            }
            (Backend::Groebner, ModElem::Vector(x)) => {
                out = self.gb.as_ref().expect("basis precomputed").rational_normal_form(x);
            }
            (Backend::Evaluation { modulus: None, .. }, ModElem::Scalar(v)) => {
                if !v.is_zero() {
                    out.insert((0, vec![]), v.clone());
                }
            }
            (Backend::Evaluation { modulus: Some(_), .. }, _) => {}
            _ => panic!("element does not belong to this module"),
        }
        out
    }

    /// Image of `a` under the module map `Y → Rᵏ` obtained by evaluating at
    /// the positive point `r` and quotienting by the evaluated relations.
    ///
    /// For every `f` and `a`, the image of `f·a` is `f(r)` times the image of
    /// `a`, so `Σ fᵢ·aᵢ = 0` in `Y` forces `Σ fᵢ(r)·image(aᵢ) = 0`.
    pub fn point_image(&self, a: &ModElem, r: &[Rat]) -> Vec<Rat> {
        match (&self.backend, a) {
            (Backend::Free, ModElem::Vector(x)) => x.iter().map(|p| p.eval_unchecked(r)).collect(),
            (Backend::Evaluation { targets, modulus: None }, ModElem::Scalar(v)) => {
                if targets.as_slice() == r {
                    vec![v.clone()]
                } else {
                    vec![]
                }
            }
            (Backend::Evaluation { .. }, _) => vec![],
            (Backend::Groebner, ModElem::Vector(x)) => {
                let vals: Vec<Rat> = x.iter().map(|p| p.eval_unchecked(r)).collect();
                self.relation_annihilators(r)
                    .iter()
                    .map(|w| crate::rat::dot(w, &vals))
                    .collect()
            }
            _ => panic!("element does not belong to this module"),
        }
    }

    /// Basis of the linear functionals on `R^rank` vanishing on every
    /// relation evaluated at `r`.
    fn relation_annihilators(&self, r: &[Rat]) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|p| p.eval_unchecked(r)).collect())
            .collect();
        nullspace(&rows, self.rank)
    }

    /// Additive order of `a`: `Some(k)` with `k·a = 0` minimal, `None` when
    /// `a` has infinite order or the order exceeds `cap`.
    pub fn additive_order(&self, a: &ModElem, cap: u64) -> Option<Int> {
        if self.is_zero(a) {
            return Some(Int::one());
        }
        match (&self.backend, a) {
            (Backend::Evaluation { modulus: Some(m), .. }, ModElem::Scalar(v)) => {
                Some(m / v.numer().gcd(m))
            }
            (Backend::Groebner, _) => {
                if !self.rational_coordinates(a).is_empty() {
                    return None;
                }
                (2..=cap).map(Int::from).find(|k| self.is_zero(&self.scale(k, a)))
            }
            _ => None,
        }
    }

    /// Renders an element as the list of coordinate strings used in JSON.
    pub fn format_element(&self, a: &ModElem) -> Vec<String> {
        match a {
            ModElem::Vector(x) => x.iter().map(|p| p.to_string()).collect(),
            ModElem::Scalar(v) => vec![crate::rat::format_rat(v)],
        }
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModElem::Vector(x) => {
                let parts: Vec<String> = x.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            ModElem::Scalar(v) => write!(f, "{}", crate::rat::format_rat(v)),
        }
    }
}

fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let eg = a.extended_gcd(m);
    if eg.gcd.abs().is_one() {
        Some((eg.x * eg.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}
