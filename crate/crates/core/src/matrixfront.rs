//! Exact rational matrices and the shipped example instances.
//!
//! Upper-triangular groups are where the semidirect products of this crate
//! come from: the affine matrices `[[q^a, y], [0, 1]]` multiply exactly like
//! `(y, a)` in `Z[1/q] ⋊ Z`, see [`affine_matrix`].

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::fpmodule::ModulePresentation;
use crate::groupauto::{coset_intersection, FiniteGroup, SdAutomaton, Transition};
use crate::io::Instance;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::rat::{format_rat, rat};
use crate::semidirect::{SemidirectElem, SemidirectGroup};
use crate::{Error, Int, Rat, Result};

/// A square matrix over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    d: usize,
    entries: Vec<Vec<Rat>>,
}

impl QMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let d = entries.len();
        if d == 0 {
            return Err(Error::Invalid("matrices must have dimension at least 1".into()));
        }
        if let Some(r) = entries.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: r.len() });
        }
        Ok(QMatrix { d, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn identity(d: usize) -> Self {
        Self::diag((0..d).map(|_| Rat::one()).collect())
    }

    pub fn diag(v: Vec<Rat>) -> Self {
        let d = v.len();
        let mut entries = vec![vec![Rat::zero(); d]; d];
        for (i, x) in v.into_iter().enumerate() {
            entries[i][i] = x;
        }
        QMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        crate::error::check_dim(self.d, other.d)?;
        let d = self.d;
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .filter(|&k| !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero())
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(QMatrix { d, entries })
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rat {
        let mut a = self.entries.clone();
        let mut det = Rat::one();
        for c in 0..self.d {
            let Some(p) = (c..self.d).find(|&i| !a[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for i in c + 1..self.d {
                if !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[c][c];
                    let pivot = a[c].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination; singular matrices are an error.
    pub fn inv(&self) -> Result<QMatrix> {
        let d = self.d;
        let mut a: Vec<Vec<Rat>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&i| !a[i][c].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, c);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            let pivot = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != c && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(QMatrix { d, entries: a.into_iter().map(|r| r[d..].to_vec()).collect() })
    }

    /// `[x, y] = x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, other: &QMatrix) -> Result<QMatrix> {
        self.mul(other)?.mul(&self.inv()?)?.mul(&other.inv()?)
    }

    /// Zero below the diagonal and invertible.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()) && !self.entries[i][i].is_zero())
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_unitriangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.d).all(|i| self.entries[i][i].is_one())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(format_rat).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// The matrix `[[q^a, y], [0, 1]]` of an element `(y, a)` of `Z[1/q] ⋊ Z`.
///
/// `g` must use the evaluation backend with one target `q` and no modulus.
pub fn affine_matrix(g: &SemidirectGroup, e: &SemidirectElem) -> Result<QMatrix> {
    let (crate::fpmodule::Backend::Evaluation { targets, modulus: None }, crate::fpmodule::ModElem::Scalar(y)) =
        (g.module().backend(), &e.y)
    else {
        return Err(Error::Invalid("affine matrices need an evaluation module without modulus".into()));
    };
    if targets.len() != 1 || !g.is_standard() {
        return Err(Error::Invalid("affine matrices need n = 1 and the standard action".into()));
    }
    let k = e.a.0[0];
    let base = if k < 0 { targets[0].recip() } else { targets[0].clone() };
    let qa = num_traits::pow(base, k.unsigned_abs() as usize);
    QMatrix::new(vec![vec![qa, y.clone()], vec![Rat::zero(), Rat::one()]])
}

/// The named example instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    /// `Z²` with the generators `±e₁, ±e₂`: a group.
    FreeAbelian,
    /// `Z ≀ Z = Z[X^±] ⋊ Z` with `(0, ±1)` and `(±1, 0)`: a group.
    WreathZZ,
    /// `Z[1/q] ⋊ Z`, the Baumslag–Solitar group `BS(1, q)`, with the
    /// generators `(0, 1)` and `(1, 0)`: not a group.
    BsLike(u32),
    /// `(Z/m)[X^±] ⋊ Z`, the lamplighter group, with `(0, ±1)` and `(1, 0)`:
    /// a group, since `(1, 0)` has order `m`.
    Lamplighter(u32),
    /// The kernel of the parity map `Z → Z/2` intersected with the semigroup
    /// generated by `1`: recognizes `{2, 4, 6, …}`, no identity.
    ParityCoset,
}

impl FromStr for ExampleName {
    type Err = Error;

    /// Accepts `free_abelian`, `wreath_zz`, `parity_coset`, `bs_like(q)` or
    /// `bs_like:q`, and `lamplighter(m)` or `lamplighter:m`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find(['(', ':']) {
            Some(i) => {
                let rest = s[i + 1..].trim_end_matches(')');
                let v: u32 = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("example {s:?}: bad parameter {rest:?}")))?;
                (&s[..i], Some(v))
            }
            None => (s, None),
        };
        let name = match (head, arg) {
            ("free_abelian", None) => ExampleName::FreeAbelian,
            ("wreath_zz", None) => ExampleName::WreathZZ,
            ("parity_coset", None) => ExampleName::ParityCoset,
            ("bs_like", Some(q)) => ExampleName::BsLike(q),
            ("bs_like", None) => ExampleName::BsLike(2),
            ("lamplighter", Some(m)) => ExampleName::Lamplighter(m),
            ("lamplighter", None) => ExampleName::Lamplighter(2),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown example {s:?} (expected free_abelian, wreath_zz, bs_like(q), lamplighter(m) or parity_coset)"
                )))
            }
        };
        match name {
            ExampleName::BsLike(q) | ExampleName::Lamplighter(q) if q < 2 => {
                Err(Error::Invalid(format!("example {s:?}: the parameter must be at least 2")))
            }
            _ => Ok(name),
        }
    }
}

fn loops(g: SemidirectGroup, evs: Vec<SemidirectElem>) -> Result<SdAutomaton> {
    let ts = evs.into_iter().map(|ev| Transition { from: 0, to: 0, ev }).collect();
    SdAutomaton::new(g, 1, ts)
}

/// Builds the automaton of a named example.
pub fn example_automaton(name: ExampleName) -> Result<SdAutomaton> {
    match name {
        ExampleName::FreeAbelian => {
            let g = SemidirectGroup::new(ModulePresentation::trivial(2));
            let evs = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|a| g.translation(ExpVec(a.to_vec()))).collect();
            loops(g, evs)
        }
        ExampleName::WreathZZ => {
            let g = SemidirectGroup::new(ModulePresentation::free(1, 1));
            let one = LaurentPoly::one(1);
            let evs = vec![
                g.translation(ExpVec(vec![1])),
                g.translation(ExpVec(vec![-1])),
                g.element(vec![one.clone()], vec![0])?,
                g.element(vec![LaurentPoly::constant(1, Int::from(-1))], vec![0])?,
            ];
            loops(g, evs)
        }
        ExampleName::BsLike(q) => {
            let g = SemidirectGroup::new(ModulePresentation::evaluation(vec![rat(q.into())], None)?);
            let evs = vec![g.translation(ExpVec(vec![1])), g.element(vec![LaurentPoly::one(1)], vec![0])?];
            loops(g, evs)
        }
        ExampleName::Lamplighter(m) => {
            let module = ModulePresentation::groebner(1, 1, vec![vec![LaurentPoly::constant(1, Int::from(m))]])?;
            let g = SemidirectGroup::new(module);
            let evs = vec![
                g.translation(ExpVec(vec![1])),
                g.translation(ExpVec(vec![-1])),
                g.element(vec![LaurentPoly::one(1)], vec![0])?,
            ];
            loops(g, evs)
        }
        ExampleName::ParityCoset => {
            let g = SemidirectGroup::new(ModulePresentation::trivial(1));
            let gens = [g.translation(ExpVec(vec![1]))];
            coset_intersection(g, &gens, &FiniteGroup::cyclic(2), &[1])
        }
    }
}

/// The instance file of a named example, with its documented expected verdict.
pub fn build_example_instance(name: ExampleName) -> Result<Instance> {
    let mut inst = Instance::of_automaton(&example_automaton(name)?);
    inst.expected = Some(
        match name {
            ExampleName::FreeAbelian | ExampleName::WreathZZ | ExampleName::Lamplighter(_) => "group",
            ExampleName::BsLike(_) => "not_group",
            ExampleName::ParityCoset => "identity_no",
        }
        .into(),
    );
    Ok(inst)
}
