//! Arithmetic in the semidirect product `Y ⋊ Zⁿ`.
//!
//! Elements are pairs `(y, a)` with
//! `(y, a)·(y', a') = (y + X^a·y', a + a')` and
//! `(y, a)⁻¹ = (−X^{−a}·y, −a)`.
//!
//! A [`SemidirectGroup`] may act through a change of variables: with basis
//! vectors `β₁ … β_ñ ∈ Z^{n₀}` the generator `X̃ᵢ` of the acting lattice acts
//! on `Y` as the monomial `X^{βᵢ}`. The identity basis gives the plain
//! product; other bases arise when an automaton is made primitive.

use std::fmt;
use std::sync::Arc;

use crate::error::check_dim;
use crate::fpmodule::{ModElem, ModulePresentation};
use crate::groupauto::Group;
use crate::laurent::{ExpVec, LaurentPoly};
use crate::Result;

/// An element `(y, a)` with `y` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemidirectElem {
    pub y: ModElem,
    pub a: ExpVec,
}

impl fmt::Display for SemidirectElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.y, self.a.0)
    }
}

/// The ambient group `Y ⋊ Z^ñ` with `Z^ñ` acting through `basis`.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    module: Arc<ModulePresentation>,
    basis: Vec<ExpVec>,
}

impl SemidirectGroup {
    /// The standard product `Y ⋊ Zⁿ` where `n` is the module's variable count.
    pub fn new(module: ModulePresentation) -> Self {
        Self::from_arc(Arc::new(module))
    }

    pub fn from_arc(module: Arc<ModulePresentation>) -> Self {
        let n = module.nvars();
        let basis = (0..n).map(|i| ExpVec::unit(n, i)).collect();
        SemidirectGroup { module, basis }
    }

    /// `Y ⋊ Z^ñ` where the `i`-th generator acts as `X^{basis[i]}`.
    pub fn with_basis(module: Arc<ModulePresentation>, basis: Vec<ExpVec>) -> Result<Self> {
        for b in &basis {
            check_dim(module.nvars(), b.len())?;
        }
        Ok(SemidirectGroup { module, basis })
    }

    /// Rank of the acting lattice (`ñ`).
    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn module_arc(&self) -> &Arc<ModulePresentation> {
        &self.module
    }

    pub fn basis(&self) -> &[ExpVec] {
        &self.basis
    }

    /// Whether the acting lattice uses the module's own variables unchanged.
    pub fn is_standard(&self) -> bool {
        let n = self.module.nvars();
        self.basis.len() == n && self.basis.iter().enumerate().all(|(i, b)| *b == ExpVec::unit(n, i))
    }

    /// Exponent in the module's variables of the acting monomial `X̃^a`.
    pub fn module_exponent(&self, a: &ExpVec) -> ExpVec {
        a.combine(&self.basis, self.module.nvars())
    }

    /// `X̃^a · y`.
    pub fn act(&self, a: &ExpVec, y: &ModElem) -> ModElem {
        self.module.shift(&self.module_exponent(a), y)
    }

    /// `p(X̃) · y` for a Laurent polynomial in the acting variables.
    pub fn act_poly(&self, p: &LaurentPoly, y: &ModElem) -> ModElem {
        let q = p.map_exponents(self.module.nvars(), |e| self.module_exponent(e));
        self.module.act(&q, y).expect("substituted polynomial matches the module")
    }

    /// Builds `(y, a)` from coordinate polynomials.
    pub fn element(&self, coords: Vec<LaurentPoly>, a: Vec<i64>) -> Result<SemidirectElem> {
        check_dim(self.n(), a.len())?;
        Ok(SemidirectElem { y: self.module.element(coords)?, a: ExpVec(a) })
    }

    /// `(0, a)`.
    pub fn translation(&self, a: ExpVec) -> SemidirectElem {
        SemidirectElem { y: self.module.zero(), a }
    }

    /// `(y, 0)`.
    pub fn pure(&self, y: ModElem) -> SemidirectElem {
        SemidirectElem { y, a: ExpVec::zero(self.n()) }
    }

    pub fn multiply(&self, g: &SemidirectElem, h: &SemidirectElem) -> SemidirectElem {
        SemidirectElem {
            y: self.module.add(&g.y, &self.act(&g.a, &h.y)),
            a: g.a.add(&h.a),
        }
    }

    /// Like [`multiply`](Self::multiply) but rejects elements of the wrong shape.
    pub fn checked_multiply(&self, g: &SemidirectElem, h: &SemidirectElem) -> Result<SemidirectElem> {
        check_dim(self.n(), g.a.len())?;
        check_dim(self.n(), h.a.len())?;
        Ok(self.multiply(g, h))
    }

    pub fn invert(&self, g: &SemidirectElem) -> SemidirectElem {
        let na = g.a.neg();
        SemidirectElem { y: self.module.neg(&self.act(&na, &g.y)), a: na }
    }
}

impl Group for SemidirectGroup {
    type Elem = SemidirectElem;

    fn identity(&self) -> SemidirectElem {
        self.translation(ExpVec::zero(self.n()))
    }

    fn mul(&self, a: &SemidirectElem, b: &SemidirectElem) -> SemidirectElem {
        self.multiply(a, b)
    }

    fn inv(&self, a: &SemidirectElem) -> SemidirectElem {
        self.invert(a)
    }
}
