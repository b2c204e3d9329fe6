//! Exact decision procedures for rational subsemigroups of metabelian groups
//! of the form `Y ⋊ Zⁿ`, where `Y` is a finitely presented module over the
//! Laurent polynomial ring `Z[X₁^±, …, Xₙ^±]`.
//!
//! The crate answers two questions about the semigroup recognized by an
//! automaton over such a group:
//!
//! * the **Group Problem**: is the semigroup a group?
//! * the **Identity Problem**: does it contain the neutral element?
//!
//! Every decisive answer carries a certificate that [`decide::check_certificate`]
//! verifies with exact arithmetic alone. Positive answers carry an *identity
//! traversal* (an accepting run that uses every transition and evaluates to the
//! identity); negative answers carry Farkas-style dual vectors. The procedures
//! are sound, complete on the positive side given enough budget, and report
//! [`decide::VerdictKind::Unknown`] when no implemented refutation applies.
//!
//! # Layout
//!
//! * [`exactgeom`]: Smith normal form, exact simplex, convex hulls, and the
//!   direction-cell enumeration that discharges "for every direction" checks.
//! * [`laurent`]: sparse Laurent polynomials over `Z`.
//! * [`fpmodule`]: finitely presented modules with free, evaluation and
//!   Gröbner normal-form backends.
//! * [`semidirect`]: arithmetic in `Y ⋊ Zⁿ`.
//! * [`groupauto`]: automata over groups and the transforms used by the
//!   deciders (trim, rebase, primitivize, coset intersection, …).
//! * [`agraph`]: A-graphs, position polynomials, Euler circuits and the
//!   Eulerian union search.
//! * [`contraction`]: partial contractions and the algebraic accessibility test.
//! * [`decide`]: the deciders and the certificate checker.
//! * [`oracle`]: brute-force breadth-first search used as ground truth.
//! * [`matrixfront`]: exact rational matrices and the shipped example instances.
//! * [`io`]: JSON formats for instances and verdicts.

pub mod agraph;
pub mod contraction;
pub mod decide;
pub mod error;
pub mod exactgeom;
pub mod fpmodule;
pub mod groupauto;
pub mod io;
pub mod laurent;
pub mod matrixfront;
pub mod oracle;
pub mod rat;
pub mod semidirect;

pub use error::{Error, Result};
pub use rat::{Int, Rat};
