//! Exact arithmetic for classifying finite subgroups of `PGL_3(C)` by their
//! field of moduli and their definability over the reals.
//!
//! The crate works entirely over cyclotomic fields `Q(zeta_N)` with rational
//! coefficients, so every group-theoretic and geometric decision it makes is
//! exact: projective equality, characteristic polynomial classes, group
//! closures, descent criteria, explicit real models, and the plane-quintic
//! counterexample where the field of moduli is real but no real model exists.
//!
//! Module map:
//! * [`cyclotomic`]: elements of `Q(zeta_N)`, embeddings, conjugation,
//!   real/imaginary parts, numeric evaluation.
//! * [`projlinear`]: exact 3x3 matrices, projective elements with canonical
//!   lifts, characteristic polynomial classes, eigenvalue-ratio invariants.
//! * [`finitegroup`]: finite subgroup closure, fingerprints, Galois images,
//!   subgroup searches.
//! * [`descent`]: cyclic normal forms, the definability criterion, explicit
//!   real models for cyclic and dihedral groups, verdicts.
//! * [`primitive`]: the catalog of primitive subgroups (Hessian groups, A5,
//!   A6, PSL(2,7)) with computed or literature-backed verdicts.
//! * [`curves`]: homogeneous plane curves, automorphisms, resultants, the
//!   smooth quintic family with real moduli and no real model.

pub mod cyclotomic;
pub mod curves;
pub mod descent;
pub mod finitegroup;
pub mod primitive;
pub mod projlinear;
pub mod selftest;
pub mod serialize;

use thiserror::Error as ThisError;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    /// Arithmetic between elements of different cyclotomic fields.
    #[error("field mismatch: conductor {0} vs {1}; embed explicitly first")]
    FieldMismatch(u32, u32),
    /// Division by the zero element of a field.
    #[error("division by zero")]
    DivisionByZero,
    /// Embedding requested into a field that is not an extension.
    #[error("Q(zeta_{0}) is not a subfield of Q(zeta_{1})")]
    NotASubfield(u32, u32),
    /// Restriction requested for a value outside the target subfield.
    #[error("value does not lie in Q(zeta_{0})")]
    NotInSubfield(u32),
    /// A matrix that must be invertible is singular.
    #[error("singular matrix")]
    Singular,
    /// No power up to the bound returned the identity.
    #[error("projective order exceeds bound {0}")]
    OrderNotFound(u32),
    /// An element was expected to have finite order dividing `n`.
    #[error("element order does not divide {0}")]
    NotFiniteOrder(u32),
    /// Group closure exceeded the element cap.
    #[error("group closure exceeded cap of {0} elements")]
    ClosureExceedsCap(usize),
    /// A subgroup-search argument is not contained in the ambient group.
    #[error("group is not contained in the ambient group")]
    NotSubgroupOfAmbient,
    /// The identity has no cyclic normal form.
    #[error("identity element has no normal form")]
    IdentityElement,
    /// A real model was requested for a form that fails the criterion.
    #[error("definability criterion fails: {0}")]
    CriterionFailed(String),
    /// Conjugation parameters with `Im(alpha * conj(beta)) = 0`.
    #[error("degenerate parameters: Im(alpha * conj(beta)) must be nonzero")]
    DegenerateParams,
    /// Invalid arguments to a constructor or search.
    #[error("bad parameters: {0}")]
    BadParameters(String),
    /// A catalog entry that stores no generating set.
    #[error("catalog entry {0} carries no generators")]
    NoGenerators(String),
    /// Resultant of polynomials whose leading coefficient vanishes.
    #[error("zero leading coefficient in resultant computation")]
    ZeroLeadingCoefficient,
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// Scalar expression or serialized value that cannot be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal cross-check that should be impossible to fail.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
