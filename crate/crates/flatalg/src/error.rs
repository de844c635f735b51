//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{0}` as a rational (expected `p/q` or an integer)")]
    BadRational(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vectors belong to different superspaces")]
    SpaceMismatch,

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("expected a homogeneous {0}")]
    NotHomogeneous(&'static str),

    #[error("parity rule violated: {0}")]
    ParityViolation(String),

    #[error("supersymmetry conflict for pair ({0}, {1})")]
    SupersymmetryConflict(String, String),

    #[error("degenerate bilinear form; kernel witness {0}")]
    DegenerateForm(String),

    #[error("identity kind `{0}` does not apply to this subject")]
    InapplicableIdentity(String),

    #[error("product is not left Leibniz; first violation at ({0})")]
    NotLeftLeibniz(String),

    #[error("product is not symmetric Leibniz; first violation at ({0})")]
    NotSymmetricLeibniz(String),

    #[error("bilinear form is not invariant; first violation at ({0})")]
    NotInvariant(String),

    #[error("linear map is not bijective")]
    NotBijective,

    #[error("linear map must be even")]
    NotEven,

    #[error("quadratic data rejected: {0}")]
    MuDataViolation(String),

    #[error("cocycle condition violated at ({0})")]
    CocycleViolation(String),

    #[error("algebra is not reduced: {0}")]
    NotReduced(String),

    #[error("algebra is not 2-step nilpotent; witness ({0})")]
    NotTwoStepNilpotent(String),

    #[error("equation `{name}` fails; witness {witness}")]
    EquationFailed { name: String, witness: String },

    #[error("algebra is a Lie superalgebra; nothing to deconstruct")]
    IsLie,

    #[error("form parity does not match this construction")]
    WrongFormParity,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
