use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable X{label} is out of range")]
    VariableOutOfRange { label: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("interior product of a 0-form")]
    ZeroFormContraction,
    #[error("expected a form of degree {expected}, got degree {got}")]
    FormDegree { expected: usize, got: usize },
    #[error("bivector is not integrable: Jacobi sum at ({}, {}, {}) is {witness}", triple[0], triple[1], triple[2])]
    NotIntegrable {
        /// Labels of the failing triple (already shifted by the label base).
        triple: [usize; 3],
        /// Canonical text of the non-zero Jacobi sum.
        witness: String,
    },
    #[error("internal error: Jacobi sums and the exterior-form criterion disagree")]
    CriteriaDisagree,
    #[error("the Poisson structure has not been verified")]
    Unverified,
    #[error("operation needs {what}, got {nvars} variables")]
    UnsupportedDimension { what: &'static str, nvars: usize },
    #[error("entry degree {0} exceeds 2")]
    DegreeTooHigh(usize),
    #[error("the linear part of the equivalence is singular")]
    SingularLinearPart,
    #[error("the linear part of the equivalence is not a Lie automorphism")]
    NotLieAutomorphism,
    #[error("bivector entries are not homogeneous of a common degree")]
    NotHomogeneous,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("normalization infeasible: {0}")]
    NormalizationInfeasible(String),
    #[error("no expectations recorded for `{0}`")]
    NoExpectations(String),
}
