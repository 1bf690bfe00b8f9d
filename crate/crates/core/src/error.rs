use thiserror::Error;

/// Every failure mode of the library. Domain errors carry enough context
/// to be reported as structured objects by the task runner.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element is not integral (negative valuation)")]
    NotIntegral,
    #[error("residue field exhausted: {0}")]
    ResidueFieldExhausted(String),
    #[error("retry budget of {0} attempts exceeded")]
    RetryBudgetExceeded(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("bad exponent {0}")]
    BadExponent(usize),
    #[error("cut {0} is not an integer")]
    FractionalCut(String),
    #[error("module is not sandwiched between M\u{39b} and \u{39b}")]
    NotBetween,
    #[error("vector lies in the subspace")]
    InSubspace,
    #[error("subspaces are not disjoint")]
    NotDisjoint,
    #[error("points are equal")]
    EqualPoints,
    #[error("set has no point over the concrete field")]
    NoConcreteWitness,
    #[error("set is empty")]
    EmptySet,
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("polynomial does not split over the field")]
    NotSplit,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

impl Error {
    /// Stable machine-readable name used in result documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::MixedFields => "MixedFields",
            Error::NotIntegral => "NotIntegral",
            Error::ResidueFieldExhausted(_) => "ResidueFieldExhausted",
            Error::RetryBudgetExceeded(_) => "RetryBudgetExceeded",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Singular => "Singular",
            Error::BadExponent(_) => "BadExponent",
            Error::FractionalCut(_) => "FractionalCut",
            Error::NotBetween => "NotBetween",
            Error::InSubspace => "InSubspace",
            Error::NotDisjoint => "NotDisjoint",
            Error::EqualPoints => "EqualPoints",
            Error::NoConcreteWitness => "NoConcreteWitness",
            Error::EmptySet => "EmptySet",
            Error::InconsistentPresentation(_) => "InconsistentPresentation",
            Error::NotSplit => "NotSplit",
            Error::BadDimension(_) => "BadDimension",
            Error::NotInLattice => "NotInLattice",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::MalformedInput(_) => "MalformedInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
