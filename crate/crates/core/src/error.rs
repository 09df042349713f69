use thiserror::Error;

/// Every failure the algebraic core can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}")]
    MalformedModulus { expected: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("field of order {p}^{d} exceeds the table limit of 65536 elements")]
    FieldTooLarge { p: u32, d: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element does not have norm one")]
    NormNotOne,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("tau^{0} does not generate the Galois group")]
    NonGeneratingPower(usize),
    #[error("linear system for the twisted decomposition is singular")]
    SingularSystem,
    #[error("twisted operator is singular")]
    SingularOperator,
    #[error("linear map is singular")]
    SingularMap,
    #[error("algebra is singular (no invertible left or right multiplication)")]
    SingularAlgebra,
    #[error("algebra is not a field: {0}")]
    NotAField(&'static str),
    #[error("minimal polynomial has no root in the extension")]
    NoRoot,
    #[error("presentations live over different extensions")]
    ExtensionMismatch,
    #[error("presentations have different canonical types")]
    TypeMismatch,
    #[error("operation needs {needed} units of work, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroDegree => "ZeroDegree",
            Error::MalformedModulus { .. } => "MalformedModulus",
            Error::ReducibleModulus { .. } => "ReducibleModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::NormNotOne => "NormNotOne",
            Error::NotInvertible => "NotInvertible",
            Error::NonGeneratingPower(_) => "NonGeneratingPower",
            Error::SingularSystem => "SingularSystem",
            Error::SingularOperator => "SingularOperator",
            Error::SingularMap => "SingularMap",
            Error::SingularAlgebra => "SingularAlgebra",
            Error::NotAField(_) => "NotAField",
            Error::NoRoot => "NoRoot",
            Error::ExtensionMismatch => "ExtensionMismatch",
            Error::TypeMismatch => "TypeMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
