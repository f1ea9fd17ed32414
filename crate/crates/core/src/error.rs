use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multiplication table is not square or has entries out of range")]
    MalformedTable,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {0} is not a permutation of the declared degree")]
    NotBijection(usize),
    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    BudgetExceeded {
        what: String,
        needed: String,
        limit: String,
    },
    #[error("module action is not well defined: {0}")]
    IllDefinedAction(String),
    #[error("action is not a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("module is not a lattice (it has torsion)")]
    HasTorsion,
    #[error("module is not finite")]
    NotFinite,
    #[error("sequence is not exact at {0}")]
    NotExact(String),
    #[error("root datum axiom {axiom} fails: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("group action is incompatible with the root datum at element {element}: {detail}")]
    ActionNotCompatible { element: usize, detail: String },
    #[error("exactness failure at {0}")]
    ExactnessFailure(String),
    #[error("verification failed at {stage}: {detail}")]
    VerificationFailed { stage: String, detail: String },
    #[error("no equivariant section exists for {0}")]
    SectionNotFound(String),
    #[error("unsupported morphism: {0}")]
    UnsupportedMorphism(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Verification,
    Input,
    Budget,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BudgetExceeded { .. } | Error::Cancelled => ErrorClass::Budget,
            Error::VerificationFailed { .. }
            | Error::ExactnessFailure(_)
            | Error::NotExact(_)
            | Error::SectionNotFound(_) => ErrorClass::Verification,
            _ => ErrorClass::Input,
        }
    }

    pub fn budget(what: impl Into<String>, needed: impl ToString, limit: impl ToString) -> Error {
        Error::BudgetExceeded {
            what: what.into(),
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    pub fn verification(stage: impl Into<String>, detail: impl Into<String>) -> Error {
        Error::VerificationFailed {
            stage: stage.into(),
            detail: detail.into(),
        }
    }
}
