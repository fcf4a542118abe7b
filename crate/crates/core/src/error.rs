use thiserror::Error;

/// Whether a failure came from bad input or from a broken algorithmic contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Contract,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("invalid stratum: {0}")]
    InvalidStratum(String),

    #[error("unknown component: {0}")]
    UnknownComponent(String),

    #[error("empty generator list")]
    EmptyIdeal,

    #[error("mark must be at least 1")]
    ZeroMark,

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("centre {center} is not permissible: {reason}")]
    NonPermissible { center: String, reason: String },

    #[error("transform undefined: centre degree {degree} below mark {mark}")]
    NonPermissibleTransform { degree: u64, mark: u64 },

    #[error("not of maximal order: full-stratum order {order} differs from mark {mark}")]
    NotMaximalOrder { order: u64, mark: u64 },

    #[error("monomial stage needs a single generator, chart {0} has several")]
    NotMonomial(String),

    #[error("companion weight {nu} outside (0, {mark})")]
    CompanionRange { nu: u64, mark: u64 },

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element part of degree {0} lies outside the matching ideal power")]
    InvalidElement(u32),

    #[error("sample lies outside the required ideal power")]
    InvalidSample,

    #[error("trace does not match configuration: {0}")]
    InconsistentTrace(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Validation(_)
            | Error::InvalidStratum(_)
            | Error::UnknownComponent(_)
            | Error::EmptyIdeal
            | Error::ZeroMark
            | Error::NotPrime(_)
            | Error::Precondition(_)
            | Error::InvalidElement(_)
            | Error::InvalidSample
            | Error::InconsistentTrace(_) => ErrorClass::Validation,
            _ => ErrorClass::Contract,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
