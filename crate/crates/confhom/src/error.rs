use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfError {
    #[error("point sets overlap")]
    OverlappingPoints,
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(i64),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("full complex requires single relator")]
    NotSingleRelator,
    #[error("boundary does not square to zero in degree {0}")]
    BoundarySquare(usize),
    #[error("kernel not preserved")]
    KernelNotPreserved,
    #[error("endomorphism does not fix the relator word")]
    ZetaNotFixed,
    #[error("slot out of range")]
    SlotOutOfRange,
    #[error("coefficient overflow")]
    Overflow,
    #[error(transparent)]
    Lin(#[from] intlin::IntLinError),
}

pub type Result<T> = std::result::Result<T, ConfError>;
