use thiserror::Error;

/// Errors raised by the combinatorial operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate triple: cyclic order needs three distinct points")]
    DegenerateTriple,
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("invalid arc set: {0}")]
    InvalidArcSet(String),
    #[error("no morphism to factor")]
    NoMorphism,
    #[error("no extension triangle")]
    NoExtensionTriangle,
    #[error("unsupported arc configuration: {0}")]
    Unsupported(String),
    #[error("orbits overlap for summands {0} and {1}")]
    OrbitsOverlap(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("word is not composable at letter {0}")]
    NonComposable(usize),
    #[error("zero operand: {0}")]
    ZeroOperand(String),
    #[error("degree {degree} outside window [-{window}, {window}]")]
    WindowExceeded { degree: i64, window: i64 },
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("unreachable: {0}")]
    Unreachable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
