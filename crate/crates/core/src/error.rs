use thiserror::Error;

/// Errors surfaced by the engine. Variant names follow the operation
/// contracts; `stage` context is added by the CLI layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not expressible over the hinted denominator")]
    BasisMismatch,
    #[error("not a total derivative (remainder {remainder})")]
    NotTotalDerivative { remainder: String },
    #[error("operator coefficient modes do not match: {0}")]
    ModeMismatch(String),
    #[error("division by the zero operator")]
    DivisionByZeroOperator,
    #[error("subresultant index {k} out of range for orders ({n}, {m})")]
    IndexOutOfRange { k: usize, n: usize, m: usize },
    #[error("operator orders too low for first subresultant")]
    OrderTooLow,
    #[error("no KdV level found up to n = {0}")]
    LevelNotFound(usize),
    #[error("level system at n = {0} is underdetermined")]
    DegenerateLevelSystem(usize),
    #[error("flag space index {n} is not above the level {s}")]
    IndexBelowLevel { n: usize, s: usize },
    #[error("spectral curve coefficient is not a constant: {0}")]
    NonConstantCoefficient(String),
    #[error("spectral curve lacks the expected -mu^2 shape: {0}")]
    ShapeMismatch(String),
    #[error("element is zero on the curve")]
    ZeroOnCurve,
    #[error("subresultant collapsed to zero on the curve")]
    ZeroSubresultant,
    #[error("({lambda0}, {mu0}) is not a point of the spectral curve")]
    NotOnCurve { lambda0: String, mu0: String },
    #[error("phi2 vanishes at lambda0 = {0}")]
    VanishingPhi2(String),
    #[error("unsupported curve shape: {0}")]
    UnsupportedShape(String),
    #[error("no hyperexponential solution: {0}")]
    NoHyperexponentialSolution(String),
    #[error("hyperexponential solving is not supported over this tower: {0}")]
    UnsupportedTower(String),
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown symbol `{0}` for this tower")]
    UnknownSymbol(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
