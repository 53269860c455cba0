use thiserror::Error;

/// Errors surfaced by the engine. Every failure is reported with enough
/// context to point at the offending input; nothing is ever silently
/// coerced.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither zero nor prime")]
    InvalidCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields")]
    MixedFields,
    #[error("presentations are over different fields")]
    FieldMismatch,
    #[error("empty degree window {lo}..={hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("infinite monomial basis: {0}")]
    InfiniteBasis(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("morphism does not preserve degree on `{0}`")]
    DegreeMismatch(String),
    #[error("morphism does not kill the relation `{0}`")]
    RelationNotPreserved(String),
    #[error("expected a polynomial algebra on even-degree generators: {0}")]
    NotPolynomial(String),
    #[error("expected a finite-dimensional algebra: {0}")]
    NotFiniteDimensional(String),
    #[error("not a complex: d∘d ≠ 0 at stage {stage}, internal degree {degree}")]
    NotAComplex { stage: u32, degree: i64 },
    #[error("homological index {requested} exceeds the validated range (≤ {valid})")]
    BeyondValidRange { requested: u32, valid: u32 },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("unsupported algebra shape: {0}")]
    Unsupported(String),
    #[error("collapse certificate does not belong to this page")]
    CertificateMismatch,
    #[error("a collapse citation must be non-empty")]
    EmptyCitation,
    #[error("missing extension report for `{0}`")]
    MissingReport(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
