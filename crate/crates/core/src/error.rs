use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("n not coprime to p (n = {n}, p = {p})")]
    NotCoprime { n: usize, p: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("element does not lie in component {index}")]
    NotInComponent { index: usize },
    #[error("component index {index} out of range ({count} cosets)")]
    ComponentIndex { index: usize, count: usize },
    #[error("dimension {dim} over F_{p} exceeds enumeration budget of 2^{budget} combinations")]
    EnumerationBudget { dim: usize, p: u32, budget: u32 },
    #[error("code is not symplectic self-orthogonal (e = {e})")]
    NotSelfOrthogonal { e: usize },
    #[error("first code does not contain the second")]
    NotNested,
    #[error("construction stated for F_4 only (p = {0})")]
    UnsupportedField(u32),
    #[error("vacuous quantum code: logical dimension {0} < 0")]
    VacuousCode(i64),
    #[error("refusing to enumerate {count} codes (limit {limit})")]
    TooManyCodes { count: u128, limit: u128 },
    #[error("internal cross-check failed: {0}")]
    OracleMismatch(String),
    #[error("invalid code descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
