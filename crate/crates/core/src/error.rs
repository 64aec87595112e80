use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring order {0}: a ring with nonzero identity needs at least 2 elements")]
    InvalidOrder(u64),
    #[error("ring of order {order} exceeds the configured cap {cap}")]
    TooLarge { order: u128, cap: usize },
    #[error("modulus {0} is not prime")]
    InvalidModulus(u64),
    #[error("invalid exponent list: {0}")]
    InvalidExponents(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
    #[error("operation requires a phi-ring: {0}")]
    PhiRingRequired(String),
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("operands belong to different domains")]
    MixedDomains,
    #[error("budget of {budget} exceeded while {what}")]
    BudgetExceeded { what: String, budget: usize },
    #[error("ideal is not prime")]
    NotPrime,
    #[error("residual by the zero ideal is not a lattice")]
    ZeroIdealResidualDividend,
    #[error("the zero ideal has no inverse")]
    ZeroIdeal,
    #[error("discriminant outside the supported table range: {0}")]
    OutOfTableRange(String),
    #[error("ideal is not nonnil: {0}")]
    NotNonnil(String),
    #[error("ring is not a phi-ring: {0}")]
    NotPhiRing(String),
    #[error("ideal I is not contained in J")]
    NotContained,
    #[error("unsupported ring family: {0}")]
    UnsupportedFamily(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, budget: usize) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            budget,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
