use thiserror::Error;

/// Errors raised by the library. Parse failures are reported separately as
/// [`crate::dsl::Diagnostic`]s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("undetermined parity: symbol `{0}` has duality `none`")]
    UndeterminedParity(String),
    #[error("enumeration too large: 2^{size} characters exceeds the bound 2^{bound}")]
    EnumerationTooLarge { size: usize, bound: usize },
    #[error("outside stable range: r = {r} must exceed dim V = {dim_v}")]
    OutsideStableRange { r: u32, dim_v: u32 },
    #[error("not a theta pair: {0}")]
    NotAThetaPair(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("invalid packet: {0}")]
    InvalidPacket(String),
    #[error("not a discrete parameter: {0}")]
    NotDiscrete(String),
    #[error("not an elementary parameter")]
    NotElementary,
    #[error("not of good parity")]
    NotGoodParity,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("search bound exceeded: no t <= {cap} works for summand {index}")]
    SearchBoundExceeded { index: usize, cap: u32 },
    #[error("not a dominating pair: {0}")]
    NotDominatingPair(String),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("missing oracle value for `{0}`")]
    MissingOracle(String),
    #[error("ledger not in expected form: {0}")]
    LedgerNotInExpectedForm(String),
    #[error("inconsistent pair: {0}")]
    InconsistentPair(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing place data: {0}")]
    MissingPlaceData(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
