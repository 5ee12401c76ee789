use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::kind`] gives a stable machine-readable tag; the CLI emits it in
/// its JSON error reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("game has no states")]
    EmptyGame,
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("state `{0}` has no available action")]
    SinkState(String),
    #[error("probabilities of action `{action}` at state `{state}` sum to {sum}, expected 1")]
    ProbabilitySumMismatch {
        state: String,
        action: String,
        sum: Rational,
    },
    #[error("unknown {kind} `{id}`")]
    UnknownReference { kind: &'static str, id: String },
    #[error("transition {index} ({from} -{action}-> {to}) has probability {prob} outside (0, 1]")]
    ProbabilityOutOfRange {
        index: usize,
        from: String,
        action: String,
        to: String,
        prob: Rational,
    },
    #[error("strategy does not match the game: {0}")]
    StrategyDomainMismatch(String),
    #[error("{what} count {count} exceeds the configured cap {cap}")]
    CombinatorialLimitExceeded {
        what: &'static str,
        count: u128,
        cap: u64,
    },
    #[error("discount factor {0} is outside [0, 1)")]
    InvalidBeta(Rational),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("chain has {0} recurrent classes, expected exactly one")]
    NotUnichain(usize),
    #[error("chain is not the beta-recurrent chain it claims to be: {0}")]
    NotBetaRecurrent(String),
    #[error("stationary distribution mismatch: {0}")]
    StationaryMismatch(String),
    #[error("second-kind transitions cannot be identified: {0}")]
    MissingKindAnnotation(String),
    #[error("expected a {expected} transform map, got {found}")]
    WrongTransformKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("lower and upper values differ at state `{state}`: {lower} vs {upper}")]
    DeterminacyViolation {
        state: String,
        lower: Rational,
        upper: Rational,
    },
    #[error("supplied values are not the solution: {0}")]
    InconsistentValues(String),
    #[error("no positional strategy pair achieves the claimed values as a saddle point")]
    NoConsistentStrategy,
    #[error("recovery oracle broke its contract: {0}")]
    OracleContractViolation(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::EmptyGame => "EmptyGame",
            Error::DuplicateId { .. } => "DuplicateId",
            Error::SinkState(_) => "SinkState",
            Error::ProbabilitySumMismatch { .. } => "ProbabilitySumMismatch",
            Error::UnknownReference { .. } => "UnknownReference",
            Error::ProbabilityOutOfRange { .. } => "ProbabilityOutOfRange",
            Error::StrategyDomainMismatch(_) => "StrategyDomainMismatch",
            Error::CombinatorialLimitExceeded { .. } => "CombinatorialLimitExceeded",
            Error::InvalidBeta(_) => "InvalidBeta",
            Error::UnknownState(_) => "UnknownState",
            Error::NotUnichain(_) => "NotUnichain",
            Error::NotBetaRecurrent(_) => "NotBetaRecurrent",
            Error::StationaryMismatch(_) => "StationaryMismatch",
            Error::MissingKindAnnotation(_) => "MissingKindAnnotation",
            Error::WrongTransformKind { .. } => "WrongTransformKind",
            Error::DeterminacyViolation { .. } => "DeterminacyViolation",
            Error::InconsistentValues(_) => "InconsistentValues",
            Error::NoConsistentStrategy => "NoConsistentStrategy",
            Error::OracleContractViolation(_) => "OracleContractViolation",
            Error::SingularSystem => "SingularSystem",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}
