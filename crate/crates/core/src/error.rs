use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    ModulusIncompatible { from: u64, to: u64 },
    #[error("operands live in different cyclotomic fields (moduli {left} and {right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{a} is not a unit modulo {n}")]
    NotAUnit { a: u64, n: u64 },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("generators do not define a subgroup of the decomposition group: {0}")]
    NotASubgroup(String),
    #[error("field inclusion fails: {0}")]
    NotSubfield(String),
    #[error("fields or characters live in incompatible frames: {0}")]
    FrameMismatch(String),

    #[error("invalid group presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("map is not a group automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism has order {order}, which is not a power of {p}")]
    OrderNotPPower { order: u64, p: u64 },
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("character table computation failed: {0}")]
    CharacterTable(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("no Schur index available for character {character}: no rule applies and no override given")]
    ProviderMissing { character: usize },
    #[error("base-change law violated: {0}")]
    LawViolation(String),
    #[error("rank mismatch for {what}: expected {expected}, got {actual}")]
    RankMismatch { what: String, expected: usize, actual: usize },
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("skew series operands come from different rings or truncations")]
    RingMismatch,
    #[error("element is not a unit in the truncated skew series ring")]
    SkewNotAUnit,
    #[error("Hensel lifting failed: {0}")]
    LiftFailure(String),
    #[error("invalid coefficient ring parameters: {0}")]
    InvalidRing(String),

    #[error("{0} is not a Sophie Germain prime")]
    NotSophieGermain(u64),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cache error: {0}")]
    Cache(String),
}
