use thiserror::Error;

/// Errors shared across the toolkit. Checks that are expected to fail
/// (law verification) produce reports instead; errors are reserved for
/// misuse of an operation's preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("unknown unit {0:?}")]
    UnknownUnit(String),

    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),

    #[error("elements live over different groupoids")]
    GroupoidMismatch,

    #[error("unit subset {0:?} is not invariant")]
    NotInvariant(String),

    #[error("groupoid fails validation: {0}")]
    InvalidGroupoid(String),

    #[error("diagonal pair fails validation: {0}")]
    InvalidPair(String),

    #[error("groupoid is not principal")]
    NotPrincipal,

    #[error("element is not a normalizer")]
    NotNormalizer,

    #[error("element is not a diagonal 0/1 projection")]
    NotProjection,

    #[error("unit {0:?} lies outside the domain of the partial map")]
    UnitOutsideDomain(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("diagonal restriction is not an isomorphism")]
    DiagonalNotIso,

    #[error("quotient by the full unit space would have no unit")]
    EmptyQuotient,

    #[error("morphism fails validation at {0}")]
    MorphismInvalid(String),
}
