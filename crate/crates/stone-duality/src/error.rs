use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the engine's
/// operations; most are precondition violations surfaced to the caller.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values that must live on the same carrier do not.
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    /// A point label that does not belong to the carrier.
    #[error("unknown point `{label}` on carrier {carrier}")]
    UnknownPoint { label: String, carrier: String },

    /// A set that is not a member of the algebra in scope.
    #[error("not an algebra member: {0}")]
    NotInAlgebra(String),

    /// The operation is not defined for this model kind.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// Too few pairwise disjoint nonempty algebra members.
    #[error("requested {requested} pairwise disjoint nonempty members, only {available} available")]
    InsufficientDisjointSets { requested: usize, available: usize },

    /// Symmetric decomposition asked for under a real scalar session.
    #[error("symmetric decomposition needs a complex scalar session (real session: t = 0)")]
    RealSession,

    /// A Hausdorff-only check invoked on a space that is not Hausdorff.
    #[error("not Hausdorff: {0}")]
    NotHausdorff(String),

    /// The test family for a universally quantified inequality is empty.
    #[error("empty test family")]
    EmptyTestFamily,

    /// A named check does not apply to the model kind at hand.
    #[error("check `{check}` not applicable: {reason}")]
    NotApplicable { check: String, reason: String },

    /// Model document parse or resolution failure.
    #[error("model document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
