use thiserror::Error;

/// Errors produced by the strip-model operations.
///
/// Geometric ambiguity is an error, not a guess: whenever a tolerance-sized
/// band makes a verdict untrustworthy the operation refuses instead of
/// picking a side.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix failed the unimodularity check at construction.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// An operation requiring a hyperbolic element got something else.
    #[error("element `{0}` is not hyperbolic")]
    NotHyperbolic(String),

    /// The projected enumeration size exceeds the configured cap.
    #[error("enumeration to depth {depth} projects {projected} words, over the cap {cap}")]
    DepthTooLarge {
        depth: u32,
        projected: u128,
        cap: u128,
    },

    /// Image points of an orbit-point pair collapsed within tolerance.
    #[error("degenerate pair: {0}")]
    DegeneratePair(String),

    /// Circle points of a linking test are not pairwise separated.
    #[error("degenerate circle points: {0}")]
    DegeneratePoints(String),

    /// A membership or classification test fell inside a tolerance band;
    /// results at the current tolerance are untrustworthy.
    #[error("ambiguous geometry: {0}")]
    AmbiguousGeometry(String),

    /// A crossing arc's displacement changes sign on its overlap, so no
    /// trivialization schedule is certified.
    #[error("mixed sign profile: {0}")]
    MixedSignProfile(String),

    /// The lozenge, linking, and oracle criteria disagree; this is a hard
    /// failure of the model or of the numerics, never silently reported.
    #[error("inconsistent verdicts: {0}")]
    InconsistentVerdicts(String),

    /// A generator word could not be parsed against the group's alphabet.
    #[error("bad word: {0}")]
    BadWord(String),

    /// A chain or interval was constructed with an empty or inverted range.
    #[error("invalid range: {0}")]
    InvalidRange(String),
}
