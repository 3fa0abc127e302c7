use thiserror::Error;

/// Errors produced by constructors, solvers, and the data pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A share table violates positivity or a normalization identity.
    #[error("invalid shares: {0}")]
    InvalidShares(String),

    /// An Allen substitution matrix violates symmetry, homogeneity, or concavity.
    #[error("invalid Allen matrix: {0}")]
    InvalidAllen(String),

    /// Two factor-intensity ratios are tied, so no strict ranking exists.
    #[error("indeterminate factor intensity ranking: {0}")]
    IndeterminateRanking(String),

    /// The land/labor aggregate substitution term is inside the zero band,
    /// so the EWS ratio vector has no defined value.
    #[error("EWS ratio vector undefined: |g_LT| = {0:.3e} is inside the zero band")]
    RatioUndefined(f64),

    /// The comparative-statics system (or a Newton step) has no usable pivot.
    #[error("singular linear system: {0}")]
    SingularSystem(String),

    /// `theta_T1 = theta_T2`, so the line-intersection bound is undefined.
    #[error("degenerate land intensity: theta_T1 and theta_T2 coincide")]
    DegenerateIntensity,

    /// A classification premise does not hold for the supplied changes.
    #[error("premise not satisfied: {0}")]
    PremiseFailed(String),

    /// Segment endpoint A is undefined (capital/labor reward changes coincide).
    #[error("segment endpoint A undefined: {0}")]
    PointAUndefined(String),

    /// Segment endpoint B is undefined (an aggregate coefficient change is zero).
    #[error("segment endpoint B undefined: {0}")]
    PointBUndefined(String),

    /// The extreme factors are not economy-wide complements, so the
    /// strong-result sign patterns do not apply.
    #[error("strong Rybczynski configuration absent: {0}")]
    NotStrongRybczynski(String),

    /// A labor-column elasticity sits inside the sign zero band.
    #[error("subregion boundary: {0}")]
    Boundary(String),

    /// Newton iteration failed to converge to a positive equilibrium.
    #[error("no equilibrium found: {0}")]
    NoEquilibrium(String),

    /// The solved equilibrium has nonpositive prices, outputs, or coefficients.
    #[error("infeasible equilibrium: {0}")]
    Infeasible(String),

    /// The rejection sampler ran out of budget before meeting the constraints.
    #[error("sampler exhausted after {attempts} attempts (unmet constraint: {constraint})")]
    SamplerExhausted { attempts: usize, constraint: String },

    /// A data file is malformed, inconsistent, or missing a required entry.
    #[error("data error: {0}")]
    Data(String),

    /// A set-valued subregion operation received an empty set.
    #[error("empty subregion set")]
    EmptySubregionSet,

    /// Underlying I/O failure while reading or writing a document.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
