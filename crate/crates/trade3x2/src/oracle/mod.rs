//! Brute-force nonlinear general-equilibrium oracle.
//!
//! Everything in [`crate::hat`] and [`crate::classify`] is linear algebra
//! on shares and elasticities. This module provides the independent check:
//! full generalized-Leontief economies in levels, solved for equilibrium by
//! Newton's method, snapshotted into [`crate::Economy`] parameterizations,
//! and differentiated numerically. The generalized-Leontief form is used
//! because it has closed-form input coefficients and Allen elasticities and
//! admits factor complementarity; Cobb-Douglas or all-constant-CES forms
//! cannot make any factor pair complements, so they could never reach the
//! quadrant-IV configurations the sign-pattern theory is about.

mod fd;
mod gl;
mod sampler;

pub use fd::{
    fd_cost_share_elasticities, fd_response, fd_response_at, fd_rybczynski, fd_rybczynski_at,
};
pub use gl::{EquilibriumSnapshot, GLEconomy};
pub use sampler::{
    premise_shock_for, PremiseTarget,
    sample_admissible, sample_economy, sample_with_premises, MiddleCaseConstraint, PremiseSample,
    SampleConstraints,
};
pub(crate) use sampler::derive_seed;
