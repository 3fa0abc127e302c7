//! Comparative statics for a three-factor, two-good open economy.
//!
//! The library models a small open economy with three mobile factors
//! (land `T`, capital `K`, labor `L`) and two tradable goods
//! (an exportable `1` and an importable `2`), and answers one question:
//! what does a change in goods prices or factor endowments do to factor
//! rewards and sector outputs?
//!
//! The pieces fit together like this:
//!
//! * [`Economy`] holds the full parameterization at a point in time:
//!   distributive shares, income shares, allocation shares, and per-sector
//!   Allen substitution matrices.
//! * [`hat`] assembles the rate-of-change ("hat") linear system from the
//!   zero-profit and full-employment conditions and extracts the 2×3
//!   Rybczynski elasticity matrix.
//! * [`classify`] runs the sign-pattern inference chain: deflated change
//!   variables, admissible sign triples, the EWS-ratio-vector line segment,
//!   the quadrant-IV test, and the subregion refinement that pins down the
//!   Rybczynski sign pattern.
//! * [`oracle`] is the brute-force check on everything above: full
//!   nonlinear generalized-Leontief equilibria solved by Newton's method,
//!   with finite-difference elasticities to validate the linear algebra.
//! * [`histdata`] ingests the bundled historical series (Thailand,
//!   1864–1955) and computes the deflated price changes, yield trends,
//!   allocation-share estimates, and migration aggregates that feed the
//!   1920–1927 case study.
//! * [`batch`] fans validation runs out over many seeded oracle economies,
//!   in parallel when the `parallel` feature (default) is enabled.
//!
//! All value types are immutable after construction and every operation is
//! a pure function, so concurrent use needs no coordination.

// Index-parallel loops over the small fixed-size tables read closer to the
// algebra than iterator chains would.
#![allow(clippy::needless_range_loop)]

pub mod allen;
pub mod batch;
pub mod classify;
pub mod economy;
mod error;
pub mod factors;
pub mod hat;
pub mod histdata;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod shares;
pub mod sign;

pub use allen::{AllenMatrix, CostShareElasticities};
pub use economy::{Complementarity, Economy, EwsComponents, EwsRatioVector};
pub use error::Error;
pub use factors::{FactorId, GoodId, FACTORS, GOODS};
pub use hat::{ResponseBundle, RybczynskiMatrix, ShockVector};
pub use shares::{
    derive_allocation, AllocationShares, DistributiveShares, IncomeShares, IntensityRanking,
    MiddleIntensityCase,
};
pub use sign::{Sign, SHARE_TOL, SIGN_ZERO_BAND};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
