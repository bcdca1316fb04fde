//! Independent oracles and identity checks for the geometry and dynamics.

mod compare;
mod holonomy;
mod identities;
mod oracle;
mod report;
pub mod suites;

pub use compare::{compare_trajectories, DeviationMetric};
pub use holonomy::{holonomy_loop, wrap_pi, ClosedLoop, HolonomyReport};
pub use identities::{
    hjh_identity, lemma2_residual, pullback_residual, shape_determinant_residual,
};
pub use oracle::{el_residual_oracle, el_residuals, MIN_SAMPLES};
pub use report::{CheckResult, ResidualReport};
pub use suites::Suite;
