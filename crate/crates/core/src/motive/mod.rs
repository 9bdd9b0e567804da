//! The invariants of a triple `(n, d, kappa)`: excess dimension, the `b`
//! matrix, the classes `a_i`, the integer `m` and condition (B), the
//! osculating-plane count, the `beta_i`, and the claim verifier.

pub mod analysis;
pub mod claims;
pub mod engine;
pub mod params;

pub use analysis::{
    analyze, b_coeff, b_matrix, betas, condition_b, m_value, m_value_for, plane_count, sum_ai, t_class,
    ConditionBReport, TripleAnalysis,
};
pub use claims::{verify_claims, ClaimRecord, ClaimsReport, ScanBounds};
pub use engine::{EngineStats, TripleEngine};
pub use params::TripleParams;

/// Constructor mirror of [`TripleParams::new`].
pub fn triple_params(n: u32, d: u32, kappa: u32) -> crate::Result<TripleParams> {
    TripleParams::new(n, d, kappa)
}
