//! Numerical tolerances and work caps.
//!
//! Every threshold used by the library lives here so that tests and the CLI
//! agree on the same numbers.

/// Distance from `0` or `2π` below which a planar rotation is treated as
/// the identity and the closed-form character is refused.
pub const THETA_CUTOFF: f64 = 1e-6;

/// Slack allowed when checking `|r_a(θ)| ≤ 1`.
pub const RATIO_SLACK: f64 = 1e-9;

/// A step coefficient this close to `±1` makes the L² series non-convergent.
pub const NONCONVERGENT_COEFF: f64 = 1e-12;

/// Default cap on branching paths for the brute-force profile.
pub const PATH_CAP: u64 = 10_000_000;

/// Default Lemma 3 threshold on `α̃₀ / (α̃₀ − α̃₁)^{1/3}`.
pub const LEMMA3_CONSTANT: f64 = 4.0;

/// Regime gate on `r_a(π)`.
pub const REGIME_GATE: f64 = 1.0 / 6.0;

/// Orthogonality drift that triggers re-orthonormalisation of a walk state.
pub const ORTHO_DRIFT: f64 = 1e-10;

/// Drift is inspected every this many steps.
pub const ORTHO_CHECK_EVERY: usize = 64;

/// Default cap on `steps * trials` for a single simulation.
pub const SIM_BUDGET: u64 = 2_000_000_000;

/// Largest trial count `⌈c t⌉` for which the censoring tail is summed in
/// exact integer arithmetic; larger counts fall back to log-space `f64`.
pub const CENSOR_EXACT_MAX: u64 = 20_000;

/// Tunable subset of the constants above, for callers that want to override
/// them per run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub theta_cutoff: f64,
    pub path_cap: u64,
    pub lemma3_constant: f64,
    pub sim_budget: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            theta_cutoff: THETA_CUTOFF,
            path_cap: PATH_CAP,
            lemma3_constant: LEMMA3_CONSTANT,
            sim_budget: SIM_BUDGET,
        }
    }
}
