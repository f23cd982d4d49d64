//! Representation theory of SO(2n+1) at planar rotations, and the L² bound
//! it yields for conjugation-invariant random rotation walks.
//!
//! * [`labels`]: highest-weight labels and their enumeration.
//! * [`weyl`]: exact dimensions and closed-form character ratios.
//! * [`branching`]: Fourier coefficients from branching chains.
//! * [`diagnostics`]: exhaustive checks of the coefficient inequalities.
//! * [`bounds`]: the truncated character-sum bound and mixing-time search.
//! * [`walk`]: Monte Carlo simulation of the walks themselves.

pub mod bounds;
pub mod branching;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod labels;
pub mod walk;
pub mod weyl;

pub use error::{Error, Result};
pub use labels::{enumerate_odd, validate_odd, EvenLabel, LabelBudget, OddLabel};
