//! Completing a low-pass filter to a full orthonormal filter bank.

mod exact;
mod householder;
mod smooth;
mod sweep;

pub use exact::{complete_q2, project_and_complement, require_normalized, NORMALIZED_TOL};
pub use householder::{householder_complete, UNIT_TOL};
pub use smooth::{bank_distance, gram_schmidt_smooth, NORMALIZATION_FLOOR};
pub use sweep::{
    align_sweep, SweepOptions, SweepOrder, SweepOutcome, SweepReport, DEFAULT_JUMP_TOL,
    DEFAULT_RELAX_ITERS, DEFAULT_RELAX_TOL,
};
