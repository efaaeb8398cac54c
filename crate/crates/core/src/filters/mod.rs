//! Low-pass and high-pass filter conditions, polyphase matrix fields,
//! orthonormal reconstruction and module frames.

mod bank;
mod frame;
mod polyphase;

pub use bank::{
    validate_family, validate_family_on, validate_low_pass, validate_low_pass_on, working_grid,
    FamilyReport, FilterBank, FilterScale, LowPassReport, ValidationReport, DEFAULT_TOL,
};
pub use frame::{frame_from_projection, ModuleFrame, ModuleProjection, PROJECTION_TOL};
pub use polyphase::{polyphase, polyphase_of, polyphase_on, reconstruct, PolyphaseField, UnitarityDefect};
