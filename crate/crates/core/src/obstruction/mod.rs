//! A low-pass filter on `T⁵` for the dilation `[[0, 3], [I₄, 0]]` whose
//! orthogonal complement is stably free but not free.
//!
//! The construction starts from the clutching map `U₀ : S⁴ → U(2)`, writes
//! `U₀ ⊕ 1` as a product `φ⁺*·φ⁻` of maps defined on `S⁵` minus a pole,
//! deforms both factors to constants along `p_t^±` to get a path `W_t` from
//! `U₀ ⊕ 1` to `I₃`, and reads off `N₀ = W_t e₃`. Pulling `N₀` back along
//! `T × T⁴ → T × S⁴` (pinching the boundary of `[−1,1]⁴`) and spreading the
//! three components over the characters `1, ê₁, ê₁²` gives `h₀`.

mod checks;
mod filter;
mod path;
mod sphere;

pub use checks::{
    check_identities, demo_completion_failure, haar_control, obstruction_ladder, random_sphere4,
    DemoReport, IdentityCheck, IdentityReport, DEFAULT_SAMPLES, HAAR_LADDER, IDENTITY_TOL,
    OBSTRUCTION_LADDER, OBSTRUCTION_RELAX_ITERS, PINCH_TOL, VERDICT_NOTE,
};
pub use filter::{
    assemble_h0, calibration, dilation, h0_field, h0_value, torus_coordinates, COMPONENT_OF_CHARACTER,
    DEFAULT_SHAPE,
};
pub use path::{n0, path_point, w_path, PathUnitary};
pub use sphere::{
    factorization_check, phi, pinch, u0, u0_plus_one, PhiSign, Sphere4Point, Sphere5Point, POLE_TOL,
    SPHERE_TOL,
};
