//! Multivariate wavelet filter banks on the n-torus.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: integer dilation matrices, Smith/Hermite normal forms, coset
//!   representatives of `Zⁿ/AZⁿ` and the dual group `F ⊂ Tⁿ`.
//! * [`torus`]: functions on `Tⁿ` (trigonometric coefficients and/or grid
//!   samples), translation, and the module-valued bracket products.
//! * [`filters`]: low-pass / high-pass validation, polyphase fields,
//!   orthonormal-basis reconstruction and module frames.
//! * [`completion`]: the matrix completion toolbox (exact `q = 2` completion,
//!   Householder completion, the alignment sweep, Gram–Schmidt smoothing).
//! * [`cascade`]: truncated infinite products for scaling and wavelet
//!   Fourier transforms.
//! * [`obstruction`]: an explicit low-pass filter on `T⁵` with dilation
//!   determinant 3 whose orthogonal complement is stably free but not free.
//! * [`io`]: the JSON filter-file schema, CSV export and atomic writes.

pub mod cascade;
pub mod completion;
pub mod error;
pub mod filters;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod obstruction;
pub mod torus;

pub use error::{Error, Result};
pub use num_complex::Complex64;
