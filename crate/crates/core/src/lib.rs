//! Verification toolkit for deformation quantization on symplectic vector spaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`symplectic`] and [`exterior`]: the standard symplectic space and the
//!   Clifford module `Λ V^{1,0}`.
//! * [`symbols`]: exact Moyal products of Gaussians and polynomials, the Mehler
//!   family and a quadrature check of the Fourier/twisted-convolution isomorphism.
//! * [`quantize`]: Weyl and Bargmann–Fock representations on truncated bases.
//! * [`projectors`]: the Bott projector, stereographic pullback, Chern numbers.
//! * [`deform`]: the explicit idempotent family joining the Bott generator to
//!   the vacuum projection.
//! * [`harness`]: suites, reports, the Toeplitz index demo and the CLI backend.

pub mod deform;
pub mod error;
pub mod exterior;
pub mod harness;
pub mod linalg;
pub mod projectors;
pub mod quadrature;
pub mod quantize;
pub mod sampling;
pub mod symbols;
pub mod symplectic;

pub use error::{Error, Result};
pub use exterior::ExteriorBasis;
pub use linalg::{CMatrix, C64};
pub use symplectic::{make_standard_space, SymplecticSpace};
