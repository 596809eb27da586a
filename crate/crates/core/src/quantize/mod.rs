//! Operator representations on truncated bases.
//!
//! Identities that truncation breaks only near the top of the basis are asserted
//! on the interior mask, see [`HermiteBasisSpec::interior`].

pub mod bargmann;
pub mod basis;
pub mod dilation;
pub mod dirac;
pub mod weyl;

pub use bargmann::{bargmann_fock_matrices, BargmannFock};
pub use basis::{HermiteBasisSpec, OperatorMatrix};
pub use dilation::{dilation, dilation_1d, hermite_functions};
pub use dirac::{
    a_plus_index, a_square_diagonal, a_square_expected, build_a_operator, graded_indices,
    ground_tensor, kernel_analysis, total_unitary, IndexReport, KernelAnalysis,
};
pub use weyl::{
    coherent_state, fock_unitary, gaussian_diagonal, ground_projection, ladder_matrices,
    oscillator, oscillator_diagonal, position_matrices, quantize_gaussian, quantize_poly,
};
