//! Symbol calculus: Gaussians, polynomials and the Fourier picture.

pub mod fourier;
pub mod gaussian;
pub mod poly;

pub use fourier::{fourier_gaussian, fourier_iso_check, FourierCheck};
pub use gaussian::{
    mehler, moyal_gauss, rational, scaling_iso, scaling_iso_prefactored, vacuum_symbol, Field,
    GaussianSymbol, RationalGaussian,
};
pub use poly::{
    a_square_expected, build_a_symbol, moyal_commutator, moyal_poly, moyal_poly_matrix,
    MatrixWeylPoly, WeylPoly,
};
