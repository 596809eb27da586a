//! Pointwise projection fields: the Bott generator and its relatives.

mod bott;
mod chern;
mod equivariance;
mod field;

pub use bott::{
    bott_projector, evaluate_plane, inverse_stereographic, pullback_residual, sphere_projector,
    stereographic, PlanePoint,
};
pub use chern::{chern_integral, chern_number};
pub use equivariance::equivariance_check;
pub use field::{Domain, PointCheck, ProjectionField};
pub(crate) use field::csv_err;
