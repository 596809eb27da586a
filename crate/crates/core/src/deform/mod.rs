//! The deformation family `e_λ(τ)` and its limits.

mod boundary;
mod convergence;
mod endpoint;
mod family;

pub use boundary::{boundary_idempotent, parametrix_cross_check};
pub use convergence::{
    family_equivariance, lambda_continuity, tau_convergence, write_table_csv, LambdaContinuity,
    TableRow, TauConvergence, TRANSPORT_MARGIN,
};
pub use endpoint::{husimi, husimi_trend, pointwise_family_e0, HusimiRow};
pub use family::{
    b_operator, b_weight, idempotent_e, parametrix_weight, r_operator, DeformationFamily,
    FamilyRelations, RELATION_MARGIN,
};
