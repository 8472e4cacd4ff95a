//! Picard groups through their unit-group descriptions.
//!
//! Descent kernels are `H¹` of a [`UnitModel`]; conductor squares of the
//! cusp and node families are computed from closed forms for their residue
//! unit groups and reported as a [`PicDescription`].

mod conductor;
mod descriptor;
mod units;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::gmodules::GModuleError;

pub use conductor::{conductor_square_pic, ConductorSquareSpec, DualNumber, NodeRing, UnitQuotient};
pub use descriptor::{pic_torsion, FieldDescriptor, PicDescription};
pub use units::{descent_kernel, group_ring_pic, kernel_torsion_bound_check, GroupRingPic, UnitModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("invalid unit model: {0}")]
    InvalidModel(String),
    #[error("invalid conductor-square parameters: {0}")]
    InvalidSpec(String),
    #[error("torsion order must be positive")]
    NonPositiveOrder,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Module(#[from] GModuleError),
}
