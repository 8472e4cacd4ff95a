//! Finite groups, their integral representations, and short exact sequences
//! of G-modules.

mod group;
mod module;
mod sequence;

use std::sync::Arc;

use thiserror::Error;

use crate::zlattice::{FgAbelianGroup, ZLatticeError};

pub use group::{builtin_battery, FiniteGroup, QuotientGroup, Subgroup};
pub use module::GModule;
pub use sequence::{coaugmentation_quotient, ModuleMap, ShortExactSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GModuleError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("element subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("modules are over different groups")]
    GroupMismatch,
    #[error("direct sum of no modules")]
    EmptySum,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the identity does not act as the identity")]
    IdentityActsNontrivially,
    #[error("action(g)·action(h) ≠ action(gh) for (g, h) = ({g}, {h})")]
    ActionNotHomomorphic { g: usize, h: usize },
    #[error("action of element {g} does not preserve the relations")]
    RelationsNotPreserved { g: usize },
    #[error("map does not send relations to relations")]
    MapNotWellDefined,
    #[error("map does not commute with the action of element {g}")]
    NotEquivariant { g: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lattice(#[from] ZLatticeError),
}

impl GModuleError {
    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        GModuleError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }

    /// Input that is well-formed but mathematically inconsistent.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            GModuleError::InvalidTable(_)
                | GModuleError::NotASubgroup
                | GModuleError::NotNormal
                | GModuleError::IdentityActsNontrivially
                | GModuleError::ActionNotHomomorphic { .. }
                | GModuleError::RelationsNotPreserved { .. }
                | GModuleError::MapNotWellDefined
                | GModuleError::NotEquivariant { .. }
                | GModuleError::NotExact(_)
        )
    }
}

pub fn builtin_group(name: &str) -> Result<Arc<FiniteGroup>, GModuleError> {
    FiniteGroup::builtin(name).map(Arc::new)
}

pub fn trivial_module(group: &Arc<FiniteGroup>, m: FgAbelianGroup) -> GModule {
    GModule::trivial(group, m)
}

pub fn regular_module(group: &Arc<FiniteGroup>) -> GModule {
    GModule::regular(group)
}

pub fn negation_lattice(n: usize) -> Result<GModule, GModuleError> {
    GModule::negation_lattice(n)
}

pub fn induced_module(h: &Subgroup, m: &GModule) -> Result<GModule, GModuleError> {
    GModule::induced(h, m)
}

pub fn direct_sum(ms: &[GModule]) -> Result<GModule, GModuleError> {
    GModule::direct_sum(ms)
}

pub fn fixed_points(m: &GModule) -> FgAbelianGroup {
    m.fixed_points()
}

pub fn abelianization(group: &FiniteGroup) -> FgAbelianGroup {
    group.abelianization()
}
