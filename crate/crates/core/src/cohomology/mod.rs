//! Cohomology of finite groups with coefficients in finitely generated
//! G-modules, in degrees 0, 1 and 2, and the maps between such groups.
//!
//! `h1` and `h2` run on a free ZG-resolution, whose cochain groups have
//! `k_n·rank(M)` coordinates instead of `|G|ⁿ·rank(M)`. Restriction,
//! inflation and [`CochainComplexSlice`] use inhomogeneous cochains. The two
//! models are cross-checked in the tests.

mod compute;
mod maps;
mod model;
mod oracle;
mod resolution;

use thiserror::Error;

use crate::gmodules::{FiniteGroup, GModule, GModuleError};
use crate::integer::Integer;
use crate::zlattice::{FgAbelianGroup, ZLatticeError};

pub use compute::{CochainComplexSlice, Cohomology, CohomologyClass};
pub use maps::{
    connecting_map, induced_map, inflation, inflation_restriction, map_on_cohomology, restriction, shapiro_check,
    six_term_sequence, ConnectingMap, InflationRestriction, ShapiroCheck, SixTermSequence, SIX_TERM_NODES,
};
pub use model::CochainModel;
pub use oracle::cyclic_h_oracle;
pub use resolution::FreeResolution;

/// Largest `|G|² · rank(M)` accepted.
pub const COCHAIN_GUARD: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("degree capped at 2 (requested {degree})")]
    DegreeCapped { degree: usize },
    #[error("cochain guard exceeded: |G|²·rank = {coordinates} > {COCHAIN_GUARD}")]
    GuardExceeded { coordinates: usize },
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("module is not flagged uniquely divisible")]
    NotFlagged,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] GModuleError),
    #[error(transparent)]
    Lattice(#[from] ZLatticeError),
}

pub(crate) fn check_guard(m: &GModule) -> Result<(), CohomologyError> {
    let o = m.group().order();
    let coordinates = o.saturating_mul(o).saturating_mul(m.rank());
    if coordinates > COCHAIN_GUARD {
        return Err(CohomologyError::GuardExceeded { coordinates });
    }
    Ok(())
}

/// `Hⁿ(G, M)` for `n ≤ 2`.
pub fn cohomology(m: &GModule, degree: usize) -> Result<FgAbelianGroup, CohomologyError> {
    Ok(Cohomology::compute(m, degree, CochainModel::resolution(m))?.group().clone())
}

/// `H⁰(G, M) = M^G`.
pub fn h0(m: &GModule) -> Result<FgAbelianGroup, CohomologyError> {
    cohomology(m, 0)
}

pub fn h1(m: &GModule) -> Result<FgAbelianGroup, CohomologyError> {
    cohomology(m, 1)
}

pub fn h2(m: &GModule) -> Result<FgAbelianGroup, CohomologyError> {
    cohomology(m, 2)
}

/// `Hom(G, M) = Hom(G^ab, M)`, from invariant factors:
/// `Hom(Z/a, Z/b) = Z/gcd(a, b)` and `Hom(Z/a, Z) = 0`.
pub fn hom_from_group(g: &FiniteGroup, m: &FgAbelianGroup) -> FgAbelianGroup {
    let ab = g.abelianization();
    let orders: Vec<Integer> = ab
        .invariant_factors()
        .iter()
        .flat_map(|a| m.invariant_factors().iter().map(move |b| a.gcd(b)))
        .collect();
    FgAbelianGroup::from_cyclic_orders(&orders, 0)
}

/// `H¹(G, N) = 0` for a uniquely divisible `N`: the group is killed by `|G|`
/// and multiplication by `|G|` is invertible on `N`.
pub fn rational_vanishing(m: &GModule) -> Result<FgAbelianGroup, CohomologyError> {
    if !m.is_uniquely_divisible() {
        return Err(CohomologyError::NotFlagged);
    }
    Ok(FgAbelianGroup::trivial())
}
