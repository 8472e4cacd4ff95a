use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{h1, six_term_sequence};
use crate::gmodules::{coaugmentation_quotient, FiniteGroup, GModule};
use crate::integer::Integer;
use crate::zlattice::FgAbelianGroup;

use super::PicardError;

/// A unit group `Γ(Y)*` split as field units with `H¹ = 0`, a lattice and a
/// finite part.
///
/// The decomposition is asserted by the caller. Only the lattice and finite
/// parts are represented.
#[derive(Clone, Debug)]
pub struct UnitModel {
    group: Arc<FiniteGroup>,
    hilbert90_trivial_parts: usize,
    lattice_part: GModule,
    finite_part: GModule,
}

impl UnitModel {
    pub fn new(
        group: Arc<FiniteGroup>,
        hilbert90_trivial_parts: usize,
        lattice_part: GModule,
        finite_part: GModule,
    ) -> Result<Self, PicardError> {
        if !lattice_part.group().same_table(&group) || !finite_part.group().same_table(&group) {
            return Err(PicardError::InvalidModel("parts are over different groups".into()));
        }
        if !lattice_part.underlying().is_free() {
            return Err(PicardError::InvalidModel("lattice part has torsion".into()));
        }
        if !finite_part.underlying().is_finite() {
            return Err(PicardError::InvalidModel("finite part is infinite".into()));
        }
        Ok(UnitModel { group, hilbert90_trivial_parts, lattice_part, finite_part })
    }

    /// `R[X, Y]/(X² + Y² − 1)` over `C/R`: units `C* × Z` with conjugation
    /// acting by −1 on the exponent.
    pub fn circle() -> Self {
        let lattice = GModule::negation_lattice(2).expect("order 2");
        let group = lattice.group().clone();
        let finite = GModule::zero(&group);
        UnitModel { group, hilbert90_trivial_parts: 1, lattice_part: lattice, finite_part: finite }
    }

    /// `K[L]*= K* ⊕ L` for the coaugmentation quotient `L` of `ZG`.
    pub fn group_ring(group: &Arc<FiniteGroup>) -> Self {
        let (l, _) = coaugmentation_quotient(group);
        UnitModel {
            group: group.clone(),
            hilbert90_trivial_parts: 1,
            lattice_part: l,
            finite_part: GModule::zero(group),
        }
    }

    /// Only field-unit parts.
    pub fn hilbert90_only(group: &Arc<FiniteGroup>, parts: usize) -> Self {
        UnitModel {
            group: group.clone(),
            hilbert90_trivial_parts: parts,
            lattice_part: GModule::zero(group),
            finite_part: GModule::zero(group),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn hilbert90_trivial_parts(&self) -> usize {
        self.hilbert90_trivial_parts
    }

    pub fn lattice_part(&self) -> &GModule {
        &self.lattice_part
    }

    pub fn finite_part(&self) -> &GModule {
        &self.finite_part
    }
}

/// `Ker[Pic(X) → Pic(Y)] ≅ H¹(G, Γ(Y)*)`; the field-unit parts contribute
/// nothing.
pub fn descent_kernel(model: &UnitModel) -> Result<FgAbelianGroup, PicardError> {
    let sum = GModule::direct_sum(&[model.lattice_part.clone(), model.finite_part.clone()])?;
    Ok(h1(&sum)?)
}

/// Every element of the descent kernel is killed by `d`.
pub fn kernel_torsion_bound_check(model: &UnitModel, d: u64) -> Result<bool, PicardError> {
    Ok(descent_kernel(model)?.annihilated_by(&Integer::from(d)))
}

/// `Pic(K[L]^G)` computed two ways and compared with `G^ab`.
#[derive(Clone, Debug, Serialize)]
pub struct GroupRingPic {
    /// `H¹(G, L)`.
    pub pic: FgAbelianGroup,
    pub abelianization: FgAbelianGroup,
    pub matches_abelianization: bool,
    /// `H²(G, Z)` from the long exact sequence of `0 → Z → ZG → L → 0`.
    pub h2_trivial: FgAbelianGroup,
    /// `δ: H¹(G, L) → H²(G, Z)` is a well-defined isomorphism and the
    /// sequence is exact.
    pub connecting_isomorphism: bool,
}

impl GroupRingPic {
    pub fn paths_agree(&self) -> bool {
        self.connecting_isomorphism && self.pic == self.h2_trivial
    }
}

pub fn group_ring_pic(group: &Arc<FiniteGroup>) -> Result<GroupRingPic, PicardError> {
    let pic = descent_kernel(&UnitModel::group_ring(group))?;
    let abelianization = group.abelianization();
    let (_, ses) = coaugmentation_quotient(group);
    let six = six_term_sequence(&ses)?;
    let connecting_isomorphism =
        six.is_exact() && six.connecting_well_defined && six.second_connecting_map().is_isomorphism();
    Ok(GroupRingPic {
        matches_abelianization: pic == abelianization,
        pic,
        abelianization,
        h2_trivial: six.groups[6].clone(),
        connecting_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodules::builtin_group;

    #[test]
    fn descent_examples() {
        assert_eq!(descent_kernel(&UnitModel::circle()).unwrap(), FgAbelianGroup::cyclic(2));
        let s3 = builtin_group("S3").unwrap();
        assert!(descent_kernel(&UnitModel::hilbert90_only(&s3, 2)).unwrap().is_trivial());
        let c2 = builtin_group("C2").unwrap();
        let z = GModule::trivial(&c2, FgAbelianGroup::free(1));
        let model = UnitModel::new(c2.clone(), 1, z, GModule::zero(&c2)).unwrap();
        assert!(descent_kernel(&model).unwrap().is_trivial());
    }

    #[test]
    fn finite_part_counts() {
        let c2 = builtin_group("C2").unwrap();
        let f = GModule::trivial(&c2, FgAbelianGroup::cyclic(4));
        let model = UnitModel::new(c2.clone(), 0, GModule::zero(&c2), f).unwrap();
        assert_eq!(descent_kernel(&model).unwrap(), FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn invalid_models() {
        let c2 = builtin_group("C2").unwrap();
        let c3 = builtin_group("C3").unwrap();
        let torsion = GModule::trivial(&c2, FgAbelianGroup::cyclic(2));
        let free = GModule::trivial(&c2, FgAbelianGroup::free(1));
        assert!(UnitModel::new(c2.clone(), 0, torsion.clone(), GModule::zero(&c2)).is_err());
        assert!(UnitModel::new(c2.clone(), 0, GModule::zero(&c2), free).is_err());
        assert!(UnitModel::new(c3, 0, GModule::zero(&c2), torsion).is_err());
    }

    #[test]
    fn torsion_bound() {
        assert!(kernel_torsion_bound_check(&UnitModel::circle(), 2).unwrap());
        assert!(!kernel_torsion_bound_check(&UnitModel::circle(), 3).unwrap());
        let s3 = builtin_group("S3").unwrap();
        assert!(kernel_torsion_bound_check(&UnitModel::group_ring(&s3), 6).unwrap());
    }

    #[test]
    fn group_ring_examples() {
        for (name, orders) in [("C2", vec![2]), ("S3", vec![2]), ("Q8", vec![2, 2]), ("C1", vec![])] {
            let g = builtin_group(name).unwrap();
            let r = group_ring_pic(&g).unwrap();
            let expected = FgAbelianGroup::from_cyclic_orders(
                &orders.iter().map(|&d| Integer::from(d)).collect::<Vec<_>>(),
                0,
            );
            assert_eq!(r.pic, expected, "{name}");
            assert!(r.matches_abelianization && r.paths_agree(), "{name}");
        }
    }
}
