use crate::integer::Integer;
use crate::zlattice::{constrained_kernel, constraints_into, IntMatrix, Lattice, SparseMatrix, SparseRow};

use super::module::GModule;
use super::GModuleError;

/// An equivariant map of G-modules, given on ambient coordinates.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: GModule,
    target: GModule,
    matrix: IntMatrix,
}

impl ModuleMap {
    /// Checks shape, that relations map to relations, and equivariance.
    pub fn new(source: GModule, target: GModule, matrix: IntMatrix) -> Result<Self, GModuleError> {
        if !source.group().same_table(target.group()) {
            return Err(GModuleError::GroupMismatch);
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(GModuleError::DimensionMismatch {
                expected: target.rank() * source.rank(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        let t = target.underlying();
        let zero_mod = |m: &IntMatrix| (0..m.cols()).all(|j| t.is_zero_element(&m.column(j)));
        let rel = source.underlying().relations().transpose();
        if rel.cols() > 0 && !zero_mod(&matrix.mul(&rel)) {
            return Err(GModuleError::MapNotWellDefined);
        }
        for g in 0..source.group().order() {
            let lhs = matrix.mul(source.action(g));
            let rhs = target.action(g).mul(&matrix);
            if !zero_mod(&lhs.sub(&rhs)) {
                return Err(GModuleError::NotEquivariant { g });
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Ambient vectors of the source mapping to zero in the target.
    pub fn kernel_lattice(&self) -> Lattice {
        let rows: Vec<SparseRow> = SparseMatrix::from_dense(&self.matrix).row_iter().cloned().collect();
        constrained_kernel(self.source.rank(), &constraints_into(self.target.underlying(), &rows))
    }

    /// Image plus target relations, as a lattice in the target's ambient space.
    pub fn image_lattice(&self) -> Lattice {
        let gens = self.matrix.columns().into_iter().chain(self.target.underlying().relations().row_vecs());
        Lattice::from_generators(self.target.rank(), gens)
    }

    pub fn is_injective(&self) -> bool {
        let src = self.source.underlying();
        self.kernel_lattice().basis().iter().all(|v| src.is_zero_element(v))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::full(self.target.rank())
    }
}

/// `0 → A → B → C → 0`, verified at construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    inject: ModuleMap,
    project: ModuleMap,
}

impl ShortExactSequence {
    pub fn new(
        a: GModule,
        b: GModule,
        c: GModule,
        inject: IntMatrix,
        project: IntMatrix,
    ) -> Result<Self, GModuleError> {
        let inject = ModuleMap::new(a, b.clone(), inject)?;
        let project = ModuleMap::new(b, c, project)?;
        if !inject.is_injective() {
            return Err(GModuleError::NotExact("inject is not injective".into()));
        }
        if !project.is_surjective() {
            return Err(GModuleError::NotExact("project is not surjective".into()));
        }
        if inject.image_lattice() != project.kernel_lattice() {
            return Err(GModuleError::NotExact("image of inject differs from kernel of project".into()));
        }
        Ok(ShortExactSequence { inject, project })
    }

    pub fn a(&self) -> &GModule {
        self.inject.source()
    }

    pub fn b(&self) -> &GModule {
        self.inject.target()
    }

    pub fn c(&self) -> &GModule {
        self.project.target()
    }

    pub fn inject(&self) -> &ModuleMap {
        &self.inject
    }

    pub fn project(&self) -> &ModuleMap {
        &self.project
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(a: &GModule, c: &GModule) -> Result<Self, GModuleError> {
        let sum = GModule::direct_sum(&[a.clone(), c.clone()])?;
        let (ra, rc) = (a.rank(), c.rank());
        let mut inject = IntMatrix::zeros(ra + rc, ra);
        let mut project = IntMatrix::zeros(rc, ra + rc);
        for i in 0..ra {
            inject.set(i, i, Integer::ONE);
        }
        for i in 0..rc {
            project.set(i, ra + i, Integer::ONE);
        }
        Self::new(a.clone(), sum, c.clone(), inject, project)
    }
}

/// `L = ZG/⟨Σg⟩` with `0 → Z → ZG → L → 0`.
///
/// `L` is presented on the classes of `e_0, …, e_{n−2}`; the last basis
/// vector is `−Σ` of the others modulo the norm element.
pub fn coaugmentation_quotient(group: &std::sync::Arc<super::FiniteGroup>) -> (GModule, ShortExactSequence) {
    let n = group.order();
    let zg = GModule::regular(group);
    let mut project = IntMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        project.set(i, i, Integer::ONE);
        project.set(i, n - 1, -Integer::ONE);
    }
    let mut section = IntMatrix::zeros(n, n - 1);
    for i in 0..n - 1 {
        section.set(i, i, Integer::ONE);
    }
    let action = (0..n).map(|g| project.mul(zg.action(g)).mul(&section)).collect();
    let l = GModule::new_unchecked(group.clone(), crate::zlattice::FgAbelianGroup::free(n - 1), action);
    let z = GModule::trivial(group, crate::zlattice::FgAbelianGroup::free(1));
    let norm = IntMatrix::from_columns(n, &[vec![Integer::ONE; n]]);
    let ses = ShortExactSequence::new(z, zg, l.clone(), norm, project).expect("coaugmentation sequence is exact");
    (l, ses)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gmodules::FiniteGroup;
    use crate::zlattice::FgAbelianGroup;

    #[test]
    fn coaugmentation_ranks_and_c2_action() {
        for name in ["C1", "C2", "S3", "Q8"] {
            let g = Arc::new(FiniteGroup::builtin(name).unwrap());
            let (l, _) = coaugmentation_quotient(&g);
            assert_eq!(l.underlying(), &FgAbelianGroup::free(g.order() - 1));
            assert!(GModule::new(g.clone(), l.underlying().clone(), l.actions().to_vec()).is_ok());
        }
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let (l, _) = coaugmentation_quotient(&c2);
        assert_eq!(l.action(1), &IntMatrix::scalar(1, -1));
    }

    #[test]
    fn times_two_sequence() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let z = GModule::trivial(&c2, FgAbelianGroup::free(1));
        let z2 = GModule::trivial(&c2, FgAbelianGroup::cyclic(2));
        let ok = ShortExactSequence::new(z.clone(), z.clone(), z2.clone(), IntMatrix::scalar(1, 2), IntMatrix::scalar(1, 1));
        assert!(ok.is_ok());
        let bad = ShortExactSequence::new(z.clone(), z.clone(), z2, IntMatrix::scalar(1, 4), IntMatrix::scalar(1, 1));
        assert!(matches!(bad, Err(GModuleError::NotExact(_))));
    }

    #[test]
    fn non_equivariant_map_is_rejected() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let z = GModule::trivial(&c2, FgAbelianGroup::free(1));
        let neg = GModule::negation_lattice(2).unwrap();
        let neg = GModule::new(c2, neg.underlying().clone(), neg.actions().to_vec()).unwrap();
        assert!(matches!(ModuleMap::new(z, neg, IntMatrix::scalar(1, 1)), Err(GModuleError::NotEquivariant { g: 1 })));
    }

    #[test]
    fn split_sequence_is_exact() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let a = GModule::regular(&c2);
        let c = GModule::trivial(&c2, FgAbelianGroup::cyclic(3));
        assert!(ShortExactSequence::split(&a, &c).is_ok());
    }
}
