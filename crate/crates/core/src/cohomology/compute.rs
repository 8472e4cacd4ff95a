use crate::gmodules::GModule;
use crate::integer::Integer;
use crate::zlattice::{constrained_kernel, FgAbelianGroup, SparseMatrix, Subquotient};

use super::model::{block_relations, CochainModel};
use super::{check_guard, CohomologyError};

/// `Hⁿ(G, M)` as cocycles modulo coboundaries in a chosen cochain model.
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    model: CochainModel,
    module: GModule,
    quotient: Subquotient,
}

/// A class together with a cocycle representing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    /// Canonical coordinates in the presented cohomology group.
    pub coordinates: Vec<Integer>,
    /// Cocycle as a run of ambient module blocks.
    pub representative: Vec<Integer>,
}

impl Cohomology {
    pub fn compute(m: &GModule, degree: usize, model: CochainModel) -> Result<Self, CohomologyError> {
        if degree > 2 {
            return Err(CohomologyError::DegreeCapped { degree });
        }
        check_guard(m)?;
        let quotient = if degree == 0 {
            Subquotient::new(m.fixed_lattice(), m.underlying().relations().row_vecs())?
        } else {
            let dim = model.blocks(m, degree) * m.rank();
            let cycles = constrained_kernel(dim, &model.cocycle_constraints(m, degree));
            Subquotient::new(cycles, model.boundary_generators(m, degree))?
        };
        Ok(Cohomology { degree, model, module: m.clone(), quotient })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn model(&self) -> &CochainModel {
        &self.model
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.quotient.group()
    }

    /// Number of module blocks in a cochain of this degree.
    pub fn blocks(&self) -> usize {
        if self.degree == 0 {
            1
        } else {
            self.model.blocks(&self.module, self.degree)
        }
    }

    /// Canonical coordinates of the class of a cocycle; `None` if the
    /// cochain is not a cocycle.
    pub fn class_of(&self, cocycle: &[Integer]) -> Option<Vec<Integer>> {
        self.quotient.class_of(cocycle)
    }

    pub fn representative(&self, coordinates: &[Integer]) -> Vec<Integer> {
        self.quotient.representative(coordinates)
    }

    pub fn class(&self, coordinates: &[Integer]) -> CohomologyClass {
        let mut coordinates = coordinates.to_vec();
        self.group().reduce_canonical(&mut coordinates);
        CohomologyClass {
            degree: self.degree,
            representative: self.representative(&coordinates),
            coordinates,
        }
    }

    /// Classes of the canonical generators.
    pub fn generators(&self) -> Vec<CohomologyClass> {
        (0..self.group().num_generators())
            .map(|i| {
                let mut e = vec![Integer::ZERO; self.group().num_generators()];
                e[i] = Integer::ONE;
                self.class(&e)
            })
            .collect()
    }
}

/// One degree of the inhomogeneous cochain complex with its two coboundaries.
#[derive(Clone, Debug)]
pub struct CochainComplexSlice {
    pub degree: usize,
    /// `M^{|G|^degree}`, presented blockwise.
    pub cochain_group: FgAbelianGroup,
    /// `δ^{degree−1}`; has no columns in degree 0.
    pub coboundary_in: SparseMatrix,
    /// `δ^{degree}`.
    pub coboundary_out: SparseMatrix,
    module: GModule,
}

impl CochainComplexSlice {
    pub fn new(m: &GModule, degree: usize) -> Result<Self, CohomologyError> {
        if degree > 2 {
            return Err(CohomologyError::DegreeCapped { degree });
        }
        check_guard(m)?;
        let order = m.group().order();
        let blocks = order.pow(degree as u32);
        let rels = block_relations(m, blocks);
        let dim = blocks * m.rank();
        let cochain_group = FgAbelianGroup::from_relations(dim, crate::zlattice::IntMatrix::from_rows(dim, rels))?;
        let model = CochainModel::Bar;
        let coboundary_in = if degree == 0 {
            SparseMatrix::with_rows(0, vec![Vec::new(); dim])
        } else {
            model.coboundary(m, degree - 1)
        };
        let coboundary_out = model.coboundary(m, degree);
        Ok(CochainComplexSlice { degree, cochain_group, coboundary_in, coboundary_out, module: m.clone() })
    }

    /// `δ^{degree} ∘ δ^{degree−1} ≡ 0` modulo the module relations.
    pub fn verify(&self) -> bool {
        let m = &self.module;
        let r = m.rank();
        let cols = self.coboundary_in.cols();
        (0..cols).all(|j| {
            let mut e = vec![Integer::ZERO; cols];
            e[j] = Integer::ONE;
            let x = self.coboundary_out.apply(&self.coboundary_in.apply(&e));
            r == 0 || x.chunks(r).all(|b| m.underlying().is_zero_element(b))
        })
    }

    /// Rank of the cochain lattice, `|G|^degree · rank(M)`.
    pub fn cochain_rank(&self) -> usize {
        self.cochain_group.ambient_rank()
    }
}
