use crate::integer::Integer;

use super::group::FgAbelianGroup;
use super::lattice::{unit_vector, Lattice};
use super::matrix::{IntMatrix, SparseMatrix};
use super::subquotient::{constrained_kernel, constraints_into, Subquotient};
use super::ZLatticeError;

/// A homomorphism between presented groups, written in canonical
/// coordinates: column `j` is the image of the `j`-th canonical generator of
/// the source.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that the matrix respects the source relations.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self, ZLatticeError> {
        let (m, n) = (target.num_generators(), source.num_generators());
        if matrix.rows() != m || matrix.cols() != n {
            return Err(ZLatticeError::DimensionMismatch { expected: m * n, found: matrix.rows() * matrix.cols() });
        }
        let mut matrix = matrix;
        for j in 0..n {
            let mut col = matrix.column(j);
            target.reduce_canonical(&mut col);
            let order = source.modulus(j);
            let scaled: Vec<Integer> = col.iter().map(|x| x * &order).collect();
            if !target.is_zero_element(&target.lift(&scaled)) {
                return Err(ZLatticeError::NotWellDefined);
            }
            for (i, x) in col.into_iter().enumerate() {
                matrix.set(i, j, x);
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.num_generators()),
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.num_generators(), source.num_generators()),
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, y: &[Integer]) -> Vec<Integer> {
        let mut out = self.matrix.apply(y);
        self.target.reduce_canonical(&mut out);
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, ZLatticeError> {
        if inner.target.num_generators() != self.source.num_generators() || inner.target != self.source {
            return Err(ZLatticeError::NotComposable);
        }
        let m = self.matrix.mul(&inner.matrix);
        GroupHom::new(inner.source.clone(), self.target.clone(), m)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.matrix.column(j).iter().all(Integer::is_zero))
    }

    /// Kernel as a lattice in the source's canonical coordinate space; it
    /// always contains the source relations `dⱼ·eⱼ`.
    pub fn kernel_lattice(&self) -> Lattice {
        let rows = SparseMatrix::from_dense(&self.matrix);
        let rows: Vec<_> = rows.row_iter().cloned().collect();
        // target is presented on its own canonical coordinates
        let target = self.target.normalized();
        let constraints = constraints_into(&target, &rows);
        constrained_kernel(self.source.num_generators(), &constraints)
    }

    /// Image plus target relations, in the target's canonical coordinates.
    pub fn image_lattice(&self) -> Lattice {
        let m = self.target.num_generators();
        let gens = self
            .matrix
            .columns()
            .into_iter()
            .chain(relation_vectors(&self.target));
        Lattice::from_generators(m, gens)
    }

    pub fn kernel(&self) -> FgAbelianGroup {
        Subquotient::new(self.kernel_lattice(), relation_vectors(&self.source))
            .expect("relations lie in the kernel")
            .group()
            .clone()
    }

    pub fn image(&self) -> FgAbelianGroup {
        let full = Lattice::full(self.source.num_generators());
        Subquotient::new(full, self.kernel_lattice().basis().to_vec())
            .expect("kernel lies in the source")
            .group()
            .clone()
    }

    pub fn cokernel(&self) -> FgAbelianGroup {
        let m = self.target.num_generators();
        Subquotient::new(Lattice::full(m), self.image_lattice().basis().to_vec())
            .expect("image lies in the target")
            .group()
            .clone()
    }

    pub fn is_injective(&self) -> bool {
        let rel = Lattice::from_generators(self.source.num_generators(), relation_vectors(&self.source));
        self.kernel_lattice() == rel
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::full(self.target.num_generators())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `dᵢ·eᵢ` for each torsion coordinate of `g`.
pub(crate) fn relation_vectors(g: &FgAbelianGroup) -> Vec<Vec<Integer>> {
    let n = g.num_generators();
    g.invariant_factors()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut v = unit_vector(n, i);
            v[i] = d.clone();
            v
        })
        .collect()
}

/// Whether `image(incoming) = kernel(outgoing)` inside the common group.
pub fn is_exact_at(incoming: &GroupHom, outgoing: &GroupHom) -> bool {
    incoming.target == outgoing.source
        && incoming.target.num_generators() == outgoing.source.num_generators()
        && incoming.image_lattice() == outgoing.kernel_lattice()
}
