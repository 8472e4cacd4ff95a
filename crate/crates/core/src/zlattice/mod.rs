//! Exact integer linear algebra: Smith normal form, presented finitely
//! generated abelian groups, and the subquotient/homomorphism machinery the
//! cohomology code is built on.
//!
//! Relations are always rows of a relation matrix; maps act on column vectors.

mod group;
mod hom;
mod lattice;
mod matrix;
mod smith;
mod solve;
mod subquotient;

use thiserror::Error;

use crate::integer::Integer;

pub use group::FgAbelianGroup;
pub use hom::{is_exact_at, GroupHom};
pub use lattice::{integer_kernel, refine_by_congruence, Lattice};
pub use matrix::{merge_sparse, sparse_dot, IntMatrix, SparseMatrix, SparseRow};
pub use smith::{smith_normal_form, SmithForm};
pub use solve::CongruenceSolver;
pub use subquotient::{combine_rows, constrained_kernel, constraints_into, Constraint, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZLatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("composite map is not zero modulo the target relations (inconsistent complex)")]
    InconsistentComplex,
    #[error("generators do not lie in the ambient subgroup")]
    NotASubgroup,
    #[error("matrix does not respect the source relations")]
    NotWellDefined,
    #[error("homomorphisms cannot be composed")]
    NotComposable,
    #[error("torsion order must be positive")]
    NonPositiveOrder,
}

/// Invariant factors of `Z^ambient_rank / rowspace(relations)`.
pub fn group_from_relations(ambient_rank: usize, relations: IntMatrix) -> Result<FgAbelianGroup, ZLatticeError> {
    FgAbelianGroup::from_relations(ambient_rank, relations)
}

/// `G / ⟨H⟩`, with `H` given by generating vectors in `G`'s ambient lattice.
pub fn quotient(g: &FgAbelianGroup, h: &[Vec<Integer>]) -> Result<FgAbelianGroup, ZLatticeError> {
    let n = g.ambient_rank();
    if let Some(bad) = h.iter().find(|v| v.len() != n) {
        return Err(ZLatticeError::DimensionMismatch { expected: n, found: bad.len() });
    }
    let mut rows = g.relations().row_vecs();
    rows.extend(h.iter().cloned());
    FgAbelianGroup::from_relations(n, IntMatrix::from_rows(n, rows))
}

/// `_nG`, the elements whose order divides `n`: `⊕ Z/gcd(n, dᵢ)`.
pub fn torsion_subgroup(g: &FgAbelianGroup, n: &Integer) -> Result<FgAbelianGroup, ZLatticeError> {
    if n <= &Integer::ZERO {
        return Err(ZLatticeError::NonPositiveOrder);
    }
    let orders: Vec<Integer> = g.invariant_factors().iter().map(|d| d.gcd(n)).collect();
    Ok(FgAbelianGroup::from_cyclic_orders(&orders, 0))
}

/// `ker(f mod target relations) / im(g)`.
///
/// `f: Z^n → Z^m` is an `m × n` matrix, `g: Z^k → Z^n` an `n × k` matrix and
/// `target_relations` has `m` columns. Fails if `f∘g` is not zero modulo the
/// target relations.
pub fn kernel_mod_image(
    f: &IntMatrix,
    g: &IntMatrix,
    target_relations: &IntMatrix,
) -> Result<FgAbelianGroup, ZLatticeError> {
    let n = f.cols();
    if g.rows() != n {
        return Err(ZLatticeError::DimensionMismatch { expected: n, found: g.rows() });
    }
    let target = FgAbelianGroup::from_relations(f.rows(), target_relations.clone())?;
    let fg = f.mul(g);
    for j in 0..fg.cols() {
        if !target.is_zero_element(&fg.column(j)) {
            return Err(ZLatticeError::InconsistentComplex);
        }
    }
    let rows: Vec<SparseRow> = SparseMatrix::from_dense(f).row_iter().cloned().collect();
    let cycles = constrained_kernel(n, &constraints_into(&target, &rows));
    let sq = Subquotient::new(cycles, g.columns())?;
    Ok(sq.group().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn group_from_relations_examples() {
        let z2 = group_from_relations(1, IntMatrix::from_i64_rows(1, &[vec![2]])).unwrap();
        assert_eq!(z2, FgAbelianGroup::cyclic(2));
        let z6 = group_from_relations(2, IntMatrix::from_i64_rows(2, &[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(z6, FgAbelianGroup::cyclic(6));
        let z2_free = group_from_relations(2, IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(z2_free, FgAbelianGroup::free(2));
    }

    #[test]
    fn quotient_examples() {
        let z2 = FgAbelianGroup::free(2);
        assert_eq!(quotient(&z2, &[ints(&[1, 0])]).unwrap(), FgAbelianGroup::free(1));
        let z = FgAbelianGroup::free(1);
        assert_eq!(quotient(&z, &[ints(&[2])]).unwrap(), FgAbelianGroup::cyclic(2));
        let q = quotient(&z2, &[ints(&[2, 4]), ints(&[6, 8])]).unwrap();
        assert_eq!(q, FgAbelianGroup::from_cyclic_orders(&ints(&[2, 4]), 0));
    }

    #[test]
    fn quotient_ignores_redundant_generators() {
        let z3 = FgAbelianGroup::free(3);
        let h = vec![ints(&[2, 0, 4]), ints(&[0, 6, 0])];
        let mut h2 = h.clone();
        h2.push(ints(&[4, 6, 8]));
        h2.push(ints(&[0, 0, 0]));
        assert_eq!(quotient(&z3, &h).unwrap(), quotient(&z3, &h2).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let z6 = FgAbelianGroup::cyclic(6);
        assert_eq!(torsion_subgroup(&z6, &Integer::from(4)).unwrap(), FgAbelianGroup::cyclic(2));
        let free = FgAbelianGroup::free(3);
        assert!(torsion_subgroup(&free, &Integer::from(7)).unwrap().is_trivial());
        let g = FgAbelianGroup::from_cyclic_orders(&ints(&[2, 9]), 0);
        let t = torsion_subgroup(&g, &Integer::from(6)).unwrap();
        assert_eq!(t, FgAbelianGroup::from_cyclic_orders(&ints(&[2, 3]), 0));
        assert!(torsion_subgroup(&g, &Integer::ZERO).is_err());
    }

    #[test]
    fn kernel_mod_image_examples() {
        let none = IntMatrix::zeros(0, 1);
        let zero = IntMatrix::from_i64_rows(1, &[vec![0]]);
        let two = IntMatrix::from_i64_rows(1, &[vec![2]]);
        assert_eq!(kernel_mod_image(&zero, &two, &none).unwrap(), FgAbelianGroup::cyclic(2));
        assert!(kernel_mod_image(&two, &zero, &none).unwrap().is_trivial());
        let sum = IntMatrix::from_i64_rows(2, &[vec![1, 1]]);
        let diag = IntMatrix::from_i64_rows(1, &[vec![1], vec![-1]]);
        assert!(kernel_mod_image(&sum, &diag, &none).unwrap().is_trivial());
    }

    #[test]
    fn kernel_mod_image_rejects_non_complex() {
        let id = IntMatrix::identity(1);
        let err = kernel_mod_image(&id, &id, &IntMatrix::zeros(0, 1));
        assert_eq!(err.unwrap_err(), ZLatticeError::InconsistentComplex);
        // but fine modulo a relation that kills the composite
        let rel = IntMatrix::from_i64_rows(1, &[vec![1]]);
        assert!(kernel_mod_image(&id, &id, &rel).unwrap().is_trivial());
    }
}
