use crate::integer::Integer;

use super::group::FgAbelianGroup;
use super::lattice::{integer_kernel, refine_by_congruence, Lattice};
use super::matrix::{merge_sparse, IntMatrix, SparseRow};
use super::ZLatticeError;

/// A linear condition on `x ∈ Z^n`: `row·x ≡ 0 (mod modulus)`, where a zero
/// modulus means `row·x = 0`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub row: SparseRow,
    pub modulus: Integer,
}

/// Lattice of all `x ∈ Z^n` satisfying every constraint.
pub fn constrained_kernel(n: usize, constraints: &[Constraint]) -> Lattice {
    let equalities: Vec<SparseRow> = constraints
        .iter()
        .filter(|c| c.modulus.is_zero())
        .map(|c| c.row.clone())
        .collect();
    let mut basis = integer_kernel(n, &equalities);
    for c in constraints.iter().filter(|c| !c.modulus.is_zero() && !c.modulus.abs().is_one()) {
        refine_by_congruence(&mut basis, &c.row, &c.modulus.abs());
    }
    Lattice::from_generators(n, basis)
}

/// Constraints expressing `map·x = 0` in the presented group `target`, where
/// `map` is given by its rows (one per ambient coordinate of `target`).
pub fn constraints_into(target: &FgAbelianGroup, map_rows: &[SparseRow]) -> Vec<Constraint> {
    let forms = target.canonical_forms();
    (0..forms.rows())
        .map(|i| Constraint {
            row: combine_rows(forms.row(i), map_rows),
            modulus: target.modulus(i),
        })
        .collect()
}

/// `Σⱼ coeffs[j]·rows[j]` as a sparse row.
pub fn combine_rows(coeffs: &[Integer], rows: &[SparseRow]) -> SparseRow {
    let mut entries = Vec::new();
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        entries.extend(r.iter().map(|(j, v)| (*j, c * v)));
    }
    merge_sparse(entries)
}

/// `Z / B` for lattices `B ⊆ Z ⊆ Z^n`: cycles modulo boundaries.
///
/// The quotient is presented on the Hermite basis of `Z`; classes are reported
/// in the canonical coordinates of that presentation.
#[derive(Clone, Debug)]
pub struct Subquotient {
    cycles: Lattice,
    group: FgAbelianGroup,
}

impl Subquotient {
    pub fn new<I>(cycles: Lattice, boundaries: I) -> Result<Self, ZLatticeError>
    where
        I: IntoIterator<Item = Vec<Integer>>,
    {
        let k = cycles.rank();
        let mut relations = Vec::new();
        for b in boundaries {
            if b.iter().all(Integer::is_zero) {
                continue;
            }
            let c = cycles.coordinates(&b).ok_or(ZLatticeError::NotASubgroup)?;
            relations.push(c);
        }
        // the relation lattice only matters up to its span; thin it first
        let rel = Lattice::from_generators(k, relations);
        let group = FgAbelianGroup::from_relations(k, IntMatrix::from_rows(k, rel.basis().to_vec()))?;
        Ok(Subquotient { cycles, group })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn cycles(&self) -> &Lattice {
        &self.cycles
    }

    /// Canonical coordinates of the class of `x`, or `None` if `x` is not a
    /// cycle.
    pub fn class_of(&self, x: &[Integer]) -> Option<Vec<Integer>> {
        let c = self.cycles.coordinates(x)?;
        Some(self.group.canonical(&c))
    }

    /// A cycle representing the class with canonical coordinates `y`.
    pub fn representative(&self, y: &[Integer]) -> Vec<Integer> {
        let c = self.group.lift(y);
        let mut x = vec![Integer::ZERO; self.cycles.dim()];
        for (ci, b) in c.iter().zip(self.cycles.basis()) {
            if ci.is_zero() {
                continue;
            }
            for (xj, bj) in x.iter_mut().zip(b) {
                if !bj.is_zero() {
                    xj.add_mul_assign(ci, bj);
                }
            }
        }
        x
    }

    /// Cycle representing the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<Integer> {
        let mut y = vec![Integer::ZERO; self.group.num_generators()];
        y[i] = Integer::ONE;
        self.representative(&y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_mod_boundaries() {
        let ints = |v: &[i64]| v.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>();
        let z = Lattice::full(2);
        let sq = Subquotient::new(z, vec![ints(&[2, 4]), ints(&[6, 8])]).unwrap();
        assert_eq!(sq.group().invariant_factors(), &ints(&[2, 4])[..]);
        let g0 = sq.generator(0);
        assert_eq!(sq.class_of(&g0).unwrap(), ints(&[1, 0]));
        assert_eq!(sq.class_of(&ints(&[2, 4])).unwrap(), ints(&[0, 0]));
    }

    #[test]
    fn boundary_outside_cycles_is_rejected() {
        let z = Lattice::from_generators(2, vec![vec![Integer::ONE, Integer::ZERO]]);
        let err = Subquotient::new(z, vec![vec![Integer::ZERO, Integer::ONE]]);
        assert!(err.is_err());
    }
}
