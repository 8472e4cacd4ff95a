use crate::integer::Integer;

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithForm};

/// Solves `A·x ≡ b` modulo the row span of a relation matrix, through one
/// Smith normal form of `[A | Rᵀ]` that is reused for every right-hand side.
#[derive(Clone, Debug)]
pub struct CongruenceSolver {
    smith: SmithForm,
    unknowns: usize,
}

impl CongruenceSolver {
    /// `a` is `m × n`; `relations` has `m` columns (possibly no rows).
    pub fn new(a: &IntMatrix, relations: &IntMatrix) -> Self {
        let m = a.rows();
        let n = a.cols();
        let k = relations.rows();
        let mut full = IntMatrix::zeros(m, n + k);
        for i in 0..m {
            for j in 0..n {
                full.set(i, j, a.get(i, j).clone());
            }
            for j in 0..k {
                full.set(i, n + j, relations.get(j, i).clone());
            }
        }
        CongruenceSolver { smith: smith_normal_form(&full), unknowns: n }
    }

    /// The solution with all free Smith coordinates set to zero.
    pub fn solve(&self, b: &[Integer]) -> Option<Vec<Integer>> {
        let ub = self.smith.u.apply(b);
        let r = self.smith.rank;
        let cols = self.smith.v.rows();
        let mut w = vec![Integer::ZERO; cols];
        for (i, c) in ub.iter().enumerate() {
            if i < r {
                w[i] = c.div_exact(self.smith.d.get(i, i))?;
            } else if !c.is_zero() {
                return None;
            }
        }
        let z = self.smith.v.apply(&w);
        Some(z[..self.unknowns].to_vec())
    }

    /// Differences between solutions, restricted to the `x` part; adding any
    /// of them to a solution gives another solution.
    pub fn kernel_directions(&self) -> Vec<Vec<Integer>> {
        (self.smith.rank..self.smith.v.cols())
            .map(|j| self.smith.v.column(j)[..self.unknowns].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn solves_modulo_relations() {
        // 3x ≡ 1 (mod 5)
        let s = CongruenceSolver::new(&IntMatrix::scalar(1, 3), &IntMatrix::from_i64_rows(1, &[vec![5]]));
        let x = s.solve(&ints(&[1])).unwrap();
        assert_eq!((&x[0] * &Integer::from(3) - Integer::ONE).rem_euclid(&Integer::from(5)), Integer::ZERO);
        assert!(!s.kernel_directions().is_empty());
        // 2x = 1 over Z has no solution
        let s = CongruenceSolver::new(&IntMatrix::scalar(1, 2), &IntMatrix::zeros(0, 1));
        assert!(s.solve(&ints(&[1])).is_none());
        assert_eq!(s.solve(&ints(&[4])).unwrap(), ints(&[2]));
    }

    #[test]
    fn underdetermined_system() {
        let a = IntMatrix::from_i64_rows(2, &[vec![1, 1]]);
        let s = CongruenceSolver::new(&a, &IntMatrix::zeros(0, 1));
        let x = s.solve(&ints(&[7])).unwrap();
        assert_eq!(&x[0] + &x[1], Integer::from(7));
        let k = s.kernel_directions();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], Integer::ZERO);
    }
}
