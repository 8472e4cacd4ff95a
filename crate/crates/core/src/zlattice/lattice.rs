//! Sublattices of `Z^n`: Hermite bases, membership, coordinates and integer
//! kernels.

use crate::integer::Integer;

use super::matrix::{sparse_dot, SparseRow};

/// A sublattice of `Z^dim` stored as a row-echelon basis.
///
/// After [`Lattice::normalize`] (which every constructor calls) the basis is
/// in Hermite normal form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`. Equal lattices then have identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<Integer>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| unit_vector(dim, i)).collect();
        Lattice { dim, basis, pivots: (0..dim).collect() }
    }

    pub fn from_generators<I>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<Integer>>,
    {
        let mut l = Lattice::zero(dim);
        for g in gens {
            l.insert(g);
        }
        l.normalize();
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Integer>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a generator, keeping the basis in echelon form.
    pub fn insert(&mut self, mut v: Vec<Integer>) {
        assert_eq!(v.len(), self.dim, "generator has wrong length");
        let mut k = 0;
        loop {
            let Some(c) = v.iter().position(|x| !x.is_zero()) else { return };
            while k < self.pivots.len() && self.pivots[k] < c {
                k += 1;
            }
            if k == self.pivots.len() || self.pivots[k] != c {
                self.basis.insert(k, v);
                self.pivots.insert(k, c);
                if self.basis[k].iter().any(|x| matches!(x, Integer::Large(_))) {
                    self.normalize();
                }
                return;
            }
            let b = &mut self.basis[k];
            if let Some(q) = v[c].div_exact(&b[c]) {
                axpy(&mut v, &q, b);
                continue;
            }
            // replace (b, v) by a unimodular combination that puts gcd on b
            let (g, s, t) = b[c].extended_gcd(&v[c]);
            let bc = b[c].div_exact(&g).expect("gcd divides");
            let vc = v[c].div_exact(&g).expect("gcd divides");
            let new_b: Vec<Integer> = b
                .iter()
                .zip(&v)
                .map(|(x, y)| &(&s * x) + &(&t * y))
                .collect();
            let new_v: Vec<Integer> = b
                .iter()
                .zip(&v)
                .map(|(x, y)| &(&bc * y) - &(&vc * x))
                .collect();
            *b = new_b;
            v = new_v;
        }
    }

    /// Brings the basis to Hermite normal form.
    pub fn normalize(&mut self) {
        for k in 0..self.basis.len() {
            let p = self.pivots[k];
            if self.basis[k][p].is_negative() {
                for x in self.basis[k].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for k in (0..self.basis.len()).rev() {
            let p = self.pivots[k];
            let pivot_row = self.basis[k].clone();
            for i in 0..k {
                let q = self.basis[i][p].div_floor(&pivot_row[p]);
                if !q.is_zero() {
                    axpy(&mut self.basis[i], &q, &pivot_row);
                }
            }
        }
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// lattice.
    pub fn reduce(&self, v: &[Integer]) -> Vec<Integer> {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let q = v[p].div_floor(&b[p]);
            axpy(&mut v, &q, b);
        }
        v
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Solves `v = Σ cᵢ·basisᵢ` exactly.
    pub fn coordinates(&self, v: &[Integer]) -> Option<Vec<Integer>> {
        assert_eq!(v.len(), self.dim, "vector has wrong length");
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut next = 0;
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            // entries left of this pivot must already be clear
            if v[next..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let q = v[p].div_exact(&b[p])?;
            if !q.is_zero() {
                axpy(&mut v, &q, b);
            }
            coords.push(q);
            next = p + 1;
        }
        if v[next..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }
}

/// `v -= q · b`
fn axpy(v: &mut [Integer], q: &Integer, b: &[Integer]) {
    for (x, y) in v.iter_mut().zip(b) {
        if !y.is_zero() {
            x.sub_mul_assign(q, y);
        }
    }
}

pub(crate) fn unit_vector(dim: usize, i: usize) -> Vec<Integer> {
    let mut v = vec![Integer::ZERO; dim];
    v[i] = Integer::ONE;
    v
}

/// Largest prime below 2⁶⁴, used to pick linearly independent equations.
const SELECTION_PRIME: u64 = 0xFFFF_FFFF_FFFF_FFC5;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SELECTION_PRIME as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % SELECTION_PRIME as u128) as u64
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        SELECTION_PRIME - (b - a)
    }
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, SELECTION_PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Indices of a subset of `rows` that is linearly independent modulo a large
/// prime. Rows independent mod p are independent over Q; the converse can fail
/// in principle, which [`integer_kernel`] detects and repairs.
fn independent_rows(n: usize, rows: &[&SparseRow]) -> Vec<usize> {
    // reduced echelon rows mod p, keyed by pivot column
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    let mut chosen = Vec::new();
    let p = SELECTION_PRIME;
    for (idx, row) in rows.iter().enumerate() {
        if reduced.len() == n {
            break;
        }
        let mut v = vec![0u64; n];
        for (c, x) in row.iter() {
            v[*c] = add_mod(v[*c], x.mod_u64(p));
        }
        for c in 0..n {
            if v[c] == 0 {
                continue;
            }
            if let Some(r) = pivot_of_col[c] {
                let f = v[c];
                for (x, y) in v.iter_mut().zip(&reduced[r]) {
                    if *y != 0 {
                        *x = sub_mod(*x, mul_mod(f, *y));
                    }
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else { continue };
        let inv = inv_mod(v[c]);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        // keep the basis fully reduced so later rows need one pass
        for other in reduced.iter_mut() {
            let f = other[c];
            if f != 0 {
                for (x, y) in other.iter_mut().zip(&v) {
                    if *y != 0 {
                        *x = sub_mod(*x, mul_mod(f, *y));
                    }
                }
            }
        }
        pivot_of_col[c] = Some(reduced.len());
        reduced.push(v);
        chosen.push(idx);
    }
    chosen
}

/// Basis of `{x ∈ Z^n : row·x = 0 for every row}`.
pub fn integer_kernel(n: usize, rows: &[SparseRow]) -> Vec<Vec<Integer>> {
    let all: Vec<&SparseRow> = rows.iter().filter(|r| !r.is_empty()).collect();
    let selected: Vec<&SparseRow> = independent_rows(n, &all).into_iter().map(|i| all[i]).collect();
    let kernel = kernel_of_rows(n, &selected);
    let consistent = kernel
        .iter()
        .all(|k| all.iter().all(|r| sparse_dot(r, k).is_zero()));
    if consistent {
        kernel
    } else {
        kernel_of_rows(n, &all)
    }
}

/// Column-style elimination on `[Aᵀ | I]`: rows whose `Aᵀ` part vanishes carry
/// a kernel basis in their identity part.
fn kernel_of_rows(n: usize, rows: &[&SparseRow]) -> Vec<Vec<Integer>> {
    let m = rows.len();
    let mut left: Vec<Vec<Integer>> = vec![vec![Integer::ZERO; m]; n];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r.iter() {
            left[*c][i] = v.clone();
        }
    }
    let mut right: Vec<Vec<Integer>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut active: Vec<usize> = (0..n).collect();
    for col in 0..m {
        loop {
            let holders: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&r| !left[r][col].is_zero())
                .collect();
            if holders.is_empty() {
                break;
            }
            let pivot = *holders
                .iter()
                .min_by(|&&a, &&b| left[a][col].cmp_abs(&left[b][col]))
                .expect("nonempty");
            if holders.len() == 1 {
                active.retain(|&r| r != pivot);
                break;
            }
            let pl = left[pivot].clone();
            let pr = right[pivot].clone();
            for &h in &holders {
                if h == pivot {
                    continue;
                }
                let q = left[h][col].div_round(&pl[col]);
                axpy(&mut left[h][col..], &q, &pl[col..]);
                axpy(&mut right[h], &q, &pr);
            }
        }
    }
    active.into_iter().map(|r| std::mem::take(&mut right[r])).collect()
}

/// Replaces `basis` by a basis of `{Σ cᵢ·bᵢ : row·(Σ cᵢ·bᵢ) ≡ 0 (mod modulus)}`.
pub fn refine_by_congruence(basis: &mut [Vec<Integer>], row: &SparseRow, modulus: &Integer) {
    let mut values: Vec<Integer> = basis
        .iter()
        .map(|b| sparse_dot(row, b).rem_euclid(modulus))
        .collect();
    loop {
        let holders: Vec<usize> = (0..basis.len()).filter(|&i| !values[i].is_zero()).collect();
        let Some(&pivot) = holders.iter().min_by(|&&a, &&b| values[a].cmp(&values[b])) else {
            return;
        };
        if holders.len() == 1 {
            let g = values[pivot].gcd(modulus);
            let scale = modulus.div_exact(&g).expect("gcd divides");
            for x in basis[pivot].iter_mut() {
                *x = &*x * &scale;
            }
            return;
        }
        let pb = basis[pivot].clone();
        let pv = values[pivot].clone();
        for &h in &holders {
            if h == pivot {
                continue;
            }
            let q = values[h].div_floor(&pv);
            axpy(&mut basis[h], &q, &pb);
            values[h] = (&values[h] - &(&q * &pv)).rem_euclid(modulus);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Lattice::from_generators(2, vec![ints(&[2, 4]), ints(&[6, 8])]);
        let b = Lattice::from_generators(2, vec![ints(&[2, 0]), ints(&[0, 4]), ints(&[4, 4])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[ints(&[2, 0]), ints(&[0, 4])]);
    }

    #[test]
    fn membership_and_coordinates() {
        let l = Lattice::from_generators(3, vec![ints(&[1, 1, 0]), ints(&[0, 2, 2])]);
        assert!(l.contains(&ints(&[3, 5, 2])));
        assert!(!l.contains(&ints(&[0, 1, 1])));
        assert!(!l.contains(&ints(&[0, 0, 1])));
        let c = l.coordinates(&ints(&[3, 5, 2])).unwrap();
        let rebuilt: Vec<Integer> = (0..3)
            .map(|j| c.iter().zip(l.basis()).map(|(ci, b)| ci * &b[j]).sum())
            .collect();
        assert_eq!(rebuilt, ints(&[3, 5, 2]));
    }

    #[test]
    fn kernel_of_sum_map() {
        let rows = vec![vec![(0, Integer::ONE), (1, Integer::ONE)]];
        let k = Lattice::from_generators(2, integer_kernel(2, &rows));
        assert_eq!(k, Lattice::from_generators(2, vec![ints(&[1, -1])]));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2, -1), not (4, -2)
        let rows = vec![vec![(0, Integer::from(2)), (1, Integer::from(4))]];
        let k = integer_kernel(2, &rows);
        assert_eq!(k.len(), 1);
        let l = Lattice::from_generators(2, k);
        assert!(l.contains(&ints(&[2, -1])));
    }

    #[test]
    fn congruence_refinement() {
        // x + y ≡ 0 mod 4 inside Z²
        let mut basis = vec![ints(&[1, 0]), ints(&[0, 1])];
        refine_by_congruence(&mut basis, &vec![(0, Integer::ONE), (1, Integer::ONE)], &Integer::from(4));
        let l = Lattice::from_generators(2, basis);
        assert_eq!(l, Lattice::from_generators(2, vec![ints(&[1, -1]), ints(&[4, 0])]));
    }
}
