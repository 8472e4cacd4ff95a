//! A free `ZG`-resolution `P₃ → P₂ → P₁ → P₀ = ZG → Z`, truncated where the
//! cohomology code stops needing it.
//!
//! `P_n = ZG^{k_n}` has Z-basis `h·ε_i` at coordinate `i·|G| + h`. Each
//! differential is stored through the images of the free generators,
//! `d(ε_l) = Σ_i c_{il}·ε_i` with `c_{il} = Σ_g c_{il,g}·g`.

use std::sync::Arc;

use crate::gmodules::FiniteGroup;
use crate::integer::Integer;
use crate::zlattice::{integer_kernel, Lattice, SparseRow};

/// Highest `n` for which generators of `P_n` are built.
const TOP: usize = 3;

#[derive(Debug)]
pub struct FreeResolution {
    order: usize,
    /// `images[n - 1][l]` is `d_n(ε_l)` as a vector in `P_{n-1}`.
    images: Vec<Vec<Vec<Integer>>>,
}

impl FreeResolution {
    /// The cached resolution of `group`, built on first use.
    pub fn for_group(group: &Arc<FiniteGroup>) -> Arc<FreeResolution> {
        group.resolution_cell().get_or_init(|| Arc::new(Self::build(group))).clone()
    }

    fn build(group: &FiniteGroup) -> FreeResolution {
        let n = group.order();
        let mut images = Vec::with_capacity(TOP);
        // augmentation ZG → Z
        let aug: SparseRow = (0..n).map(|g| (g, Integer::ONE)).collect();
        let kernel = integer_kernel(n, &[aug]);
        let seeds: Vec<Vec<Integer>> = group
            .generators()
            .iter()
            .map(|&s| {
                let mut v = vec![Integer::ZERO; n];
                v[s] += Integer::ONE;
                v[0] -= Integer::ONE;
                v
            })
            .collect();
        images.push(zg_generators(group, 1, seeds, kernel));
        let mut ranks = vec![1, images[0].len()];
        for deg in 1..TOP {
            let prev = images.last().expect("nonempty");
            let (k_prev, k) = (ranks[deg - 1], ranks[deg]);
            let rows = differential_rows(group, k_prev, prev);
            let kernel = integer_kernel(k * n, &rows);
            images.push(zg_generators(group, k, Vec::new(), kernel));
            ranks.push(images.last().expect("just pushed").len());
        }
        FreeResolution { order: n, images }
    }

    /// `k_n`, the ZG-rank of `P_n`.
    pub fn rank(&self, n: usize) -> usize {
        match n {
            0 => 1,
            _ => self.images[n - 1].len(),
        }
    }

    /// Images of the free generators of `P_n` in `P_{n-1}` (`1 ≤ n ≤ 3`).
    pub fn images(&self, n: usize) -> &[Vec<Integer>] {
        &self.images[n - 1]
    }

    pub fn group_order(&self) -> usize {
        self.order
    }
}

/// `h·v` for `v ∈ ZG^k`.
fn translate(group: &FiniteGroup, k: usize, h: usize, v: &[Integer]) -> Vec<Integer> {
    let n = group.order();
    let mut out = vec![Integer::ZERO; k * n];
    for i in 0..k {
        for g in 0..n {
            let x = &v[i * n + g];
            if !x.is_zero() {
                out[i * n + group.mul(h, g)] = x.clone();
            }
        }
    }
    out
}

/// Rows of the Z-matrix of `d: ZG^{images.len()} → ZG^{k_prev}`.
fn differential_rows(group: &FiniteGroup, k_prev: usize, images: &[Vec<Integer>]) -> Vec<SparseRow> {
    let n = group.order();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); k_prev * n];
    for (l, v) in images.iter().enumerate() {
        for h in 0..n {
            let col = l * n + h;
            for (idx, x) in translate(group, k_prev, h, v).into_iter().enumerate() {
                if !x.is_zero() {
                    rows[idx].push((col, x));
                }
            }
        }
    }
    rows
}

/// Greedy ZG-module generators of the Z-lattice spanned by `kernel` (which
/// must be G-stable), trying `seeds` first and then the sparsest kernel
/// vectors.
fn zg_generators(
    group: &FiniteGroup,
    k: usize,
    seeds: Vec<Vec<Integer>>,
    mut kernel: Vec<Vec<Integer>>,
) -> Vec<Vec<Integer>> {
    let dim = k * group.order();
    let target = kernel.len();
    kernel.sort_by_key(|v| {
        let nnz = v.iter().filter(|x| !x.is_zero()).count();
        let max = v.iter().map(|x| x.abs()).max().unwrap_or(Integer::ZERO);
        (nnz, max)
    });
    let mut span = Lattice::zero(dim);
    let mut gens = Vec::new();
    for v in seeds.into_iter().chain(kernel) {
        if span.contains(&v) {
            continue;
        }
        for h in 0..group.order() {
            span.insert(translate(group, k, h, &v));
        }
        gens.push(v);
    }
    debug_assert_eq!(span.rank(), target);
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::sparse_dot;

    fn check_complex(group: &FiniteGroup, res: &FreeResolution) {
        let n = group.order();
        for deg in 2..=TOP {
            let rows = differential_rows(group, res.rank(deg - 2), res.images(deg - 1));
            for v in res.images(deg) {
                assert!(rows.iter().all(|r| sparse_dot(r, v).is_zero()), "d∘d ≠ 0 in degree {deg}");
            }
        }
        for v in res.images(1) {
            let total: Integer = v.iter().cloned().sum();
            assert!(total.is_zero());
        }
        assert_eq!(res.rank(0), 1);
        assert!(n == 1 || res.rank(1) >= 1);
    }

    #[test]
    fn resolutions_are_complexes() {
        for name in ["C1", "C2", "C6", "S3", "Q8", "D4"] {
            let g = Arc::new(FiniteGroup::builtin(name).unwrap());
            let res = FreeResolution::for_group(&g);
            check_complex(&g, &res);
        }
    }

    #[test]
    fn cyclic_resolution_is_small() {
        let g = Arc::new(FiniteGroup::cyclic(5).unwrap());
        let res = FreeResolution::for_group(&g);
        assert_eq!(res.rank(1), 1);
        assert_eq!(res.rank(2), 1);
    }
}
