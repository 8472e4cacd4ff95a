//! Seeded random G-modules for the property suites.
//!
//! Lattices are direct sums of small building blocks (trivial and sign
//! characters, permutation modules on cosets and their quotients by the
//! norm vector, and for cyclic groups companion matrices of cyclotomic
//! polynomials), then conjugated by a random unimodular matrix or replaced
//! by a random invariant sublattice. Torsion comes from reducing modulo `n`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gmodules::{FiniteGroup, GModule, Subgroup};
use crate::integer::Integer;
use crate::zlattice::{FgAbelianGroup, IntMatrix, Lattice};

pub struct ModuleSampler {
    rng: ChaCha8Rng,
}

impl ModuleSampler {
    pub fn new(seed: u64) -> Self {
        ModuleSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A module with free underlying group of rank `1..=max_rank`.
    pub fn lattice(&mut self, g: &Arc<FiniteGroup>, max_rank: usize) -> GModule {
        let target = self.rng.gen_range(1..=max_rank.max(1));
        let blocks = building_blocks(g, target);
        let mut parts = Vec::new();
        let mut rank = 0;
        while rank < target {
            let fitting: Vec<&GModule> = blocks.iter().filter(|b| b.rank() <= target - rank).collect();
            let b = (*fitting.choose(&mut self.rng).expect("trivial block fits")).clone();
            rank += b.rank();
            parts.push(b);
        }
        let sum = GModule::direct_sum(&parts).expect("same group");
        match self.rng.gen_range(0..3) {
            0 => sum,
            1 => self.conjugate(&sum),
            _ => self.sublattice(&sum).unwrap_or(sum),
        }
    }

    /// A lattice, possibly reduced modulo `n` in whole or on one summand.
    pub fn module(&mut self, g: &Arc<FiniteGroup>, max_rank: usize) -> GModule {
        let m = self.lattice(g, max_rank);
        let n = self.rng.gen_range(2..=6);
        match self.rng.gen_range(0..3) {
            0 => m,
            1 => reduce_mod(&m, n),
            _ if m.rank() < max_rank => {
                let rest = self.lattice(g, max_rank - m.rank());
                GModule::direct_sum(&[m, reduce_mod(&rest, n)]).expect("same group")
            }
            _ => reduce_mod(&m, n),
        }
    }

    /// `U·M` for a random unimodular `U`: `A_g ↦ U A_g U⁻¹`.
    pub fn conjugate(&mut self, m: &GModule) -> GModule {
        let (u, u_inv) = self.unimodular(m.rank());
        let action = m.actions().iter().map(|a| u.mul(a).mul(&u_inv)).collect();
        // a relation vector x becomes U·x
        let rels = m.underlying().relations().mul(&u.transpose());
        let underlying = FgAbelianGroup::from_relations(m.rank(), rels).expect("same rank");
        GModule::new(m.group().clone(), underlying, action).expect("conjugate of a module")
    }

    /// The sublattice spanned by the orbits of a few random vectors, in its
    /// own basis; `None` if it is not of full rank or `m` has torsion.
    pub fn sublattice(&mut self, m: &GModule) -> Option<GModule> {
        self.sublattice_with_basis(m).map(|(sub, _)| sub)
    }

    /// As [`ModuleSampler::sublattice`], also returning the basis as the
    /// columns of the inclusion matrix.
    pub fn sublattice_with_basis(&mut self, m: &GModule) -> Option<(GModule, IntMatrix)> {
        if !m.underlying().is_free() {
            return None;
        }
        let r = m.rank();
        let mut gens = Vec::new();
        for _ in 0..self.rng.gen_range(1..=2) {
            let v: Vec<Integer> = (0..r).map(|_| Integer::from(self.rng.gen_range(-2i64..=2))).collect();
            gens.extend(m.actions().iter().map(|a| a.apply(&v)));
        }
        for i in 0..r {
            let mut e = vec![Integer::ZERO; r];
            e[i] = Integer::from(self.rng.gen_range(2i64..=4));
            gens.extend(m.actions().iter().map(|a| a.apply(&e)));
        }
        let lat = Lattice::from_generators(r, gens);
        if lat.rank() < r {
            return None;
        }
        let basis = lat.basis();
        let action = m
            .actions()
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Integer>> =
                    basis.iter().map(|b| lat.coordinates(&a.apply(b)).expect("invariant sublattice")).collect();
                IntMatrix::from_columns(r, &cols)
            })
            .collect();
        let sub = GModule::new(m.group().clone(), FgAbelianGroup::free(r), action).ok()?;
        Some((sub, IntMatrix::from_columns(r, basis)))
    }

    /// A random unimodular matrix and its inverse.
    pub fn unimodular(&mut self, n: usize) -> (IntMatrix, IntMatrix) {
        let mut u = IntMatrix::identity(n);
        let mut u_inv = IntMatrix::identity(n);
        if n < 2 {
            return (u, u_inv);
        }
        for _ in 0..self.rng.gen_range(1..=2 * n) {
            let i = self.rng.gen_range(0..n);
            let j = (i + self.rng.gen_range(1..n)) % n;
            let c = Integer::from(self.rng.gen_range(-2i64..=2));
            // (I + cE_ij)·U and U⁻¹·(I − cE_ij)
            u.row_sub_mul(i, j, &-&c);
            u_inv.col_sub_mul(j, i, &c);
        }
        (u, u_inv)
    }
}

/// `M/nM`.
pub fn reduce_mod(m: &GModule, n: i64) -> GModule {
    let r = m.rank();
    let mut rows = m.underlying().relations().row_vecs();
    rows.extend(IntMatrix::scalar(r, n).row_vecs());
    let underlying = FgAbelianGroup::from_relations(r, IntMatrix::from_rows(r, rows)).expect("same rank");
    GModule::new(m.group().clone(), underlying, m.actions().to_vec()).expect("nM is invariant")
}

/// Free modules of rank at most `max_rank` built directly from the group.
pub fn building_blocks(g: &Arc<FiniteGroup>, max_rank: usize) -> Vec<GModule> {
    let mut out = vec![GModule::trivial(g, FgAbelianGroup::free(1))];
    for h in Subgroup::two_generated(g) {
        let k = h.index();
        if k == 1 || k > max_rank + 1 {
            continue;
        }
        if k == 2 {
            out.push(sign_character(&h));
        }
        let perm = permutation_module(&h);
        if k <= max_rank {
            out.push(perm.clone());
        }
        if k > 2 {
            out.push(norm_quotient(&perm));
        }
    }
    if let Some(s) = g.cyclic_generator() {
        let n = g.order();
        for d in (3..=n).filter(|d| n.is_multiple_of(*d)) {
            let c = cyclotomic_companion(d);
            if c.rows() <= max_rank && c.rows() > 1 {
                out.push(cyclic_module(g, s, &c));
            }
        }
    }
    out
}

/// `Z[G/H]`.
pub fn permutation_module(h: &Subgroup) -> GModule {
    GModule::induced(h, &GModule::trivial(h.as_group(), FgAbelianGroup::free(1))).expect("same group")
}

/// `Z` with `g` acting by `−1` off the index-2 subgroup `h`.
pub fn sign_character(h: &Subgroup) -> GModule {
    let g = h.parent();
    let action = (0..g.order()).map(|x| IntMatrix::scalar(1, if h.contains(x) { 1 } else { -1 })).collect();
    GModule::new(g.clone(), FgAbelianGroup::free(1), action).expect("character of an index-2 subgroup")
}

/// `P/Z·(1, …, 1)` for a permutation module `P`, on the first `k − 1`
/// coordinates.
pub fn norm_quotient(perm: &GModule) -> GModule {
    let k = perm.rank();
    let mut proj = IntMatrix::zeros(k - 1, k);
    for i in 0..k - 1 {
        proj.set(i, i, Integer::ONE);
        proj.set(i, k - 1, Integer::from(-1));
    }
    let mut section = IntMatrix::zeros(k, k - 1);
    for i in 0..k - 1 {
        section.set(i, i, Integer::ONE);
    }
    let action = perm.actions().iter().map(|a| proj.mul(a).mul(&section)).collect();
    GModule::new(perm.group().clone(), FgAbelianGroup::free(k - 1), action).expect("quotient by the norm vector")
}

/// Companion matrix of the `d`-th cyclotomic polynomial.
pub fn cyclotomic_companion(d: usize) -> IntMatrix {
    let phi = cyclotomic(d);
    let n = phi.len() - 1;
    let mut c = IntMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, Integer::ONE);
    }
    for i in 0..n {
        c.set(i, n - 1, Integer::from(-phi[i]));
    }
    c
}

/// Coefficients of `Φ_d`, low to high, by dividing `X^d − 1` by `Φ_e` for
/// the proper divisors `e` of `d`.
fn cyclotomic(d: usize) -> Vec<i64> {
    let mut num = vec![0i64; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let den = cyclotomic(e);
        num = divide_monic(&num, &den);
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (i, &b) in den.iter().enumerate() {
            r[k + i] -= c * b;
        }
    }
    q
}

/// `C_n` acting through `s ↦ c`, `sʲ ↦ cʲ`.
fn cyclic_module(g: &Arc<FiniteGroup>, s: usize, c: &IntMatrix) -> GModule {
    let n = g.order();
    let r = c.rows();
    let mut action = vec![IntMatrix::identity(r); n];
    let mut x = s;
    let mut power = c.clone();
    while x != 0 {
        action[x] = power.clone();
        power = power.mul(c);
        x = g.mul(x, s);
    }
    GModule::new(g.clone(), FgAbelianGroup::free(r), action).expect("cᵈ = 1 for the companion of Φ_d")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        let c = cyclotomic_companion(5);
        let mut p = IntMatrix::identity(4);
        for _ in 0..5 {
            p = p.mul(&c);
        }
        assert_eq!(p, IntMatrix::identity(4));
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let g = Arc::new(FiniteGroup::builtin("D4").unwrap());
        let mut a = ModuleSampler::new(7);
        let mut b = ModuleSampler::new(7);
        for _ in 0..20 {
            let m = a.module(&g, 4);
            let n = b.module(&g, 4);
            assert_eq!(m.to_json(), n.to_json());
            assert!(m.rank() <= 4);
            GModule::new(m.group().clone(), m.underlying().clone(), m.actions().to_vec()).unwrap();
        }
    }

    #[test]
    fn unimodular_pairs_invert() {
        let mut s = ModuleSampler::new(1);
        for n in 1..=5 {
            let (u, v) = s.unimodular(n);
            assert_eq!(u.mul(&v), IntMatrix::identity(n));
        }
    }

    #[test]
    fn blocks_for_cyclic_groups() {
        let c12 = Arc::new(FiniteGroup::builtin("C12").unwrap());
        let ranks: Vec<usize> = building_blocks(&c12, 4).iter().map(GModule::rank).collect();
        assert!(ranks.iter().all(|&r| r <= 4));
        assert!(ranks.contains(&4));
    }
}
