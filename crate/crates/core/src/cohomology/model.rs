//! Two cochain models for `H^n(G, M)`.
//!
//! Both store an `n`-cochain as a run of `M`-ambient blocks of length
//! `rank(M)`. In the bar model the blocks are indexed by tuples in `G^n`
//! (`(g₁, …, g_n) ↦ g₁|G|^{n−1} + … + g_n`); in the resolution model they are
//! the values on the free generators of `P_n`.

use std::sync::Arc;

use crate::gmodules::GModule;
use crate::integer::Integer;
use crate::zlattice::{constraints_into, Constraint, IntMatrix, SparseMatrix, SparseRow};

use super::resolution::FreeResolution;

#[derive(Clone, Debug)]
pub enum CochainModel {
    /// Inhomogeneous cochains `G^n → M`.
    Bar,
    /// `Hom_G(P_n, M) = M^{k_n}` for a free resolution `P`.
    Resolution(Arc<FreeResolution>),
}

impl CochainModel {
    pub fn resolution(m: &GModule) -> Self {
        CochainModel::Resolution(FreeResolution::for_group(m.group()))
    }

    /// Number of `M`-blocks in degree `n`.
    pub fn blocks(&self, m: &GModule, n: usize) -> usize {
        match self {
            CochainModel::Bar => m.group().order().pow(n as u32),
            CochainModel::Resolution(res) => res.rank(n),
        }
    }

    /// All rows of `δⁿ: Cⁿ → Cⁿ⁺¹`, grouped in blocks of `rank(M)`.
    pub fn coboundary(&self, m: &GModule, n: usize) -> SparseMatrix {
        match self {
            CochainModel::Bar => bar_coboundary(m, n, None),
            CochainModel::Resolution(res) => resolution_coboundary(res, m, n),
        }
    }

    /// Constraints cutting out the `n`-cocycles inside `Z^{blocks·rank}`.
    ///
    /// The bar model only keeps the equations whose first argument is the
    /// identity or a generator; the rest follow from `δ∘δ = 0`.
    pub fn cocycle_constraints(&self, m: &GModule, n: usize) -> Vec<Constraint> {
        let rows = match self {
            CochainModel::Bar => {
                let mut first: Vec<usize> = vec![0];
                first.extend(m.group().generators());
                bar_coboundary(m, n, Some(&first))
            }
            CochainModel::Resolution(res) => resolution_coboundary(res, m, n),
        };
        block_constraints(m, rows.row_iter().cloned().collect())
    }

    /// Ambient vectors generating the coboundaries in degree `n`, together
    /// with the relation vectors of every block.
    pub fn boundary_generators(&self, m: &GModule, n: usize) -> Vec<Vec<Integer>> {
        let r = m.rank();
        let blocks = self.blocks(m, n);
        let mut gens = Vec::new();
        if n > 0 {
            let d = self.coboundary(m, n - 1);
            gens.extend(sparse_columns(&d, self.blocks(m, n - 1) * r));
        }
        gens.extend(block_relations(m, blocks));
        gens
    }
}

/// Every relation of `M` placed in each of `blocks` blocks.
pub(crate) fn block_relations(m: &GModule, blocks: usize) -> Vec<Vec<Integer>> {
    let r = m.rank();
    let rels = m.underlying().relations().row_vecs();
    let mut out = Vec::with_capacity(blocks * rels.len());
    for b in 0..blocks {
        for rel in &rels {
            let mut v = vec![Integer::ZERO; blocks * r];
            v[b * r..(b + 1) * r].clone_from_slice(rel);
            out.push(v);
        }
    }
    out
}

/// Constraints saying each `rank(M)`-row block lands on zero in `M`.
pub(crate) fn block_constraints(m: &GModule, rows: Vec<SparseRow>) -> Vec<Constraint> {
    let r = m.rank();
    if r == 0 {
        return Vec::new();
    }
    rows.chunks(r).flat_map(|chunk| constraints_into(m.underlying(), chunk)).collect()
}

pub(crate) fn sparse_columns(d: &SparseMatrix, cols: usize) -> Vec<Vec<Integer>> {
    let mut out = vec![vec![Integer::ZERO; d.rows()]; cols];
    for (i, row) in d.row_iter().enumerate() {
        for (j, x) in row {
            out[*j][i] = x.clone();
        }
    }
    out
}

/// Adds `sign·A` into the block at (`row_block`, `col_block`).
fn add_block(rows: &mut [SparseRow], r: usize, row_block: usize, col_block: usize, a: &IntMatrix, sign: i64) {
    for s in 0..r {
        let row = &mut rows[row_block * r + s];
        for t in 0..r {
            let x = a.get(s, t);
            if !x.is_zero() {
                row.push((col_block * r + t, if sign > 0 { x.clone() } else { -x }));
            }
        }
    }
}

fn add_identity(rows: &mut [SparseRow], r: usize, row_block: usize, col_block: usize, sign: i64) {
    for s in 0..r {
        rows[row_block * r + s].push((col_block * r + s, Integer::from(sign)));
    }
}

/// Bar coboundary `δⁿ`, `n ≤ 2`; `first` restricts the first argument of
/// the output tuples.
fn bar_coboundary(m: &GModule, n: usize, first: Option<&[usize]>) -> SparseMatrix {
    let g = m.group();
    let o = g.order();
    let r = m.rank();
    let all: Vec<usize> = (0..o).collect();
    let firsts = first.unwrap_or(&all);
    let out_blocks = firsts.len() * o.pow(n as u32);
    let mut rows: Vec<SparseRow> = vec![Vec::new(); out_blocks * r];
    let in_cols = o.pow(n as u32) * r;
    for (fi, &a) in firsts.iter().enumerate() {
        match n {
            0 => {
                // (δm)(a) = a·m − m
                add_block(&mut rows, r, fi, 0, m.action(a), 1);
                add_identity(&mut rows, r, fi, 0, -1);
            }
            1 => {
                // (δf)(a,b) = a·f(b) − f(ab) + f(a)
                for b in 0..o {
                    let blk = fi * o + b;
                    add_block(&mut rows, r, blk, b, m.action(a), 1);
                    add_identity(&mut rows, r, blk, g.mul(a, b), -1);
                    add_identity(&mut rows, r, blk, a, 1);
                }
            }
            2 => {
                // (δc)(a,b,c) = a·c(b,c) − c(ab,c) + c(a,bc) − c(a,b)
                for b in 0..o {
                    for c in 0..o {
                        let blk = (fi * o + b) * o + c;
                        add_block(&mut rows, r, blk, b * o + c, m.action(a), 1);
                        add_identity(&mut rows, r, blk, g.mul(a, b) * o + c, -1);
                        add_identity(&mut rows, r, blk, a * o + g.mul(b, c), 1);
                        add_identity(&mut rows, r, blk, a * o + b, -1);
                    }
                }
            }
            _ => unreachable!("degree capped at 2"),
        }
    }
    SparseMatrix::with_rows(in_cols, rows)
}

/// `δⁿ: M^{k_n} → M^{k_{n+1}}`, block `(l, i) = Σ_g c_{il,g}·A_g`.
fn resolution_coboundary(res: &FreeResolution, m: &GModule, n: usize) -> SparseMatrix {
    let o = res.group_order();
    let r = m.rank();
    let k_in = res.rank(n);
    let images = res.images(n + 1);
    let mut rows: Vec<SparseRow> = vec![Vec::new(); images.len() * r];
    for (l, v) in images.iter().enumerate() {
        for i in 0..k_in {
            for gi in 0..o {
                let c = &v[i * o + gi];
                if c.is_zero() {
                    continue;
                }
                let a = m.action(gi);
                for s in 0..r {
                    let row = &mut rows[l * r + s];
                    for t in 0..r {
                        let x = a.get(s, t);
                        if !x.is_zero() {
                            row.push((i * r + t, c * x));
                        }
                    }
                }
            }
        }
    }
    SparseMatrix::with_rows(k_in * r, rows)
}

/// Applies an `rₜ × rₛ` ambient map to every block of a cochain.
pub(crate) fn map_blocks(matrix: &IntMatrix, cochain: &[Integer], blocks: usize) -> Vec<Integer> {
    let rs = matrix.cols();
    (0..blocks).flat_map(|b| matrix.apply(&cochain[b * rs..(b + 1) * rs])).collect()
}
