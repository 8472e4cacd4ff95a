//! Smith normal form over the integers.

use crate::integer::Integer;

use super::matrix::IntMatrix;

/// `d = u · m · v` with `u`, `v` unimodular and `d` diagonal,
/// `d[0][0] | d[1][1] | …`, all diagonal entries non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d₁, …, d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    Reducer::new(m, true).run()
}

/// Same as [`smith_normal_form`] but skips the left transform, which is the
/// expensive part for tall relation matrices. The returned `u` is empty.
pub(crate) fn smith_right_only(m: &IntMatrix) -> SmithForm {
    Reducer::new(m, false).run()
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn new(m: &IntMatrix, track_left: bool) -> Self {
        Reducer {
            a: m.clone(),
            u: track_left.then(|| IntMatrix::identity(m.rows())),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[dst] -= q · row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &Integer) {
        self.a.row_sub_mul(dst, src, q);
        if let Some(u) = &mut self.u {
            u.row_sub_mul(dst, src, q);
        }
    }

    /// col[dst] -= q · col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &Integer) {
        self.a.col_sub_mul(dst, src, q);
        self.v.col_sub_mul(dst, src, q);
        // V' = V·E with E = I − q·e_src·e_dstᵀ, so V'^{-1} = (I + q·e_src·e_dstᵀ)·V^{-1}
        self.v_inv.row_sub_mul(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Smallest nonzero entry of the block from `(t, t)` on.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(self.a.get(bi, bj)).is_lt()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> SmithForm {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            loop {
                // the pivot is always the smallest entry left, which keeps the
                // other entries from growing
                let Some((pi, pj)) = self.smallest(t) else { break };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let mut clear = true;
                for i in t + 1..rows {
                    if !self.a.get(i, t).is_zero() {
                        let q = self.a.get(i, t).div_round(self.a.get(t, t));
                        self.row_op(i, t, &q);
                        clear &= self.a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a.get(t, j).is_zero() {
                        let q = self.a.get(t, j).div_round(self.a.get(t, t));
                        self.col_op(j, t, &q);
                        clear &= self.a.get(t, j).is_zero();
                    }
                }
                if !clear {
                    continue;
                }
                // pivot row and column are clear; enforce divisibility of the rest
                let pivot = self.a.get(t, t).clone();
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !pivot.divides(self.a.get(i, j))));
                match offender {
                    Some(i) => self.row_op(t, i, &Integer::from(-1)),
                    None => break,
                }
            }
            if self.a.get(t, t).is_zero() {
                break;
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        let rank = t;
        SmithForm {
            u: self.u.unwrap_or_default(),
            d: self.a,
            v: self.v,
            v_inv: self.v_inv,
            rank,
        }
    }
}
