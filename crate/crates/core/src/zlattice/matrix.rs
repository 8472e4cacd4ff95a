use std::fmt;

use serde::{Deserialize, Serialize};

use crate::integer::Integer;

/// Dense integer matrix in row-major order.
///
/// Maps act on column vectors: a matrix with `r` rows and `c` columns is a
/// homomorphism `Z^c → Z^r`, `x ↦ A·x`. Relation matrices are the one
/// exception to that reading: each of their rows is a relation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Integer>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows × cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Integer::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::ONE;
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Every row must have the
    /// same length; `cols` disambiguates the zero-row case.
    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix row");
                r.iter().map(|&x| Integer::from(x))
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Integer>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Integer>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Integer]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::from(c);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Integer] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Integer>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Integer>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Integer::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    /// `A·x` for a column vector `x`.
    pub fn apply(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Integer::ZERO;
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `y·A` for a row vector `y`.
    pub fn apply_left(&self, y: &[Integer]) -> Vec<Integer> {
        assert_eq!(y.len(), self.rows, "vector length mismatch");
        let mut out = vec![Integer::ZERO; self.cols];
        for (i, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    o.add_mul_assign(c, a);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Integer) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn block_diagonal(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&IntMatrix], cols: usize) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        IntMatrix { rows, cols, data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q · row[src]`.
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        let cols = self.cols;
        for j in 0..cols {
            let s = self.data[src * cols + j].clone();
            if !s.is_zero() {
                self.data[dst * cols + j].sub_mul_assign(q, &s);
            }
        }
    }

    /// `col[dst] -= q · col[src]`.
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        let cols = self.cols;
        for i in 0..self.rows {
            let s = self.data[i * cols + src].clone();
            if !s.is_zero() {
                self.data[i * cols + dst].sub_mul_assign(q, &s);
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Integer {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Integer::ONE;
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = Integer::ONE;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Integer::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    a.set(i, j, v.div_exact(&prev).expect("Bareiss division is exact"));
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "] ({}×{})", self.rows, self.cols)
    }
}

// JSON form: a list of rows. The column count is recovered from the first row,
// so an empty list deserializes to a 0×0 matrix; callers that need a 0×c shape
// fix the width themselves.
impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vecs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Integer>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(IntMatrix::from_rows(cols, rows))
    }
}

/// One row of a sparse matrix: `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(usize, Integer)>;

/// Row-sparse integer matrix used for coboundary maps, which have a handful of
/// nonzero blocks per row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    /// Builds from rows, merging repeated columns and dropping zeros.
    pub fn with_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        debug_assert!(rows.iter().all(|r| r.iter().all(|(c, _)| *c < cols)));
        SparseMatrix { cols, rows: rows.into_iter().map(merge_sparse).collect() }
    }

    /// Adds a row, merging repeated columns and dropping zeros.
    pub fn push_row(&mut self, entries: SparseRow) {
        self.rows.push(merge_sparse(entries));
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.iter()
    }

    pub fn apply(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.rows.iter().map(|r| sparse_dot(r, x)).collect()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (c, v) in r {
                m.set(i, *c, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { cols: m.cols(), rows }
    }
}

/// Sorts by column, sums repeated columns and drops zeros.
pub fn merge_sparse(mut entries: SparseRow) -> SparseRow {
    entries.sort_by_key(|(c, _)| *c);
    let mut merged: SparseRow = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    merged
}

pub fn sparse_dot(row: &SparseRow, x: &[Integer]) -> Integer {
    let mut acc = Integer::ZERO;
    for (c, v) in row {
        let xc = &x[*c];
        if !xc.is_zero() {
            acc.add_mul_assign(v, xc);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_apply_agree() {
        let a = IntMatrix::from_i64_rows(2, &[vec![1, 2], vec![3, 4], vec![5, 6]]);
        let b = IntMatrix::from_i64_rows(1, &[vec![7], vec![8]]);
        let ab = a.mul(&b);
        assert_eq!(ab.column(0), a.apply(&b.column(0)));
        assert_eq!(ab, IntMatrix::from_i64_rows(1, &[vec![23], vec![53], vec![83]]));
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_i64_rows(3, &[vec![2, -3, 1], vec![2, 0, -1], vec![1, 4, 5]]);
        assert_eq!(a.determinant(), Integer::from(49));
        let singular = IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![1, 2]]);
        assert!(singular.determinant().is_zero());
        let swap = IntMatrix::from_i64_rows(2, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.determinant(), Integer::from(-1));
    }

    #[test]
    fn sparse_rows_merge_duplicates() {
        let mut s = SparseMatrix::new(3);
        s.push_row(vec![(2, Integer::from(1)), (0, Integer::from(2)), (2, Integer::from(-1))]);
        assert_eq!(s.row(0), &vec![(0, Integer::from(2))]);
        assert_eq!(s.apply(&[Integer::from(5), Integer::ZERO, Integer::ONE]), vec![Integer::from(10)]);
    }
}
