use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{mul_mod, Field, Scalar};
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field. Zero-row and zero-column
/// shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.reduced.cols - self.pivots.len());
        let mut next = self.pivots.iter().peekable();
        for c in 0..self.reduced.cols {
            if next.peek() == Some(&&c) {
                next.next();
            } else {
                free.push(c);
            }
        }
        free
    }

    /// Canonical kernel basis of the matrix this was computed from.
    pub fn kernel(&self) -> Matrix {
        kernel_from_rref(self, self.reduced.field)
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::InvalidShape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(format!("{bad} is not a normalized element of {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Row-major integer entries, reduced into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix { field, rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// Convenience for literal, non-empty matrices.
    pub fn from_rows_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_i64(field, rows.len(), cols, &flat)
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column_vector(field: Field, entries: Vec<Scalar>) -> Matrix {
        let n = entries.len();
        Matrix { field, rows: n, cols: 1, data: entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    /// `self[r, c] += v`.
    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::InvalidShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        if let Field::Prime(p) = f {
            let a = self.residues();
            let b = other.residues();
            let mut out = vec![0u64; self.rows * other.cols];
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let x = a[i * self.cols + k];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..other.cols {
                        let y = b[k * other.cols + j];
                        if y != 0 {
                            let o = &mut out[i * other.cols + j];
                            *o = (*o + mul_mod(x, y, p)) % p;
                        }
                    }
                }
            }
            return Ok(Matrix { field: f, rows: self.rows, cols: other.cols, data: out.into_iter().map(Scalar::Mod).collect() });
        }
        let rat = |s: &Scalar| match s {
            Scalar::Rat(q) => q.clone(),
            Scalar::Mod(_) => unreachable!("residue in a rational matrix"),
        };
        let support: Vec<Vec<(usize, BigRational)>> = (0..other.rows)
            .map(|k| other.row(k).iter().enumerate().filter(|(_, y)| !y.is_zero()).map(|(j, y)| (j, rat(y))).collect())
            .collect();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let mut acc: Vec<Option<BigRational>> = vec![None; other.cols];
            for (k, x) in self.row(i).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let x = rat(x);
                for (j, y) in &support[k] {
                    let p = &x * y;
                    match &mut acc[*j] {
                        Some(a) => *a += p,
                        slot => *slot = Some(p),
                    }
                }
            }
            data.extend(acc.into_iter().map(|a| Scalar::Rat(a.unwrap_or_else(BigRational::zero))));
        }
        Ok(Matrix { field: f, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Field, &Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::InvalidShape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(&f, a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Matrix {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        self.map(|f, a| f.mul(a, s))
    }

    fn map(&self, op: impl Fn(&Field, &Scalar) -> Scalar) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| op(&f, a)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Horizontal concatenation; `rows` fixes the shape when `blocks` is empty.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        if let Some(b) = blocks.iter().find(|b| b.rows != rows || b.field != field) {
            return Err(Error::InvalidShape(format!("hstack block has {} rows, expected {rows}", b.rows)));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            out.paste(0, off, b);
            off += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        if let Some(b) = blocks.iter().find(|b| b.cols != cols || b.field != field) {
            return Err(Error::InvalidShape(format!("vstack block has {} cols, expected {cols}", b.cols)));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            out.paste(off, 0, b);
            off += b.rows;
        }
        Ok(out)
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    /// Adds `block` into the window at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if !v.is_zero() {
                    self.add_at(r0 + r, c0 + c, v);
                }
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    fn residues(&self) -> Vec<u64> {
        self.data
            .iter()
            .map(|s| match s {
                Scalar::Mod(v) => *v,
                Scalar::Rat(_) => unreachable!("rational entry in a prime-field matrix"),
            })
            .collect()
    }

    /// The unique reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let rr = SparseMatrix::from_dense(self).rref();
        Rref { reduced: rr.to_dense(self.rows), pivots: rr.pivots }
    }

    pub fn rank(&self) -> usize {
        SparseMatrix::from_dense(self).rank()
    }

    /// Canonical basis of the right null space, one column per free variable.
    pub fn kernel_basis(&self) -> Matrix {
        let rr = self.rref();
        kernel_from_rref(&rr, self.field)
    }

    /// Particular solution of `self * x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::InvalidShape(format!("right-hand side has {} entries, matrix has {} rows", b.len(), self.rows)));
        }
        let rhs = Matrix::column_vector(self.field, b.to_vec());
        Ok(self.solve_matrix(&rhs)?.map(|x| x.column(0)))
    }

    /// Solves `self * X = rhs` for a matrix `X`, free variables zero.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(rhs)?;
        if rhs.rows != self.rows {
            return Err(Error::InvalidShape(format!("right-hand side has {} rows, matrix has {}", rhs.rows, self.rows)));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self, rhs])?;
        let rr = aug.rref();
        if rr.pivots.last().is_some_and(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (k, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, rr.reduced.get(k, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// A full-row-rank `(rows - rank) x rows` matrix `Q` with `Q * self = 0`,
    /// read off the rref of the transpose.
    pub fn cokernel_projection(&self) -> Matrix {
        self.cokernel_data().0
    }

    /// The cokernel projection together with the rows it restricts to the
    /// identity on: the unit vectors at those rows form a section.
    pub fn cokernel_data(&self) -> (Matrix, Vec<usize>) {
        let rr = self.transpose().rref();
        let q = kernel_from_rref(&rr, self.field).transpose();
        (q, rr.free_columns())
    }

    /// Canonical basis (as columns) of the column space.
    pub fn column_space(&self) -> Matrix {
        let rr = self.transpose().rref();
        rr.reduced.submatrix(0..rr.rank(), 0..self.rows).transpose()
    }

    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let zero_row = (0..self.rows).any(|r| self.row(r).iter().all(Scalar::is_zero));
        let zero_col = (0..self.cols).any(|c| (0..self.rows).all(|r| self.get(r, c).is_zero()));
        !zero_row && !zero_col && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
            .ok()
            .flatten()
            .filter(|_| self.is_invertible())
    }
}

fn kernel_from_rref(rr: &Rref, field: Field) -> Matrix {
    let cols = rr.reduced.cols;
    let free = rr.free_columns();
    let mut k = Matrix::zeros(field, cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k.set(fc, j, field.one());
        for (row, &pc) in rr.pivots.iter().enumerate() {
            let v = rr.reduced.get(row, fc);
            if !v.is_zero() {
                k.set(pc, j, field.neg(v));
            }
        }
    }
    k
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, " [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 2);
        let rr = id.rref();
        assert_eq!(rr.reduced, id);
        assert_eq!(rr.pivots, vec![0, 1]);

        let m = Matrix::from_rows_i64(Q, &[&[1, 2], &[2, 4]]);
        let rr = m.rref();
        assert_eq!(rr.reduced, Matrix::from_rows_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(rr.pivots, vec![0]);

        let f5 = Field::Prime(5);
        assert_eq!(Matrix::from_rows_i64(f5, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().shape(), (3, 0));
        let z = Matrix::zeros(Q, 2, 3);
        let k = z.kernel_basis();
        assert_eq!(k, Matrix::identity(Q, 3));
        let m = Matrix::from_rows_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.kernel_basis(), Matrix::from_rows_i64(Q, &[&[-2], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 2);
        let b = vec![Q.from_i64(3), Q.from_i64(-1)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_rows_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve(&[Q.from_i64(1), Q.from_i64(2)]).unwrap(), Some(vec![Q.from_i64(1), Q.from_i64(0)]));
        assert_eq!(m.solve(&[Q.from_i64(1), Q.from_i64(3)]).unwrap(), None);
        assert!(matches!(m.solve(&[Q.from_i64(1)]), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn cokernel_examples() {
        let surj = Matrix::from_rows_i64(Q, &[&[1, 0, 2], &[0, 1, 1]]);
        assert_eq!(surj.cokernel_projection().shape(), (0, 2));
        assert_eq!(Matrix::zeros(Q, 3, 2).cokernel_projection(), Matrix::identity(Q, 3));
        let col = Matrix::from_rows_i64(Q, &[&[1], &[2]]);
        assert_eq!(col.cokernel_projection(), Matrix::from_rows_i64(Q, &[&[-2, 1]]));
    }

    #[test]
    fn rational_rref_with_fractions() {
        let half = Q.from_ratio(1, 2).unwrap();
        let mut m = Matrix::from_rows_i64(Q, &[&[2, 1, 0], &[0, 3, 1], &[4, 0, 5]]);
        m.set(0, 2, half);
        let rr = m.rref();
        assert_eq!(rr.reduced, Matrix::identity(Q, 3));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 3));
    }

    #[test]
    fn zero_sized_shapes() {
        let m = Matrix::zeros(Q, 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis(), Matrix::identity(Q, 4));
        assert_eq!(m.cokernel_projection().shape(), (0, 0));
        let n = Matrix::zeros(Q, 3, 0);
        assert_eq!(n.kernel_basis().shape(), (0, 0));
        assert_eq!(n.cokernel_projection(), Matrix::identity(Q, 3));
        assert_eq!(n.mul(&Matrix::zeros(Q, 0, 2)).unwrap(), Matrix::zeros(Q, 3, 2));
    }
}
