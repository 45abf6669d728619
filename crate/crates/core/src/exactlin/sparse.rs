use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::{inv_mod, mul_mod, Field, Scalar};
use super::matrix::Matrix;

/// Modulus for the multimodular shortcut on rational systems.
pub(crate) const CHECK_PRIME: u64 = (1 << 61) - 1;

/// A row-sparse matrix. Each row holds its nonzero entries by increasing column.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

/// Sparse reduced row-echelon form: row `k` has a leading one at `pivots[k]`
/// and zeros in every other pivot column.
#[derive(Clone, Debug)]
pub struct SparseRref {
    pub field: Field,
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { field, cols, rows: vec![Vec::new(); rows] }
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let rows = (0..m.rows())
            .map(|r| m.row(r).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect())
            .collect();
        SparseMatrix { field: m.field(), cols: m.cols(), rows }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(c < self.cols, "column {c} out of range");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                let s = self.field.add(&row[i].1, v);
                if s.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = s;
                }
            }
            Err(i) if !v.is_zero() => row.insert(i, (c, v.clone())),
            Err(_) => {}
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { field: self.field, cols: self.rows.len(), rows }
    }

    pub fn rref(&self) -> SparseRref {
        match self.field {
            Field::Prime(_) => eliminate(self),
            Field::Rationals => lifted(self).unwrap_or_else(|| eliminate(self)),
        }
    }

    pub fn rank(&self) -> usize {
        if self.field == Field::Rationals {
            // The rank mod p never exceeds the rational rank.
            let full = self.rows.len().min(self.cols);
            if let Some(m) = self.reduce_mod(CHECK_PRIME) {
                if eliminate(&m).pivots.len() == full {
                    return full;
                }
            }
        }
        self.rref().pivots.len()
    }

    /// Canonical kernel basis as columns, with the free columns it is the identity on.
    pub fn kernel_data(&self) -> (Matrix, Vec<usize>) {
        let rr = self.rref();
        let free = rr.free_columns();
        (rr.kernel(), free)
    }

    /// Reduction modulo `p`, unless `p` divides a denominator.
    pub(crate) fn reduce_mod(&self, p: u64) -> Option<SparseMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| match residue(v, p) {
                        Some(0) => None,
                        Some(r) => Some(Some((*c, Scalar::Mod(r)))),
                        None => Some(None),
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix { field: Field::Prime(p), cols: self.cols, rows })
    }
}

impl SparseRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Kernel vector `j` is one at free column `j` and minus that column of
    /// the reduced form at the pivots.
    pub fn kernel(&self) -> Matrix {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.cols];
        for (j, &f) in free.iter().enumerate() {
            slot[f] = j;
        }
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
        }
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            for (c, v) in row {
                if slot[*c] != usize::MAX {
                    k.set(pc, slot[*c], self.field.neg(v));
                }
            }
        }
        k
    }

    pub fn to_dense(&self, rows: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }
}

fn residue(v: &Scalar, p: u64) -> Option<u64> {
    match v {
        Scalar::Mod(x) => Some(*x),
        Scalar::Rat(q) => {
            if q.is_integer() {
                if let Some(n) = q.numer().to_i64() {
                    return Some(n.rem_euclid(p as i64) as u64);
                }
            }
            let modulus = BigInt::from(p);
            let red = |x: &BigInt| x.mod_floor(&modulus).to_u64().expect("residue fits");
            let d = red(q.denom());
            (d != 0).then(|| mul_mod(red(q.numer()), inv_mod(d, p), p))
        }
    }
}

/// Sparse Gauss-Jordan. Rows are reduced one at a time against the echelon
/// basis built so far, then the basis is back-substituted.
fn eliminate(m: &SparseMatrix) -> SparseRref {
    let field = m.field;
    let cols = m.cols;
    let mut acc = Accumulator::new(field, cols);
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut basis: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for row in &m.rows {
        let Some(start) = row.first().map(|e| e.0) else { continue };
        acc.scatter(row);
        for j in start..cols {
            if acc.is_zero(j) {
                continue;
            }
            if let Some(k) = pivot_of[j] {
                let f = acc.get(j);
                acc.axpy(&f, &basis[k]);
            }
        }
        let mut reduced = acc.gather();
        if reduced.is_empty() {
            continue;
        }
        let inv = field.inv(&reduced[0].1).expect("leading entry is nonzero");
        for e in &mut reduced {
            e.1 = field.mul(&e.1, &inv);
        }
        pivot_of[reduced[0].0] = Some(basis.len());
        basis.push(reduced);
    }
    basis.sort_by_key(|r| r[0].0);
    let pivots: Vec<usize> = basis.iter().map(|r| r[0].0).collect();
    for (k, &p) in pivots.iter().enumerate() {
        pivot_of[p] = Some(k);
    }
    for k in (0..basis.len()).rev() {
        if !basis[k][1..].iter().any(|(c, _)| pivot_of[*c].is_some()) {
            continue;
        }
        acc.scatter(&basis[k]);
        let row = std::mem::take(&mut basis[k]);
        for (c, _) in &row[1..] {
            if let Some(l) = pivot_of[*c] {
                let f = acc.get(*c);
                if !f.is_zero() {
                    acc.axpy(&f, &basis[l]);
                }
            }
        }
        basis[k] = acc.gather();
    }
    SparseRref { field, cols, pivots, rows: basis }
}

/// Dense scratch row that remembers which columns it touched.
struct Accumulator {
    field: Field,
    values: Vec<Scalar>,
    touched: Vec<bool>,
    support: Vec<usize>,
}

impl Accumulator {
    fn new(field: Field, cols: usize) -> Accumulator {
        Accumulator { field, values: vec![field.zero(); cols], touched: vec![false; cols], support: Vec::new() }
    }

    fn touch(&mut self, c: usize) {
        if !self.touched[c] {
            self.touched[c] = true;
            self.support.push(c);
        }
    }

    fn scatter(&mut self, row: &[(usize, Scalar)]) {
        for (c, v) in row {
            self.touch(*c);
            self.values[*c] = v.clone();
        }
    }

    fn is_zero(&self, c: usize) -> bool {
        !self.touched[c] || self.values[c].is_zero()
    }

    fn get(&self, c: usize) -> Scalar {
        self.values[c].clone()
    }

    /// `self -= f * row`.
    fn axpy(&mut self, f: &Scalar, row: &[(usize, Scalar)]) {
        for (c, v) in row {
            self.touch(*c);
            self.values[*c] = self.field.sub(&self.values[*c], &self.field.mul(f, v));
        }
    }

    fn gather(&mut self) -> Vec<(usize, Scalar)> {
        self.support.sort_unstable();
        let zero = self.field.zero();
        let mut out = Vec::new();
        for &c in &self.support {
            self.touched[c] = false;
            let v = std::mem::replace(&mut self.values[c], zero.clone());
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.support.clear();
        out
    }
}

/// The rational rref through `CHECK_PRIME`: eliminate modulo the prime, lift
/// the entries by rational reconstruction, then check that every input row is
/// the combination of lifted rows given by its pivot entries. That bounds the
/// rational rank by the modular rank, which is never larger, so the spans
/// agree and the lift is the rref.
fn lifted(m: &SparseMatrix) -> Option<SparseRref> {
    let modular = eliminate(&m.reduce_mod(CHECK_PRIME)?);
    let rows = modular
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| match v {
                    Scalar::Mod(x) => reconstruct(*x, CHECK_PRIME).map(|q| (*c, q)),
                    Scalar::Rat(_) => unreachable!("rational entry after reduction"),
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    let mut slot = vec![usize::MAX; m.cols];
    for (k, &p) in modular.pivots.iter().enumerate() {
        slot[p] = k;
    }
    let mut acc = vec![BigRational::zero(); m.cols];
    let mut touched = vec![false; m.cols];
    let mut support = Vec::new();
    for row in &m.rows {
        for (c, v) in row {
            if slot[*c] == usize::MAX {
                continue;
            }
            for (j, w) in &rows[slot[*c]] {
                if !touched[*j] {
                    touched[*j] = true;
                    support.push(*j);
                }
                acc[*j] += rat(v) * w;
            }
        }
        let mut ok = row.iter().all(|(c, v)| touched[*c] && acc[*c] == *rat(v));
        ok &= support.iter().filter(|&&j| !acc[j].is_zero()).count() == row.len();
        for &j in &support {
            acc[j].set_zero();
            touched[j] = false;
        }
        support.clear();
        if !ok {
            return None;
        }
    }
    let rows = rows.into_iter().map(|r| r.into_iter().map(|(c, q)| (c, Scalar::Rat(q))).collect()).collect();
    Some(SparseRref { field: Field::Rationals, cols: m.cols, pivots: modular.pivots, rows })
}

/// The fraction `a/b` with `a = b * u mod p` and `|a|, b` below `sqrt(p/2)`.
fn reconstruct(u: u64, p: u64) -> Option<BigRational> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(BigInt::from(r1), BigInt::from(t1)))
}

fn rat(s: &Scalar) -> &BigRational {
    match s {
        Scalar::Rat(q) => q,
        Scalar::Mod(_) => unreachable!("residue in a rational matrix"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn reconstruction() {
        let p = CHECK_PRIME;
        let third = mul_mod(p - 2, inv_mod(3, p), p);
        assert_eq!(reconstruct(third, p), Some(BigRational::new((-2).into(), 3.into())));
        assert_eq!(reconstruct(7, p), Some(BigRational::from_integer(7.into())));
    }

    #[test]
    fn lift_agrees_with_exact_elimination() {
        let m = Matrix::from_rows_i64(Q, &[&[2, 4, 1, 0], &[1, 2, 0, 3], &[3, 6, 1, 3], &[0, 0, 5, -7]]);
        let s = SparseMatrix::from_dense(&m);
        let lift = lifted(&s).expect("small entries lift");
        let exact = eliminate(&s);
        assert_eq!(lift.pivots, exact.pivots);
        assert_eq!(lift.to_dense(4), exact.to_dense(4));
        assert_eq!(exact.pivots, vec![0, 2, 3]);
    }

    #[test]
    fn huge_entries_fall_back() {
        let big = Scalar::Rat(BigRational::new(BigInt::from(1u64 << 40), BigInt::from((1u64 << 40) + 1)));
        let mut s = SparseMatrix::zeros(Q, 2, 2);
        s.add_at(0, 0, &Q.one());
        s.add_at(0, 1, &big);
        assert!(lifted(&s).is_none());
        let rr = s.rref();
        assert_eq!(rr.rows[0][1].1, big);
    }

    #[test]
    fn transpose_and_kernel() {
        let m = Matrix::from_rows_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let s = SparseMatrix::from_dense(&m);
        assert_eq!(s.transpose().to_dense(), m.transpose());
        let (k, free) = s.kernel_data();
        assert_eq!(free, vec![1, 2]);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Small matrices with entries `a/b`; many zeros so ranks vary.
        fn rational_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
                prop::collection::vec((-3i64..=3, 1i64..=4, 0u8..3), r * c).prop_map(move |cells| {
                    let data = cells
                        .into_iter()
                        .map(|(n, d, keep)| if keep == 0 { Q.zero() } else { Q.from_ratio(n, d).unwrap() })
                        .collect();
                    Matrix::from_vec(Q, r, c, data).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn lifted_rref_is_exact(m in rational_matrix()) {
                let s = SparseMatrix::from_dense(&m);
                let exact = eliminate(&s);
                let rr = s.rref();
                prop_assert_eq!(&rr.pivots, &exact.pivots);
                prop_assert_eq!(rr.to_dense(m.rows()), exact.to_dense(m.rows()));
            }

            #[test]
            fn rank_nullity_and_kernel(m in rational_matrix()) {
                let k = m.kernel_basis();
                prop_assert_eq!(m.rank() + k.cols(), m.cols());
                prop_assert!(m.mul(&k).unwrap().is_zero());
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn modular_rank_is_a_lower_bound(m in rational_matrix()) {
                let s = SparseMatrix::from_dense(&m);
                if let Some(r) = s.reduce_mod(5) {
                    prop_assert!(eliminate(&r).rank() <= s.rank());
                }
            }
        }
    }
}
