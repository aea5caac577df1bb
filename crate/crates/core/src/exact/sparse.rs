//! Sparse rows, sparse matrices and an incremental echelon basis.
//!
//! The large linear systems here (stabilizer conditions, the `Υ′` map,
//! Casimir operators on forms) have a handful of nonzeros per row, so they
//! are assembled as coordinate rows and reduced one row at a time.

use super::field::Field;
use super::matrix::DenseMatrix;

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseRow<F> = Vec<(u32, F)>;

/// Builds a sorted sparse row from unsorted, possibly repeated entries.
pub fn compress<F: Field>(mut entries: Vec<(u32, F)>) -> SparseRow<F> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseRow<F> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add_ref(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `a − f·b` for sorted sparse rows.
pub fn axpy<F: Field>(a: &[(u32, F)], f: &F, b: &[(u32, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul_ref(f).neg_ref()));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul(f, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dense_to_sparse<F: Field>(v: &[F]) -> SparseRow<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(r: &[(u32, F)], n: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    for (c, x) in r {
        v[*c as usize] = x.clone();
    }
    v
}

/// Row-compressed sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<SparseRow<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i as u32, F::one())]).collect() }
    }

    pub fn from_dense(m: &DenseMatrix<F>) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|r| dense_to_sparse(m.row(r))).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c as usize, v.clone());
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (c, x) in row {
                    acc.add_mul(x, &v[*c as usize]);
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut slot_of: Vec<u32> = vec![u32::MAX; o.cols];
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: Vec<(u32, F)> = Vec::new();
            for (k, a) in row {
                for (j, b) in &o.data[*k as usize] {
                    let s = &mut slot_of[*j as usize];
                    if *s == u32::MAX {
                        *s = acc.len() as u32;
                        acc.push((*j, F::zero()));
                    }
                    acc[*s as usize].1.add_mul(a, b);
                }
            }
            for (j, _) in &acc {
                slot_of[*j as usize] = u32::MAX;
            }
            data.push(compress(acc));
        }
        SparseMatrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(&F::one(), o)
    }

    /// `self + s·o`
    pub fn add_scaled(&self, s: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let neg = s.neg_ref();
        let data = self.data.iter().zip(&o.data).map(|(a, b)| axpy(a, &neg, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(c, v)| (*c, v.mul_ref(s))).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow<F>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c as usize].push((r as u32, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add_scaled(&F::one().neg_ref(), &o.mul(self))
    }

    /// Kernel basis (same normalization as `DenseMatrix::kernel_basis`).
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut ech = SparseEchelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.kernel_basis()
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| compress(r.iter().map(|(c, v)| (*c, f(v))).collect()))
                .collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<SparseMatrix<G>, E> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let mut out = Vec::with_capacity(r.len());
            for (c, v) in r {
                out.push((*c, f(v)?));
            }
            data.push(compress(out));
        }
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Row echelon basis built one row at a time. Each stored row has leading
/// coefficient 1 and is reduced against earlier pivots only on its leading
/// entry.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    ncols: usize,
    pivot_row: Vec<Option<u32>>,
    rows: Vec<SparseRow<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the stored pivots; returns the residual.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        while let Some((c, v)) = row.first() {
            match self.pivot_row[*c as usize] {
                Some(p) => {
                    let f = v.clone();
                    row = axpy(&row, &f, &self.rows[p as usize]);
                }
                None => break,
            }
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut r = self.reduce(row);
        let Some((c, lead)) = r.first().cloned() else {
            return false;
        };
        if lead != F::one() {
            let inv = lead.inv().expect("nonzero lead");
            for e in r.iter_mut() {
                e.1 = e.1.mul_ref(&inv);
            }
        }
        self.pivot_row[c as usize] = Some(self.rows.len() as u32);
        self.rows.push(r);
        true
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Null space of the stored rows: one vector per free column (ascending),
    /// with a 1 there and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let pivots_desc: Vec<(usize, u32)> = (0..self.ncols)
            .rev()
            .filter_map(|c| self.pivot_row[c].map(|p| (c, p)))
            .collect();
        (0..self.ncols)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|free| {
                let mut x = vec![F::zero(); self.ncols];
                x[free] = F::one();
                for &(c, p) in &pivots_desc {
                    if c > free {
                        continue;
                    }
                    let mut acc = F::zero();
                    for (j, v) in self.rows[p as usize].iter().skip(1) {
                        let xj = &x[*j as usize];
                        if !xj.is_zero() {
                            acc.sub_mul(v, xj);
                        }
                    }
                    x[c] = acc;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::exact::scalar::QSqrt3;

    fn q(n: i64) -> QSqrt3 {
        QSqrt3::int(n)
    }

    #[test]
    fn compress_merges_and_drops_zeros() {
        let r = compress(vec![(3, q(1)), (1, q(2)), (3, q(-1)), (0, q(5))]);
        assert_eq!(r, vec![(0, q(5)), (1, q(2))]);
    }

    #[test]
    fn echelon_kernel_matches_dense() {
        let dense = DenseMatrix::from_rows(vec![
            vec![q(0), q(1), q(2), q(0), q(1)],
            vec![q(1), q(0), QSqrt3::sqrt3(), q(1), q(0)],
            vec![q(1), q(1), QSqrt3::sqrt3() + q(2), q(1), q(1)],
        ]);
        let sp = SparseMatrix::from_dense(&dense);
        let k = sp.kernel_basis();
        assert_eq!(k.len(), 5 - dense.rank());
        for v in &k {
            assert!(dense.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(k, dense.kernel_basis());
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(-3)], vec![q(4), q(0)]]);
        let b = DenseMatrix::from_rows(vec![vec![q(1), q(0), q(2)], vec![q(5), q(-1), q(0)]]);
        let p = SparseMatrix::from_dense(&a).mul(&SparseMatrix::from_dense(&b));
        assert_eq!(p.to_dense(), a.mul(&b));
        let t = SparseMatrix::from_dense(&a).transpose().to_dense();
        assert_eq!(t, a.transpose());
    }
}
