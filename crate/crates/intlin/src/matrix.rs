use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse integer vector: index → nonzero entry.
pub type SparseVec = BTreeMap<usize, BigInt>;

/// Adds `c * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, c: &BigInt, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, v) in src {
        let slot = dst.entry(i).or_insert_with(BigInt::zero);
        *slot += c * v;
        if slot.is_zero() {
            dst.remove(&i);
        }
    }
}

/// Returns `a*x + b*y`.
pub fn lincomb(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    axpy(&mut out, a, x);
    axpy(&mut out, b, y);
    out
}

pub fn scale(v: &SparseVec, c: &BigInt) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * c)).collect()
}

/// Column-major sparse matrix over Z.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMat {
    n_rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseIntMat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseIntMat {
            n_rows,
            cols: vec![SparseVec::new(); n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.cols[i].insert(i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from columns; zero entries are dropped.
    ///
    /// Panics if a row index is out of range.
    pub fn from_columns(n_rows: usize, cols: Vec<SparseVec>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .inspect(|(i, _)| assert!(*i < n_rows, "row index {i} out of range"))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseIntMat { n_rows, cols }
    }

    pub fn from_i64_columns(n_rows: usize, cols: &[Vec<(usize, i64)>]) -> Self {
        Self::from_columns(
            n_rows,
            cols.iter()
                .map(|c| c.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
                .collect(),
        )
    }

    /// Row-major dense input, the natural way to write small matrices.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n_cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x.into());
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn push_col(&mut self, c: SparseVec) {
        debug_assert!(c.keys().all(|&i| i < self.n_rows));
        self.cols.push(c.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.cols[j].get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.n_rows && j < self.cols.len());
        if v.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols(), self.n_rows);
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, v) in c {
                t.cols[i].insert(j, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v {
            axpy(&mut out, x, &self.cols[j]);
        }
        out
    }

    pub fn mul(&self, rhs: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.n_cols(), rhs.n_rows, "dimension mismatch in product");
        SparseIntMat {
            n_rows: self.n_rows,
            cols: rhs.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn hcat(&self, rhs: &SparseIntMat) -> SparseIntMat {
        assert_eq!(self.n_rows, rhs.n_rows);
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        SparseIntMat {
            n_rows: self.n_rows,
            cols,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.n_cols()]; self.n_rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (&i, v) in c {
                d[i][j] = v.clone();
            }
        }
        d
    }
}

impl fmt::Debug for SparseIntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMat {}x{}", self.n_rows, self.n_cols())?;
        if self.n_rows <= 12 && self.n_cols() <= 12 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMat::from_rows(&[vec![1, 2], vec![0, 3]]);
        let b = SparseIntMat::from_rows(&[vec![4, 0], vec![1, -1]]);
        let c = a.mul(&b);
        assert_eq!(c, SparseIntMat::from_rows(&[vec![6, -2], vec![3, -3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut m = SparseIntMat::zeros(2, 2);
        m.set(0, 0, BigInt::from(5));
        m.set(0, 0, BigInt::zero());
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
    }
}
