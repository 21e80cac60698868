//! Column echelon forms over Z built by incremental insertion.
//!
//! Each stored column has a pivot: its smallest nonzero row index. Inserting a
//! vector clears it against existing pivots with unimodular 2×2 steps
//! (extended gcd), so the accumulated transform stays invertible over Z and the
//! vectors that reduce to zero form a basis of the kernel.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{axpy, lincomb, scale, SparseIntMat, SparseVec};

#[derive(Clone, Debug)]
pub struct Echelon {
    n_rows: usize,
    track: bool,
    n_inserted: usize,
    cols: Vec<SparseVec>,
    trans: Vec<SparseVec>,
    pivot_of_row: BTreeMap<usize, usize>,
    kernel: Vec<SparseVec>,
}

/// Result of reducing a vector against an echelon basis.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after clearing every pivot row (Euclidean remainders).
    pub remainder: SparseVec,
    /// Coefficients over the echelon columns, `v = Σ coeffs[k]·col[k] + remainder`.
    pub coeffs: SparseVec,
}

impl Echelon {
    pub fn new(n_rows: usize, track_transform: bool) -> Self {
        Echelon {
            n_rows,
            track: track_transform,
            n_inserted: 0,
            cols: Vec::new(),
            trans: Vec::new(),
            pivot_of_row: BTreeMap::new(),
            kernel: Vec::new(),
        }
    }

    pub fn from_matrix(m: &SparseIntMat, track_transform: bool) -> Self {
        let mut e = Echelon::new(m.n_rows(), track_transform);
        for c in m.columns() {
            e.insert(c.clone());
        }
        e
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pivot_of_row.iter().map(|(&r, &k)| (r, k))
    }

    /// Source-coordinate expressions of the echelon columns (needs tracking).
    pub fn transforms(&self) -> &[SparseVec] {
        assert!(self.track, "transform tracking disabled");
        &self.trans
    }

    pub fn kernel(&self) -> &[SparseVec] {
        assert!(self.track, "transform tracking disabled");
        &self.kernel
    }

    /// Inserts one more generator. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        let src = self.n_inserted;
        self.n_inserted += 1;
        let mut t = SparseVec::new();
        if self.track {
            t.insert(src, BigInt::one());
        }
        v.retain(|_, x| !x.is_zero());
        loop {
            let Some((&p, _)) = v.iter().next() else {
                if self.track {
                    self.kernel.push(t);
                }
                return false;
            };
            let Some(&k) = self.pivot_of_row.get(&p) else {
                self.pivot_of_row.insert(p, self.cols.len());
                self.cols.push(v);
                self.trans.push(t);
                return true;
            };
            let a = self.cols[k][&p].clone();
            let b = v[&p].clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                axpy(&mut v, &q, &self.cols[k]);
                if self.track {
                    axpy(&mut t, &q, &self.trans[k]);
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, s, r) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_col = lincomb(&s, &self.cols[k], &r, &v);
            let new_v = lincomb(&-&bg, &self.cols[k], &ag, &v);
            if self.track {
                let new_t = lincomb(&s, &self.trans[k], &r, &t);
                t = lincomb(&-&bg, &self.trans[k], &ag, &t);
                self.trans[k] = new_t;
            }
            self.cols[k] = new_col;
            v = new_v;
        }
    }

    /// Reduces `v` row by row. At a pivot row the entry is replaced by its
    /// nonnegative remainder modulo the pivot.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut v: SparseVec = v.iter().filter(|(_, x)| !x.is_zero()).map(|(&i, x)| (i, x.clone())).collect();
        let mut coeffs = SparseVec::new();
        let mut cursor = 0usize;
        while let Some((&p, x)) = v.range(cursor..).next() {
            cursor = p + 1;
            let Some(&k) = self.pivot_of_row.get(&p) else { continue };
            let a = &self.cols[k][&p];
            let q = x.div_floor(a);
            if q.is_zero() {
                continue;
            }
            axpy(&mut v, &-&q, &self.cols[k]);
            coeffs.insert(k, q);
        }
        Reduction { remainder: v, coeffs }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    /// Expresses `v` as a combination of the inserted generators, if possible.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let red = self.reduce(v);
        if !red.remainder.is_empty() {
            return None;
        }
        let mut w = SparseVec::new();
        for (&k, c) in &red.coeffs {
            axpy(&mut w, c, &self.transforms()[k]);
        }
        Some(w)
    }

    /// Brings the basis to the unique column Hermite form: columns sorted by
    /// pivot row, positive pivots, and entries in each pivot row to the left of
    /// the pivot reduced into `[0, pivot)`.
    pub fn normalize(&mut self) {
        let order: Vec<usize> = self.pivot_of_row.values().copied().collect();
        let mut cols: Vec<SparseVec> = order.iter().map(|&k| std::mem::take(&mut self.cols[k])).collect();
        let mut trans: Vec<SparseVec> = if self.track {
            order.iter().map(|&k| std::mem::take(&mut self.trans[k])).collect()
        } else {
            Vec::new()
        };
        let pivots: Vec<usize> = self.pivot_of_row.keys().copied().collect();
        for (j, &p) in pivots.iter().enumerate() {
            if cols[j][&p].is_negative() {
                cols[j] = scale(&cols[j], &-BigInt::one());
                if self.track {
                    trans[j] = scale(&trans[j], &-BigInt::one());
                }
            }
        }
        for (j, &p) in pivots.iter().enumerate() {
            let d = cols[j][&p].clone();
            for k in 0..j {
                let Some(x) = cols[k].get(&p) else { continue };
                let q = x.div_floor(&d);
                if q.is_zero() {
                    continue;
                }
                let cj = cols[j].clone();
                axpy(&mut cols[k], &-&q, &cj);
                if self.track {
                    let tj = trans[j].clone();
                    axpy(&mut trans[k], &-&q, &tj);
                }
            }
        }
        self.pivot_of_row = pivots.iter().enumerate().map(|(j, &p)| (p, j)).collect();
        self.cols = cols;
        self.trans = trans;
    }
}

/// Column-style Hermite normal form: returns `(h, u)` with `m·u = h`, `u`
/// unimodular, the nonzero columns of `h` first.
pub fn hnf(m: &SparseIntMat) -> (SparseIntMat, SparseIntMat) {
    let mut e = Echelon::from_matrix(m, true);
    e.normalize();
    let n = m.n_cols();
    let mut h = SparseIntMat::zeros(m.n_rows(), 0);
    let mut u = SparseIntMat::zeros(n, 0);
    for (c, t) in e.cols.iter().zip(&e.trans) {
        h.push_col(c.clone());
        u.push_col(t.clone());
    }
    for t in &e.kernel {
        h.push_col(SparseVec::new());
        u.push_col(t.clone());
    }
    (h, u)
}

pub fn rank(m: &SparseIntMat) -> usize {
    Echelon::from_matrix(m, false).rank()
}

/// Basis of the integer kernel; it spans a direct summand of Z^{n_cols}.
pub fn kernel_basis(m: &SparseIntMat) -> Vec<SparseVec> {
    Echelon::from_matrix(m, true).kernel
}

/// Whether `v` lies in the Z-span of the columns of `m`, with a witness `w`
/// satisfying `m·w = v`.
pub fn image_membership(m: &SparseIntMat, v: &SparseVec) -> Option<SparseVec> {
    assert!(v.keys().all(|&i| i < m.n_rows()), "vector longer than column space");
    Echelon::from_matrix(m, true).solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(xs: &[i64]) -> SparseVec {
        xs.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, BigInt::from(x)))
            .collect()
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, _) = hnf(&SparseIntMat::identity(3));
        assert_eq!(h, SparseIntMat::identity(3));
        let (h, u) = hnf(&SparseIntMat::zeros(2, 2));
        assert!(h.is_zero());
        assert_eq!(u.n_cols(), 2);
        assert_eq!(rank(&SparseIntMat::zeros(2, 2)), 0);
    }

    #[test]
    fn hnf_two_by_two() {
        let m = SparseIntMat::from_rows(&[vec![2, 4], vec![0, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(m.mul(&u), h);
        assert_eq!(rank(&m), 2);
        let d = h.to_dense();
        let det = &d[0][0] * &d[1][1] - &d[0][1] * &d[1][0];
        assert_eq!(det.abs(), BigInt::from(6));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&SparseIntMat::from_rows(&[vec![2, 4]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let normalized = if v[&0].is_negative() { scale(v, &-BigInt::one()) } else { v.clone() };
        assert_eq!(normalized, vec_of(&[2, -1]));
        assert!(kernel_basis(&SparseIntMat::identity(4)).is_empty());
    }

    #[test]
    fn membership_examples() {
        let m = SparseIntMat::from_rows(&[vec![2]]);
        assert_eq!(image_membership(&m, &vec_of(&[4])), Some(vec_of(&[2])));
        assert_eq!(image_membership(&m, &vec_of(&[3])), None);
        let d = SparseIntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(image_membership(&d, &vec_of(&[2, 3])), Some(vec_of(&[1, 1])));
    }
}
