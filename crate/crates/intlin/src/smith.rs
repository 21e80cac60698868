use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::invariants::AbGroupInvariants;
use crate::matrix::{axpy, SparseIntMat, SparseVec};

/// Smith form data of a matrix `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Invariant factors s₁ | s₂ | … | s_r, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// Cokernel Z^{n_rows} / im(m).
    pub cokernel: AbGroupInvariants,
}

pub fn snf(m: &SparseIntMat) -> Smith {
    let (units, rest) = eliminate_units(m);
    let mut d = DenseSmith::new(rest, false);
    d.run();
    let mut diagonal = vec![BigInt::one(); units];
    diagonal.extend(d.diagonal());
    let rank = diagonal.len();
    let torsion = diagonal.iter().filter(|x| !x.is_one()).cloned().collect();
    Smith {
        diagonal,
        rank,
        cokernel: AbGroupInvariants::new(m.n_rows() - rank, torsion),
    }
}

/// Rank of `m` (via the unit-pivot elimination followed by dense Smith).
pub fn snf_rank(m: &SparseIntMat) -> usize {
    snf(m).rank
}

/// Repeatedly pivots on ±1 entries (Schur complement with a unit pivot
/// preserves the invariants apart from one factor 1). Returns the number of
/// pivots taken and the remaining nonzero block as a dense matrix.
fn eliminate_units(m: &SparseIntMat) -> (usize, Vec<Vec<BigInt>>) {
    let n_rows = m.n_rows();
    let mut cols: Vec<SparseVec> = m.columns().to_vec();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            rows[i].insert(j);
        }
    }
    let mut units = 0usize;
    loop {
        let mut order: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| cols[j].len());
        let mut progressed = false;
        for j in order {
            let pivot = cols[j]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&i, _)| i)
                .min_by_key(|&i| rows[i].len());
            let Some(r) = pivot else { continue };
            let u = cols[j][&r].clone();
            let pivot_col = std::mem::take(&mut cols[j]);
            for &i in pivot_col.keys() {
                rows[i].remove(&j);
            }
            let others: Vec<usize> = rows[r].iter().copied().collect();
            for c in others {
                let f = -(&cols[c][&r] * &u);
                axpy(&mut cols[c], &f, &pivot_col);
                for &i in pivot_col.keys() {
                    if cols[c].contains_key(&i) {
                        rows[i].insert(c);
                    } else {
                        rows[i].remove(&c);
                    }
                }
            }
            debug_assert!(rows[r].is_empty());
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let live_rows: Vec<usize> = (0..n_rows).filter(|&i| !rows[i].is_empty()).collect();
    let row_pos: std::collections::HashMap<usize, usize> = live_rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (q, &j) in live_cols.iter().enumerate() {
        for (i, v) in &cols[j] {
            dense[row_pos[i]][q] = v.clone();
        }
    }
    (units, dense)
}

/// Dense Smith reduction with minimal-absolute-value pivoting. Optionally
/// records the left transform `p` with `p·a·q = diag`.
pub(crate) struct DenseSmith {
    a: Vec<Vec<BigInt>>,
    p: Option<Vec<Vec<BigInt>>>,
    /// inverse of `p`, kept in step with it
    pinv: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
    done: usize,
}

impl DenseSmith {
    pub(crate) fn new(a: Vec<Vec<BigInt>>, track_left: bool) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let p = track_left.then(|| {
            (0..rows)
                .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
                .collect()
        });
        let pinv = p.clone();
        DenseSmith { a, p, pinv, rows, cols, done: 0 }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(p) = &mut self.p {
                p.swap(i, j);
            }
            if let Some(q) = &mut self.pinv {
                for row in q {
                    row.swap(i, j);
                }
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
        }
    }

    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: &BigInt) {
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x += f * y;
            }
        }
        if let Some(p) = &mut self.p {
            let src = p[j].clone();
            for (x, y) in p[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += f * y;
                }
            }
        }
        if let Some(q) = &mut self.pinv {
            for row in q {
                if !row[i].is_zero() {
                    let d = f * &row[i];
                    row[j] -= d;
                }
            }
        }
    }

    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: &BigInt) {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let d = f * &row[j];
                row[i] += d;
            }
        }
    }

    fn min_abs_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    pub(crate) fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.min_abs_in(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    self.repivot_cross(t);
                    continue;
                }
                let piv = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&piv)));
                match bad {
                    Some(i) => {
                        self.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        self.done = t;
    }

    /// Moves the smallest nonzero entry of row t / column t to (t, t).
    fn repivot_cross(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t..self.rows {
            let x = &self.a[i][t];
            if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                best = (i, t);
            }
        }
        for j in t..self.cols {
            let x = &self.a[t][j];
            if !x.is_zero() && x.abs() < self.a[best.0][best.1].abs() {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -std::mem::take(x);
        }
        if let Some(p) = &mut self.p {
            for x in &mut p[t] {
                *x = -std::mem::take(x);
            }
        }
        if let Some(q) = &mut self.pinv {
            for row in q {
                row[t] = -std::mem::take(&mut row[t]);
            }
        }
    }

    pub(crate) fn diagonal(&self) -> Vec<BigInt> {
        (0..self.done).map(|t| self.a[t][t].clone()).collect()
    }

    pub(crate) fn left(&self) -> &Vec<Vec<BigInt>> {
        self.p.as_ref().expect("left transform not tracked")
    }

    pub(crate) fn left_inverse(&self) -> &Vec<Vec<BigInt>> {
        self.pinv.as_ref().expect("left transform not tracked")
    }
}
