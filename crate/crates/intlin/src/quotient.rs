use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::echelon::Echelon;
use crate::invariants::AbGroupInvariants;
use crate::matrix::{axpy, SparseIntMat, SparseVec};
use crate::smith::{snf, DenseSmith};
use crate::IntLinError;

/// The quotient Z^d / K together with an explicit projection onto
/// coordinates Z^r ⊕ ⊕ Z/dᵢ.
///
/// Generators of K with a unit pivot are eliminated sparsely; only the
/// leftover lattice goes through a dense Smith reduction with transform.
#[derive(Clone, Debug)]
pub struct Quotient {
    dim: usize,
    units: Echelon,
    residual_rows: Vec<usize>,
    residual_pos: Vec<Option<usize>>,
    /// Rows of the left Smith transform that survive, with their modulus
    /// (`None` for free coordinates).
    coords: Vec<(Vec<BigInt>, Option<BigInt>)>,
    /// Columns of the inverse transform matching `coords`.
    sections: Vec<Vec<BigInt>>,
    invariants: AbGroupInvariants,
}

impl Quotient {
    pub fn new(gens: &SparseIntMat) -> Self {
        let dim = gens.n_rows();
        let full = Echelon::from_matrix(gens, false);
        let mut units = Echelon::new(dim, false);
        let mut rest = Vec::new();
        for (p, k) in full.pivot_rows() {
            let c = &full.columns()[k];
            if c[&p].abs().is_one() {
                units.insert(c.clone());
            } else {
                rest.push(c.clone());
            }
        }
        let unit_rows: std::collections::BTreeSet<usize> = units.pivot_rows().map(|(p, _)| p).collect();
        let residual_rows: Vec<usize> = (0..dim).filter(|i| !unit_rows.contains(i)).collect();
        let mut residual_pos = vec![None; dim];
        for (q, &i) in residual_rows.iter().enumerate() {
            residual_pos[i] = Some(q);
        }
        let m = residual_rows.len();
        let mut dense = vec![vec![BigInt::zero(); rest.len()]; m];
        for (j, c) in rest.iter().enumerate() {
            let red = units.reduce(c).remainder;
            for (i, v) in red {
                let q = residual_pos[i].expect("unit rows are cleared by reduction");
                dense[q][j] = v;
            }
        }
        let mut ds = DenseSmith::new(dense, true);
        ds.run();
        let diag = ds.diagonal();
        let left = ds.left();
        let inv = ds.left_inverse();
        let mut coords = Vec::new();
        let mut torsion = Vec::new();
        for (q, row) in left.iter().enumerate() {
            match diag.get(q) {
                Some(d) if d.is_one() => {}
                Some(d) => {
                    torsion.push(d.clone());
                    coords.push((row.clone(), Some(d.clone()), q));
                }
                None => coords.push((row.clone(), None, q)),
            }
        }
        let free = m - diag.len();
        // keep torsion coordinates first, matching the printed invariant order
        coords.sort_by_key(|(_, d, _)| d.is_none());
        let sections = coords.iter().map(|(_, _, q)| inv.iter().map(|r| r[*q].clone()).collect()).collect();
        let coords = coords.into_iter().map(|(r, d, _)| (r, d)).collect();
        Quotient {
            dim,
            units,
            residual_rows,
            residual_pos,
            coords,
            sections,
            invariants: AbGroupInvariants::new(free, torsion),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn invariants(&self) -> &AbGroupInvariants {
        &self.invariants
    }

    /// Number of output coordinates (= free rank + number of torsion factors).
    pub fn n_coords(&self) -> usize {
        self.coords.len()
    }

    pub fn moduli(&self) -> Vec<Option<BigInt>> {
        self.coords.iter().map(|(_, d)| d.clone()).collect()
    }

    /// Image of `v` in the quotient; torsion coordinates are reduced into
    /// `[0, dᵢ)`.
    pub fn project(&self, v: &SparseVec) -> Vec<BigInt> {
        let red = self.units.reduce(v).remainder;
        let mut w = vec![BigInt::zero(); self.residual_rows.len()];
        for (i, x) in red {
            w[self.residual_pos[i].expect("unit rows are cleared by reduction")] = x;
        }
        self.coords
            .iter()
            .map(|(row, d)| {
                let mut s = BigInt::zero();
                for (a, b) in row.iter().zip(&w) {
                    if !b.is_zero() {
                        s += a * b;
                    }
                }
                match d {
                    Some(d) => s.mod_floor(d),
                    None => s,
                }
            })
            .collect()
    }

    /// A vector of Z^d whose image is the given coordinate vector.
    pub fn lift(&self, coords: &[BigInt]) -> SparseVec {
        assert_eq!(coords.len(), self.coords.len());
        let mut out = SparseVec::new();
        for (c, s) in coords.iter().zip(&self.sections) {
            if c.is_zero() {
                continue;
            }
            for (q, x) in s.iter().enumerate() {
                if !x.is_zero() {
                    let e = out.entry(self.residual_rows[q]).or_insert_with(BigInt::zero);
                    *e += c * x;
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn is_zero(&self, v: &SparseVec) -> bool {
        self.project(v).iter().all(|x| x.is_zero())
    }

    /// Matrix of the composite Z^k → Z^d → quotient for the columns of `m`.
    pub fn project_matrix(&self, m: &SparseIntMat) -> SparseIntMat {
        assert_eq!(m.n_rows(), self.dim);
        let cols = m
            .columns()
            .iter()
            .map(|c| self.project(c).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SparseIntMat::from_columns(self.n_coords(), cols)
    }
}

/// Invariants of span(a) / span(b) for column spans in a common Z^d.
pub fn subquotient_invariants(a: &SparseIntMat, b: &SparseIntMat) -> Result<AbGroupInvariants, IntLinError> {
    if a.n_rows() != b.n_rows() {
        return Err(IntLinError::DimensionMismatch(a.n_rows(), b.n_rows()));
    }
    let ea = Echelon::from_matrix(a, false);
    let k = ea.rank();
    let mut coords = Vec::with_capacity(b.n_cols());
    for c in b.columns() {
        let red = ea.reduce(c);
        if !red.remainder.is_empty() {
            return Err(IntLinError::NotSubgroup);
        }
        coords.push(red.coeffs);
    }
    Ok(snf(&SparseIntMat::from_columns(k, coords)).cokernel)
}

/// Span of the given vectors as a matrix with `dim` rows.
pub fn span_matrix(dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> SparseIntMat {
    let mut m = SparseIntMat::zeros(dim, 0);
    for v in vecs {
        m.push_col(v);
    }
    m
}

/// `Σ cᵢ·vᵢ` convenience used when assembling spans.
pub fn combine(terms: &[(BigInt, &SparseVec)]) -> SparseVec {
    let mut out = SparseVec::new();
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        xs.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, BigInt::from(x)))
            .collect()
    }

    #[test]
    fn subquotient_examples() {
        let z2 = SparseIntMat::identity(2);
        let b = SparseIntMat::from_rows(&[vec![2], vec![0]]);
        let g = subquotient_invariants(&z2, &b).unwrap();
        assert_eq!(g, AbGroupInvariants::new(1, vec![BigInt::from(2)]));
        assert!(subquotient_invariants(&z2, &z2).unwrap().is_trivial());
        let a = SparseIntMat::from_rows(&[vec![1, 1], vec![1, -1]]);
        let b = SparseIntMat::from_rows(&[vec![2, 0], vec![0, 2]]);
        let g = subquotient_invariants(&a, &b).unwrap();
        assert_eq!(g, AbGroupInvariants::new(0, vec![BigInt::from(2)]));
    }

    #[test]
    fn containment_violation() {
        let a = SparseIntMat::from_rows(&[vec![2], vec![0]]);
        let b = SparseIntMat::identity(2);
        let err = subquotient_invariants(&a, &b).unwrap_err();
        assert_eq!(err.to_string(), "not a subgroup");
    }

    #[test]
    fn quotient_projection() {
        // K spanned by (1,1,0), (0,2,4): Z^3/K = Z ⊕ Z/2
        let k = SparseIntMat::from_rows(&[vec![1, 0], vec![1, 2], vec![0, 4]]);
        let q = Quotient::new(&k);
        assert_eq!(q.invariants(), &AbGroupInvariants::new(1, vec![BigInt::from(2)]));
        assert!(q.is_zero(&v(&[1, 1, 0])));
        assert!(q.is_zero(&v(&[0, 2, 4])));
        assert!(!q.is_zero(&v(&[0, 1, 2])));
        assert!(q.is_zero(&v(&[0, 4, 8])));
        assert!(!q.is_zero(&v(&[0, 0, 1])));
        // linearity of the projection
        let (x, y) = (v(&[3, -1, 5]), v(&[0, 7, 2]));
        let sum = combine(&[(BigInt::one(), &x), (BigInt::one(), &y)]);
        let (px, py, ps) = (q.project(&x), q.project(&y), q.project(&sum));
        for (i, d) in q.moduli().iter().enumerate() {
            let s = &px[i] + &py[i];
            match d {
                Some(d) => assert_eq!(s.mod_floor(d), ps[i]),
                None => assert_eq!(s, ps[i]),
            }
        }
        // lifts are sections of the projection
        for i in 0..q.n_coords() {
            let mut e = vec![BigInt::zero(); q.n_coords()];
            e[i] = BigInt::one();
            assert_eq!(q.project(&q.lift(&e)), e);
        }
    }
}
