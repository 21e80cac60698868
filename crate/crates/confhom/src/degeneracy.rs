//! Degeneracy maps ∂_ij: collide points i and j.

use intlin::SparseIntMat;
use rayon::prelude::*;

use crate::complex::{descend, generates, HnPresentation, TwoComplexPresentation};
use crate::error::{ConfError, Result};
use crate::shuffle::{BasisIndex, HBasisElt, HElement, Pt};

fn check_pair(x: &HElement, i: Pt, j: Pt) -> Result<()> {
    if i == j {
        return Err(ConfError::InvalidInput(format!("degeneracy needs two distinct points, got {i} twice")));
    }
    for p in [i, j] {
        if x.points().binary_search(&p).is_err() {
            return Err(ConfError::InvalidInput(format!("point {p} is not in the configuration")));
        }
    }
    Ok(())
}

/// ∂_ij on a basis element, keeping the labels: the merged point is
/// min(i, j), max(i, j) disappears.
pub fn degeneracy_basis(b: &HBasisElt, i: Pt, j: Pt) -> Option<(HBasisElt, i64)> {
    let (keep, drop) = (i.min(j), i.max(j));
    let mut offset = 0usize;
    for (fi, (_, seq)) in b.fibers().iter().enumerate() {
        if let Some(pos) = seq.iter().position(|&p| p == i || p == j) {
            if seq.get(pos + 1).is_none_or(|&q| q != i + j - seq[pos]) {
                return None;
            }
            let mut fibers = b.fibers().to_vec();
            let s = &mut fibers[fi].1;
            s[pos] = keep;
            s.remove(pos + 1);
            debug_assert!(!s.contains(&drop));
            let sign = if (offset + pos).is_multiple_of(2) { 1 } else { -1 };
            return Some((HBasisElt::from_fibers(fibers).expect("disjoint"), sign));
        }
        offset += seq.len();
    }
    None
}

/// ∂_ij with raw labels (the point set loses max(i, j)).
pub fn degeneracy_raw(x: &HElement, i: Pt, j: Pt) -> Result<HElement> {
    check_pair(x, i, j)?;
    let drop = i.max(j);
    let mut out = HElement::zero(x.points().iter().copied().filter(|&p| p != drop).collect());
    for (b, &c) in x.terms() {
        if let Some((nb, s)) = degeneracy_basis(b, i, j) {
            out.add_term(nb, c * s);
        }
    }
    Ok(out)
}

/// Order-preserving relabeling of the point set onto {1..m}.
pub fn normalize(x: &HElement) -> HElement {
    let pts = x.points().to_vec();
    x.relabel(|p| pts.binary_search(&p).expect("point of x") as Pt + 1)
}

/// ∂_ij followed by renormalizing labels to {1..n−1}.
pub fn degeneracy(x: &HElement, i: Pt, j: Pt) -> Result<HElement> {
    Ok(normalize(&degeneracy_raw(x, i, j)?))
}

/// ∂_{k,k+1}∘⋯∘∂_{n−1,n} on an element over {1..n}.
pub fn iterated_degeneracy(x: &HElement, k: usize) -> Result<HElement> {
    let n = x.n_points();
    if k == 0 || k > n {
        return Err(ConfError::InvalidInput(format!("target size {k} must lie in 1..={n}")));
    }
    let mut y = normalize(x);
    for m in (k + 1..=n).rev() {
        y = degeneracy_raw(&y, m as Pt - 1, m as Pt)?;
    }
    Ok(y)
}

/// Matrix of ∂_ij from ℋₙ(U₁) to ℋ_{n−1}(U₁) on the standard bases.
pub fn degeneracy_matrix(src: &BasisIndex, dst: &BasisIndex, i: Pt, j: Pt) -> Result<SparseIntMat> {
    let cols = src
        .elts()
        .par_iter()
        .map(|b| degeneracy(&HElement::basis(b.clone()), i, j).map(|y| dst.vector(&y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseIntMat::from_columns(dst.len(), cols))
}

/// The induced map ℋₙ(U) → ℋ_{n−1}(U).
#[derive(Clone, Debug)]
pub struct QuotientDegeneracy {
    pub matrix: SparseIntMat,
    pub surjective: bool,
}

pub fn degeneracy_on_quotient(p: &TwoComplexPresentation, n: usize, i: Pt, j: Pt) -> Result<QuotientDegeneracy> {
    if n < 2 {
        return Err(ConfError::InvalidInput("degeneracy needs n ≥ 2".into()));
    }
    let src = HnPresentation::new(p, n);
    let dst = HnPresentation::new(p, n - 1);
    let m = degeneracy_matrix(src.basis(), dst.basis(), i, j)?;
    let matrix = descend(&src, &dst, &m)?;
    let surjective = generates(&dst, &matrix);
    Ok(QuotientDegeneracy { matrix, surjective })
}
