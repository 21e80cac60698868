//! Free group words, the truncated group ring via the Magnus expansion, the
//! relator ideal and the △-map from the truncated group ring to ℋₙ.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use intlin::{kernel_basis, snf, subquotient_invariants, AbGroupInvariants, BigInt, SparseIntMat, SparseVec};
use itertools::Itertools;

use crate::complex::{HnPresentation, TwoComplexPresentation};
use crate::error::{ConfError, Result};
use crate::shuffle::{add_coef, mul_coef, BasisIndex, Edge, EdgeAlphabet, HBasisElt, HElement, Pt};

/// A freely reduced word in the edge generators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeGroupWord {
    letters: Vec<(Edge, i8)>,
}

impl FreeGroupWord {
    /// Builds a word, freely reducing it.
    pub fn new(letters: impl IntoIterator<Item = (Edge, i8)>) -> Self {
        let mut out: Vec<(Edge, i8)> = Vec::new();
        for (e, x) in letters {
            assert!(x == 1 || x == -1, "exponents are ±1");
            if out.last() == Some(&(e, -x)) {
                out.pop();
            } else {
                out.push((e, x));
            }
        }
        FreeGroupWord { letters: out }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(e: Edge) -> Self {
        FreeGroupWord { letters: vec![(e, 1)] }
    }

    /// Whitespace-separated tokens such as `a1 a-1 a1^-1`.
    pub fn parse(s: &str, alphabet: &EdgeAlphabet) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (name, ex) = match tok.split_once('^') {
                Some((n, "-1")) => (n, -1),
                Some((n, "1")) => (n, 1),
                Some(_) => return Err(ConfError::Parse(format!("bad exponent in `{tok}`"))),
                None => (tok, 1),
            };
            let e = alphabet.index(name).ok_or_else(|| ConfError::UnknownLetter(name.to_string()))?;
            letters.push((e, ex));
        }
        Ok(Self::new(letters))
    }

    pub fn letters(&self) -> &[(Edge, i8)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        FreeGroupWord {
            letters: self.letters.iter().rev().map(|&(e, x)| (e, -x)).collect(),
        }
    }

    pub fn concat(&self, other: &FreeGroupWord) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).copied())
    }

    /// Image under the endomorphism sending generator `e` to `images[e]`.
    pub fn substitute(&self, images: &[FreeGroupWord]) -> Self {
        let mut out = FreeGroupWord::empty();
        for &(e, x) in &self.letters {
            let w = if x > 0 { images[e].clone() } else { images[e].inverse() };
            out = out.concat(&w);
        }
        out
    }

    pub fn max_edge(&self) -> Option<Edge> {
        self.letters.iter().map(|(e, _)| *e).max()
    }

    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        self.letters
            .iter()
            .map(|&(e, x)| {
                if x > 0 {
                    alphabet.name(e).to_string()
                } else {
                    format!("{}^-1", alphabet.name(e))
                }
            })
            .join(" ")
    }
}

pub type Monomial = Vec<Edge>;

/// Element of the free associative algebra truncated above degree `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncAlgElt {
    n_max: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl TruncAlgElt {
    pub fn zero(n_max: usize) -> Self {
        TruncAlgElt {
            n_max,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_max: usize) -> Self {
        Self::monomial(Vec::new(), 1, n_max)
    }

    pub fn monomial(m: Monomial, c: i64, n_max: usize) -> Self {
        let mut x = Self::zero(n_max);
        x.add_term(m, c);
        x
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn coeff(&self, m: &[Edge]) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 || m.len() > self.n_max {
            return;
        }
        let v = add_coef(self.terms.get(&m).copied().unwrap_or(0), c);
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn plus(&self, other: &TruncAlgElt) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn minus(&self, other: &TruncAlgElt) -> Self {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> Self {
        let mut out = Self::zero(self.n_max);
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), mul_coef(c, v));
        }
        out
    }

    pub fn mul(&self, other: &TruncAlgElt) -> Self {
        let n = self.n_max.min(other.n_max);
        let mut out = Self::zero(n);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if a.len() + b.len() > n {
                    continue;
                }
                let mut m = a.clone();
                m.extend(b);
                out.add_term(m, mul_coef(ca, cb));
            }
        }
        out
    }

    /// Drops monomials longer than `n`.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.n_max, "cannot raise the truncation degree");
        let mut out = Self::zero(n);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mono = |m: &Monomial| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|&e| format!("x_{}", alphabet.name(e))).join("")
            }
        };
        self.terms
            .iter()
            .enumerate()
            .map(|(i, (m, &c))| {
                let sign = if c < 0 { "- " } else if i > 0 { "+ " } else { "" };
                let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
                format!("{sign}{mag}{}", mono(m))
            })
            .join(" ")
    }
}

/// Magnus expansion γ_e ↦ 1 + x_e, γ_e⁻¹ ↦ Σ (−x_e)^k.
pub fn magnus_expand(w: &FreeGroupWord, n_max: usize) -> TruncAlgElt {
    let mut out = TruncAlgElt::one(n_max);
    for &(e, x) in w.letters() {
        let mut f = TruncAlgElt::one(n_max);
        if x > 0 {
            f.add_term(vec![e], 1);
        } else {
            for k in 1..=n_max {
                f.add_term(vec![e; k], if k % 2 == 0 { 1 } else { -1 });
            }
        }
        out = out.mul(&f);
    }
    out
}

pub fn truncate(x: &TruncAlgElt, n: usize) -> TruncAlgElt {
    x.truncate(n)
}

/// Monomials of length `min_len..=n` in `r` symbols, shortlex ordered.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    words: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(r: usize, min_len: usize, n: usize) -> Self {
        let mut words = Vec::new();
        for k in min_len..=n {
            if k == 0 {
                words.push(Vec::new());
                continue;
            }
            words.extend((0..k).map(|_| 0..r).multi_cartesian_product());
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        MonomialBasis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Monomial] {
        &self.words
    }

    pub fn position(&self, m: &[Edge]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `x`; monomials outside the basis must have zero coefficient.
    pub fn vector(&self, x: &TruncAlgElt) -> SparseVec {
        x.terms()
            .iter()
            .map(|(m, &c)| {
                let i = self.position(m).unwrap_or_else(|| panic!("monomial {m:?} outside the basis"));
                (i, BigInt::from(c))
            })
            .collect()
    }

    pub fn element(&self, v: &SparseVec, n_max: usize) -> TruncAlgElt {
        let mut x = TruncAlgElt::zero(n_max);
        for (&i, c) in v {
            x.add_term(self.words[i].clone(), i64::try_from(c).expect("coefficient exceeds 64 bits"));
        }
        x
    }
}

/// Span of m·(expand(ζ)−1)·m′ over all monomials m, m′ — columns in the
/// basis of all monomials of length ≤ n_max in `r` symbols.
pub fn relator_ideal(relators: &[FreeGroupWord], r: usize, n_max: usize) -> SparseIntMat {
    let basis = MonomialBasis::new(r, 0, n_max);
    let mut cols: BTreeSet<Vec<(usize, BigInt)>> = BTreeSet::new();
    for z in relators {
        let rel = magnus_expand(z, n_max).minus(&TruncAlgElt::one(n_max));
        let Some(low) = rel.terms().keys().map(|m| m.len()).min() else { continue };
        for a in 0..=n_max - low {
            for b in 0..=n_max - low - a {
                for m in MonomialBasis::new(r, a, a).words() {
                    for m2 in MonomialBasis::new(r, b, b).words() {
                        let left = TruncAlgElt::monomial(m.clone(), 1, n_max);
                        let right = TruncAlgElt::monomial(m2.clone(), 1, n_max);
                        let x = left.mul(&rel).mul(&right);
                        if !x.is_zero() {
                            cols.insert(basis.vector(&x).into_iter().collect());
                        }
                    }
                }
            }
        }
    }
    SparseIntMat::from_columns(basis.len(), cols.into_iter().map(|c| c.into_iter().collect()).collect())
}

/// Invariants of the truncated free algebra modulo the relator ideal.
pub fn lambda_invariants(relators: &[FreeGroupWord], r: usize, n_max: usize) -> AbGroupInvariants {
    snf(&relator_ideal(relators, r, n_max)).cokernel
}

/// tⁿ-coefficient of ∏ᵢ (△_t(γ_{eᵢ}) − 1): a sum over compositions of n.
pub fn delta_of_monomial(m: &[Edge], n: usize) -> HElement {
    let k = m.len();
    let mut out = HElement::zero_n(n);
    if k == 0 || k > n {
        return out;
    }
    // parts k₁+⋯+k_m = n with kᵢ ≥ 1 ↔ (m−1)-subsets of the n−1 cut points
    for cuts in (1..n).combinations(k - 1) {
        let mut bounds = vec![0];
        bounds.extend(cuts);
        bounds.push(n);
        let mut prod = HElement::one();
        for (i, &e) in m.iter().enumerate() {
            let seq: Vec<Pt> = ((bounds[i] + 1) as Pt..=bounds[i + 1] as Pt).collect();
            prod = prod.times(&HElement::basis(HBasisElt::single(e, seq)));
        }
        out.add_scaled(&prod, 1);
    }
    out
}

/// Matrix of △ⁿ on the monomials of length ≤ n, into ℋₙ(U₁).
pub fn delta_matrix(r: usize, n: usize) -> (MonomialBasis, BasisIndex, SparseIntMat) {
    let monos = MonomialBasis::new(r, 0, n);
    let target = BasisIndex::standard(r, n);
    let cols = monos.words().iter().map(|m| target.vector(&delta_of_monomial(m, n))).collect();
    let mat = SparseIntMat::from_columns(target.len(), cols);
    (monos, target, mat)
}

/// △ⁿ post-composed with ℋₙ(U₁) → ℋₙ(U), in quotient coordinates.
pub fn delta_matrix_to_u(p: &TwoComplexPresentation, n: usize) -> (MonomialBasis, HnPresentation, SparseIntMat) {
    let (monos, _, mat) = delta_matrix(p.alphabet().len(), n);
    let hn = HnPresentation::new(p, n);
    let projected = hn.quotient().project_matrix(&mat);
    (monos, hn, projected)
}

/// The kernel of 𝓘_U|ₙ → ℋₙ(U).
#[derive(Clone, Debug)]
pub struct IcfgKernel {
    pub invariants: AbGroupInvariants,
    /// Generators of the preimage not already in the relator ideal.
    pub generators: Vec<TruncAlgElt>,
}

/// Computes (preimage of 𝒦ₙ under △ⁿ, on the augmentation ideal) modulo the
/// relator ideal.
pub fn icfg_kernel(p: &TwoComplexPresentation, n: usize) -> Result<IcfgKernel> {
    if n == 0 {
        return Err(ConfError::InvalidInput("n must be at least 1".into()));
    }
    let r = p.alphabet().len();
    let aug = MonomialBasis::new(r, 1, n);
    let target = BasisIndex::standard(r, n);
    let k = crate::complex::kernel_generators(p, n, &target);
    let mut stacked = SparseIntMat::zeros(target.len(), 0);
    for m in aug.words() {
        stacked.push_col(target.vector(&delta_of_monomial(m, n)));
    }
    let na = aug.len();
    let stacked = stacked.hcat(&k);
    let preimage: Vec<SparseVec> = kernel_basis(&stacked)
        .into_iter()
        .map(|v| v.into_iter().filter(|(i, _)| *i < na).collect::<SparseVec>())
        .filter(|v| !v.is_empty())
        .collect();
    let preimage = SparseIntMat::from_columns(na, preimage);
    let full = MonomialBasis::new(r, 0, n);
    let ideal = relator_ideal(p.relators(), r, n);
    let ideal_cols: Vec<SparseVec> = ideal
        .columns()
        .iter()
        .map(|c| {
            c.iter()
                .map(|(&i, v)| {
                    let m = &full.words()[i];
                    assert!(!m.is_empty(), "relator ideal meets the constants");
                    (aug.position(m).expect("monomial in range"), v.clone())
                })
                .collect()
        })
        .collect();
    let ideal = SparseIntMat::from_columns(na, ideal_cols);
    let invariants = subquotient_invariants(&preimage, &ideal)?;
    let ideal_span = intlin::Echelon::from_matrix(&ideal, false);
    let generators = preimage
        .columns()
        .iter()
        .filter(|c| !ideal_span.contains(c))
        .map(|c| aug.element(c, n))
        .collect();
    Ok(IcfgKernel { invariants, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> EdgeAlphabet {
        EdgeAlphabet::surface(1, 0)
    }

    #[test]
    fn parse_and_reduce() {
        let al = alphabet();
        let w = FreeGroupWord::parse("a1 a-1 a-1^-1 a1^-1", &al).unwrap();
        assert!(w.is_empty());
        let w = FreeGroupWord::parse("a1 a-1 a1^-1 a-1^-1", &al).unwrap();
        assert_eq!(w.render(&al), "a1 a-1 a1^-1 a-1^-1");
        assert_eq!(FreeGroupWord::parse("c1", &al), Err(ConfError::UnknownLetter("c1".into())));
    }

    #[test]
    fn expansions() {
        let g = FreeGroupWord::generator(0);
        let mut want = TruncAlgElt::one(2);
        want.add_term(vec![0], 1);
        assert_eq!(magnus_expand(&g, 2), want);
        let mut want = TruncAlgElt::one(2);
        want.add_term(vec![0], -1);
        want.add_term(vec![0, 0], 1);
        assert_eq!(magnus_expand(&g.inverse(), 2), want);
    }

    #[test]
    fn truncation() {
        let mut x = TruncAlgElt::one(2);
        x.add_term(vec![0], 1);
        x.add_term(vec![0, 0], 1);
        let mut want = TruncAlgElt::one(1);
        want.add_term(vec![0], 1);
        assert_eq!(truncate(&x, 1), want);
        assert_eq!(truncate(&x, 2), x);
    }

    #[test]
    fn ideal_examples() {
        let single = relator_ideal(&[FreeGroupWord::generator(0)], 1, 1);
        assert_eq!(single.n_cols(), 1);
        assert_eq!(relator_ideal(&[], 2, 3).n_cols(), 0);
        assert_eq!(lambda_invariants(&[], 2, 2), AbGroupInvariants::free(7));
        assert_eq!(lambda_invariants(&[FreeGroupWord::generator(0)], 1, 3), AbGroupInvariants::free(1));
    }

    #[test]
    fn delta_of_short_monomials() {
        let x = delta_of_monomial(&[0], 3);
        assert_eq!(x, HElement::basis(HBasisElt::single(0, vec![1, 2, 3])));
        assert!(delta_of_monomial(&[0, 1, 0], 2).is_zero());
        let xy = delta_of_monomial(&[0, 1], 2);
        let want = HElement::basis(HBasisElt::single(0, vec![1])).times(&HElement::basis(HBasisElt::single(1, vec![2])));
        assert_eq!(xy, want);
    }
}
