//! The shuffle algebra ℋ(U₁) of a wedge of circles, its Künneth product and
//! truncated generating series.
//!
//! A basis element places every point on one edge and orders each edge's
//! fiber. Its canonical word lists the fibers in alphabet order; all signs
//! are permutation signs relative to canonical words.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use intlin::{BigInt, SparseVec};
use itertools::Itertools;

use crate::error::{ConfError, Result};
use crate::magnus::FreeGroupWord;

pub type Pt = u32;
pub type Edge = usize;

pub(crate) fn add_coef(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

pub(crate) fn mul_coef(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Ordered list of oriented 1-cell names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeAlphabet {
    names: Vec<String>,
}

impl EdgeAlphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(d) = names.iter().duplicates().next() {
            return Err(ConfError::InvalidInput(format!("duplicate edge name `{d}`")));
        }
        if let Some(bad) = names.iter().find(|s| s.is_empty() || s.contains(char::is_whitespace) || s.contains('^')) {
            return Err(ConfError::InvalidInput(format!("bad edge name `{bad}`")));
        }
        Ok(EdgeAlphabet { names })
    }

    /// `a1, a-1, …, ag, a-g, b1, …, bl`.
    pub fn surface(g: usize, l: usize) -> Self {
        let mut names = Vec::with_capacity(2 * g + l);
        for i in 1..=g {
            names.push(format!("a{i}"));
            names.push(format!("a-{i}"));
        }
        for j in 1..=l {
            names.push(format!("b{j}"));
        }
        EdgeAlphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Edge) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Edge> {
        self.names.iter().position(|n| n == name)
    }
}

/// Basis element of ℋ_N(U₁): per used edge, the ordered fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HBasisElt {
    fibers: Vec<(Edge, Vec<Pt>)>,
}

impl HBasisElt {
    pub fn empty() -> Self {
        HBasisElt { fibers: Vec::new() }
    }

    /// △^{seq} on a single edge.
    pub fn single(e: Edge, seq: Vec<Pt>) -> Self {
        if seq.is_empty() {
            return Self::empty();
        }
        HBasisElt { fibers: vec![(e, seq)] }
    }

    pub fn from_fibers(mut fibers: Vec<(Edge, Vec<Pt>)>) -> Result<Self> {
        fibers.retain(|(_, s)| !s.is_empty());
        fibers.sort_by_key(|(e, _)| *e);
        if fibers.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ConfError::InvalidInput("edge listed twice".into()));
        }
        let pts: Vec<Pt> = fibers.iter().flat_map(|(_, s)| s.iter().copied()).collect();
        if pts.iter().duplicates().next().is_some() {
            return Err(ConfError::OverlappingPoints);
        }
        Ok(HBasisElt { fibers })
    }

    pub fn fibers(&self) -> &[(Edge, Vec<Pt>)] {
        &self.fibers
    }

    pub fn word(&self) -> Vec<Pt> {
        self.fibers.iter().flat_map(|(_, s)| s.iter().copied()).collect()
    }

    pub fn n_points(&self) -> usize {
        self.fibers.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn points(&self) -> Vec<Pt> {
        let mut p = self.word();
        p.sort_unstable();
        p
    }

    pub fn edge_of(&self, p: Pt) -> Option<Edge> {
        self.fibers.iter().find(|(_, s)| s.contains(&p)).map(|(e, _)| *e)
    }

    pub fn relabel(&self, f: impl Fn(Pt) -> Pt) -> Self {
        HBasisElt {
            fibers: self.fibers.iter().map(|(e, s)| (*e, s.iter().map(|&p| f(p)).collect())).collect(),
        }
    }

    /// `a1:(3,1)|b1:(2)`; the empty element renders as `()`.
    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        if self.fibers.is_empty() {
            return "()".into();
        }
        self.fibers
            .iter()
            .map(|(e, s)| format!("{}:({})", alphabet.name(*e), s.iter().join(",")))
            .join("|")
    }
}

/// Sign of the permutation carrying the sequence `from` onto `to`.
pub fn perm_sign(from: &[Pt], to: &[Pt]) -> i64 {
    debug_assert_eq!(from.len(), to.len());
    let pos: HashMap<Pt, usize> = from.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let idx: Vec<usize> = to.iter().map(|p| pos[p]).collect();
    let mut inv = 0usize;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] > idx[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All interleavings of `a` and `b` preserving both orders.
pub(crate) fn shuffles(a: &[Pt], b: &[Pt]) -> Vec<Vec<Pt>> {
    let n = a.len() + b.len();
    (0..n)
        .combinations(a.len())
        .map(|slots| {
            let mut out = Vec::with_capacity(n);
            let (mut i, mut j) = (0, 0);
            for k in 0..n {
                if i < slots.len() && slots[i] == k {
                    out.push(a[i]);
                    i += 1;
                } else {
                    out.push(b[j]);
                    j += 1;
                }
            }
            out
        })
        .collect()
}

/// Künneth product of two basis elements on disjoint point sets.
pub fn shuffle_basis(x: &HBasisElt, y: &HBasisElt) -> Vec<(HBasisElt, i64)> {
    let mut edges: Vec<Edge> = x.fibers.iter().chain(&y.fibers).map(|(e, _)| *e).collect();
    edges.sort_unstable();
    edges.dedup();
    if edges.is_empty() {
        return vec![(HBasisElt::empty(), 1)];
    }
    let empty: Vec<Pt> = Vec::new();
    let fiber = |b: &HBasisElt, e: Edge| -> Vec<Pt> {
        b.fibers.iter().find(|(f, _)| *f == e).map_or_else(|| empty.clone(), |(_, s)| s.clone())
    };
    let per_edge: Vec<Vec<Vec<Pt>>> = edges.iter().map(|&e| shuffles(&fiber(x, e), &fiber(y, e))).collect();
    let mut concat = x.word();
    concat.extend(y.word());
    per_edge
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let b = HBasisElt {
                fibers: edges.iter().copied().zip(choice).collect(),
            };
            let s = perm_sign(&concat, &b.word());
            (b, s)
        })
        .collect()
}

/// Integer combination of basis elements on a common point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HElement {
    points: Vec<Pt>,
    terms: BTreeMap<HBasisElt, i64>,
}

impl HElement {
    pub fn zero(mut points: Vec<Pt>) -> Self {
        points.sort_unstable();
        points.dedup();
        HElement {
            points,
            terms: BTreeMap::new(),
        }
    }

    /// Zero element on {1..n}.
    pub fn zero_n(n: usize) -> Self {
        Self::zero((1..=n as Pt).collect())
    }

    pub fn basis(b: HBasisElt) -> Self {
        let mut x = Self::zero(b.points());
        x.terms.insert(b, 1);
        x
    }

    /// The unit: the empty basis element on the empty set.
    pub fn one() -> Self {
        Self::basis(HBasisElt::empty())
    }

    pub fn points(&self) -> &[Pt] {
        &self.points
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn terms(&self) -> &BTreeMap<HBasisElt, i64> {
        &self.terms
    }

    pub fn coeff(&self, b: &HBasisElt) -> i64 {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: HBasisElt, c: i64) {
        debug_assert_eq!(b.points(), self.points, "term on a different point set");
        if c == 0 {
            return;
        }
        match self.terms.entry(b) {
            Entry::Occupied(mut o) => {
                let v = add_coef(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HElement, c: i64) {
        assert_eq!(self.points, other.points, "adding elements on different point sets");
        for (b, &v) in &other.terms {
            self.add_term(b.clone(), mul_coef(c, v));
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        let mut out = Self::zero(self.points.clone());
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &HElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &HElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    /// Applies an injective relabeling of points.
    pub fn relabel(&self, f: impl Fn(Pt) -> Pt) -> Self {
        let mut out = Self::zero(self.points.iter().map(|&p| f(p)).collect());
        for (b, &c) in &self.terms {
            out.add_term(b.relabel(&f), c);
        }
        out
    }

    pub fn shift(&self, k: Pt) -> Self {
        self.relabel(|p| p + k)
    }

    /// Relabels points `1..=m` by `seq[i-1]`.
    pub fn place_on(&self, seq: &[Pt]) -> Self {
        assert_eq!(self.points.len(), seq.len());
        self.relabel(|p| seq[(p - 1) as usize])
    }

    /// Signed Eilenberg–Zilber product.
    pub fn shuffle_product(&self, other: &HElement) -> Result<HElement> {
        if self.points.iter().any(|p| other.points.binary_search(p).is_ok()) {
            return Err(ConfError::OverlappingPoints);
        }
        let mut pts = self.points.clone();
        pts.extend(&other.points);
        let mut out = HElement::zero(pts);
        for (bx, &cx) in &self.terms {
            for (by, &cy) in &other.terms {
                let c = mul_coef(cx, cy);
                for (b, s) in shuffle_basis(bx, by) {
                    out.add_term(b, mul_coef(c, s));
                }
            }
        }
        Ok(out)
    }

    /// Product for callers that guarantee disjointness.
    pub fn times(&self, other: &HElement) -> HElement {
        self.shuffle_product(other).expect("factors on overlapping point sets")
    }

    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (b, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
            s.push_str(&format!("{sep}{sign}{mag}[{}]", b.render(alphabet)));
        }
        s
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.terms.keys().flat_map(|b| b.fibers.iter().map(|(e, _)| e + 1)).max().unwrap_or(0))
            .map(|e| format!("e{e}"))
            .collect();
        let alphabet = EdgeAlphabet { names };
        f.write_str(&self.render(&alphabet))
    }
}

/// Truncated series Σ_k x_k t^k with x_k ∈ ℋ_k(U₁) on {1..k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    n_max: usize,
    constant: i64,
    comps: Vec<HElement>,
}

impl HSeries {
    pub fn scalar(c: i64, n_max: usize) -> Self {
        HSeries {
            n_max,
            constant: c,
            comps: (1..=n_max).map(HElement::zero_n).collect(),
        }
    }

    pub fn one(n_max: usize) -> Self {
        Self::scalar(1, n_max)
    }

    /// △_t(γ_e) = 1 + Σ_k △^{(1..k)}_e t^k.
    pub fn generator(e: Edge, n_max: usize) -> Self {
        let mut s = Self::one(n_max);
        for k in 1..=n_max {
            s.comps[k - 1] = HElement::basis(HBasisElt::single(e, (1..=k as Pt).collect()));
        }
        s
    }

    pub fn from_parts(constant: i64, comps: Vec<HElement>) -> Self {
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(c.points(), (1..=(i + 1) as Pt).collect::<Vec<_>>().as_slice());
        }
        HSeries {
            n_max: comps.len(),
            constant,
            comps,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// Degree-k component (k ≥ 1), or the constant as a multiple of the unit for k = 0.
    pub fn component(&self, k: usize) -> HElement {
        if k == 0 {
            return HElement::one().scaled(self.constant);
        }
        self.comps.get(k - 1).cloned().unwrap_or_else(|| HElement::zero_n(k))
    }

    pub fn components(&self) -> &[HElement] {
        &self.comps
    }

    pub fn minus_constant(&self) -> Self {
        HSeries {
            constant: 0,
            ..self.clone()
        }
    }

    /// Cauchy product with the order-sum identification [i] ⊔ [j] ≅ [i+j].
    pub fn mul(&self, other: &HSeries) -> HSeries {
        assert_eq!(self.n_max, other.n_max, "series truncated at different degrees");
        let n = self.n_max;
        let mut out = HSeries::scalar(mul_coef(self.constant, other.constant), n);
        for k in 1..=n {
            let mut acc = HElement::zero_n(k);
            acc.add_scaled(&self.comps[k - 1], other.constant);
            acc.add_scaled(&other.comps[k - 1], self.constant);
            for i in 1..k {
                let (a, b) = (&self.comps[i - 1], &other.comps[k - i - 1]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc.add_scaled(&a.times(&b.shift(i as Pt)), 1);
            }
            out.comps[k - 1] = acc;
        }
        out
    }

    pub fn inverse(&self) -> Result<HSeries> {
        let c0 = self.constant;
        if c0.abs() != 1 {
            return Err(ConfError::NonUnitConstant(c0));
        }
        let n = self.n_max;
        let mut inv = HSeries::scalar(c0, n);
        for m in 1..=n {
            let mut acc = HElement::zero_n(m);
            for k in 1..=m {
                let s = &self.comps[k - 1];
                if s.is_zero() {
                    continue;
                }
                let b = inv.component(m - k);
                acc.add_scaled(&s.times(&b.shift(k as Pt)), 1);
            }
            inv.comps[m - 1] = acc.scaled(-c0);
        }
        Ok(inv)
    }

    pub fn truncate(&self, n: usize) -> HSeries {
        assert!(n <= self.n_max);
        HSeries {
            n_max: n,
            constant: self.constant,
            comps: self.comps[..n].to_vec(),
        }
    }
}

/// Image of a free-group word under the series homomorphism.
pub fn delta_of_word(w: &FreeGroupWord, n_max: usize) -> HSeries {
    let mut s = HSeries::one(n_max);
    for &(e, ex) in w.letters() {
        let g = HSeries::generator(e, n_max);
        let g = if ex > 0 { g } else { g.inverse().expect("generator series has unit constant") };
        s = s.mul(&g);
    }
    s
}

/// All basis elements of ℋ(U₁) on the given points with `r` edges, in
/// lexicographic order of canonical words (ties broken by edge labels).
pub fn basis_on(points: &[Pt], r: usize) -> Vec<HBasisElt> {
    let n = points.len();
    if n == 0 {
        return vec![HBasisElt::empty()];
    }
    let mut out = Vec::new();
    for labels in (0..n).map(|_| 0..r).multi_cartesian_product() {
        let mut fib: BTreeMap<Edge, Vec<Pt>> = BTreeMap::new();
        for (&p, &e) in points.iter().zip(&labels) {
            fib.entry(e).or_default().push(p);
        }
        let edges: Vec<Edge> = fib.keys().copied().collect();
        let orders: Vec<Vec<Vec<Pt>>> = fib
            .values()
            .map(|pts| pts.iter().copied().permutations(pts.len()).collect())
            .collect();
        for choice in orders.into_iter().multi_cartesian_product() {
            out.push(HBasisElt {
                fibers: edges.iter().copied().zip(choice).collect(),
            });
        }
    }
    out.sort_by_cached_key(|b| (b.word(), b.clone()));
    out
}

/// Basis of ℋ_n(U₁) on {1..n}; its size is n!·C(n+r−1, n).
pub fn basis_enumerate(r: usize, n: usize) -> Vec<HBasisElt> {
    basis_on(&(1..=n as Pt).collect::<Vec<_>>(), r)
}

/// A fixed basis with coordinate lookup.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    elts: Vec<HBasisElt>,
    index: HashMap<HBasisElt, usize>,
}

impl BasisIndex {
    pub fn new(elts: Vec<HBasisElt>) -> Self {
        let index = elts.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        BasisIndex { elts, index }
    }

    pub fn for_points(points: &[Pt], r: usize) -> Self {
        Self::new(basis_on(points, r))
    }

    pub fn standard(r: usize, n: usize) -> Self {
        Self::new(basis_enumerate(r, n))
    }

    pub fn len(&self) -> usize {
        self.elts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elts.is_empty()
    }

    pub fn elts(&self) -> &[HBasisElt] {
        &self.elts
    }

    pub fn position(&self, b: &HBasisElt) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn vector(&self, x: &HElement) -> SparseVec {
        x.terms()
            .iter()
            .map(|(b, &c)| {
                let i = self.position(b).unwrap_or_else(|| panic!("basis element {b:?} outside the index"));
                (i, BigInt::from(c))
            })
            .collect()
    }

    pub fn element(&self, points: Vec<Pt>, v: &SparseVec) -> HElement {
        let mut x = HElement::zero(points);
        for (&i, c) in v {
            let c = i64::try_from(c).expect("coefficient exceeds 64 bits");
            x.add_term(self.elts[i].clone(), c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(e: Edge, seq: &[Pt]) -> HElement {
        HElement::basis(HBasisElt::single(e, seq.to_vec()))
    }

    #[test]
    fn product_of_two_points_on_one_edge() {
        let p = tri(0, &[1]).shuffle_product(&tri(0, &[2])).unwrap();
        assert_eq!(p, tri(0, &[1, 2]).minus(&tri(0, &[2, 1])));
    }

    #[test]
    fn unit_law() {
        let x = tri(0, &[2, 1]).plus(&tri(1, &[1, 2]).scaled(3));
        assert_eq!(x.shuffle_product(&HElement::one()).unwrap(), x);
        assert_eq!(HElement::one().shuffle_product(&x).unwrap(), x);
    }

    #[test]
    fn product_across_edges_is_canonical() {
        let p = tri(0, &[1, 2]).shuffle_product(&tri(1, &[3])).unwrap();
        let b = HBasisElt::from_fibers(vec![(0, vec![1, 2]), (1, vec![3])]).unwrap();
        assert_eq!(p, HElement::basis(b));
    }

    #[test]
    fn overlapping_points_rejected() {
        assert_eq!(tri(0, &[1]).shuffle_product(&tri(1, &[1])), Err(ConfError::OverlappingPoints));
    }

    #[test]
    fn series_products() {
        let g = HSeries::generator(0, 2);
        let mut minus = HSeries::one(2);
        minus.comps[0] = tri(0, &[1]).scaled(-1);
        let lin = {
            let mut s = HSeries::one(2);
            s.comps[0] = tri(0, &[1]);
            s
        };
        let p = lin.mul(&minus);
        assert_eq!(p.component(2), tri(0, &[1, 2]).minus(&tri(0, &[2, 1])).scaled(-1));
        assert_eq!(g.mul(&HSeries::one(2)), g);
        let sq = g.mul(&g);
        assert_eq!(sq.component(2), tri(0, &[1, 2]).scaled(3).minus(&tri(0, &[2, 1])));
    }

    #[test]
    fn generator_inverse() {
        let g = HSeries::generator(0, 3);
        let inv = g.inverse().unwrap();
        assert_eq!(inv.component(1), tri(0, &[1]).scaled(-1));
        assert_eq!(inv.component(2), tri(0, &[2, 1]).scaled(-1));
        assert_eq!(g.mul(&inv), HSeries::one(3));
        assert_eq!(HSeries::one(3).inverse().unwrap(), HSeries::one(3));
        assert_eq!(HSeries::scalar(2, 1).inverse(), Err(ConfError::NonUnitConstant(2)));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis_enumerate(1, 3).len(), 6);
        assert_eq!(basis_enumerate(2, 2).len(), 6);
        assert_eq!(basis_enumerate(3, 0), vec![HBasisElt::empty()]);
    }

    #[test]
    fn rendering() {
        let al = EdgeAlphabet::surface(1, 1);
        let b = HBasisElt::from_fibers(vec![(0, vec![3, 1]), (2, vec![2])]).unwrap();
        assert_eq!(b.render(&al), "a1:(3,1)|b1:(2)");
        assert_eq!(HElement::zero_n(2).render(&al), "0");
    }
}
