//! The tensor algebra on H₁, μ-insertions and bracket identities.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use intlin::{BigInt, Echelon, SparseVec};
use itertools::Itertools;

use crate::complex::{word_product, HnPresentation};
use crate::error::{ConfError, Result};
use crate::shuffle::{add_coef, mul_coef, Edge, EdgeAlphabet};
use crate::surfaces::a_edge;

/// A homogeneous tensor of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElt {
    degree: usize,
    terms: BTreeMap<Vec<Edge>, i64>,
}

impl TensorElt {
    pub fn zero(degree: usize) -> Self {
        TensorElt {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Vec<Edge>) -> Self {
        let mut x = Self::zero(w.len());
        x.terms.insert(w, 1);
        x
    }

    pub fn letter(e: Edge) -> Self {
        Self::word(vec![e])
    }

    /// Degree-one combinations such as `a1`, `2*a1 - a-2`; binary `+`/`-`
    /// are separated by spaces.
    pub fn parse_linear(s: &str, alphabet: &EdgeAlphabet) -> Result<Self> {
        let mut out = Self::zero(1);
        let mut sign = 1;
        let mut any = false;
        for tok in s.split_whitespace() {
            match tok {
                "+" => continue,
                "-" => {
                    sign = -sign;
                    continue;
                }
                _ => {}
            }
            let (s2, body) = match tok.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, tok.strip_prefix('+').unwrap_or(tok)),
            };
            let (c, name) = match body.split_once('*') {
                Some((c, n)) => (c.parse::<i64>().map_err(|_| ConfError::Parse(format!("bad coefficient `{c}`")))?, n),
                None => (1, body),
            };
            let e = alphabet.index(name).ok_or_else(|| ConfError::UnknownLetter(name.to_string()))?;
            out.add_term(vec![e], sign * s2 * c);
            sign = 1;
            any = true;
        }
        if !any {
            return Err(ConfError::Parse("empty linear combination".into()));
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Edge>, i64> {
        &self.terms
    }

    pub fn coeff(&self, w: &[Edge]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<Edge>, c: i64) {
        assert_eq!(w.len(), self.degree, "inhomogeneous term");
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &TensorElt, c: i64) {
        for (w, &v) in &other.terms {
            self.add_term(w.clone(), mul_coef(v, c));
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        let mut out = Self::zero(self.degree);
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &TensorElt) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &TensorElt) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorElt) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                let mut w = u.clone();
                w.extend(v);
                out.add_term(w, mul_coef(a, b));
            }
        }
        out
    }

    /// Words joined by `.`, e.g. `a2.a1.a-2.a-1.a2 - 2 a1.a1`.
    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, &c)) in self.terms.iter().enumerate() {
            let word = if w.is_empty() { "1".to_string() } else { w.iter().map(|&e| alphabet.name(e)).join(".") };
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&format!("{} ", c.abs()));
            }
            out.push_str(&word);
        }
        out
    }
}

/// μ = Σᵢ (aᵢ⊗a₋ᵢ − a₋ᵢ⊗aᵢ).
pub fn mu(g: usize) -> TensorElt {
    let mut out = TensorElt::zero(2);
    for i in 1..=g {
        out.add_term(vec![a_edge(i, false), a_edge(i, true)], 1);
        out.add_term(vec![a_edge(i, true), a_edge(i, false)], -1);
    }
    out
}

/// μ_{i,j}(x): μ's two letters in slots i < j (1-based) of a degree-(d+2) word.
pub fn mu_insert(g: usize, i: usize, j: usize, x: &TensorElt) -> Result<TensorElt> {
    let d = x.degree;
    if !(1 <= i && i < j && j <= d + 2) {
        return Err(ConfError::SlotOutOfRange);
    }
    let m = mu(g);
    let mut out = TensorElt::zero(d + 2);
    for (w, &c) in &x.terms {
        for (pair, &s) in &m.terms {
            let mut rest = w.iter().copied();
            let word: Vec<Edge> = (1..=d + 2)
                .map(|k| {
                    if k == i {
                        pair[0]
                    } else if k == j {
                        pair[1]
                    } else {
                        rest.next().expect("slot count")
                    }
                })
                .collect();
            out.add_term(word, mul_coef(c, s));
        }
    }
    Ok(out)
}

pub fn bracket(x: &TensorElt, y: &TensorElt) -> TensorElt {
    x.mul(y).minus(&y.mul(x))
}

/// All words of length n over r letters, lexicographic.
fn words(r: usize, n: usize) -> Vec<Vec<Edge>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).map(|_| 0..r).multi_cartesian_product().collect()
}

fn word_index(r: usize, w: &[Edge]) -> usize {
    w.iter().fold(0, |acc, &e| acc * r + e)
}

/// Coordinates in V^{⊗n}, V of rank r, words ordered lexicographically.
pub fn tensor_vector(r: usize, x: &TensorElt) -> SparseVec {
    x.terms
        .iter()
        .map(|(w, &c)| {
            assert!(w.iter().all(|&e| e < r), "letter outside the alphabet");
            (word_index(r, w), BigInt::from(c))
        })
        .collect()
}

fn tensor_from_vector(r: usize, n: usize, v: &SparseVec) -> TensorElt {
    let mut out = TensorElt::zero(n);
    for (&i, c) in v {
        let mut w = vec![0; n];
        let mut k = i;
        for slot in w.iter_mut().rev() {
            *slot = k % r;
            k /= r;
        }
        out.add_term(w, i64::try_from(c).expect("coefficient exceeds 64 bits"));
    }
    out
}

/// Which μ-insertions span a subspace of degree n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSpan {
    /// u ⊗ μ ⊗ v: the two-sided ideal generated by μ
    Adjacent,
    /// μ_{i,j}(w) for all slot pairs
    AllInsertions,
}

/// The degree-n part of a μ-span inside V^{⊗n}, V = H₁ of genus g.
#[derive(Clone, Debug)]
pub struct MuIdeal {
    g: usize,
    n: usize,
    echelon: Echelon,
}

impl MuIdeal {
    pub fn new(g: usize, n: usize, kind: MuSpan) -> Self {
        let r = 2 * g;
        let dim = r.pow(n as u32);
        let mut echelon = Echelon::new(dim, false);
        if n >= 2 {
            let m = mu(g);
            match kind {
                MuSpan::Adjacent => {
                    for k in 0..=n - 2 {
                        for u in words(r, k) {
                            for v in words(r, n - 2 - k) {
                                let x = TensorElt::word(u.clone()).mul(&m).mul(&TensorElt::word(v));
                                echelon.insert(tensor_vector(r, &x));
                            }
                        }
                    }
                }
                MuSpan::AllInsertions => {
                    for (i, j) in (1..=n).tuple_combinations() {
                        for w in words(r, n - 2) {
                            let x = mu_insert(g, i, j, &TensorElt::word(w)).expect("slots in range");
                            echelon.insert(tensor_vector(r, &x));
                        }
                    }
                }
            }
        }
        MuIdeal { g, n, echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, x: &TensorElt) -> bool {
        assert_eq!(x.degree, self.n);
        self.echelon.contains(&tensor_vector(2 * self.g, x))
    }

    /// Normal form of x modulo the span; zero iff x lies in it.
    pub fn reduce(&self, x: &TensorElt) -> TensorElt {
        let r = 2 * self.g;
        tensor_from_vector(r, self.n, &self.echelon.reduce(&tensor_vector(r, x)).remainder)
    }
}

/// Whether x vanishes in Sₙ(U) = V^{⊗n}/(μ).
pub fn sn_quotient_membership(g: usize, x: &TensorElt) -> bool {
    if x.degree < 2 {
        return x.is_zero();
    }
    MuIdeal::new(g, x.degree, MuSpan::Adjacent).contains(x)
}

/// Membership in the span of all μ_{i,j}-insertions.
pub fn mu_insertion_membership(g: usize, x: &TensorElt) -> bool {
    if x.degree < 2 {
        return x.is_zero();
    }
    MuIdeal::new(g, x.degree, MuSpan::AllInsertions).contains(x)
}

/// Σᵢ ([aᵢ, N(a₋ᵢ)] − [a₋ᵢ, N(aᵢ)]) with N(y) = [c₁,[c₂,[⋯,[c_{n−2}, y]⋯]]].
pub fn johnson_a(g: usize, n: usize, c: &[TensorElt]) -> Result<TensorElt> {
    if g < 2 || n < 3 {
        return Err(ConfError::InvalidInput("johnson_a needs g ≥ 2 and n ≥ 3".into()));
    }
    if c.len() != n - 2 || c.iter().any(|x| x.degree != 1) {
        return Err(ConfError::InvalidInput(format!("expected {} degree-one elements", n - 2)));
    }
    let nest = |y: TensorElt| c.iter().rev().fold(y, |acc, ci| bracket(ci, &acc));
    let mut out = TensorElt::zero(n);
    for i in 1..=g {
        let (a, b) = (TensorElt::letter(a_edge(i, false)), TensorElt::letter(a_edge(i, true)));
        out.add_scaled(&bracket(&a, &nest(b.clone())), 1);
        out.add_scaled(&bracket(&b, &nest(a)), -1);
    }
    Ok(out)
}

/// (−μ_{1,3} + μ_{1,4} − μ_{2,4})(c₁c₂ + c₂c₁).
pub fn johnson_closed_form(g: usize, c1: &TensorElt, c2: &TensorElt) -> TensorElt {
    let s = c1.mul(c2).plus(&c2.mul(c1));
    let ins = |i, j| mu_insert(g, i, j, &s).expect("slots in range");
    ins(1, 4).minus(&ins(1, 3)).minus(&ins(2, 4))
}

/// [a, x] and its class in S_{n+1}(U).
#[derive(Clone, Debug)]
pub struct AdCheck {
    pub bracket: TensorElt,
    /// [a, x] lies in the two-sided μ-ideal
    pub vanishes: bool,
    /// normal form of [a, x] modulo the ideal
    pub residue: TensorElt,
}

pub fn ad_check(g: usize, a: &TensorElt, x: &TensorElt) -> AdCheck {
    let br = bracket(a, x);
    let n = br.degree;
    let residue = if n < 2 { br.clone() } else { MuIdeal::new(g, n, MuSpan::Adjacent).reduce(&br) };
    AdCheck {
        vanishes: residue.is_zero(),
        bracket: br,
        residue,
    }
}

/// Image of a tensor under Sₙ(U₁) → ℋₙ(U), in the coordinates of `hn`.
pub fn scfg_image(hn: &HnPresentation, x: &TensorElt) -> Vec<BigInt> {
    assert_eq!(x.degree, hn.n());
    let mut v = SparseVec::new();
    for (w, &c) in &x.terms {
        intlin::axpy(&mut v, &BigInt::from(c), &hn.basis().vector(&word_product(w)));
    }
    hn.quotient().project(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(g: usize) -> EdgeAlphabet {
        EdgeAlphabet::surface(g, 0)
    }

    #[test]
    fn mu_terms() {
        assert_eq!(mu(1).render(&al(1)), "a1.a-1 - a-1.a1");
        assert_eq!(mu(2).terms().len(), 4);
        assert_eq!(mu(3).terms().values().sum::<i64>(), 0);
    }

    #[test]
    fn insertions() {
        assert_eq!(mu_insert(2, 1, 2, &TensorElt::one()).unwrap(), mu(2));
        let a2 = TensorElt::letter(a_edge(2, false));
        let x = mu_insert(2, 1, 3, &a2).unwrap();
        let mut want = TensorElt::zero(3);
        for i in 1..=2 {
            let (p, q) = (a_edge(i, false), a_edge(i, true));
            want.add_term(vec![p, a_edge(2, false), q], 1);
            want.add_term(vec![q, a_edge(2, false), p], -1);
        }
        assert_eq!(x, want);
        assert_eq!(mu_insert(2, 2, 2, &a2), Err(ConfError::SlotOutOfRange));
        assert_eq!(mu_insert(2, 1, 4, &a2), Err(ConfError::SlotOutOfRange));
    }

    #[test]
    fn brackets() {
        let (a, b) = (TensorElt::letter(0), TensorElt::letter(1));
        assert!(bracket(&a, &a).is_zero());
        assert_eq!(bracket(&a, &b), mu(1));
        assert_eq!(bracket(&bracket(&a, &b), &TensorElt::letter(2)).terms().len(), 4);
    }

    #[test]
    fn ideal_membership() {
        assert!(sn_quotient_membership(2, &mu(2)));
        assert!(!sn_quotient_membership(2, &TensorElt::letter(0)));
        let x = mu_insert(2, 1, 3, &TensorElt::letter(a_edge(2, false))).unwrap();
        // the word a1.a2.a-1 only appears in non-adjacent insertions
        assert!(!sn_quotient_membership(2, &x));
        assert!(mu_insertion_membership(2, &x));
    }

    #[test]
    fn linear_parsing() {
        let a = al(2);
        let x = TensorElt::parse_linear("2*a1 - a-2 + a2", &a).unwrap();
        assert_eq!(x.coeff(&[0]), 2);
        assert_eq!(x.coeff(&[3]), -1);
        assert_eq!(x.coeff(&[2]), 1);
        assert_eq!(TensorElt::parse_linear("a-1", &a).unwrap(), TensorElt::letter(1));
        assert_eq!(TensorElt::parse_linear("-3*a-1", &a).unwrap(), TensorElt::letter(1).scaled(-3));
        assert!(TensorElt::parse_linear("c", &a).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let x = johnson_a(2, 4, &[TensorElt::letter(0), TensorElt::letter(3)]).unwrap();
        assert_eq!(tensor_from_vector(4, 4, &tensor_vector(4, &x)), x);
    }
}
