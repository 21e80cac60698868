//! Punctured surfaces: the relator word ζ, its △-expansion, the
//! many-punctures decomposition and ζ-fixing endomorphisms.

use std::collections::BTreeMap;

use intlin::SparseIntMat;
use rayon::prelude::*;

use crate::complex::{build_bar_complex, descend, HnPresentation, TwoComplexPresentation};
use crate::error::{ConfError, Result};
use crate::magnus::FreeGroupWord;
use crate::shuffle::{delta_of_word, Edge, EdgeAlphabet, HBasisElt, HElement};

/// Genus g with l+1 punctures; p₀ is absorbed by the open 2-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub extra_punctures: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize, extra_punctures: usize) -> Self {
        SurfaceSpec { genus, extra_punctures }
    }

    pub fn alphabet(&self) -> EdgeAlphabet {
        EdgeAlphabet::surface(self.genus, self.extra_punctures)
    }

    pub fn zeta(&self) -> FreeGroupWord {
        zeta_word(self.genus, self.extra_punctures)
    }

    pub fn presentation(&self) -> TwoComplexPresentation {
        TwoComplexPresentation::new(self.alphabet(), vec![self.zeta()]).expect("surface relator lies in its alphabet")
    }
}

/// Edge index of a_i (`neg = false`) or a₋ᵢ.
pub fn a_edge(i: usize, neg: bool) -> Edge {
    2 * (i - 1) + usize::from(neg)
}

/// (α₁,α₋₁)⋯(α_g,α₋g) with (x,y) = x y x⁻¹ y⁻¹. The b-loops never occur.
pub fn zeta_word(g: usize, _l: usize) -> FreeGroupWord {
    FreeGroupWord::new((1..=g).flat_map(|i| {
        let (x, y) = (a_edge(i, false), a_edge(i, true));
        [(x, 1), (y, 1), (x, -1), (y, -1)]
    }))
}

/// △ⁿ(ζ) ∈ ℋₙ(U₁).
pub fn delta_zeta(g: usize, n: usize) -> HElement {
    delta_of_word(&zeta_word(g, 0), n).component(n)
}

fn single(e: Edge, seq: Vec<u32>) -> HElement {
    HElement::basis(HBasisElt::single(e, seq))
}

/// [x, y] = x × y′ − y × x′ with the factors placed on consecutive points.
pub fn series_bracket(x: &HElement, y: &HElement) -> HElement {
    let (p, q) = (x.n_points() as u32, y.n_points() as u32);
    x.times(&y.shift(p)).minus(&y.times(&x.shift(q)))
}

/// μ = Σᵢ △^{(1)}_{aᵢ}×△^{(2)}_{a₋ᵢ} − △^{(1)}_{a₋ᵢ}×△^{(2)}_{aᵢ}.
pub fn mu_element(g: usize) -> HElement {
    let mut out = HElement::zero_n(2);
    for i in 1..=g {
        let a = single(a_edge(i, false), vec![1]);
        let b = single(a_edge(i, true), vec![1]);
        out.add_scaled(&series_bracket(&a, &b), 1);
    }
    out
}

/// Σᵢ ([△²(aᵢ), a₋ᵢ] − [△²(a₋ᵢ), aᵢ] − [aᵢ, a₋ᵢ]·(aᵢ + a₋ᵢ)).
pub fn delta3_formula(g: usize) -> HElement {
    let mut out = HElement::zero_n(3);
    for i in 1..=g {
        let (x, y) = (a_edge(i, false), a_edge(i, true));
        let (a, b) = (single(x, vec![1]), single(y, vec![1]));
        let (a2, b2) = (single(x, vec![1, 2]), single(y, vec![1, 2]));
        out.add_scaled(&series_bracket(&a2, &b), 1);
        out.add_scaled(&series_bracket(&b2, &a), -1);
        out.add_scaled(&series_bracket(&a, &b).times(&a.plus(&b).shift(2)), -1);
    }
    out
}

/// Both sides of the many-punctures decomposition in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManyPuncturesReport {
    /// rank H^cl_{n+k} of conf_n(U) from the full bar complex
    pub direct: usize,
    /// Σ over n₀ of (n!/n₀!)·C(n−n₀+l−1, l−1)·rank H^cl_{n₀+k}(conf_{n₀}(X∖p₀))
    pub decomposed: usize,
    /// (n₀, multiplicity, one-puncture rank) per summand
    pub terms: Vec<(usize, usize, usize)>,
}

impl ManyPuncturesReport {
    pub fn equal(&self) -> bool {
        self.direct == self.decomposed
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn many_punctures_check(g: usize, l: usize, n: usize, k: i64) -> Result<ManyPuncturesReport> {
    if k < 0 || k as usize > n {
        return Ok(ManyPuncturesReport {
            direct: 0,
            decomposed: 0,
            terms: Vec::new(),
        });
    }
    let k = k as usize;
    let direct = build_bar_complex(&SurfaceSpec::new(g, l).presentation(), n)?
        .complex()
        .homology(n + k)
        .free_rank;
    let one = SurfaceSpec::new(g, 0).presentation();
    let mut terms = Vec::new();
    for n0 in 0..=n {
        let r = if n0 == 0 {
            usize::from(k == 0)
        } else {
            build_bar_complex(&one, n0)?.complex().homology(n0 + k).free_rank
        };
        let falling: usize = (n0 + 1..=n).product();
        let mult = if l == 0 {
            usize::from(n0 == n)
        } else {
            falling * binomial(n - n0 + l - 1, l - 1)
        };
        terms.push((n0, mult, r));
    }
    let decomposed = terms.iter().map(|&(_, m, r)| m * r).sum();
    Ok(ManyPuncturesReport { direct, decomposed, terms })
}

/// An endomorphism of the free group on the edges that fixes ζ literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSpec {
    spec: SurfaceSpec,
    images: Vec<FreeGroupWord>,
}

impl EndoSpec {
    pub fn new(spec: SurfaceSpec, images: Vec<FreeGroupWord>) -> Result<Self> {
        let r = spec.alphabet().len();
        if images.len() != r {
            return Err(ConfError::InvalidInput(format!("expected {r} images, got {}", images.len())));
        }
        if images.iter().any(|w| w.max_edge().is_some_and(|e| e >= r)) {
            return Err(ConfError::InvalidInput("image uses an edge outside the alphabet".into()));
        }
        if spec.zeta().substitute(&images) != spec.zeta() {
            return Err(ConfError::ZetaNotFixed);
        }
        Ok(EndoSpec { spec, images })
    }

    pub fn identity(spec: SurfaceSpec) -> Self {
        let r = spec.alphabet().len();
        Self::new(spec, (0..r).map(FreeGroupWord::generator).collect()).expect("identity fixes ζ")
    }

    /// γ ↦ ζγζ⁻¹.
    pub fn zeta_conjugation(spec: SurfaceSpec) -> Self {
        let z = spec.zeta();
        let r = spec.alphabet().len();
        let images = (0..r).map(|e| z.concat(&FreeGroupWord::generator(e)).concat(&z.inverse())).collect();
        Self::new(spec, images).expect("conjugation by ζ fixes ζ")
    }

    /// Lines `a1 -> a1 a-1 a1^-1`; unlisted generators are fixed.
    pub fn parse(spec: SurfaceSpec, text: &str) -> Result<Self> {
        let alphabet = spec.alphabet();
        let mut images: Vec<FreeGroupWord> = (0..alphabet.len()).map(FreeGroupWord::generator).collect();
        let mut seen = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| ConfError::Parse(format!("expected `gen -> word`, got `{line}`")))?;
            let lhs = lhs.trim();
            let e = alphabet.index(lhs).ok_or_else(|| ConfError::UnknownLetter(lhs.to_string()))?;
            if seen.insert(e, ()).is_some() {
                return Err(ConfError::Parse(format!("`{lhs}` mapped twice")));
            }
            images[e] = FreeGroupWord::parse(rhs, &alphabet)?;
        }
        Self::new(spec, images)
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn images(&self) -> &[FreeGroupWord] {
        &self.images
    }
}

/// Induced maps on ℋₙ(U₁) and on ℋₙ(U).
#[derive(Clone, Debug)]
pub struct EndoAction {
    pub hn: HnPresentation,
    /// on the standard basis of ℋₙ(U₁)
    pub u1_matrix: SparseIntMat,
    /// on the coordinates of ℋₙ(U)
    pub matrix: SparseIntMat,
    pub is_identity: bool,
}

/// φ on a basis element: △^{seqᵢ}(φ(eᵢ)) multiplied over the fibers.
pub fn apply_endomorphism(e: &EndoSpec, b: &HBasisElt) -> HElement {
    let mut out = HElement::one();
    for (edge, seq) in b.fibers() {
        let d = delta_of_word(&e.images[*edge], seq.len()).component(seq.len()).place_on(seq);
        out = out.times(&d);
    }
    out
}

pub fn act_endomorphism(e: &EndoSpec, n: usize) -> Result<EndoAction> {
    let hn = HnPresentation::new(&e.spec.presentation(), n);
    let basis = hn.basis();
    let cols = basis.elts().par_iter().map(|b| basis.vector(&apply_endomorphism(e, b))).collect();
    let u1_matrix = SparseIntMat::from_columns(basis.len(), cols);
    let matrix = descend(&hn, &hn, &u1_matrix)?;
    let d = hn.quotient().n_coords();
    let is_identity = matrix == SparseIntMat::identity(d);
    Ok(EndoAction {
        hn,
        u1_matrix,
        matrix,
        is_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_words() {
        let al = EdgeAlphabet::surface(1, 1);
        assert_eq!(zeta_word(1, 1).render(&al), "a1 a-1 a1^-1 a-1^-1");
        assert!(zeta_word(0, 3).is_empty());
        let z2 = zeta_word(2, 0);
        assert_eq!(z2.len(), 8);
        assert_eq!(FreeGroupWord::new(z2.letters().iter().copied()), z2);
    }

    #[test]
    fn low_orders() {
        for g in 1..=3 {
            assert!(delta_zeta(g, 1).is_zero());
            assert_eq!(delta_zeta(g, 2), mu_element(g));
            assert_eq!(delta_zeta(g, 3), delta3_formula(g));
        }
    }

    #[test]
    fn mu_for_torus() {
        let a = HBasisElt::from_fibers(vec![(0, vec![1]), (1, vec![2])]).unwrap();
        let b = HBasisElt::from_fibers(vec![(0, vec![2]), (1, vec![1])]).unwrap();
        let mut want = HElement::basis(a);
        // △^{(1)}_{a₋₁} × △^{(2)}_{a₁} has canonical word (2,1): sign −1
        want.add_term(b, 1);
        assert_eq!(mu_element(1), want);
    }

    #[test]
    fn endo_parse() {
        let spec = SurfaceSpec::new(1, 1);
        let e = EndoSpec::parse(spec, "b1 -> b1 a1 a-1 a1^-1 a-1^-1\n").unwrap();
        assert_eq!(e.images()[2].len(), 5);
        assert_eq!(EndoSpec::parse(spec, "a1 -> a-1"), Err(ConfError::ZetaNotFixed));
        assert!(EndoSpec::parse(spec, "a1 a-1").is_err());
        assert_eq!(EndoSpec::identity(spec), EndoSpec::parse(spec, "").unwrap());
    }

    #[test]
    fn negative_codimension() {
        let r = many_punctures_check(1, 1, 2, -1).unwrap();
        assert_eq!((r.direct, r.decomposed), (0, 0));
    }

    #[test]
    fn puncture_push_on_h1() {
        let spec = SurfaceSpec::new(1, 1);
        let e = EndoSpec::parse(spec, "b1 -> b1 a1 a-1 a1^-1 a-1^-1").unwrap();
        assert!(act_endomorphism(&e, 1).unwrap().is_identity);
        let act = act_endomorphism(&e, 2).unwrap();
        assert_ne!(act.u1_matrix, SparseIntMat::identity(act.hn.basis().len()));
    }
}
