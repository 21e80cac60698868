//! Cellular chain complexes of configuration spaces.
//!
//! A cell of conf_N(U) for a 2-complex U with one 2-cell is a bar word
//! `[B_r|⋯|B_1] ⊗ c₀`: the blocks are rows of points in the open 2-cell
//! (ordered by height, each ordered left to right) and c₀ is a cell of the
//! 1-skeleton configuration space. The degree is n + r.
//!
//! Boundary signs. Orient a cell by its coordinates in the order
//! B_r, …, B_1 (each block: its x-coordinates, then its height), followed by
//! the canonical word of c₀. With n₀ points in c₀:
//!
//! * merging B_{t+1} into B_t contributes
//!   (−1)^{n₀ + Σ_{s<t}(1+n_s) + n_t} · (B_{t+1} × B_t),
//! * letting B_1 fall onto the 1-skeleton contributes
//!   (−1)^{n₀+1} · [B_r|⋯|B_2] ⊗ (△^{B_1}(ζ) × c₀).

use std::collections::{BTreeMap, HashMap};

use intlin::{snf, subquotient_invariants, AbGroupInvariants, BigInt, Echelon, Quotient, SparseIntMat, SparseVec};
use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{ConfError, Result};
use crate::magnus::FreeGroupWord;
use crate::shuffle::{basis_on, delta_of_word, perm_sign, shuffles, BasisIndex, Edge, EdgeAlphabet, HBasisElt, HElement, HSeries, Pt};

/// A 2-complex with one 0-cell: edges plus 2-cells attached along words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoComplexPresentation {
    alphabet: EdgeAlphabet,
    relators: Vec<FreeGroupWord>,
}

impl TwoComplexPresentation {
    pub fn new(alphabet: EdgeAlphabet, relators: Vec<FreeGroupWord>) -> Result<Self> {
        for w in &relators {
            if let Some(e) = w.max_edge() {
                if e >= alphabet.len() {
                    return Err(ConfError::InvalidInput(format!("relator uses edge {e} outside the alphabet")));
                }
            }
        }
        Ok(TwoComplexPresentation { alphabet, relators })
    }

    /// Line 1 `gens: <names>`, then one `rel: <word>` per 2-cell. Blank lines
    /// and `#` comments are ignored; `rel:` with nothing after it is the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or_else(|| ConfError::Parse("empty presentation".into()))?;
        let gens = first
            .strip_prefix("gens:")
            .ok_or_else(|| ConfError::Parse("first line must start with `gens:`".into()))?;
        let alphabet = EdgeAlphabet::new(gens.split_whitespace())?;
        let mut relators = Vec::new();
        for l in lines {
            let w = l
                .strip_prefix("rel:")
                .ok_or_else(|| ConfError::Parse(format!("expected `rel:` line, got `{l}`")))?;
            relators.push(FreeGroupWord::parse(w, &alphabet)?);
        }
        Self::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &EdgeAlphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[FreeGroupWord] {
        &self.relators
    }

    pub fn single_relator(&self) -> Result<&FreeGroupWord> {
        match self.relators.as_slice() {
            [w] => Ok(w),
            _ => Err(ConfError::NotSingleRelator),
        }
    }
}

/// `[B_r|⋯|B_1] ⊗ c₀`, blocks stored left to right as printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarBasisElt {
    blocks: Vec<Vec<Pt>>,
    coef: HBasisElt,
}

impl BarBasisElt {
    pub fn new(blocks: Vec<Vec<Pt>>, coef: HBasisElt) -> Self {
        assert!(blocks.iter().all(|b| !b.is_empty()), "empty bar block");
        BarBasisElt { blocks, coef }
    }

    pub fn blocks(&self) -> &[Vec<Pt>] {
        &self.blocks
    }

    pub fn coef(&self) -> &HBasisElt {
        &self.coef
    }

    pub fn n_points(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum::<usize>() + self.coef.n_points()
    }

    pub fn degree(&self) -> usize {
        self.n_points() + self.blocks.len()
    }

    pub fn render(&self, alphabet: &EdgeAlphabet) -> String {
        let bar = self.blocks.iter().map(|b| format!("({})", b.iter().join(","))).join("|");
        format!("[{bar}] ⊗ {}", self.coef.render(alphabet))
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Ordered lists of nonempty ordered blocks partitioning `pts`.
fn ordered_block_lists(pts: &[Pt]) -> Vec<Vec<Vec<Pt>>> {
    if pts.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..=pts.len() {
        for sub in pts.iter().copied().combinations(k) {
            let rest: Vec<Pt> = pts.iter().copied().filter(|p| !sub.contains(p)).collect();
            let prefixes = ordered_block_lists(&rest);
            for last in sub.iter().copied().permutations(k) {
                for pre in &prefixes {
                    let mut l = pre.clone();
                    l.push(last.clone());
                    out.push(l);
                }
            }
        }
    }
    out
}

/// All bar cells on the given points with `r` edges.
pub fn bar_cells(points: &[Pt], r: usize) -> Vec<BarBasisElt> {
    let n = points.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let (n0, rest): (Vec<Pt>, Vec<Pt>) = points.iter().enumerate().partition_map(|(i, &p)| {
            if mask & (1 << i) != 0 {
                itertools::Either::Left(p)
            } else {
                itertools::Either::Right(p)
            }
        });
        let coefs = basis_on(&n0, r);
        let lists = ordered_block_lists(&rest);
        for c in &coefs {
            for l in &lists {
                out.push(BarBasisElt::new(l.clone(), c.clone()));
            }
        }
    }
    out
}

/// Knobs for building bar complexes; the sign flip exists to check that the
/// ∂² = 0 assertion actually bites.
#[derive(Clone, Copy, Debug, Default)]
pub struct BarOptions {
    pub inject_sign_flip: bool,
}

fn add_to(out: &mut BTreeMap<BarBasisElt, i64>, k: BarBasisElt, v: i64) {
    if v == 0 {
        return;
    }
    let e = out.entry(k.clone()).or_insert(0);
    *e += v;
    if *e == 0 {
        out.remove(&k);
    }
}

/// Boundary of one bar cell; `zeta` must be truncated at degree ≥ the
/// size of the lowest block.
pub fn bar_boundary(cell: &BarBasisElt, zeta: &HSeries, opts: BarOptions) -> BTreeMap<BarBasisElt, i64> {
    let l = &cell.blocks;
    let r = l.len();
    let n0 = cell.coef.n_points();
    let mut out = BTreeMap::new();
    for i in 0..r.saturating_sub(1) {
        let (up, lo) = (&l[i], &l[i + 1]);
        let below: usize = l[i + 2..].iter().map(|b| 1 + b.len()).sum();
        let mut s = sign(below + n0 + lo.len());
        if opts.inject_sign_flip && i + 2 == r {
            s = -s;
        }
        let mut concat = up.clone();
        concat.extend(lo);
        for seq in shuffles(up, lo) {
            let c = perm_sign(&concat, &seq);
            let mut nl = l[..i].to_vec();
            nl.push(seq);
            nl.extend(l[i + 2..].iter().cloned());
            add_to(&mut out, BarBasisElt::new(nl, cell.coef.clone()), s * c);
        }
    }
    if r >= 1 {
        let b1 = &l[r - 1];
        let z = zeta.component(b1.len()).place_on(b1);
        if !z.is_zero() {
            let s = sign(n0 + 1);
            let prod = z.times(&HElement::basis(cell.coef.clone()));
            for (b, &c) in prod.terms() {
                add_to(&mut out, BarBasisElt::new(l[..r - 1].to_vec(), b.clone()), s * c);
            }
        }
    }
    out
}

/// A chain complex of free abelian groups with explicit boundary matrices.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    min_degree: usize,
    dims: Vec<usize>,
    /// `boundaries[i]`: C_{min+i} → C_{min+i−1}
    boundaries: Vec<SparseIntMat>,
}

impl ChainComplexZ {
    pub fn new(min_degree: usize, dims: Vec<usize>, boundaries: Vec<SparseIntMat>) -> Self {
        assert_eq!(dims.len(), boundaries.len());
        for (i, b) in boundaries.iter().enumerate() {
            assert_eq!(b.n_cols(), dims[i]);
            assert_eq!(b.n_rows(), if i == 0 { 0 } else { dims[i - 1] });
        }
        ChainComplexZ { min_degree, dims, boundaries }
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.min_degree + self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, d: usize) -> usize {
        d.checked_sub(self.min_degree).and_then(|i| self.dims.get(i)).copied().unwrap_or(0)
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseIntMat> {
        d.checked_sub(self.min_degree).and_then(|i| self.boundaries.get(i))
    }

    /// Verifies ∂_{d−1}∘∂_d = 0 in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.boundaries.len() {
            if i >= 1 && !self.boundaries[i - 1].mul(&self.boundaries[i]).is_zero() {
                return Err(ConfError::BoundarySquare(self.min_degree + i));
            }
        }
        Ok(())
    }

    /// Homology in every degree of the complex, lowest first.
    pub fn homology_all(&self) -> Vec<(usize, AbGroupInvariants)> {
        let smiths: Vec<_> = self.boundaries.par_iter().map(snf).collect();
        (0..self.dims.len())
            .map(|i| {
                let out_rank = smiths[i].rank;
                let (in_rank, torsion) = match smiths.get(i + 1) {
                    Some(s) => (s.rank, s.cokernel.torsion.clone()),
                    None => (0, Vec::new()),
                };
                (self.min_degree + i, AbGroupInvariants::new(self.dims[i] - out_rank - in_rank, torsion))
            })
            .collect()
    }

    pub fn homology(&self, d: usize) -> AbGroupInvariants {
        let Some(i) = d.checked_sub(self.min_degree).filter(|&i| i < self.dims.len()) else {
            return AbGroupInvariants::trivial();
        };
        let out_rank = snf(&self.boundaries[i]).rank;
        let (in_rank, torsion) = match self.boundaries.get(i + 1) {
            Some(b) => {
                let s = snf(b);
                (s.rank, s.cokernel.torsion)
            }
            None => (0, Vec::new()),
        };
        AbGroupInvariants::new(self.dims[i] - out_rank - in_rank, torsion)
    }

    /// Alternating count of cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| sign(self.min_degree + i) * d as i64)
            .sum()
    }
}

/// A chain complex together with the cells indexing its bases.
#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<Vec<BarBasisElt>>,
    complex: ChainComplexZ,
}

impl CellComplex {
    /// Sorts cells by degree and fills in the boundary matrices.
    fn assemble<F>(cells: Vec<BarBasisElt>, boundary: F) -> Result<Self>
    where
        F: Fn(&BarBasisElt) -> BTreeMap<BarBasisElt, i64> + Sync,
    {
        let lo = cells.iter().map(|c| c.degree()).min().unwrap_or(0);
        let hi = cells.iter().map(|c| c.degree()).max().unwrap_or(0);
        let mut by_deg: Vec<Vec<BarBasisElt>> = vec![Vec::new(); hi - lo + 1];
        for c in cells {
            let d = c.degree();
            by_deg[d - lo].push(c);
        }
        for v in &mut by_deg {
            v.sort();
            v.dedup();
        }
        let index: Vec<HashMap<&BarBasisElt, usize>> =
            by_deg.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
        let mut boundaries = Vec::with_capacity(by_deg.len());
        for (i, v) in by_deg.iter().enumerate() {
            let rows = if i == 0 { 0 } else { by_deg[i - 1].len() };
            let cols: Vec<SparseVec> = v
                .par_iter()
                .map(|c| {
                    let mut col = SparseVec::new();
                    for (b, x) in boundary(c) {
                        assert!(i > 0, "boundary leaves the complex");
                        let j = *index[i - 1].get(&b).unwrap_or_else(|| panic!("face {b:?} is not a cell"));
                        col.insert(j, BigInt::from(x));
                    }
                    col
                })
                .collect();
            boundaries.push(SparseIntMat::from_columns(rows, cols));
        }
        let dims = by_deg.iter().map(|v| v.len()).collect();
        let complex = ChainComplexZ::new(lo, dims, boundaries);
        complex.check_square_zero()?;
        Ok(CellComplex { cells: by_deg, complex })
    }

    pub fn complex(&self) -> &ChainComplexZ {
        &self.complex
    }

    pub fn cells(&self, d: usize) -> &[BarBasisElt] {
        match d.checked_sub(self.complex.min_degree).and_then(|i| self.cells.get(i)) {
            Some(v) => v,
            None => &[],
        }
    }
}

/// The bar complex for a presentation with at most one 2-cell; ∂² = 0 is
/// asserted while building. Without a 2-cell it is ℋₙ(U₁) in degree n.
pub fn build_bar_complex(p: &TwoComplexPresentation, n: usize) -> Result<CellComplex> {
    build_bar_complex_with(p, n, BarOptions::default())
}

pub fn build_bar_complex_with(p: &TwoComplexPresentation, n: usize, opts: BarOptions) -> Result<CellComplex> {
    let points: Vec<Pt> = (1..=n as Pt).collect();
    if p.relators().is_empty() {
        let cells = basis_on(&points, p.alphabet().len()).into_iter().map(|b| BarBasisElt::new(Vec::new(), b)).collect();
        return CellComplex::assemble(cells, |_| BTreeMap::new());
    }
    let z = p.single_relator()?;
    let zeta = delta_of_word(z, n);
    let cells = bar_cells(&points, p.alphabet().len());
    CellComplex::assemble(cells, |c| bar_boundary(c, &zeta, opts))
}

/// H^cl_{n+k}(conf_n(U)).
pub fn homology_cl(p: &TwoComplexPresentation, n: usize, k: usize) -> Result<AbGroupInvariants> {
    if k > n {
        return Err(ConfError::InvalidInput(format!("codimension {k} exceeds n = {n}")));
    }
    Ok(build_bar_complex(p, n)?.complex().homology(n + k))
}

/// Generators of 𝒦ₙ(U, U₁): △^I(ζ_j) × ψ over ordered subsets I and basis
/// elements ψ on the complement, as columns in `basis`.
pub fn kernel_generators(p: &TwoComplexPresentation, n: usize, basis: &BasisIndex) -> SparseIntMat {
    let r = p.alphabet().len();
    let mut cols: Vec<SparseVec> = Vec::new();
    for z in p.relators() {
        let zeta = delta_of_word(z, n);
        for k in 1..=n {
            let zk = zeta.component(k);
            if zk.is_zero() {
                continue;
            }
            let batch: Vec<SparseVec> = (1..=n as Pt)
                .permutations(k)
                .collect::<Vec<_>>()
                .par_iter()
                .flat_map_iter(|ord| {
                    let rel = zk.place_on(ord);
                    let rest: Vec<Pt> = (1..=n as Pt).filter(|q| !ord.contains(q)).collect();
                    basis_on(&rest, r)
                        .into_iter()
                        .map(move |psi| basis.vector(&rel.times(&HElement::basis(psi))))
                        .collect::<Vec<_>>()
                })
                .collect();
            cols.extend(batch.into_iter().filter(|c| !c.is_empty()));
        }
    }
    cols.sort();
    cols.dedup();
    SparseIntMat::from_columns(basis.len(), cols)
}

/// 𝒦ₙ as a subgroup of ℋₙ(U₁).
#[derive(Clone, Debug)]
pub struct KernelK {
    pub basis: BasisIndex,
    pub generators: SparseIntMat,
    pub invariants: AbGroupInvariants,
}

pub fn kernel_k(p: &TwoComplexPresentation, n: usize) -> KernelK {
    let basis = BasisIndex::standard(p.alphabet().len(), n);
    let generators = kernel_generators(p, n, &basis);
    let rank = Echelon::from_matrix(&generators, false).rank();
    KernelK {
        basis,
        generators,
        invariants: AbGroupInvariants::free(rank),
    }
}

/// ℋₙ(U) = ℋₙ(U₁)/𝒦ₙ with its projection.
#[derive(Clone, Debug)]
pub struct HnPresentation {
    n: usize,
    basis: BasisIndex,
    kernel: SparseIntMat,
    quotient: Quotient,
}

impl HnPresentation {
    pub fn new(p: &TwoComplexPresentation, n: usize) -> Self {
        let basis = BasisIndex::standard(p.alphabet().len(), n);
        let kernel = kernel_generators(p, n, &basis);
        let quotient = Quotient::new(&kernel);
        HnPresentation { n, basis, kernel, quotient }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &BasisIndex {
        &self.basis
    }

    pub fn kernel(&self) -> &SparseIntMat {
        &self.kernel
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn invariants(&self) -> &AbGroupInvariants {
        self.quotient.invariants()
    }

    pub fn project(&self, x: &HElement) -> Vec<BigInt> {
        self.quotient.project(&self.basis.vector(x))
    }

    pub fn is_zero(&self, x: &HElement) -> bool {
        self.quotient.is_zero(&self.basis.vector(x))
    }

    /// The projection ℋₙ(U₁) → ℋₙ(U) in quotient coordinates.
    pub fn projection_matrix(&self) -> SparseIntMat {
        self.quotient.project_matrix(&SparseIntMat::identity(self.basis.len()))
    }
}

/// Induced map ℋₙ(U) → ℋₘ(U) of a map `m` between the ℋ(U₁) bases;
/// fails unless `m` carries the source kernel into the target kernel.
pub fn descend(src: &HnPresentation, dst: &HnPresentation, m: &SparseIntMat) -> Result<SparseIntMat> {
    assert_eq!((m.n_rows(), m.n_cols()), (dst.basis.len(), src.basis.len()));
    let q = &dst.quotient;
    if !src.kernel.columns().par_iter().all(|c| q.is_zero(&m.mul_vec(c))) {
        return Err(ConfError::KernelNotPreserved);
    }
    let d = src.quotient.n_coords();
    let cols = (0..d)
        .into_par_iter()
        .map(|i| {
            let mut unit = vec![BigInt::from(0); d];
            unit[i] = BigInt::from(1);
            let image = q.project(&m.mul_vec(&src.quotient.lift(&unit)));
            image.into_iter().enumerate().filter(|(_, x)| *x != BigInt::from(0)).collect()
        })
        .collect();
    Ok(SparseIntMat::from_columns(q.n_coords(), cols))
}

/// Whether the columns of `m` generate ℋₙ(U) (coordinates of `dst`).
pub fn generates(dst: &HnPresentation, m: &SparseIntMat) -> bool {
    let mut all = m.clone();
    for (i, d) in dst.quotient.moduli().into_iter().enumerate() {
        if let Some(d) = d {
            all.push_col(SparseVec::from([(i, d)]));
        }
    }
    snf(&all).cokernel.is_trivial()
}

pub fn hn_presentation(p: &TwoComplexPresentation, n: usize) -> HnPresentation {
    HnPresentation::new(p, n)
}

/// Set partitions of `pts` into exactly `s` blocks, blocks ordered by their
/// smallest element.
fn set_partitions(pts: &[Pt], s: usize) -> Vec<Vec<Vec<Pt>>> {
    if s == 0 {
        return if pts.is_empty() { vec![Vec::new()] } else { Vec::new() };
    }
    if pts.len() < s {
        return Vec::new();
    }
    let (first, rest) = (pts[0], &pts[1..]);
    let mut out = Vec::new();
    // first point alone
    for mut p in set_partitions(rest, s - 1) {
        p.insert(0, vec![first]);
        out.push(p);
    }
    // first point joins a block of a partition of the rest
    for p in set_partitions(rest, s) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            q.sort_by_key(|b| b[0]);
            out.push(q);
        }
    }
    out
}

/// Spanning set of F^s ℋₙ(U₁): products of s basis elements over set
/// partitions into s blocks.
pub fn filtration_generators(r: usize, n: usize, s: usize, basis: &BasisIndex) -> Vec<SparseVec> {
    if s <= 1 {
        return (0..basis.len()).map(|i| SparseVec::from([(i, BigInt::from(1))])).collect();
    }
    let pts: Vec<Pt> = (1..=n as Pt).collect();
    let mut out: Vec<SparseVec> = set_partitions(&pts, s)
        .par_iter()
        .flat_map_iter(|part| {
            let choices: Vec<Vec<HBasisElt>> = part.iter().map(|b| basis_on(b, r)).collect();
            choices
                .into_iter()
                .multi_cartesian_product()
                .map(|bs| {
                    let mut x = HElement::one();
                    for b in bs {
                        x = x.times(&HElement::basis(b));
                    }
                    basis.vector(&x)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Subquotients F^s/F^{s+1} of ℋₙ(U) for s = 1..n.
pub fn filtration_ranks(p: &TwoComplexPresentation, n: usize) -> Result<Vec<AbGroupInvariants>> {
    let r = p.alphabet().len();
    let basis = BasisIndex::standard(r, n);
    let k = kernel_generators(p, n, &basis);
    let span = |s: usize| -> SparseIntMat {
        let mut m = k.clone();
        if s <= n {
            for v in filtration_generators(r, n, s, &basis) {
                m.push_col(v);
            }
        }
        m
    };
    let mut out = Vec::with_capacity(n);
    let mut upper = span(1);
    for s in 1..=n {
        let lower = span(s + 1);
        out.push(subquotient_invariants(&upper, &lower)?);
        upper = lower;
    }
    Ok(out)
}

/// Tensor words of length n over r symbols, lexicographic.
pub fn tensor_words(r: usize, n: usize) -> Vec<Vec<Edge>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).map(|_| 0..r).multi_cartesian_product().collect()
}

/// △^{(1)}_{w₁} × △^{(2)}_{w₂} × ⋯ × △^{(n)}_{wₙ}.
pub fn word_product(w: &[Edge]) -> HElement {
    w.iter()
        .enumerate()
        .fold(HElement::one(), |acc, (i, &e)| acc.times(&HElement::basis(HBasisElt::single(e, vec![i as Pt + 1]))))
}

/// The map S₁^{⊗n} → ℋₙ(U₁) on tensor words.
pub fn fn_map_u1(r: usize, n: usize, basis: &BasisIndex) -> SparseIntMat {
    let cols = tensor_words(r, n).iter().map(|w| basis.vector(&word_product(w))).collect();
    SparseIntMat::from_columns(basis.len(), cols)
}

/// The map S₁^{⊗n} → ℋₙ(U) in quotient coordinates.
pub fn fn_map(p: &TwoComplexPresentation, n: usize) -> (HnPresentation, SparseIntMat) {
    let hn = HnPresentation::new(p, n);
    let m = fn_map_u1(p.alphabet().len(), n, hn.basis());
    let projected = hn.quotient().project_matrix(&m);
    (hn, projected)
}

/// Faces of a cell of conf_N(U) in which one point reaches the 0-cell.
pub fn exit_faces(cell: &BarBasisElt) -> BTreeMap<BarBasisElt, i64> {
    let mut out = BTreeMap::new();
    let mut pos = 0usize;
    for (bi, b) in cell.blocks.iter().enumerate() {
        let k = b.len();
        if k >= 2 {
            for (j, s0) in [(0, -1i64), (k - 1, 1)] {
                let mut nb = b.clone();
                nb.remove(j);
                let mut blocks = cell.blocks.clone();
                blocks[bi] = nb;
                add_to(&mut out, BarBasisElt::new(blocks, cell.coef.clone()), s0 * sign(pos + j));
            }
        }
        pos += k + 1;
    }
    for (fi, (_, seq)) in cell.coef.fibers().iter().enumerate() {
        let k = seq.len();
        for (j, s0) in [(0, -1i64), (k - 1, 1)] {
            let mut fibers = cell.coef.fibers().to_vec();
            fibers[fi].1.remove(j);
            let coef = HBasisElt::from_fibers(fibers).expect("still disjoint");
            add_to(&mut out, BarBasisElt::new(cell.blocks.clone(), coef), s0 * sign(pos + j));
        }
        pos += k;
    }
    out
}

/// The mapping cone computing H^cl_•(conf_n(X)) for a closed genus-g surface
/// X: the source 𝒞_N(U) with negated boundary, the target ⊕ᵢ 𝒞_{N∖i}(U).
pub fn closed_surface_complex(g: usize, n: usize) -> Result<CellComplex> {
    if n == 0 {
        return Err(ConfError::InvalidInput("n must be at least 1".into()));
    }
    let alphabet = EdgeAlphabet::surface(g, 0);
    let zeta = delta_of_word(&crate::surfaces::zeta_word(g, 0), n);
    let r = alphabet.len();
    let all: Vec<Pt> = (1..=n as Pt).collect();
    let mut cells = bar_cells(&all, r);
    for i in 1..=n as Pt {
        let rest: Vec<Pt> = all.iter().copied().filter(|&q| q != i).collect();
        cells.extend(bar_cells(&rest, r));
    }
    CellComplex::assemble(cells, |c| {
        let mut out = bar_boundary(c, &zeta, BarOptions::default());
        if c.n_points() == n {
            for v in out.values_mut() {
                *v = -*v;
            }
            for (f, v) in exit_faces(c) {
                add_to(&mut out, f, v);
            }
        }
        out
    })
}

/// Homology of conf_n of a closed genus-g surface, in degrees n−1..2n.
pub fn closed_surface_homology(g: usize, n: usize) -> Result<Vec<(usize, AbGroupInvariants)>> {
    Ok(closed_surface_complex(g, n)?.complex().homology_all())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> TwoComplexPresentation {
        TwoComplexPresentation::parse("gens: x\nrel:").unwrap()
    }

    #[test]
    fn parse_presentations() {
        let p = TwoComplexPresentation::parse("gens: x y\nrel: x y x^-1 y^-1\n").unwrap();
        assert_eq!(p.alphabet().len(), 2);
        assert_eq!(p.relators()[0].len(), 4);
        assert!(TwoComplexPresentation::parse("rel: x").is_err());
        assert!(TwoComplexPresentation::parse("gens: x\nrel: y").is_err());
        let multi = TwoComplexPresentation::parse("gens: x\nrel: x\nrel: x x").unwrap();
        assert_eq!(build_bar_complex(&multi, 1).unwrap_err(), ConfError::NotSingleRelator);
    }

    #[test]
    fn example_boundaries() {
        let zeta = HSeries::one(3);
        let cell = BarBasisElt::new(vec![vec![2], vec![1]], HBasisElt::empty());
        let d: Vec<_> = bar_boundary(&cell, &zeta, BarOptions::default()).into_iter().collect();
        let want = vec![
            (BarBasisElt::new(vec![vec![1, 2]], HBasisElt::empty()), 1),
            (BarBasisElt::new(vec![vec![2, 1]], HBasisElt::empty()), -1),
        ];
        assert_eq!(d, want);
        let cell = BarBasisElt::new(vec![vec![3], vec![1, 2]], HBasisElt::empty());
        let d = bar_boundary(&cell, &zeta, BarOptions::default());
        let one = |s: &[Pt]| BarBasisElt::new(vec![s.to_vec()], HBasisElt::empty());
        let want: BTreeMap<_, _> = [(one(&[3, 1, 2]), 1), (one(&[1, 3, 2]), -1), (one(&[1, 2, 3]), 1)].into();
        assert_eq!(d, want);
    }

    #[test]
    fn zero_points() {
        let c = build_bar_complex(&line(), 0).unwrap();
        assert_eq!(c.complex().dim(0), 1);
        assert_eq!(c.complex().homology(0), AbGroupInvariants::free(1));
    }

    #[test]
    fn line_has_n_factorial() {
        for n in 1..=3 {
            let h = homology_cl(&line(), n, 0).unwrap();
            assert_eq!(h, AbGroupInvariants::free((1..=n).product()));
        }
    }

    #[test]
    fn block_lists_count() {
        // m!·2^{m−1} ordered block lists of m points
        assert_eq!(ordered_block_lists(&[1, 2, 3]).len(), 24);
        assert_eq!(ordered_block_lists(&[1, 2, 3, 4]).len(), 192);
    }

    #[test]
    fn partitions_count() {
        // Stirling numbers S(4, s)
        let pts = [1, 2, 3, 4];
        let counts: Vec<usize> = (1..=4).map(|s| set_partitions(&pts, s).len()).collect();
        assert_eq!(counts, vec![1, 7, 6, 1]);
    }

    #[test]
    fn word_product_sign() {
        let x = word_product(&[0, 1, 0]);
        let b13 = HBasisElt::from_fibers(vec![(0, vec![1, 3]), (1, vec![2])]).unwrap();
        let b31 = HBasisElt::from_fibers(vec![(0, vec![3, 1]), (1, vec![2])]).unwrap();
        let mut want = HElement::basis(b13).scaled(-1);
        want.add_term(b31, 1);
        assert_eq!(x, want);
        let y = word_product(&[1, 0]);
        let b = HBasisElt::from_fibers(vec![(0, vec![2]), (1, vec![1])]).unwrap();
        assert_eq!(y, HElement::basis(b).scaled(-1));
    }

    #[test]
    fn exit_faces_cancel_for_single_points() {
        let c = BarBasisElt::new(vec![], HBasisElt::from_fibers(vec![(0, vec![1])]).unwrap());
        assert!(exit_faces(&c).is_empty());
        let c = BarBasisElt::new(vec![vec![1]], HBasisElt::empty());
        assert!(exit_faces(&c).is_empty());
    }
}
