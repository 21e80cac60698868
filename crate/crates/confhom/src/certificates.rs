//! The reproducible certificate suite: thirteen exact checks of the
//! identities this crate is built around, each with a time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use crate::complex::{
    build_bar_complex_with, closed_surface_complex, filtration_generators, hn_presentation, homology_cl,
    kernel_k, word_product, BarBasisElt, BarOptions, TwoComplexPresentation,
};
use crate::degeneracy::{degeneracy, degeneracy_raw, iterated_degeneracy};
use crate::graded::{
    ad_check, johnson_a, johnson_closed_form, mu, mu_insert, mu_insertion_membership, scfg_image, sn_quotient_membership, TensorElt,
};
use crate::magnus::{delta_matrix, delta_of_monomial, icfg_kernel, MonomialBasis};
use crate::shuffle::{basis_on, BasisIndex, HBasisElt, HElement, HSeries, Pt};
use crate::surfaces::{
    a_edge, act_endomorphism, delta3_formula, delta_zeta, many_punctures_check, mu_element, EndoSpec, SurfaceSpec,
};
use intlin::{rank, snf, AbGroupInvariants, BigInt, Echelon, SparseIntMat, SparseVec};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn surface(g: usize, l: usize) -> TwoComplexPresentation {
    SurfaceSpec::new(g, l).presentation()
}

fn one(e: usize, seq: &[Pt]) -> HElement {
    HElement::basis(HBasisElt::single(e, seq.to_vec()))
}

fn span_equal(dim: usize, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ea = Echelon::from_matrix(&SparseIntMat::from_columns(dim, a.to_vec()), false);
    let eb = Echelon::from_matrix(&SparseIntMat::from_columns(dim, b.to_vec()), false);
    ea.rank() == eb.rank() && a.iter().all(|v| eb.contains(v)) && b.iter().all(|v| ea.contains(v))
}

fn c1_delta(_: &CheckOptions) -> Check {
    for g in 1..=3 {
        let t = Instant::now();
        ensure(delta_zeta(g, 1).is_zero(), || format!("△¹(ζ) ≠ 0 for g = {g}"))?;
        ensure(delta_zeta(g, 2) == mu_element(g), || format!("△²(ζ) ≠ μ for g = {g}"))?;
        ensure(delta_zeta(g, 3) == delta3_formula(g), || format!("△³(ζ) differs from the formula for g = {g}"))?;
        ensure(t.elapsed() < Duration::from_secs(1), || format!("g = {g} took {:?}", t.elapsed()))?;
    }
    Ok(())
}

fn c2_kernel(_: &CheckOptions) -> Check {
    for g in 1..=2 {
        let p = surface(g, 0);
        let r = p.alphabet().len();
        let k1 = kernel_k(&p, 1);
        ensure(k1.invariants.is_trivial(), || format!("𝒦₁ = {} for g = {g}", k1.invariants))?;
        let k2 = kernel_k(&p, 2);
        ensure(k2.invariants == AbGroupInvariants::free(1), || format!("𝒦₂ = {}", k2.invariants))?;
        let mu_v = k2.basis.vector(&mu_element(g));
        ensure(span_equal(k2.basis.len(), k2.generators.columns(), &[mu_v]), || "𝒦₂ ≠ Zμ".into())?;
        let k3 = kernel_k(&p, 3);
        let b = &k3.basis;
        let m = mu_element(g);
        let mut pieces = vec![b.vector(&delta_zeta(g, 3))];
        for e in 0..r {
            pieces.push(b.vector(&m.times(&one(e, &[3]))));
            pieces.push(b.vector(&one(e, &[1]).times(&m.shift(1))));
            let ins = mu_insert(g, 1, 3, &TensorElt::letter(e)).map_err(|e| e.to_string())?;
            let mut v = SparseVec::new();
            for (w, &c) in ins.terms() {
                intlin::axpy(&mut v, &BigInt::from(c), &b.vector(&word_product(w)));
            }
            pieces.push(v);
        }
        // 𝒦₃ is 𝔖₃-stable; the single element △³(ζ) only spans it together with its orbit
        let literal = SparseIntMat::from_columns(b.len(), pieces.clone());
        let corank = intlin::subquotient_invariants(&k3.generators, &literal).map_err(|e| e.to_string())?;
        ensure(corank == AbGroupInvariants::free(1), || format!("𝒦₃ / displayed pieces = {corank}"))?;
        for perm in (1..=3 as Pt).permutations(3) {
            pieces.push(b.vector(&delta_zeta(g, 3).place_on(&perm)));
        }
        ensure(span_equal(b.len(), k3.generators.columns(), &pieces), || format!("𝒦₃ ≠ displayed span for g = {g}"))?;
    }
    Ok(())
}

fn c3_bar(opts: &CheckOptions) -> Check {
    let bar_opts = BarOptions { inject_sign_flip: opts.inject_sign_flip };
    let mut built = 0;
    for g in 0..=2 {
        for l in 0..=1 {
            for n in 0..=4 {
                build_bar_complex_with(&surface(g, l), n, bar_opts).map_err(|e| format!("g={g} l={l} n={n}: {e}"))?;
                built += 1;
            }
        }
    }
    let zeta = HSeries::one(3);
    let cell = BarBasisElt::new(vec![vec![2], vec![1]], HBasisElt::empty());
    let d = crate::complex::bar_boundary(&cell, &zeta, BarOptions::default());
    let single = |s: &[Pt]| BarBasisElt::new(vec![s.to_vec()], HBasisElt::empty());
    let want = [(single(&[1, 2]), 1), (single(&[2, 1]), -1)].into_iter().collect();
    ensure(d == want, || format!("Example (ii): {d:?}"))?;
    let cell = BarBasisElt::new(vec![vec![3], vec![1, 2]], HBasisElt::empty());
    let d = crate::complex::bar_boundary(&cell, &zeta, BarOptions::default());
    let want = [(single(&[3, 1, 2]), 1), (single(&[1, 3, 2]), -1), (single(&[1, 2, 3]), 1)].into_iter().collect();
    ensure(d == want, || format!("Example (iii): {d:?}"))?;
    let flipped = build_bar_complex_with(&surface(1, 0), 3, BarOptions { inject_sign_flip: true });
    ensure(flipped.is_err(), || "sign-flip mutation went undetected".into())?;
    ensure(built == 30, || "missing complexes".into())
}

fn c4_trivial_group(_: &CheckOptions) -> Check {
    let s2 = TwoComplexPresentation::parse("gens:\nrel:").map_err(|e| e.to_string())?;
    let xx = TwoComplexPresentation::parse("gens: x\nrel: x").map_err(|e| e.to_string())?;
    for n in 1..=3 {
        let a = hn_presentation(&s2, n).invariants().clone();
        let b = hn_presentation(&xx, n).invariants().clone();
        ensure(a.is_trivial() && b.is_trivial(), || format!("n = {n}: {a} vs {b}"))?;
        let ha = homology_cl(&s2, n, 0).map_err(|e| e.to_string())?;
        let hb = homology_cl(&xx, n, 0).map_err(|e| e.to_string())?;
        ensure(ha.is_trivial() && hb.is_trivial(), || format!("bar complex n = {n}: {ha} vs {hb}"))?;
    }
    Ok(())
}

fn c5_torus(_: &CheckOptions) -> Check {
    let p = surface(1, 0);
    let bar = homology_cl(&p, 2, 0).map_err(|e| e.to_string())?;
    let hn = hn_presentation(&p, 2).invariants().clone();
    ensure(bar == AbGroupInvariants::free(5) && hn == bar, || format!("bar {bar}, presentation {hn}"))
}

/// Totally ordered parts, each on an edge.
type Parts = Vec<(usize, Vec<Pt>)>;

fn all_products(points: &[Pt], r: usize) -> Vec<(Parts, HElement)> {
    // ordered set partitions into totally ordered parts, each with an edge
    fn rec(rest: &[Pt], r: usize, acc: &mut Parts, out: &mut Vec<Parts>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for k in 1..=rest.len() {
            for part in rest.iter().copied().permutations(k) {
                let left: Vec<Pt> = rest.iter().copied().filter(|p| !part.contains(p)).collect();
                for e in 0..r {
                    acc.push((e, part.clone()));
                    rec(&left, r, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut lists = Vec::new();
    rec(points, r, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|parts| {
            let x = parts.iter().fold(HElement::one(), |acc, (e, s)| acc.times(&one(*e, s)));
            (parts, x)
        })
        .collect()
}

fn c6_degeneracy(_: &CheckOptions) -> Check {
    // sign formula on products of ordered parts
    for n in 2..=4u32 {
        let pts: Vec<Pt> = (1..=n).collect();
        for (parts, x) in all_products(&pts, 2) {
            for (i, j) in pts.iter().copied().tuple_combinations() {
                let concat: Vec<Pt> = parts.iter().flat_map(|(_, s)| s.iter().copied()).collect();
                let pos = concat.iter().position(|&p| p == i || p == j).expect("point present");
                let same_part = parts.iter().any(|(_, s)| s.windows(2).any(|w| (w[0] == i && w[1] == j) || (w[0] == j && w[1] == i)));
                let want = if same_part {
                    let merged = parts.iter().fold(HElement::one(), |acc, (e, s)| {
                        let t: Vec<Pt> = s.iter().copied().filter(|&p| p != j.max(i)).collect();
                        if t.is_empty() {
                            acc
                        } else {
                            acc.times(&one(*e, &t))
                        }
                    });
                    merged.scaled(if pos % 2 == 0 { 1 } else { -1 })
                } else {
                    HElement::zero(pts.iter().copied().filter(|&p| p != i.max(j)).collect())
                };
                let got = degeneracy_raw(&x, i, j).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("∂_{i}{j} on {parts:?}"))?;
            }
        }
    }
    // truncation square up to (−1)ⁿ
    for n in 2..=5usize {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        for m in MonomialBasis::new(2, 1, n).words() {
            let top = delta_of_monomial(m, n);
            let lhs = degeneracy(&top, n as Pt - 1, n as Pt).map_err(|e| e.to_string())?;
            let rhs = if m.len() < n { delta_of_monomial(m, n - 1).scaled(sign) } else { HElement::zero_n(n - 1) };
            ensure(lhs == rhs, || format!("truncation square fails on {m:?}, n = {n}"))?;
        }
    }
    // iterated degeneracy kills F^{k+1}
    for n in 2..=4usize {
        let basis = BasisIndex::standard(2, n);
        let pts: Vec<Pt> = (1..=n as Pt).collect();
        for k in 1..n {
            for v in filtration_generators(2, n, k + 1, &basis) {
                let x = basis.element(pts.clone(), &v);
                let y = iterated_degeneracy(&x, k).map_err(|e| e.to_string())?;
                ensure(y.is_zero(), || format!("∂^{k}_{n} survives on F^{}", k + 1))?;
            }
        }
    }
    // anticommutation and Jacobi on full bases
    for n in 3..=4u32 {
        let pts: Vec<Pt> = (1..=n).collect();
        for b in basis_on(&pts, 2) {
            let x = HElement::basis(b);
            let d = |y: &HElement, i: Pt, j: Pt| degeneracy_raw(y, i, j).expect("valid pair");
            for pairs in pts.iter().copied().permutations(4.min(n as usize)) {
                if pairs.len() < 4 {
                    break;
                }
                let (i, j, k, l) = (pairs[0], pairs[1], pairs[2], pairs[3]);
                let lhs = d(&d(&x, k, l), i, j);
                let rhs = d(&d(&x, i, j), k, l);
                ensure(lhs == rhs.scaled(-1), || format!("∂_{i}{j}∂_{k}{l} ≠ −∂_{k}{l}∂_{i}{j}"))?;
            }
            for (i, j, k) in pts.iter().copied().tuple_combinations() {
                let t1 = d(&d(&x, j, k), i, j.min(k));
                let t2 = d(&d(&x, k, i), j, k.min(i));
                let t3 = d(&d(&x, i, j), k, i.min(j));
                ensure(t1.plus(&t2).plus(&t3).is_zero(), || format!("Jacobi fails for ({i},{j},{k})"))?;
            }
        }
    }
    Ok(())
}

fn random_element(rng: &mut ChaCha8Rng, points: &[Pt], r: usize) -> HElement {
    let mut x = HElement::zero(points.to_vec());
    for b in basis_on(points, r) {
        if rng.gen_bool(0.4) {
            x.add_term(b, rng.gen_range(-3..=3));
        }
    }
    x
}

fn c7_shuffle(_: &CheckOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let p = rng.gen_range(0..=2u32);
        let q = rng.gen_range(0..=4 - p);
        let s = rng.gen_range(0..=4 - p - q);
        let a: Vec<Pt> = (1..=p).collect();
        let b: Vec<Pt> = (p + 1..=p + q).collect();
        let c: Vec<Pt> = (p + q + 1..=p + q + s).collect();
        let (x, y, z) = (random_element(&mut rng, &a, 3), random_element(&mut rng, &b, 3), random_element(&mut rng, &c, 3));
        ensure(x.times(&y).times(&z) == x.times(&y.times(&z)), || "associativity fails".into())?;
        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
        ensure(x.times(&y) == y.times(&x).scaled(sign), || format!("exchange law fails for p={p}, q={q}"))?;
    }
    for n in 1..=6 {
        let (monos, _, m) = delta_matrix(1, n);
        let cols: Vec<SparseVec> = monos
            .words()
            .iter()
            .zip(m.columns())
            .filter(|(w, _)| !w.is_empty())
            .map(|(_, c)| c.clone())
            .collect();
        let a = SparseIntMat::from_columns(m.n_rows(), cols);
        ensure(rank(&a) == n, || format!("△ⁿ_ℝ has rank {} on 𝓘_ℝ|{n}", rank(&a)))?;
    }
    Ok(())
}

fn c8_johnson(_: &CheckOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let random_c = |rng: &mut ChaCha8Rng, g: usize| {
        let mut x = TensorElt::zero(1);
        for e in 0..2 * g {
            x.add_term(vec![e], rng.gen_range(-4..=4));
        }
        x
    };
    for g in 2..=3 {
        for _ in 0..5 {
            let c = random_c(&mut rng, g);
            let a = johnson_a(g, 3, std::slice::from_ref(&c)).map_err(|e| e.to_string())?;
            ensure(sn_quotient_membership(g, &a), || "johnson_a(g,3,c) is nonzero in S₃(U)".into())?;
        }
        for _ in 0..20 {
            let (c1, c2) = (random_c(&mut rng, g), random_c(&mut rng, g));
            let a = johnson_a(g, 4, &[c1.clone(), c2.clone()]).map_err(|e| e.to_string())?;
            let diff = a.minus(&johnson_closed_form(g, &c1, &c2));
            ensure(sn_quotient_membership(g, &diff), || format!("closed form fails for g = {g}"))?;
        }
    }
    let g = 2;
    let (c1, c2, x) = (TensorElt::letter(a_edge(1, false)), TensorElt::letter(a_edge(1, true)), TensorElt::letter(a_edge(2, false)));
    let a = johnson_a(g, 4, &[c1, c2]).map_err(|e| e.to_string())?;
    let check = ad_check(g, &a, &x);
    let w = [a_edge(2, false), a_edge(1, false), a_edge(2, true), a_edge(1, true), a_edge(2, false)];
    ensure(check.bracket.coeff(&w) == -2, || format!("coefficient is {}", check.bracket.coeff(&w)))?;
    ensure(!check.vanishes, || "[a,x] lies in the μ-ideal".into())?;
    ensure(mu_insertion_membership(g, &a), || "a is not in the μ-insertion span".into())?;
    let hn = hn_presentation(&surface(g, 0), 4);
    ensure(scfg_image(&hn, &a).iter().all(|c| *c == BigInt::from(0)), || "scfg_image(a) ≠ 0".into())?;
    ensure(scfg_image(&hn_presentation(&surface(g, 0), 2), &mu(g)).iter().all(|c| *c == BigInt::from(0)), || "μ survives".into())
}

fn c9_icfg(_: &CheckOptions) -> Check {
    let k = icfg_kernel(&surface(2, 0), 4).map_err(|e| e.to_string())?;
    ensure(k.invariants.free_rank >= 1, || format!("kernel is {}", k.invariants))
}

fn c10_many_punctures(_: &CheckOptions) -> Check {
    for (g, l, n, k) in [(1, 1, 2, 0), (1, 1, 2, 1), (1, 2, 3, 0)] {
        let r = many_punctures_check(g, l, n, k).map_err(|e| e.to_string())?;
        ensure(r.equal(), || format!("({g},{l},{n},{k}): {} vs {}", r.direct, r.decomposed))?;
        for kk in [-2i64, -1] {
            let r = many_punctures_check(g, l, n, kk).map_err(|e| e.to_string())?;
            ensure(r.direct == 0 && r.decomposed == 0, || "negative codimension is nonzero".into())?;
        }
    }
    Ok(())
}

fn c11_closed(_: &CheckOptions) -> Check {
    for g in 0..=3 {
        let c = closed_surface_complex(g, 1).map_err(|e| e.to_string())?;
        let h: Vec<_> = (0..=2).map(|d| c.complex().homology(d)).collect();
        let want = [AbGroupInvariants::free(1), AbGroupInvariants::free(2 * g), AbGroupInvariants::free(1)];
        ensure(h == want, || format!("conf₁ of genus {g}: {h:?}"))?;
    }
    for g in 0..=2 {
        for n in 1..=3 {
            let c = closed_surface_complex(g, n).map_err(|e| format!("g={g} n={n}: {e}"))?;
            let chi = 2 - 2 * g as i64;
            let want: i64 = (0..n as i64).map(|i| chi - i).product();
            let cells = c.complex().euler_characteristic();
            let homology: i64 = c
                .complex()
                .homology_all()
                .iter()
                .map(|(d, h)| if d % 2 == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) })
                .sum();
            ensure(cells == want && homology == want, || format!("g={g} n={n}: χ = {cells}/{homology}, expected {want}"))?;
        }
    }
    Ok(())
}

fn minors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let zero = BigInt::from(0);
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k] == zero {
                let Some(r) = (k + 1..n).find(|&r| a[r][k] != zero) else { return zero };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::from(1)
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
    fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
        let zero = BigInt::from(0);
        while b != zero {
            let r = &a % &b;
            a = b;
            b = r;
        }
        if a < zero {
            -a
        } else {
            a
        }
    }
    let (rows, cols) = (m.len(), m[0].len());
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::from(0);
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = gcd(g, det(sub));
            }
        }
        if g == BigInt::from(0) {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn c12_intlin(_: &CheckOptions) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for t in 0..500 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=8));
        let m: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-9..=9) }).collect())
            .collect();
        let got = snf(&SparseIntMat::from_rows(&m)).diagonal;
        ensure(got == minors_oracle(&m), || format!("matrix #{t}: {m:?}"))?;
    }
    Ok(())
}

fn c13_endomorphisms(_: &CheckOptions) -> Check {
    for (g, l, n) in [(1, 0, 2), (1, 1, 2), (2, 0, 3)] {
        let spec = SurfaceSpec::new(g, l);
        for e in [EndoSpec::identity(spec), EndoSpec::zeta_conjugation(spec)] {
            let act = act_endomorphism(&e, n).map_err(|e| e.to_string())?;
            ensure(act.is_identity, || format!("({g},{l},{n}): not the identity"))?;
        }
        let twists = ["a1 -> a1 a-1", "a-1 -> a-1 a1"];
        for t in twists {
            let e = EndoSpec::parse(spec, t).map_err(|e| e.to_string())?;
            act_endomorphism(&e, n).map_err(|err| format!("({g},{l},{n}) `{t}`: {err}"))?;
        }
        if l > 0 {
            let e = EndoSpec::parse(spec, "b1 -> b1 a1 a-1 a1^-1 a-1^-1").map_err(|e| e.to_string())?;
            let act = act_endomorphism(&e, n).map_err(|err| err.to_string())?;
            ensure(act.is_identity, || "pushing b₁ around ζ is not trivial".into())?;
        }
    }
    Ok(())
}

/// Test hooks.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Flip one sign in the bar boundary; the ∂² = 0 check must then fail.
    pub inject_sign_flip: bool,
}

#[derive(Clone, Copy)]
pub struct Certificate {
    pub id: u32,
    pub name: &'static str,
    /// Wall-clock budget in seconds; `None` for unbounded items.
    pub budget: Option<u64>,
    pub run: fn(&CheckOptions) -> Check,
}

pub fn certificates() -> Vec<Certificate> {
    let c = |id, name, budget, run| Certificate { id, name, budget, run };
    vec![
        c(1, "△-certificates", Some(3), c1_delta as fn(&CheckOptions) -> Check),
        c(2, "kernel table", Some(10), c2_kernel),
        c(3, "bar-complex soundness", Some(60), c3_bar),
        c(4, "fundamental-group dependence", Some(5), c4_trivial_group),
        c(5, "torus benchmark", Some(5), c5_torus),
        c(6, "degeneracy suite", Some(60), c6_degeneracy),
        c(7, "shuffle algebra", Some(30), c7_shuffle),
        c(8, "Johnson comparison", Some(30), c8_johnson),
        c(9, "𝓘ᶜᶠᵍ nonvanishing", None, c9_icfg),
        c(10, "many punctures", Some(120), c10_many_punctures),
        c(11, "closed surface", Some(120), c11_closed),
        c(12, "intlin oracle", Some(30), c12_intlin),
        c(13, "endomorphism action", Some(60), c13_endomorphisms),
    ]
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub secs: f64,
    pub result: Check,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

/// Runs one item; panics and budget overruns count as failures.
pub fn run_certificate(c: &Certificate, opts: &CheckOptions) -> Outcome {
    let t = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| (c.run)(opts))).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panic: {}", msg.unwrap_or_default()))
    });
    let secs = t.elapsed().as_secs_f64();
    let result = match (result, c.budget) {
        (Ok(()), Some(b)) if secs > b as f64 => Err(format!("exceeded {b} s budget")),
        (r, _) => r,
    };
    Outcome { id: c.id, name: c.name, secs, result }
}
