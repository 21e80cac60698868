use confhom::degeneracy::{degeneracy, iterated_degeneracy};
use confhom::magnus::{delta_of_monomial, magnus_expand, FreeGroupWord, TruncAlgElt};
use confhom::shuffle::{basis_on, delta_of_word, HElement, HSeries, Pt};
use confhom::surfaces::{delta_zeta, mu_element};
use proptest::prelude::*;

fn word_strategy(r: usize, max_len: usize) -> impl Strategy<Value = FreeGroupWord> {
    proptest::collection::vec((0..r, prop_oneof![Just(1i8), Just(-1i8)]), 0..max_len).prop_map(FreeGroupWord::new)
}

fn element_strategy(points: Vec<Pt>, r: usize) -> impl Strategy<Value = HElement> {
    let basis = basis_on(&points, r);
    proptest::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        let mut x = HElement::zero(points.clone());
        for (b, c) in basis.iter().zip(cs) {
            x.add_term(b.clone(), c);
        }
        x
    })
}

fn series_eq(a: &HSeries, b: &HSeries) -> bool {
    a.constant() == b.constant() && (1..=a.n_max()).all(|k| a.component(k) == b.component(k))
}

/// △ⁿ(w) read off the Magnus expansion monomial by monomial.
fn delta_via_magnus(w: &FreeGroupWord, n: usize) -> HElement {
    let e = magnus_expand(w, n);
    let mut out = HElement::zero_n(n);
    for (m, &c) in e.terms() {
        out.add_scaled(&delta_of_monomial(m, n), c);
    }
    out
}

fn commutator(x: &FreeGroupWord, y: &FreeGroupWord) -> FreeGroupWord {
    x.concat(y).concat(&x.inverse()).concat(&y.inverse())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(
        x in element_strategy(vec![1], 2),
        y in element_strategy(vec![2, 3], 2),
        z in element_strategy(vec![4], 2),
    ) {
        prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
    }

    #[test]
    fn product_exchange_sign(x in element_strategy(vec![1, 2], 2), y in element_strategy(vec![3], 3)) {
        // (−1)^{pq} with p = 2, q = 1
        prop_assert_eq!(x.times(&y), y.times(&x));
        let z = HElement::basis(basis_on(&[4], 1)[0].clone());
        prop_assert_eq!(y.times(&z), z.times(&y).scaled(-1));
    }

    #[test]
    fn magnus_is_multiplicative(u in word_strategy(3, 6), v in word_strategy(3, 6)) {
        let n = 4;
        prop_assert_eq!(magnus_expand(&u.concat(&v), n), magnus_expand(&u, n).mul(&magnus_expand(&v, n)));
    }

    #[test]
    fn delta_is_a_ring_homomorphism(u in word_strategy(2, 5), v in word_strategy(2, 5)) {
        let n = 3;
        prop_assert!(series_eq(&delta_of_word(&u.concat(&v), n), &delta_of_word(&u, n).mul(&delta_of_word(&v, n))));
        let inv = delta_of_word(&u, n).inverse().unwrap();
        prop_assert!(series_eq(&delta_of_word(&u.inverse(), n), &inv));
    }

    #[test]
    fn delta_factors_through_magnus(w in word_strategy(2, 6), n in 1usize..=4) {
        prop_assert_eq!(delta_of_word(&w, n).component(n), delta_via_magnus(&w, n));
    }

    #[test]
    fn truncation_square(w in word_strategy(2, 6), n in 2usize..=5) {
        let top = delta_of_word(&w, n).component(n);
        let low = delta_of_word(&w, n - 1).component(n - 1);
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(degeneracy(&top, n as Pt - 1, n as Pt).unwrap(), low.scaled(sign));
    }

    #[test]
    fn degeneracy_commutes_with_relabeling(x in element_strategy(vec![1, 2, 3], 2), perm in Just(vec![1u32, 2, 3]).prop_shuffle()) {
        // ∂_{σ1,σ2}·σ = σ'·∂_12, where σ' sends the merged point to min(σ1, σ2)
        let s = |p: Pt| perm[(p - 1) as usize];
        let t = |p: Pt| if p == 1 { s(1).min(s(2)) } else { s(p) };
        let lhs = degeneracy(&x.relabel(s), s(1), s(2)).unwrap();
        let raw = confhom::degeneracy::degeneracy_raw(&x, 1, 2).unwrap().relabel(t);
        let rhs = confhom::degeneracy::normalize(&raw);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn edge_relabeling_is_natural(x in element_strategy(vec![1, 2, 3], 2)) {
        let swap = |b: &confhom::shuffle::HBasisElt| {
            confhom::shuffle::HBasisElt::from_fibers(b.fibers().iter().map(|(e, s)| (1 - e, s.clone())).collect()).unwrap()
        };
        let sw = |y: &HElement| {
            let mut out = HElement::zero(y.points().to_vec());
            for (b, &c) in y.terms() {
                // the canonical word changes with the edge order
                let nb = swap(b);
                let sign = confhom::shuffle::perm_sign(&b.word(), &nb.word());
                out.add_term(nb, c * sign);
            }
            out
        };
        prop_assert_eq!(degeneracy(&sw(&x), 2, 3).unwrap(), sw(&degeneracy(&x, 2, 3).unwrap()));
    }

    #[test]
    fn depends_only_on_class_mod_augmentation_power(
        u in word_strategy(3, 5),
        v in word_strategy(3, 5),
        gens in proptest::collection::vec(word_strategy(3, 3), 4),
        n in 1usize..=3,
    ) {
        // an (n+1)-fold commutator c has c − 1 in 𝓘^{n+1}
        let c = gens[1..=n].iter().fold(gens[0].clone(), |acc, g| commutator(&acc, g));
        let w = u.concat(&v);
        let w2 = u.concat(&c).concat(&v);
        prop_assert_eq!(delta_of_word(&w, n).component(n), delta_of_word(&w2, n).component(n));
    }

    #[test]
    fn series_inverse(w in word_strategy(3, 5)) {
        let s = delta_of_word(&w, 4);
        prop_assert!(series_eq(&s.mul(&s.inverse().unwrap()), &HSeries::one(4)));
    }

    #[test]
    fn truncated_algebra_inverse(w in word_strategy(2, 5)) {
        let one = TruncAlgElt::one(4);
        prop_assert_eq!(magnus_expand(&w, 4).mul(&magnus_expand(&w.inverse(), 4)), one);
    }
}

#[test]
fn zeta_degenerates_to_mu() {
    for g in 1..=2 {
        for n in 2..=5 {
            let d = iterated_degeneracy(&delta_zeta(g, n), 2).unwrap();
            let mu = mu_element(g);
            assert!(d == mu || d == mu.scaled(-1), "g = {g}, n = {n}");
        }
    }
}
