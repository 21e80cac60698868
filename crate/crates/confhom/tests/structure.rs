use confhom::complex::{descend, fn_map, HnPresentation};
use confhom::degeneracy::{degeneracy_matrix, degeneracy_on_quotient};
use confhom::graded::{MuIdeal, MuSpan};
use confhom::magnus::{delta_matrix_to_u, MonomialBasis};
use confhom::shuffle::{HElement, Pt};
use confhom::surfaces::{act_endomorphism, EndoSpec, SurfaceSpec};
use confhom::{build_bar_complex, filtration_ranks, homology_cl, TwoComplexPresentation};
use intlin::{rank, AbGroupInvariants, SparseIntMat};

fn torus() -> TwoComplexPresentation {
    SurfaceSpec::new(1, 0).presentation()
}

fn line() -> TwoComplexPresentation {
    TwoComplexPresentation::parse("gens: x").unwrap()
}

#[test]
fn homology_lives_in_degrees_n_to_2n() {
    let cases = [
        (torus(), 1),
        (torus(), 2),
        (torus(), 3),
        (SurfaceSpec::new(2, 0).presentation(), 2),
        (TwoComplexPresentation::parse("gens: x y\nrel: x y x^-1 y").unwrap(), 2),
        (TwoComplexPresentation::parse("gens: x\nrel: x x").unwrap(), 2),
    ];
    for (p, n) in cases {
        let cx = build_bar_complex(&p, n).unwrap();
        for (d, h) in cx.complex().homology_all() {
            if !(n..=2 * n).contains(&d) {
                assert!(h.is_trivial(), "H_{d} = {h} for n = {n}");
            }
        }
        assert_eq!(&cx.complex().homology(n), HnPresentation::new(&p, n).invariants());
    }
}

#[test]
fn line_has_factorial_rank() {
    for n in 1..=5 {
        let fact: usize = (1..=n).product();
        assert_eq!(homology_cl(&line(), n, 0).unwrap(), AbGroupInvariants::free(fact));
    }
}

#[test]
fn filtration_of_the_line() {
    let f = filtration_ranks(&line(), 2).unwrap();
    assert_eq!(f, vec![AbGroupInvariants::free(1), AbGroupInvariants::free(1)]);
}

#[test]
fn filtration_sums_to_total_rank() {
    for (p, n) in [(torus(), 2), (torus(), 3), (SurfaceSpec::new(2, 0).presentation(), 2)] {
        let f = filtration_ranks(&p, n).unwrap();
        let total = HnPresentation::new(&p, n).invariants().clone();
        assert!(total.is_free());
        assert_eq!(f.iter().map(|g| g.free_rank).sum::<usize>(), total.free_rank);
        // Fⁿ is the image of S₁^{⊗n}
        let (_, m) = fn_map(&p, n);
        assert_eq!(f[n - 1].free_rank, rank(&m), "n = {n}");
    }
}

#[test]
fn degeneracies_are_onto() {
    for n in 2..=3 {
        for i in 1..=n as Pt {
            for j in i + 1..=n as Pt {
                assert!(degeneracy_on_quotient(&torus(), n, i, j).unwrap().surjective, "n = {n}, ({i},{j})");
            }
        }
    }
    assert!(degeneracy_on_quotient(&torus(), 4, 3, 4).unwrap().surjective);
    assert!(degeneracy_on_quotient(&torus(), 4, 1, 3).unwrap().surjective);
}

#[test]
fn lambda_tower_is_onto() {
    let p = torus();
    let mut prev_rank = None;
    for n in 1..=3usize {
        let (monos_hi, hn_hi, d_hi) = delta_matrix_to_u(&p, n + 1);
        let (monos_lo, hn_lo, d_lo) = delta_matrix_to_u(&p, n);
        assert_eq!(monos_hi.len(), MonomialBasis::new(2, 0, n + 1).len());
        let deg = degeneracy_matrix(hn_hi.basis(), hn_lo.basis(), n as Pt, n as Pt + 1).unwrap();
        let deg = descend(&hn_hi, &hn_lo, &deg).unwrap();
        let composed = deg.mul(&d_hi);
        let (r_lo, r_hi) = (rank(&d_lo), rank(&d_hi));
        assert!(r_hi >= r_lo);
        assert_eq!(rank(&composed), r_lo, "n = {n}");
        assert!(monos_lo.len() < monos_hi.len());
        if let Some(r) = prev_rank {
            assert!(r_lo >= r);
        }
        prev_rank = Some(r_lo);
    }
}

#[test]
fn top_graded_map_is_not_injective() {
    let (g, n) = (2, 3);
    let p = SurfaceSpec::new(g, 0).presentation();
    let (_, m) = fn_map(&p, n);
    let source = (2 * g).pow(n as u32) - MuIdeal::new(g, n, MuSpan::Adjacent).rank();
    let image = rank(&m);
    assert!(image < source, "image {image}, S_n rank {source}");
}

fn relabel_matrix(hn: &HnPresentation, sigma: &[Pt]) -> SparseIntMat {
    let basis = hn.basis();
    let cols = basis
        .elts()
        .iter()
        .map(|b| basis.vector(&HElement::basis(b.clone()).relabel(|p| sigma[(p - 1) as usize])))
        .collect();
    SparseIntMat::from_columns(basis.len(), cols)
}

#[test]
fn endomorphisms_commute_with_relabeling() {
    let spec = SurfaceSpec::new(1, 0);
    let maps = [
        EndoSpec::parse(spec, "a1 -> a1 a-1").unwrap(),
        EndoSpec::zeta_conjugation(spec),
    ];
    for e in maps {
        let act = act_endomorphism(&e, 3).unwrap();
        for sigma in [[2, 1, 3], [2, 3, 1]] {
            let s = relabel_matrix(&act.hn, &sigma);
            assert_eq!(act.u1_matrix.mul(&s), s.mul(&act.u1_matrix));
        }
    }
}
