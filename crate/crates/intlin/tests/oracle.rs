use intlin::{hnf, image_membership, kernel_basis, rank, snf, BigInt, Quotient, SparseIntMat, SparseVec};
use subsets::combinations;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

mod subsets {
    /// All k-subsets of 0..n in lexicographic order.
    pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
}

/// Fraction-free (Bareiss) determinant.
fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
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
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

fn gcd(a: BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b)
}

/// Invariant factors from determinant divisors d_k = gcd of k×k minors.
fn minors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = gcd(g, &det(sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(
            prop_oneof![3 => Just(0i64), 5 => -9i64..=9],
            c,
        ), r)
    })
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular_strategy(n: usize) -> impl Strategy<Value = SparseIntMat> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u = SparseIntMat::identity(n);
        for (i, j, f, swap) in ops {
            let mut e = SparseIntMat::identity(n);
            if swap {
                e.set(i, i, BigInt::zero());
                e.set(j, j, BigInt::zero());
                e.set(i, j, BigInt::one());
                e.set(j, i, BigInt::one());
                if i == j {
                    e.set(i, i, -BigInt::one());
                }
            } else if i != j {
                e.set(i, j, BigInt::from(f));
            }
            u = u.mul(&e);
        }
        u
    })
}

fn dense_det(m: &SparseIntMat) -> BigInt {
    det(m.to_dense())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_matches_determinant_divisors(m in matrix_strategy(6, 8)) {
        let s = snf(&SparseIntMat::from_rows(&m));
        prop_assert_eq!(s.diagonal, minors_oracle(&m));
    }

    #[test]
    fn rank_plus_nullity(m in matrix_strategy(6, 8)) {
        let a = SparseIntMat::from_rows(&m);
        let k = kernel_basis(&a);
        prop_assert_eq!(rank(&a) + k.len(), a.n_cols());
        prop_assert_eq!(rank(&a), snf(&a).rank);
        for v in &k {
            prop_assert!(a.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn hnf_transform_is_unimodular(m in matrix_strategy(5, 5)) {
        let a = SparseIntMat::from_rows(&m);
        let (h, u) = hnf(&a);
        prop_assert_eq!(a.mul(&u), h);
        prop_assert_eq!(dense_det(&u).abs(), BigInt::one());
    }

    #[test]
    fn hnf_is_a_column_span_invariant(m in matrix_strategy(4, 5), v in unimodular_strategy(5)) {
        let a = SparseIntMat::from_rows(&m);
        let cols = a.n_cols();
        let v = {
            // restrict the 5×5 unimodular matrix to the actual width
            let mut w = SparseIntMat::identity(cols);
            for j in 0..cols { for i in 0..cols { w.set(i, j, v.get(i, j)); } }
            if dense_det(&w).abs().is_one() { w } else { SparseIntMat::identity(cols) }
        };
        prop_assert_eq!(hnf(&a).0, hnf(&a.mul(&v)).0);
    }

    #[test]
    fn snf_invariant_under_unimodular(m in matrix_strategy(5, 5), l in unimodular_strategy(5), r in unimodular_strategy(5)) {
        let a = SparseIntMat::from_rows(&m);
        let (nr, nc) = (a.n_rows(), a.n_cols());
        let restrict = |u: &SparseIntMat, n: usize| {
            let mut w = SparseIntMat::identity(n);
            for j in 0..n { for i in 0..n { w.set(i, j, u.get(i, j)); } }
            if dense_det(&w).abs().is_one() { w } else { SparseIntMat::identity(n) }
        };
        let b = restrict(&l, nr).mul(&a).mul(&restrict(&r, nc));
        prop_assert_eq!(snf(&a).diagonal, snf(&b).diagonal);
    }

    #[test]
    fn membership_witness_is_valid(m in matrix_strategy(4, 4), x in proptest::collection::vec(-5i64..=5, 4)) {
        let a = SparseIntMat::from_rows(&m);
        let w: SparseVec = x.iter().take(a.n_cols()).enumerate()
            .filter(|(_, &c)| c != 0).map(|(i, &c)| (i, BigInt::from(c))).collect();
        let v = a.mul_vec(&w);
        let witness = image_membership(&a, &v).expect("image vector must be found");
        prop_assert_eq!(a.mul_vec(&witness), v);
    }

    #[test]
    fn quotient_invariants_match_cokernel(m in matrix_strategy(6, 6)) {
        let a = SparseIntMat::from_rows(&m);
        let q = Quotient::new(&a);
        prop_assert_eq!(q.invariants(), &snf(&a).cokernel);
        for c in a.columns() {
            prop_assert!(q.is_zero(c));
        }
        for i in 0..q.n_coords() {
            let mut e = vec![BigInt::zero(); q.n_coords()];
            e[i] = BigInt::one();
            prop_assert_eq!(q.project(&q.lift(&e)), e);
        }
    }
}

#[test]
fn oracle_sanity() {
    assert_eq!(minors_oracle(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
    assert_eq!(minors_oracle(&[vec![0, 0], vec![0, 0]]), Vec::<BigInt>::new());
}
