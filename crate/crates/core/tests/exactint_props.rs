use linesand::exactint::{
    determinant, hermite_normal_form, lattice_contains, smith_normal_form, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c).prop_map(move |xs| {
            IntMatrix::from_entries(r, c, xs.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    (0..n)
        .map(|j| {
            let term = &m[(0, j)] * cofactor_det(&m.minor_matrix(0, j));
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all i×i minors, for i = 1..=min(rows, cols).
fn minor_gcds(m: &IntMatrix) -> Vec<BigInt> {
    let r = m.rows().min(m.cols());
    (1..=r)
        .map(|i| {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows(), i) {
                for cols in subsets(m.cols(), i) {
                    let sub = m.select_rows(rows.iter().copied()).select_columns(cols.iter().copied());
                    g = g.gcd(&cofactor_det(&sub));
                }
            }
            g
        })
        .collect()
}

fn assert_hermite_shape(h: &IntMatrix) {
    let mut last_pivot: Option<usize> = None;
    for j in 0..h.cols() {
        let col = h.column(j);
        let Some(p) = col.iter().position(|x| !x.is_zero()) else {
            // zero columns trail
            assert!((j..h.cols()).all(|l| h.column(l).iter().all(Zero::is_zero)));
            return;
        };
        assert!(last_pivot.is_none_or(|lp| p > lp), "pivots must strictly descend");
        assert!(col[p].is_positive());
        for l in 0..j {
            assert!(!h[(p, l)].is_negative() && h[(p, l)] < col[p]);
        }
        last_pivot = Some(p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_reconstructs_and_is_canonical(m in matrix(8, 50)) {
        let d = smith_normal_form(&m);
        prop_assert_eq!(&(&d.u * &m) * &d.v, d.s.clone());
        prop_assert_eq!(determinant(&d.u).unwrap().abs(), BigInt::one());
        prop_assert_eq!(determinant(&d.v).unwrap().abs(), BigInt::one());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    prop_assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn snf_matches_minor_gcds(m in matrix(4, 9)) {
        let diag = smith_normal_form(&m).diagonal();
        let mut prefix = BigInt::one();
        for (d, g) in diag.iter().zip(minor_gcds(&m)) {
            prefix *= d;
            prop_assert_eq!(&prefix, &g);
        }
    }

    #[test]
    fn hnf_reconstructs(m in matrix(8, 50)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(&m * &u, h.clone());
        prop_assert_eq!(determinant(&u).unwrap().abs(), BigInt::one());
        assert_hermite_shape(&h);
    }

    #[test]
    fn determinant_matches_cofactors(
        m in (1usize..=4).prop_flat_map(|n| proptest::collection::vec(-50i64..=50, n * n)
            .prop_map(move |xs| IntMatrix::from_entries(n, n, xs.into_iter().map(BigInt::from).collect()).unwrap()))
    ) {
        prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn image_vectors_have_witnesses(
        (m, x) in matrix(6, 20).prop_flat_map(|m| {
            let c = m.cols();
            (Just(m), proptest::collection::vec(-20i64..=20, c))
        })
    ) {
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let b = m.mul_vec(&x).unwrap();
        let w = lattice_contains(&m, &b).unwrap();
        prop_assert!(w.is_some());
        prop_assert_eq!(m.mul_vec(&w.unwrap()).unwrap(), b);
    }
}

#[test]
fn large_entries_stay_exact() {
    // Entries well past i64 after elimination.
    let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
    let m = IntMatrix::from_entries(
        2,
        2,
        vec![big.clone(), BigInt::from(3), BigInt::from(7), big.clone() + 1],
    )
    .unwrap();
    let d = smith_normal_form(&m);
    assert_eq!(&(&d.u * &m) * &d.v, d.s);
    let det = determinant(&m).unwrap();
    assert_eq!(det, &big * (&big + 1) - 21);
    assert_eq!(&d.s[(0, 0)] * &d.s[(1, 1)], det.abs());
}
