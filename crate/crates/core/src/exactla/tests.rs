use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_smith(a: &IntMatrix) -> SmithForm {
    let s = smith_normal_form(a);
    assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U*A*V != D for {a:?}");
    assert!(determinant(&s.u).magnitude().is_one());
    assert!(determinant(&s.v).magnitude().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag: Vec<BigInt> = (0..s.d.rows().min(s.d.cols())).map(|i| s.d[(i, i)].clone()).collect();
    for w in diag.windows(2) {
        assert!(w[0] >= BigInt::zero());
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken: {diag:?}");
        }
    }
    s
}

#[test]
fn smith_examples() {
    let s = check_smith(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
    assert_eq!(s.d, IntMatrix::from_rows(&[[1, 0], [0, 6]]));

    let s = check_smith(&IntMatrix::identity(3));
    assert_eq!(s.d, IntMatrix::identity(3));

    let s = check_smith(&IntMatrix::from_rows(&[[0]]));
    assert_eq!(s.d, IntMatrix::from_rows(&[[0]]));

    let s = check_smith(&IntMatrix::zeros(0, 3));
    assert_eq!(s.d.rows(), 0);
    assert_eq!(s.v, IntMatrix::identity(3));
}

#[test]
fn kernel_examples() {
    let k = integer_kernel(&IntMatrix::from_rows(&[[1, 1]]));
    assert_eq!(k.cols(), 1);
    let v = k.column(0);
    assert!(v == vec![BigInt::from(1), BigInt::from(-1)] || v == vec![BigInt::from(-1), BigInt::from(1)]);
    // brute force: every small integral solution is an integer multiple of v
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            if x + y == 0 {
                let w = [BigInt::from(x), BigInt::from(y)];
                let l = ColumnLattice::from_generators(&k);
                assert!(l.contains(&w));
            }
        }
    }

    let k = integer_kernel(&IntMatrix::from_rows(&[[2, 1], [1, 1]]));
    assert_eq!(k.cols(), 0);

    let k = integer_kernel(&IntMatrix::zeros(1, 2));
    assert_eq!(k.cols(), 2);
}

/// Counts the classes of `Z^2 / L` by testing pairwise membership of
/// differences over a box of representatives.
fn coset_count_oracle(gens: &IntMatrix, bound: i64) -> usize {
    let l = ColumnLattice::from_generators(gens);
    let mut reps: Vec<[i64; 2]> = Vec::new();
    for x in 0..bound {
        for y in 0..bound {
            let fresh = reps.iter().all(|r| {
                !l.contains(&[BigInt::from(x - r[0]), BigInt::from(y - r[1])])
            });
            if fresh {
                reps.push([x, y]);
            }
        }
    }
    reps.len()
}

#[test]
fn lattice_index_examples() {
    let three = IntMatrix::scalar(2, 3);
    assert_eq!(lattice_index(&three, &IntMatrix::identity(2)).unwrap(), rat(9, 1));

    let other_basis = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
    assert_eq!(lattice_index(&other_basis, &IntMatrix::identity(2)).unwrap(), rat(1, 1));

    let sub = IntMatrix::from_rows(&[[2, 1], [0, 1]]);
    let expected = coset_count_oracle(&sub, 4);
    assert_eq!(expected, 2);
    assert_eq!(
        lattice_index(&sub, &IntMatrix::identity(2)).unwrap(),
        rat(expected as i64, 1)
    );

    assert_eq!(
        lattice_index(&IntMatrix::zeros(3, 0), &IntMatrix::zeros(3, 0)).unwrap(),
        rat(1, 1)
    );
}

#[test]
fn lattice_index_errors() {
    let sub = IntMatrix::from_rows(&[[1], [0]]);
    assert!(matches!(
        lattice_index(&sub, &IntMatrix::identity(2)),
        Err(Error::InfiniteIndex { .. })
    ));
    let sup = IntMatrix::scalar(2, 2);
    assert_eq!(lattice_index(&IntMatrix::identity(2), &sup), Err(Error::NotSublattice));
}

#[test]
fn gram_determinant_examples() {
    let one = rat(1, 1);
    assert_eq!(
        gram_determinant(&IntMatrix::identity(2), &IntMatrix::identity(2), &one).unwrap(),
        one
    );
    assert_eq!(
        gram_determinant(&IntMatrix::from_rows(&[[2]]), &IntMatrix::from_rows(&[[1]]), &rat(1, 2))
            .unwrap(),
        one
    );
    // basis (1,0), (1,2): Gram matrix [[1,1],[1,5]], determinant 4
    let basis = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
    assert_eq!(
        gram_determinant(&IntMatrix::identity(2), &basis, &one).unwrap(),
        rat(4, 1)
    );
    assert_eq!(
        gram_determinant(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0), &rat(7, 3)).unwrap(),
        one
    );
    assert_eq!(
        gram_determinant(&IntMatrix::from_rows(&[[1, 2], [0, 1]]), &IntMatrix::identity(2), &one),
        Err(Error::NotSymmetric)
    );
}

#[test]
fn hermite_form_is_canonical() {
    let a = IntMatrix::from_rows(&[[1, -2, -1, 2], [2, -4, 0, 2]]);
    let b = IntMatrix::from_rows(&[[3, -6, -1, 4], [1, -2, -1, 2]]);
    assert_eq!(row_hermite_form(&a), row_hermite_form(&b));
    let h = row_hermite_form(&a);
    assert_eq!(h.rows(), 2);
    assert!(h[(0, 0)] > BigInt::zero());
}

#[test]
fn inverse_of_unimodular() {
    let u = IntMatrix::from_rows(&[[2, 3], [1, 2]]);
    let inv = inverse_unimodular(&u).unwrap();
    assert_eq!(u.mul(&inv), IntMatrix::identity(2));
    assert!(inverse_unimodular(&IntMatrix::scalar(2, 2)).is_err());
}

fn matrix_strategy(max_rows: usize, max_cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-range..=range, r * c).prop_map(move |v| {
            IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn square_strategy(n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, n * n)
        .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn unimodular_strategy(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (a, b, q, neg) in ops {
            if a != b {
                u.add_row_multiple(a, b, &BigInt::from(q));
            }
            if neg {
                u.negate_row(a);
            }
        }
        u
    })
}

proptest! {
    #[test]
    fn smith_reconstructs(a in matrix_strategy(5, 5, 6)) {
        check_smith(&a);
    }

    #[test]
    fn kernel_is_annihilated_and_saturated(a in matrix_strategy(4, 6, 5)) {
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank(&a));
        let s = smith_normal_form(&k);
        prop_assert!(s.invariant_factors().iter().all(|d| d.is_one()));
    }

    #[test]
    fn index_matches_smith_factors(a in square_strategy(3, 6)) {
        prop_assume!(!determinant(&a).is_zero());
        let idx = lattice_index(&a, &IntMatrix::identity(3)).unwrap();
        let product: BigInt = smith_normal_form(&a).invariant_factors().iter().product();
        prop_assert_eq!(idx, BigRational::from_integer(product));
    }

    #[test]
    fn gram_determinant_unimodular_invariance(
        b in square_strategy(3, 4),
        u in unimodular_strategy(3),
        d in prop::collection::vec(1i64..5, 3),
    ) {
        let p = IntMatrix::from_rows(&[[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]]);
        let scale = rat(1, 2);
        let before = gram_determinant(&p, &b, &scale).unwrap();
        let after = gram_determinant(&p, &b.mul(&u), &scale).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn determinant_matches_smith(a in square_strategy(4, 5)) {
        let s = smith_normal_form(&a);
        let d: BigInt = (0..a.rows()).map(|i| s.d[(i, i)].clone()).product();
        let det = determinant(&a);
        prop_assert_eq!(det.magnitude(), d.magnitude());
    }
}
