use defcyc_core::fgabelian::{snf, solve_congruences, solve_integer, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-50i64..=50, c), r))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| combinations(last, k - 1).into_iter().map(move |mut c| {
            c.push(last);
            c
        }))
        .collect()
}

// gcd of all k x k minors: the k-th determinantal divisor.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let minor: Vec<Vec<BigInt>> =
                rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
            g = g.gcd(&IntMatrix::from_rows(&minor).unwrap().determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_postconditions(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = snf(&a);
        prop_assert_eq!(&s.u.mul(&a).mul(&s.v), &s.d);
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.determinant().abs(), BigInt::from(1));
        let inv = s.invariants();
        prop_assert!(inv.iter().all(|d| !d.is_negative()));
        for w in inv.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides, "{} does not divide {}", w[0], w[1]);
        }
        let mut product = BigInt::from(1);
        for (k, d) in inv.iter().enumerate().take(4) {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&a, k + 1));
        }
    }

    #[test]
    fn integer_systems(rows in matrix(), x in prop::collection::vec(-9i64..=9, 5), b in prop::collection::vec(-30i64..=30, 5)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| v.into()).collect();
        let ax = a.mul_vec(&x);
        let sol = solve_integer(&a, &ax).expect("A x is in the image");
        prop_assert_eq!(a.mul_vec(&sol.particular), ax);
        prop_assert_eq!(sol.kernel.len(), a.cols() - snf(&a).rank());
        for k in &sol.kernel {
            prop_assert!(a.mul_vec(k).iter().all(|v| v.is_zero()));
        }
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&v| v.into()).collect();
        if let Some(sol) = solve_integer(&a, &b) {
            prop_assert_eq!(a.mul_vec(&sol.particular), b);
        }
    }

    #[test]
    fn congruences_match_brute_force(m in 1i64..=30, eqs in prop::collection::vec((-40i64..=40, -40i64..=40), 0..3)) {
        let expected: Vec<BigInt> = (0..m)
            .filter(|y| eqs.iter().all(|(k, c)| (k * y - c).rem_euclid(m) == 0))
            .map(BigInt::from)
            .collect();
        let eqs: Vec<(BigInt, BigInt)> = eqs.iter().map(|&(k, c)| (k.into(), c.into())).collect();
        prop_assert_eq!(solve_congruences(&eqs, &BigInt::from(m)), expected);
    }
}

#[test]
fn a_classic_example() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    assert_eq!(snf(&a).invariants(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
}
