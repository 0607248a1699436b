mod common;

use common::{int_matrix, leibniz};
use detrep_core::linalg::{in_column_space, kernel_basis, rank, report, ExactMatrix, Membership};
use detrep_core::poly::{int, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn mat(rows: Vec<Vec<Rat>>) -> ExactMatrix {
    ExactMatrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_of_transpose(m in int_matrix(5, 7)) {
        let m = mat(m);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_under_permutations(m in int_matrix(4, 6), shift in 0usize..6) {
        let m = mat(m);
        let cols: Vec<_> = (0..6).map(|j| m.column((j + shift) % 6)).collect();
        let permuted = ExactMatrix::from_columns(4, &cols).unwrap();
        prop_assert_eq!(rank(&m), rank(&permuted));
        let mut rows: Vec<_> = (0..4).map(|i| m.row(i).to_vec()).collect();
        rows.reverse();
        prop_assert_eq!(rank(&m), rank(&mat(rows)));
    }

    #[test]
    fn spanned_column_keeps_rank(m in int_matrix(5, 3), c in proptest::collection::vec(-3i64..=3, 3)) {
        let m = mat(m);
        let c: Vec<Rat> = c.into_iter().map(int).collect();
        let v = m.mul_vec(&c).unwrap();
        prop_assert_eq!(rank(&m.augment(&v).unwrap()), rank(&m));
        let member = in_column_space(&m, &v).unwrap();
        prop_assert!(member.is_member());
        prop_assert!(member.verify(&m, &v));
    }

    #[test]
    fn kernel_is_certified(m in int_matrix(4, 7)) {
        let m = mat(m);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + rank(&m), 7);
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            prop_assert_eq!(rank(&mat(k)), 7 - rank(&m));
        }
    }

    #[test]
    fn nonmembership_witness(m in int_matrix(5, 2), v in proptest::collection::vec(-5i64..=5, 5)) {
        let m = mat(m);
        let v: Vec<Rat> = v.into_iter().map(int).collect();
        let r = in_column_space(&m, &v).unwrap();
        prop_assert!(r.verify(&m, &v));
        if let Membership::NotInSpan { .. } = r {
            prop_assert_eq!(rank(&m.augment(&v).unwrap()), rank(&m) + 1);
        }
    }

    #[test]
    fn square_rank_matches_determinant(m in int_matrix(4, 4)) {
        let full = rank(&mat(m.clone())) == 4;
        prop_assert_eq!(full, !leibniz(&m).is_zero());
    }
}

#[test]
fn report_on_wide_matrix() {
    let m = ExactMatrix::from_i64_rows(&[&[1, 0, 2], &[0, 1, 3]]);
    let r = report(&m);
    assert_eq!((r.rank, r.domain_dim, r.target_dim), (2, 3, 2));
    assert!(r.surjective);
    assert!(r.cokernel_witness.is_none());
    let thin = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[0, 0]]);
    let r = report(&thin);
    assert!(!r.surjective);
    let w = r.cokernel_witness.unwrap();
    assert!(thin.left_mul_vec(&w).unwrap().iter().all(Zero::is_zero));
}
