use proptest::prelude::*;
use proptest::sample::subsequence;
use syndromelab_core::model::text::{parse_text, to_text};
use syndromelab_core::{BitVec, DecodingModel, SparseBitMatrix};

// dense oracle: one bool vector per column
fn dense(h: &SparseBitMatrix) -> Vec<Vec<bool>> {
    (0..h.n_cols())
        .map(|j| (0..h.n_rows()).map(|i| h.get(i, j)).collect())
        .collect()
}

fn matrix() -> impl Strategy<Value = SparseBitMatrix> {
    (1usize..=64, 1usize..=256).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::collection::btree_set(0..rows, 0..=6), cols).prop_map(
            move |cols| {
                let cols = cols.into_iter().map(|s| s.into_iter().collect()).collect();
                SparseBitMatrix::from_columns(rows, cols).unwrap()
            },
        )
    })
}

fn matrix_and_subset() -> impl Strategy<Value = (SparseBitMatrix, Vec<usize>)> {
    matrix().prop_flat_map(|h| {
        let n = h.n_cols();
        (
            Just(h),
            subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(8)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn column_set_metrics_match_dense((h, idx) in matrix_and_subset()) {
        let d = dense(&h);
        let counts: Vec<usize> = (0..h.n_rows())
            .map(|i| idx.iter().filter(|&&j| d[j][i]).count())
            .collect();
        let s = h.xor_columns(&idx).unwrap();
        for (i, &c) in counts.iter().enumerate() {
            prop_assert_eq!(s.get(i), c % 2 == 1);
        }
        let w = counts.iter().filter(|&&c| c % 2 == 1).count();
        let n_u = counts.iter().filter(|&&c| c > 0).count();
        let n_c = counts.iter().filter(|&&c| c > 0 && c % 2 == 0).count();
        prop_assert_eq!(s.weight(), w);
        prop_assert_eq!(h.unique_checks(&idx).unwrap(), n_u);
        let m = h.canceled_checks(&idx).unwrap();
        prop_assert_eq!((m.w, m.n_u, m.n_c), (w, n_u, n_c));
        prop_assert_eq!(m.n_c, m.n_u - m.w);

        let mut e = BitVec::zeros(h.n_cols());
        for &j in &idx {
            e.set(j, true);
        }
        prop_assert_eq!(h.mat_vec_mod2(&e).unwrap(), s);
    }

    #[test]
    fn single_column_cancels_nothing(h in matrix(), pick in any::<prop::sample::Index>()) {
        let j = pick.index(h.n_cols());
        let m = h.canceled_checks(&[j]).unwrap();
        prop_assert_eq!(m.n_c, 0);
        prop_assert_eq!(m.w, h.column(j).len());
    }

    #[test]
    fn transpose_is_an_involution(h in matrix()) {
        let t = h.transpose();
        prop_assert_eq!(t.n_rows(), h.n_cols());
        for (i, row) in h.row_lists().iter().enumerate() {
            prop_assert_eq!(t.column(i), row.as_slice());
        }
        prop_assert_eq!(t.transpose(), h);
    }

    #[test]
    fn xor_is_linear((h, idx) in matrix_and_subset(), split in 0usize..8) {
        let k = split.min(idx.len());
        let mut a = h.xor_columns(&idx[..k]).unwrap();
        a.xor_assign(&h.xor_columns(&idx[k..]).unwrap()).unwrap();
        prop_assert_eq!(a, h.xor_columns(&idx).unwrap());
    }

    #[test]
    fn model_text_round_trips(h in matrix(), groups in 1usize..4, prior in 1e-6f64..0.5) {
        let rows = h.n_rows() * groups;
        let cols: Vec<Vec<usize>> = h.columns().to_vec();
        let h = SparseBitMatrix::from_columns(rows, cols).unwrap();
        let n = h.n_cols();
        let l = SparseBitMatrix::from_columns(2, (0..n).map(|j| if j % 3 == 0 { vec![j % 2] } else { vec![] }).collect()).unwrap();
        let m = DecodingModel::new(h, vec![prior; n], l, groups).unwrap();
        let back = parse_text(&to_text(&m)).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn bad_indices_are_rejected() {
    let h = SparseBitMatrix::from_columns(3, vec![vec![0, 1], vec![2]]).unwrap();
    assert!(h.xor_columns(&[0, 0]).is_err());
    assert!(h.xor_columns(&[2]).is_err());
    assert!(h.canceled_checks(&[1, 1]).is_err());
    assert!(h.mat_vec_mod2(&BitVec::zeros(3)).is_err());
    assert!(SparseBitMatrix::from_columns(3, vec![vec![1, 0]]).is_err());
    assert!(SparseBitMatrix::from_columns(3, vec![vec![3]]).is_err());
}
