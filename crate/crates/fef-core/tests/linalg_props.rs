use fef_core::linalg::{self, Complex64, ComplexMatrix};
use proptest::prelude::*;

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |parts| {
        let entries = parts
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(rows, cols, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_norm_dominates_the_trace(m in complex_matrix(3, 3)) {
        prop_assert!(linalg::trace_norm(&m) + 1e-9 >= m.trace().norm());
    }

    #[test]
    fn partial_transpose_is_an_involution(m in complex_matrix(4, 4)) {
        let once = linalg::partial_transpose_first(&m, 2).unwrap();
        let twice = linalg::partial_transpose_first(&once, 2).unwrap();
        prop_assert_eq!(twice.max_abs_diff(&m), 0.0);
    }

    #[test]
    fn reshape_round_trips(parts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)) {
        let x: Vec<Complex64> = parts
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let m = linalg::vec_to_mat(&x).unwrap();
        prop_assert_eq!(linalg::mat_to_vec(&m), x);
    }

    #[test]
    fn kron_entries_follow_the_product_rule(a in complex_matrix(2, 3), b in complex_matrix(3, 2)) {
        let k = linalg::kron(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                for p in 0..3 {
                    for q in 0..2 {
                        prop_assert_eq!(k.get(3 * i + p, 2 * j + q), a.get(i, j) * b.get(p, q));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_respects_matrix_products(
        a in complex_matrix(2, 2),
        b in complex_matrix(2, 2),
        c in complex_matrix(2, 2),
        d in complex_matrix(2, 2),
    ) {
        let left = linalg::kron(&a, &b).unwrap().mul(&linalg::kron(&c, &d).unwrap());
        let right = linalg::kron(&a.mul(&c), &b.mul(&d)).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn polar_factor_is_unitary(m in complex_matrix(3, 3)) {
        let polar = linalg::polar_unitary(&m).unwrap();
        prop_assert!(polar.unitary.unitarity_deviation() < 1e-10);
    }

    #[test]
    fn svd_reconstructs_and_sorts(m in complex_matrix(3, 3)) {
        let f = linalg::svd(&m);
        prop_assert!(f.singulars.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(f.singulars.iter().all(|&s| s >= 0.0));
        let sigma = diagonal(&f.singulars);
        let rebuilt = f.left.mul(&sigma).mul(&f.right.adjoint());
        prop_assert!(rebuilt.max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn hermitian_eig_reconstructs_and_sorts(m in complex_matrix(3, 3)) {
        let h = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
        let eig = linalg::hermitian_eig(&h).unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let lambda = diagonal(&eig.eigenvalues);
        let rebuilt = eig.eigenvectors.mul(&lambda).mul(&eig.eigenvectors.adjoint());
        prop_assert!(rebuilt.max_abs_diff(&h) < 1e-9);
    }
}

fn diagonal(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, &v) in values.iter().enumerate() {
        entries[i * n + i] = Complex64::new(v, 0.0);
    }
    ComplexMatrix::new(n, n, entries).unwrap()
}
