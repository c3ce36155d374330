use minorcert::matrix::json::AnyMatrix;
use minorcert::numaccretive::{
    accretive_factorize, complex_witness, max_abs, max_abs_diff, sym_eig, verify_accretive_inequality,
    verify_adjugate_accretive, verify_det_positive, INEQUALITY_TOL,
};
use minorcert::sample::{self, claim_rng};
use minorcert::{Complex64, Matrix};
use proptest::prelude::*;

fn symmetric(seed: u64, n: usize) -> Matrix<f64> {
    let g = sample::normal_matrix(&mut claim_rng(seed, 0), n, n);
    g.add(&g.transpose()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eigen_reconstruction_and_orthogonality(seed in any::<u64>(), n in 1usize..=10) {
        let h = symmetric(seed, n);
        let e = sym_eig(&h).unwrap();
        let scale = max_abs(&h).max(1.0);
        prop_assert!(max_abs_diff(&e.reconstruct(), &h) <= 1e-10 * scale);
        let q = &e.vectors;
        prop_assert!(max_abs_diff(&q.transpose().matmul(q).unwrap(), &Matrix::identity(n)) <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn strict_factorization(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = claim_rng(seed, 1);
        let a = sample::accretive(&mut rng, n, n);
        let e = sym_eig(&minorcert::numaccretive::symmetric_part(&a)).unwrap();
        prop_assume!(e.min() > 1e-6 * e.max());
        let f = accretive_factorize(&a).unwrap();
        prop_assert!(f.report.is_verified(), "{:?}", f.report);
    }

    #[test]
    fn accretive_claims(seed in any::<u64>(), n in 2usize..=8, deficit in 0usize..3) {
        let mut rng = claim_rng(seed, 2);
        let rank = n.saturating_sub(deficit).max(1);
        let a = sample::accretive(&mut rng, n, rank);
        prop_assert!(verify_det_positive(&a).unwrap().is_verified());
        prop_assert!(verify_adjugate_accretive(&a).unwrap().is_verified());
        let w = verify_accretive_inequality(&a).unwrap();
        prop_assert!(w.holds(INEQUALITY_TOL), "margin {}", w.margin);
        prop_assert!(w.cofactor_residual.unwrap() <= 1e-9);
        prop_assert!(w.lhs >= 0.0 && w.rhs >= 0.0);
        prop_assert_eq!(w.margin, w.lhs - w.rhs);
    }

    #[test]
    fn rank_one_symmetric_part_is_equality(seed in any::<u64>(), n in 2usize..=10, alpha in 0.0f64..3.0) {
        let mut rng = claim_rng(seed, 3);
        let w: Vec<f64> = (0..n).map(|_| sample::normal(&mut rng)).collect();
        let a = sample::real_skew(&mut rng, n)
            .add(&Matrix::from_fn(n, n, |i, j| 0.5 * alpha * w[i] * w[j]))
            .unwrap();
        let wit = verify_accretive_inequality(&a).unwrap();
        prop_assert!(wit.margin.abs() <= 1e-8 * wit.scale, "margin {}", wit.margin);
    }

    #[test]
    fn complex_witness_is_consistent(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = claim_rng(seed, 4);
        let a = Matrix::from_fn(n, n, |_, _| Complex64::new(sample::normal(&mut rng), sample::normal(&mut rng)));
        let w = complex_witness(&a).unwrap();
        prop_assert!(w.lhs >= 0.0 && w.rhs >= 0.0);
        prop_assert_eq!(w.margin, w.lhs - w.rhs);
        prop_assert_eq!(w.matrix, AnyMatrix::Complex(a));
    }

    #[test]
    fn real_and_complex_json_round_trip(seed in any::<u64>(), r in 1usize..5, c in 1usize..5) {
        let mut rng = claim_rng(seed, 5);
        let real = AnyMatrix::Real(sample::normal_matrix(&mut rng, r, c));
        let cx = AnyMatrix::Complex(Matrix::from_fn(r, c, |_, _| Complex64::new(sample::normal(&mut rng), sample::normal(&mut rng))));
        for m in [real, cx] {
            let text = serde_json::to_string(&m.to_json()).unwrap();
            prop_assert_eq!(AnyMatrix::parse(&text).unwrap(), m);
        }
    }
}
