use intgarch_core::{moments, IntGarchParams};
use proptest::prelude::*;

fn stationary_params() -> impl Strategy<Value = IntGarchParams> {
    (0.05..6.0f64, 0.01..2.0f64, 0.0..0.4f64, 0.0..0.4f64, 0.0..0.5f64)
        .prop_map(|(k, mu, a, b, g)| IntGarchParams::one_one_one(k, mu, a, b / (1.0 + k), g).unwrap())
        .prop_filter("weakly stationary", |p| moments::is_weakly_stationary(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn acf_is_a_normalised_decaying_sequence(p in stationary_params()) {
        prop_assert_eq!(moments::acf(&p, 0).unwrap(), 1.0);
        let var = moments::var_r(&p).unwrap();
        prop_assert!(var > 0.0);
        prop_assert!(moments::second_moment_h(&p).unwrap() >= moments::mean_h(&p).unwrap().powi(2) * (1.0 - 1e-12));
        let mut prev = f64::INFINITY;
        for s in 1..=50i64 {
            let c = moments::autocov(&p, s).unwrap();
            prop_assert_eq!(c, moments::autocov(&p, -s).unwrap());
            prop_assert!(c.abs() <= prev * (1.0 + 1e-12) + 1e-12 * var);
            prop_assert!(moments::acf(&p, s).unwrap().abs() <= 1.0);
            prev = c.abs();
        }
        let c1 = moments::c1(&p);
        let c2 = moments::c2(&p).unwrap();
        prop_assert!(c1 < 1.0 && c2 < 1.0 && c1 * c1 <= c2 * (1.0 + 1e-12));
    }

    #[test]
    fn mean_interval_is_centred(p in stationary_params()) {
        let r = moments::mean_r(&p).unwrap();
        prop_assert_eq!(r.center(), 0.0);
        let expected = p.k() * moments::mean_h(&p).unwrap();
        prop_assert!((r.radius() - expected).abs() <= 1e-12 * expected);
    }
}
