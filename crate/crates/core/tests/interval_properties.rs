use intgarch_core::estimate::{cls_loss_from, h_filter, predict_interval, FilterStart};
use intgarch_core::intervals::{delta_metric, delta_metric_sq, hausdorff, minkowski_add, scalar_mul, RangeSeries};
use intgarch_core::{IntGarchParams, Interval};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-100.0..100.0f64, 0.0..50.0f64).prop_map(|(c, r)| Interval::new(c, r).unwrap())
}

fn close(a: Interval, b: Interval, tol: f64) -> bool {
    let scale = 1.0 + a.center().abs().max(a.radius());
    (a.center() - b.center()).abs() <= tol * scale && (a.radius() - b.radius()).abs() <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn metric_axioms(a in interval(), b in interval(), c in interval()) {
        for d in [delta_metric, hausdorff] {
            prop_assert_eq!(d(a, a), 0.0);
            prop_assert!(d(a, b) >= 0.0);
            prop_assert_eq!(d(a, b), d(b, a));
            let scale = 1.0 + d(a, c) + d(c, b);
            prop_assert!(d(a, b) <= d(a, c) + d(c, b) + 1e-12 * scale);
        }
        prop_assert!(delta_metric(a, b) <= hausdorff(a, b) * (1.0 + 1e-12));
    }

    #[test]
    fn minkowski_algebra(a in interval(), b in interval(), c in interval(), s in -5.0..5.0f64, t in 0.0..5.0f64, u in 0.0..5.0f64) {
        prop_assert_eq!(minkowski_add(a, b), minkowski_add(b, a));
        prop_assert!(close(minkowski_add(minkowski_add(a, b), c), minkowski_add(a, minkowski_add(b, c)), 1e-12));
        prop_assert!(close(scalar_mul(s, minkowski_add(a, b)), minkowski_add(scalar_mul(s, a), scalar_mul(s, b)), 1e-12));
        prop_assert!(close(scalar_mul(t + u, a), minkowski_add(scalar_mul(t, a), scalar_mul(u, a)), 1e-12));
        prop_assert_eq!(minkowski_add(a, Interval::ZERO), a);
        let sum = minkowski_add(a, b);
        prop_assert!((sum.length() - (a.length() + b.length())).abs() <= 1e-12 * (1.0 + sum.length()));
    }

    #[test]
    fn delta_metric_endpoint_expansion(a in interval(), b in interval()) {
        let dc = a.center() - b.center();
        let dr = a.radius() - b.radius();
        let expanded = dc * dc + dr * dr;
        prop_assert!((delta_metric_sq(a, b) - expanded).abs() <= 1e-12 * (1.0 + expanded));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn loss_is_summed_squared_delta_metric(
        obs in prop::collection::vec((-3.0..3.0f64, 0.0..4.0f64), 1..60),
        k in 0.1..5.0f64, mu in 0.01..1.0f64, alpha in 0.0..0.5f64, beta in 0.0..0.5f64, gamma in 0.0..0.9f64,
        h0 in 0.0..2.0f64,
    ) {
        let (c, r): (Vec<f64>, Vec<f64>) = obs.into_iter().unzip();
        let s = RangeSeries::from_parts(&c, &r).unwrap();
        let p = IntGarchParams::one_one_one(k, mu, alpha, beta, gamma).unwrap();
        let start = FilterStart { h0, r0: Interval::new(0.1, 0.5).unwrap() };
        let h = h_filter(&p, &s, &start).unwrap();
        prop_assert!(h.iter().all(|&x| x >= mu));
        let metric: f64 = s
            .intervals()
            .iter()
            .zip(&h)
            .map(|(&iv, &h)| delta_metric_sq(iv, predict_interval(&p, h).unwrap()))
            .sum();
        let endpoints: f64 = s
            .intervals()
            .iter()
            .zip(&h)
            .map(|(iv, &h)| 0.5 * ((iv.center() - iv.radius() + k * h).powi(2) + (iv.center() + iv.radius() - k * h).powi(2)))
            .sum();
        let loss = cls_loss_from(&p, &s, &start).unwrap();
        prop_assert!(loss >= 0.0);
        prop_assert!((loss - metric).abs() <= 1e-12 * (1.0 + loss));
        prop_assert!((loss - endpoints).abs() <= 1e-12 * (1.0 + loss));
    }
}
