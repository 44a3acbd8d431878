mod common;

use chrono::{DateTime, NaiveDate, TimeDelta};
use intgarch::data::{
    flag_days, parse_intraday, parse_ohlc, parse_series, read_ohlc_csv, read_series_csv, realized_volatility,
    return_ranges, write_ohlc, write_series, write_series_csv, DateFormat, IntradaySeries,
};
use intgarch::DataError;
use proptest::prelude::*;

#[test]
fn ohlc_round_trip_on_a_long_file() {
    let days = common::synthetic_ohlc(3019, 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bars.csv");
    let mut buf = Vec::new();
    write_ohlc(&days, &mut buf).unwrap();
    std::fs::write(&path, &buf).unwrap();
    assert_eq!(read_ohlc_csv(&path).unwrap(), days);
}

#[test]
fn ingested_series_round_trips_through_files() {
    let days = common::synthetic_ohlc(500, 2);
    let s = return_ranges(&days).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ranges.csv");
    write_series_csv(&s, DateFormat::Iso, &path).unwrap();
    let (back, format) = read_series_csv(&path).unwrap();
    assert_eq!(format, DateFormat::Iso);
    assert_eq!(back, s);
}

#[test]
fn length_identity_on_every_ingested_row() {
    for seed in 0..20 {
        let days = common::synthetic_ohlc(300, seed);
        let s = return_ranges(&days).unwrap();
        for (t, iv) in s.intervals().iter().enumerate() {
            let expected = days[t + 1].log_range() + days[t].log_range();
            assert!((iv.length() - expected).abs() <= 1e-12, "seed {seed} row {t}");
            assert!(iv.radius() >= 0.0);
        }
    }
}

#[test]
fn missing_files_are_io_errors() {
    let err = read_ohlc_csv("/nonexistent/bars.csv").unwrap_err();
    assert!(matches!(err, DataError::Io { .. }));
    assert!(err.to_string().contains("/nonexistent/bars.csv"));
}

#[test]
fn flags_are_deterministic_and_follow_the_rule() {
    let s = return_ranges(&common::synthetic_ohlc(1000, 3)).unwrap();
    let flags = flag_days(&s);
    assert_eq!(flags, flag_days(&s));
    let lengths: Vec<f64> = s.intervals().iter().map(|iv| iv.length()).collect();
    let centers: Vec<f64> = s.centers().map(f64::abs).collect();
    let long = intgarch::data::quantile(&lengths, 0.75).unwrap();
    let small = intgarch::data::quantile(&centers, 0.25).unwrap();
    let flagged = flags.iter().filter(|&&f| f).count();
    assert!(flagged > 0 && flagged < 250);
    for i in 0..flags.len() {
        assert_eq!(flags[i], lengths[i] > long && centers[i] < small);
    }
}

#[test]
fn intraday_file_gives_one_volatility_per_day() {
    let dates: Vec<NaiveDate> = (3..6).map(|d| NaiveDate::from_ymd_opt(2000, 1, d).unwrap()).collect();
    let text = common::ticks_csv(&common::synthetic_ticks(&dates, 4));
    let days = parse_intraday(text.as_bytes()).unwrap();
    assert_eq!(days.iter().map(IntradaySeries::date).collect::<Vec<_>>(), dates);
    for d in &days {
        let rv = realized_volatility(d, 5).unwrap();
        // 390 one-minute steps of 0.1% give about 0.1% · √390.
        assert!(rv > 0.01 && rv < 0.03, "{rv}");
    }
}

fn tick_day(steps: &[(u16, f64)]) -> IntradaySeries {
    let open = DateTime::parse_from_rfc3339("2005-06-01T09:30:00-04:00").unwrap();
    let mut minute = 0i64;
    let mut price = 30.0;
    let mut ticks = vec![(open, price)];
    for &(gap, ret) in steps {
        minute += i64::from(gap);
        price *= ret.exp();
        ticks.push((open + TimeDelta::minutes(minute), price));
    }
    IntradaySeries::new(open.date_naive(), ticks).unwrap()
}

proptest! {
    #[test]
    fn duplicated_ticks_leave_volatility_unchanged(
        steps in prop::collection::vec((1u16..9, -0.01..0.01f64), 10..120),
        grid in 1u32..15,
    ) {
        let day = tick_day(&steps);
        let mut ticks = Vec::new();
        for w in day.ticks().windows(2) {
            ticks.push(w[0]);
            // A repeat of the current price strictly between two ticks.
            let mid = w[0].0 + (w[1].0 - w[0].0) / 2;
            if mid > w[0].0 {
                ticks.push((mid, w[0].1));
            }
        }
        ticks.push(*day.ticks().last().unwrap());
        let dup = IntradaySeries::new(day.date(), ticks).unwrap();
        match (realized_volatility(&day, grid), realized_volatility(&dup, grid)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn ranges_round_trip_and_obey_the_length_identity(seed in any::<u64>(), n in 2usize..60) {
        let days = common::synthetic_ohlc(n, seed);
        let mut buf = Vec::new();
        write_ohlc(&days, &mut buf).unwrap();
        let back = parse_ohlc(&buf[..]).unwrap();
        prop_assert_eq!(&back, &days);
        let s = return_ranges(&back).unwrap();
        prop_assert_eq!(s.len(), n - 1);
        for (t, iv) in s.intervals().iter().enumerate() {
            prop_assert!((iv.length() - (days[t].log_range() + days[t + 1].log_range())).abs() <= 1e-12);
        }
        let mut out = Vec::new();
        write_series(&s, DateFormat::Iso, &mut out).unwrap();
        prop_assert_eq!(parse_series(&out[..]).unwrap().0, s);
    }
}
