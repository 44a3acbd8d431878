#![allow(dead_code)]

use chrono::{DateTime, Days, FixedOffset, NaiveDate, TimeDelta};
use intgarch::data::DailyOhlc;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

/// A random-walk market with consistent daily bars.
pub fn synthetic_ohlc(days: usize, seed: u64) -> Vec<DailyOhlc> {
    let mut rng = StdRng::seed_from_u64(seed);
    let start = NaiveDate::from_ymd_opt(2000, 1, 3).unwrap();
    let mut close = 50.0f64;
    (0..days)
        .map(|i| {
            let open = close * (0.005 * rng.sample::<f64, _>(StandardNormal)).exp();
            close = open * (0.015 * rng.sample::<f64, _>(StandardNormal)).exp();
            let high = open.max(close) * (0.01 * rng.random::<f64>()).exp();
            let low = open.min(close) * (-0.01 * rng.random::<f64>()).exp();
            DailyOhlc {
                date: start + Days::new(i as u64),
                open,
                high,
                low,
                close,
            }
        })
        .collect()
}

/// One tick per minute from 09:30 to 16:00 New York time for each day.
pub fn synthetic_ticks(days: &[NaiveDate], seed: u64) -> Vec<(DateTime<FixedOffset>, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut price = 20.0f64;
    let mut out = Vec::new();
    for d in days {
        let open = DateTime::parse_from_rfc3339(&format!("{d}T09:30:00-05:00")).unwrap();
        for m in 0..=390 {
            price *= (0.001 * rng.sample::<f64, _>(StandardNormal)).exp();
            out.push((open + TimeDelta::minutes(m), price));
        }
    }
    out
}

pub fn ticks_csv(ticks: &[(DateTime<FixedOffset>, f64)]) -> String {
    let mut s = String::from("timestamp,price\n");
    for (t, p) in ticks {
        s.push_str(&format!("{},{p}\n", t.to_rfc3339()));
    }
    s
}
