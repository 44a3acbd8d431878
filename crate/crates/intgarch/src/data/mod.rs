//! Market data: return ranges from daily bars, realized volatility from
//! intraday ticks, a GARCH(1,1) baseline and the CSV file formats.

mod formats;
mod garch;
mod intraday;
mod ohlc;

pub use formats::{
    parse_intraday, parse_ohlc, parse_series, read_intraday_csv, read_ohlc_csv, read_series_csv, write_comparison,
    write_comparison_csv, write_flags, write_flags_csv, write_h_path, write_h_path_csv, write_ohlc, write_series,
    write_series_csv, ComparisonRow, DateFormat,
};
pub use garch::{fit_garch11, Garch11Fit, MIN_GARCH_LENGTH};
pub use intraday::{realized_volatility, IntradaySeries, DEFAULT_GRID_MINUTES};
pub use ohlc::{close_to_close_returns, flag_days, quantile, return_ranges, DailyOhlc};

use chrono::NaiveDate;

/// Day number used as the series timestamp for a calendar date.
pub fn date_to_timestamp(date: NaiveDate) -> i64 {
    i64::from(chrono::Datelike::num_days_from_ce(&date))
}

pub fn timestamp_to_date(ts: i64) -> Option<NaiveDate> {
    i32::try_from(ts).ok().and_then(NaiveDate::from_num_days_from_ce_opt)
}
