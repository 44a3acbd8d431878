//! CSV readers and writers. Reals are written with 17 significant digits.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{DateTime, NaiveDate};
use intgarch_core::{Interval, RangeSeries};

use super::{date_to_timestamp, timestamp_to_date, DailyOhlc, IntradaySeries};
use crate::error::{DataError, Result};

const OHLC_HEADER: [&str; 5] = ["date", "open", "high", "low", "close"];
const SERIES_HEADER: [&str; 5] = ["date", "low", "high", "center", "radius"];
const INTRADAY_HEADER: [&str; 2] = ["timestamp", "price"];
const COMPARISON_HEADER: [&str; 4] = ["date", "intgarch_H", "garch_sigma", "rv"];

/// How series timestamps appear in the `date` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DateFormat {
    /// ISO-8601 calendar dates; timestamps are day numbers from the common era.
    Iso,
    /// Timestamps written as plain integers.
    Index,
}

impl DateFormat {
    fn render(self, ts: i64) -> String {
        match self {
            DateFormat::Iso => timestamp_to_date(ts).map_or_else(|| ts.to_string(), |d| d.to_string()),
            DateFormat::Index => ts.to_string(),
        }
    }

    fn detect(cell: &str) -> Self {
        if cell.parse::<i64>().is_ok() {
            DateFormat::Index
        } else {
            DateFormat::Iso
        }
    }

    fn parse(self, cell: &str, line: u64) -> Result<i64> {
        match self {
            DateFormat::Index => cell
                .parse()
                .map_err(|_| DataError::parse(line, format!("expected an integer date index, got {cell:?}"))),
            DateFormat::Iso => Ok(date_to_timestamp(parse_date(cell, line)?)),
        }
    }
}

/// One row of the volatility comparison table; `None` becomes an empty cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub date: NaiveDate,
    pub intgarch_h: Option<f64>,
    pub garch_sigma: Option<f64>,
    pub rv: Option<f64>,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_date(cell: &str, line: u64) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(cell, "%Y-%m-%d")
        .map_err(|_| DataError::parse(line, format!("expected an ISO-8601 date, got {cell:?}")))
}

fn parse_real(cell: &str, column: &str, line: u64) -> Result<f64> {
    cell.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| DataError::parse(line, format!("column {column}: expected a finite number, got {cell:?}")))
}

fn csv_error(e: csv::Error) -> DataError {
    let line = e.position().map_or(0, csv::Position::line);
    match e.into_kind() {
        csv::ErrorKind::Io(err) => DataError::parse(line, err.to_string()),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            DataError::parse(line, format!("expected {expected_len} fields, found {len}"))
        }
        csv::ErrorKind::Utf8 { .. } => DataError::parse(line, "invalid UTF-8"),
        other => DataError::parse(line, format!("{other:?}")),
    }
}

/// Rows of a headed CSV with the exact `header`, paired with their line numbers.
fn records<R: Read>(input: R, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let found = rdr.headers().map_err(csv_error)?.clone();
    if found.is_empty() {
        return Err(DataError::parse(1, format!("missing header, expected {}", header.join(","))));
    }
    if found.iter().ne(header.iter().copied()) {
        return Err(DataError::parse(
            1,
            format!("unexpected header {:?}, expected {}", found.iter().collect::<Vec<_>>().join(","), header.join(",")),
        ));
    }
    rdr.records()
        .map(|r| {
            let rec = r.map_err(csv_error)?;
            let line = rec.position().map_or(0, csv::Position::line);
            Ok((line, rec))
        })
        .collect()
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| DataError::io(path, e))
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| DataError::io(path, e))
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn finish<W: Write>(mut w: csv::Writer<W>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| DataError::io(path, e))
}

fn write_row<W: Write>(w: &mut csv::Writer<W>, row: &[String], path: &Path) -> Result<()> {
    w.write_record(row).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(err) => DataError::io(path, err),
        other => DataError::parse(0, format!("{other:?}")),
    })
}

/// Parses `date,open,high,low,close`. Bars failing validation give
/// [`DataError::BadBar`] with the zero-based data row.
pub fn parse_ohlc<R: Read>(input: R) -> Result<Vec<DailyOhlc>> {
    let mut out = Vec::new();
    for (row, (line, rec)) in records(input, &OHLC_HEADER)?.into_iter().enumerate() {
        let bar = DailyOhlc {
            date: parse_date(&rec[0], line)?,
            open: parse_real(&rec[1], "open", line)?,
            high: parse_real(&rec[2], "high", line)?,
            low: parse_real(&rec[3], "low", line)?,
            close: parse_real(&rec[4], "close", line)?,
        };
        bar.validate(row)?;
        out.push(bar);
    }
    Ok(out)
}

pub fn read_ohlc_csv(path: impl AsRef<Path>) -> Result<Vec<DailyOhlc>> {
    parse_ohlc(open(path.as_ref())?)
}

/// Writes `date,open,high,low,close`.
pub fn write_ohlc<W: Write>(days: &[DailyOhlc], out: W) -> Result<()> {
    let path = Path::new("<output>");
    let mut w = writer(out);
    write_row(&mut w, &OHLC_HEADER.map(String::from), path)?;
    for d in days {
        write_row(
            &mut w,
            &[d.date.to_string(), num(d.open), num(d.high), num(d.low), num(d.close)],
            path,
        )?;
    }
    finish(w, path)
}

/// Parses `date,low,high,center,radius`. The center and radius columns are
/// authoritative; the endpoints must agree with them.
pub fn parse_series<R: Read>(input: R) -> Result<(RangeSeries, DateFormat)> {
    let rows = records(input, &SERIES_HEADER)?;
    let format = rows.first().map_or(DateFormat::Iso, |(_, rec)| DateFormat::detect(&rec[0]));
    let mut timestamps = Vec::with_capacity(rows.len());
    let mut intervals = Vec::with_capacity(rows.len());
    for (line, rec) in &rows {
        let line = *line;
        timestamps.push(format.parse(&rec[0], line)?);
        let low = parse_real(&rec[1], "low", line)?;
        let high = parse_real(&rec[2], "high", line)?;
        let center = parse_real(&rec[3], "center", line)?;
        let radius = parse_real(&rec[4], "radius", line)?;
        let iv = Interval::new(center, radius).map_err(|e| DataError::parse(line, e.to_string()))?;
        let tol = 1e-12 * (1.0 + center.abs() + radius);
        if (iv.lower() - low).abs() > tol || (iv.upper() - high).abs() > tol {
            return Err(DataError::parse(line, "low/high disagree with center/radius"));
        }
        intervals.push(iv);
    }
    let s = RangeSeries::new(timestamps, intervals).map_err(|e| match e {
        intgarch_core::Error::NonMonotoneTimestamps { index } => {
            DataError::parse(rows[index].0, "dates must be strictly increasing")
        }
        other => other.into(),
    })?;
    Ok((s, format))
}

pub fn read_series_csv(path: impl AsRef<Path>) -> Result<(RangeSeries, DateFormat)> {
    parse_series(open(path.as_ref())?)
}

pub fn write_series<W: Write>(s: &RangeSeries, format: DateFormat, out: W) -> Result<()> {
    let path = Path::new("<output>");
    let mut w = writer(out);
    write_row(&mut w, &SERIES_HEADER.map(String::from), path)?;
    for (ts, iv) in s.iter() {
        write_row(
            &mut w,
            &[format.render(ts), num(iv.lower()), num(iv.upper()), num(iv.center()), num(iv.radius())],
            path,
        )?;
    }
    finish(w, path)
}

pub fn write_series_csv(s: &RangeSeries, format: DateFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_series(s, format, create(path)?).map_err(|e| relabel(e, path))
}

fn relabel(e: DataError, path: &Path) -> DataError {
    match e {
        DataError::Io { source, .. } => DataError::io(path, source),
        other => other,
    }
}

/// Parses `timestamp,price` with RFC 3339 timestamps and splits it into days
/// by the calendar date in each timestamp's own offset.
pub fn parse_intraday<R: Read>(input: R) -> Result<Vec<IntradaySeries>> {
    let mut days: Vec<(NaiveDate, Vec<_>)> = Vec::new();
    let mut last = None;
    for (line, rec) in records(input, &INTRADAY_HEADER)? {
        let ts = DateTime::parse_from_rfc3339(&rec[0])
            .map_err(|_| DataError::parse(line, format!("expected an RFC 3339 timestamp, got {:?}", &rec[0])))?;
        let price = parse_real(&rec[1], "price", line)?;
        if !(price > 0.0) {
            return Err(DataError::parse(line, "price must be positive"));
        }
        if last.is_some_and(|prev| ts <= prev) {
            return Err(DataError::parse(line, "timestamps must be strictly increasing"));
        }
        last = Some(ts);
        let date = ts.date_naive();
        match days.last_mut() {
            Some((d, ticks)) if *d == date => ticks.push((ts, price)),
            _ => days.push((date, vec![(ts, price)])),
        }
    }
    days.into_iter().map(|(d, ticks)| IntradaySeries::new(d, ticks)).collect()
}

pub fn read_intraday_csv(path: impl AsRef<Path>) -> Result<Vec<IntradaySeries>> {
    parse_intraday(open(path.as_ref())?)
}

/// Writes `date,<name>...` with one column per path.
pub fn write_h_path<W: Write>(
    timestamps: &[i64],
    format: DateFormat,
    columns: &[(&str, &[f64])],
    out: W,
) -> Result<()> {
    let path = Path::new("<output>");
    if columns.iter().any(|(_, c)| c.len() != timestamps.len()) {
        return Err(intgarch_core::Error::LengthMismatch {
            timestamps: timestamps.len(),
            intervals: columns.iter().map(|(_, c)| c.len()).max().unwrap_or(0),
        }
        .into());
    }
    let mut w = writer(out);
    let mut header = vec!["date".to_string()];
    header.extend(columns.iter().map(|(n, _)| n.to_string()));
    write_row(&mut w, &header, path)?;
    for (i, ts) in timestamps.iter().enumerate() {
        let mut row = vec![format.render(*ts)];
        row.extend(columns.iter().map(|(_, c)| num(c[i])));
        write_row(&mut w, &row, path)?;
    }
    finish(w, path)
}

pub fn write_h_path_csv(
    timestamps: &[i64],
    format: DateFormat,
    columns: &[(&str, &[f64])],
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    write_h_path(timestamps, format, columns, create(path)?).map_err(|e| relabel(e, path))
}

/// Writes `date,length,center,flagged`.
pub fn write_flags<W: Write>(s: &RangeSeries, flags: &[bool], format: DateFormat, out: W) -> Result<()> {
    let path = Path::new("<output>");
    let mut w = writer(out);
    write_row(&mut w, &["date", "length", "center", "flagged"].map(String::from), path)?;
    for ((ts, iv), flag) in s.iter().zip(flags) {
        write_row(
            &mut w,
            &[format.render(ts), num(iv.length()), num(iv.center()), flag.to_string()],
            path,
        )?;
    }
    finish(w, path)
}

pub fn write_flags_csv(s: &RangeSeries, flags: &[bool], format: DateFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_flags(s, flags, format, create(path)?).map_err(|e| relabel(e, path))
}

/// Writes `date,intgarch_H,garch_sigma,rv`.
pub fn write_comparison<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let path = Path::new("<output>");
    let cell = |x: Option<f64>| x.map(num).unwrap_or_default();
    let mut w = writer(out);
    write_row(&mut w, &COMPARISON_HEADER.map(String::from), path)?;
    for r in rows {
        write_row(
            &mut w,
            &[r.date.to_string(), cell(r.intgarch_h), cell(r.garch_sigma), cell(r.rv)],
            path,
        )?;
    }
    finish(w, path)
}

pub fn write_comparison_csv(rows: &[ComparisonRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_comparison(rows, create(path)?).map_err(|e| relabel(e, path))
}
