mod common;

use std::path::Path;
use std::process::{Command, Output};

use intgarch::data::{read_series_csv, write_ohlc};

fn intgarch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intgarch")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const MODEL_I: [&str; 10] = [
    "--k", "4.7162", "--mu", "0.4724", "--alpha", "0.2637", "--beta", "0.0906", "--gamma", "0.1796",
];

#[test]
fn simulate_writes_requested_rows_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let mut args = MODEL_I.to_vec();
        args.extend(["--length", "1000", "--seed", "42", "--out", p(out)]);
        let o = intgarch(&[&["simulate"], &args[..]].concat());
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (s, _) = read_series_csv(&a).unwrap();
    assert_eq!(s.len(), 1000);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let h = std::fs::read_to_string(dir.path().join("a.h.csv")).unwrap();
    assert_eq!(h.lines().count(), 1001);
    assert!(h.starts_with("date,h\n1,"));
    assert_eq!(h, std::fs::read_to_string(dir.path().join("b.h.csv")).unwrap());
}

#[test]
fn simulate_gates_unit_persistence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = intgarch(&[
        "simulate", "--k", "1", "--mu", "1", "--gamma", "1.0", "--alpha", "0", "--beta", "0", "--length", "10",
        "--seed", "1", "--require-stationary", "--out", p(&out),
    ]);
    assert_eq!(code(&o), 2);
    assert!(!out.exists());
    let o = intgarch(&["simulate", "--model", "I", "--length", "10", "--seed", "1", "--bogus"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn check_reports_moments_and_verdicts() {
    let o = intgarch(&[&["check"], &MODEL_I[..]].concat());
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!((v["c1"].as_f64().unwrap() - 0.8173).abs() < 1e-4);
    assert!((v["c2"].as_f64().unwrap() - 0.7319).abs() < 1e-4);
    assert!((v["mean_h"].as_f64().unwrap() - 2.5855163173048389).abs() < 1e-12);
    assert_eq!(v["mean_stationary"], true);
    assert_eq!(v["weakly_stationary"], true);

    let o = intgarch(&["check", "--model", "III"]);
    let v = stdout_json(&o);
    assert_eq!(v["weakly_stationary"], true);
    assert_eq!(v["mean_stationary"], true);

    let o = intgarch(&["check", "--k", "2", "--mu", "0.5", "--alpha", "0", "--beta", "0", "--gamma", "0"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["mean_stationary"], true);
    assert_eq!(v["weakly_stationary"], false);
    assert!(v["note"].as_str().unwrap().contains("constant"));
    assert_eq!(v["mean_h"].as_f64().unwrap(), 0.5);
    assert_eq!(o.stdout, intgarch(&["check", "--k", "2", "--mu", "0.5", "--alpha", "0", "--beta", "0", "--gamma", "0"]).stdout);
}

#[test]
fn acf_modes() {
    let o = intgarch(&["acf", "--model", "I", "--max-lag", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lag,acf");
    assert_eq!(lines[1], "0,1.0000000000000000e0");
    assert_eq!(lines.len(), 5);
    let acf1: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((acf1 - 0.55168538332160119).abs() < 1e-12);

    assert_eq!(code(&intgarch(&["acf", "--model", "I", "--gamma", "0.9"])), 2);
    assert_eq!(code(&intgarch(&["acf", "--max-lag", "3"])), 64);

    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.csv");
    let mut text = String::from("date,low,high,center,radius\n");
    for i in 1..=50 {
        text.push_str(&format!("{i},-0.5,1.5,0.5,1\n"));
    }
    std::fs::write(&flat, text).unwrap();
    assert_eq!(code(&intgarch(&["acf", "--input", p(&flat)])), 3);
    assert_eq!(code(&intgarch(&["acf", "--input", p(&flat), "--model", "I"])), 64);
}

#[test]
fn fit_reports_estimates_and_paths() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("m2.csv");
    let o = intgarch(&[
        "simulate", "--model", "II", "--length", "3000", "--seed", "5", "--start", "study", "--burn-in", "0",
        "--out", p(&series),
    ]);
    assert_eq!(code(&o), 0);
    let h = dir.path().join("fit_h.csv");
    let o = intgarch(&["fit", "--input", p(&series), "--emit-h", p(&h)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["converged"], true);
    assert_eq!(v["n_obs"], 3000);
    let truth = [("k", 2.7330, 0.2), ("mu", 0.1385, 0.06), ("alpha", 0.2572, 0.09), ("beta", 0.0202, 0.03), ("gamma", 0.1459, 0.25)];
    for (name, t, spread) in truth {
        let e = v["estimates"][name].as_f64().unwrap();
        assert!((e - t).abs() < spread, "{name}: {e}");
    }
    let h_text = std::fs::read_to_string(&h).unwrap();
    assert_eq!(h_text.lines().count(), 3001);
    assert!(h_text.starts_with("date,h,H\n"));

    let short = dir.path().join("short.csv");
    let full = std::fs::read_to_string(&series).unwrap();
    std::fs::write(&short, full.lines().take(11).collect::<Vec<_>>().join("\n")).unwrap();
    let o = intgarch(&["fit", "--input", p(&short)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("30"));

    assert_eq!(code(&intgarch(&["fit", "--input", p(&dir.path().join("missing.csv"))])), 66);
    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "date,low,high,center,radius\n1,a,b,c,d\n").unwrap();
    assert_eq!(code(&intgarch(&["fit", "--input", p(&broken)])), 66);
}

#[test]
fn ingest_two_days() {
    let dir = tempfile::tempdir().unwrap();
    let bars = dir.path().join("bars.csv");
    std::fs::write(
        &bars,
        "date,open,high,low,close\n2000-01-03,100,104,99,103\n2000-01-04,103,106,101,102\n",
    )
    .unwrap();
    let out = dir.path().join("ranges.csv");
    assert_eq!(code(&intgarch(&["ingest", "--ohlc", p(&bars), "--out", p(&out)])), 0);
    let (s, _) = read_series_csv(&out).unwrap();
    assert_eq!(s.len(), 1);
    let iv = s.intervals()[0];
    let expected = (104f64 / 99.0).ln() + (106f64 / 101.0).ln();
    assert!((iv.length() - expected).abs() < 1e-12);
    let flags = std::fs::read_to_string(dir.path().join("ranges.flags.csv")).unwrap();
    assert!(flags.starts_with("date,length,center,flagged\n2000-01-04,"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "date,open,high,low,close\n2000-01-03,100,104,-99,103\n").unwrap();
    assert_eq!(code(&intgarch(&["ingest", "--ohlc", p(&bad), "--out", p(&out)])), 66);
    std::fs::write(&bad, "").unwrap();
    let o = intgarch(&["ingest", "--ohlc", p(&bad), "--out", p(&out)]);
    assert_eq!(code(&o), 66);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn compare_with_and_without_intraday() {
    let dir = tempfile::tempdir().unwrap();
    let days = common::synthetic_ohlc(400, 8);
    let bars = dir.path().join("bars.csv");
    let mut buf = Vec::new();
    write_ohlc(&days, &mut buf).unwrap();
    std::fs::write(&bars, buf).unwrap();

    let o = intgarch(&["compare", "--ohlc", p(&bars)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "date,intgarch_H,garch_sigma,rv");
    assert_eq!(lines.len(), 400);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        assert!(cells[1].parse::<f64>().unwrap() > 0.0);
        assert!(cells[2].parse::<f64>().unwrap() > 0.0);
        assert_eq!(cells[3], "");
    }

    let dates: Vec<_> = days[10..13].iter().map(|d| d.date).collect();
    let ticks = dir.path().join("ticks.csv");
    std::fs::write(&ticks, common::ticks_csv(&common::synthetic_ticks(&dates, 9))).unwrap();
    let out = dir.path().join("cmp.csv");
    let o = intgarch(&["compare", "--ohlc", p(&bars), "--intraday", p(&ticks), "--out", p(&out)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let with_rv: Vec<&str> = text.lines().skip(1).filter(|l| !l.ends_with(',')).collect();
    assert_eq!(with_rv.len(), 3);
    assert!(with_rv[0].starts_with(&dates[0].to_string()));
}

#[test]
fn table1_small_run() {
    let args = ["table1", "--model", "IV", "--reps", "4", "--length", "400", "--seed", "3"];
    let o = intgarch(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "parameter,truth,mean_estimate,mean_abs_bias,abs_mean_bias,empirical_sd");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("k,1.9108,"));
    assert_eq!(o.stdout, intgarch(&args).stdout);
    let verbose = intgarch(&[&args[..], &["--verbose"]].concat());
    assert_eq!(String::from_utf8_lossy(&verbose.stderr).lines().count(), 4);
}
