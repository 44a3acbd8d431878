//! The `intgarch` command line.
//!
//! Exit codes: 0 success, 2 stationarity gate, 3 numerical or degenerate
//! data, 64 usage, 66 file input/output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use intgarch_core::estimate::volatility_path;
use intgarch_core::intervals::sample_corr;
use intgarch_core::moments::{self, Moments};
use intgarch_core::{
    fit, simulate, Error as ModelError, FitConfig, GradientMode, H0Mode, IntGarchParams, Interval, KHandling,
    R0Mode, ReferenceModel, SimConfig,
};
use serde::Serialize;

use crate::data::{self, ComparisonRow, DateFormat};
use crate::error::DataError;
use crate::harness::run_study;

pub const EXIT_OK: i32 = 0;
pub const EXIT_STATIONARITY: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 66;

#[derive(Debug, Parser)]
#[command(name = "intgarch", version, about = "Interval-valued GARCH models for daily return ranges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate a path and write the range series and its scale path.
    Simulate(SimulateArgs),
    /// Report moments and stationarity verdicts as JSON.
    Check(ParamArgs),
    /// Theoretical or sample interval autocorrelations as `lag,acf`.
    Acf(AcfArgs),
    /// Fit Int-GARCH(1,1,1) by conditional least squares.
    Fit(FitArgs),
    /// Build return ranges and flagged days from daily bars.
    Ingest(IngestArgs),
    /// Compare Int-GARCH volatility with GARCH(1,1) and realized volatility.
    Compare(CompareArgs),
    /// Repeated simulate-then-fit study for a reference model.
    Table1(Table1Args),
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Reference parameter set; explicit flags override its values.
    #[arg(long, value_parser = parse_model)]
    model: Option<ReferenceModel>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated α_1, ..., α_p.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    alpha: Option<Coefficients>,
    /// Comma-separated β_1, ..., β_q.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    beta: Option<Coefficients>,
    /// Comma-separated γ_1, ..., γ_w.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    gamma: Option<Coefficients>,
}

#[derive(Debug, Clone)]
struct Coefficients(Vec<f64>);

impl ParamArgs {
    fn is_empty(&self) -> bool {
        self.model.is_none()
            && self.k.is_none()
            && self.mu.is_none()
            && self.alpha.is_none()
            && self.beta.is_none()
            && self.gamma.is_none()
    }

    fn params(&self) -> Result<IntGarchParams, Failure> {
        let base = self.model.map(ReferenceModel::values);
        let pick = |flag: Option<f64>, idx: usize, name: &str| {
            flag.or(base.map(|v| v[idx]))
                .ok_or_else(|| Failure::usage(format!("--{name} is required without --model")))
        };
        let list = |flag: &Option<Coefficients>, idx: usize, name: &str| {
            flag.as_ref()
                .map(|c| c.0.clone())
                .or(base.map(|v| vec![v[idx]]))
                .ok_or_else(|| Failure::usage(format!("--{name} is required without --model")))
        };
        Ok(IntGarchParams::new(
            pick(self.k, 0, "k")?,
            pick(self.mu, 1, "mu")?,
            list(&self.alpha, 2, "alpha")?,
            list(&self.beta, 3, "beta")?,
            list(&self.gamma, 4, "gamma")?,
        )?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Start {
    /// `h_0 = E h`, `r_0 = E r`.
    StationaryMean,
    /// `h_0 = 0`, `r_0 = E r`.
    Study,
    /// `h_0 = 0`, `r_0 = [0, 0]`.
    Zero,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    length: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = intgarch_core::simulate::DEFAULT_BURN_IN)]
    burn_in: usize,
    #[arg(long, value_enum, default_value_t = Start::StationaryMean)]
    start: Start,
    /// Exit with status 2 unless the parameters are stationary.
    #[arg(long)]
    require_stationary: bool,
    /// Range-series CSV.
    #[arg(long)]
    out: PathBuf,
    /// Scale-path CSV; defaults to the output path with extension `h.csv`.
    #[arg(long)]
    h_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AcfArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Range-series CSV for the sample ACF.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    max_lag: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GradientArg {
    Exact,
    Frozen,
}

impl From<GradientArg> for GradientMode {
    fn from(g: GradientArg) -> Self {
        match g {
            GradientArg::Exact => GradientMode::ExactRecursive,
            GradientArg::Frozen => GradientMode::Frozen,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KArg {
    Fixed,
    Alternating,
}

#[derive(Debug, Args)]
struct FitOptions {
    #[arg(long, value_enum, default_value_t = GradientArg::Exact)]
    gradient: GradientArg,
    #[arg(long, value_enum, default_value_t = KArg::Fixed)]
    k_handling: KArg,
    #[arg(long, default_value_t = 500)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1e-8)]
    step_tolerance: f64,
}

impl FitOptions {
    fn config(&self) -> FitConfig {
        FitConfig {
            max_iterations: self.max_iterations,
            step_tolerance: self.step_tolerance,
            gradient_mode: self.gradient.into(),
            k_handling: match self.k_handling {
                KArg::Fixed => KHandling::FixedAtInitial,
                KArg::Alternating => KHandling::Alternating,
            },
            ..FitConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Range-series CSV.
    #[arg(long)]
    input: PathBuf,
    /// JSON report; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write `date,h,H` for the fitted path.
    #[arg(long)]
    emit_h: Option<PathBuf>,
    #[command(flatten)]
    options: FitOptions,
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Daily bars, `date,open,high,low,close`.
    #[arg(long)]
    ohlc: PathBuf,
    /// Range-series CSV.
    #[arg(long)]
    out: PathBuf,
    /// Flagged-days CSV; defaults to the output path with extension `flags.csv`.
    #[arg(long)]
    flags_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    ohlc: PathBuf,
    /// Ticks, `timestamp,price`.
    #[arg(long)]
    intraday: Option<PathBuf>,
    #[arg(long, default_value_t = data::DEFAULT_GRID_MINUTES)]
    grid_minutes: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Table1Args {
    #[arg(long, value_parser = parse_model)]
    model: ReferenceModel,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 3000)]
    length: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Log one line per replication to stderr.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    options: FitOptions,
}

fn parse_model(s: &str) -> Result<ReferenceModel, String> {
    s.parse().map_err(|_| format!("unknown model {s:?}, expected I, II, III or IV"))
}

fn parse_list(s: &str) -> Result<Coefficients, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("invalid number {x:?}")))
        .collect::<Result<_, _>>()
        .map(Coefficients)
}

/// A message and the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn model_code(e: &ModelError) -> i32 {
    match e {
        ModelError::NotMeanStationary { .. } | ModelError::NotWeaklyStationary { .. } => EXIT_STATIONARITY,
        ModelError::InvalidParams(_)
        | ModelError::UnsupportedOrder { .. }
        | ModelError::ConfigError(_)
        | ModelError::InvalidLag(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        let code = match &e {
            DataError::Io { .. } | DataError::Parse { .. } | DataError::BadBar { .. } => EXIT_IO,
            DataError::Model(m) => model_code(m),
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        DataError::from(e).into()
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => run_simulate(&a),
        Command::Check(a) => run_check(&a, stdout),
        Command::Acf(a) => run_acf(&a, stdout),
        Command::Fit(a) => run_fit(&a, stdout),
        Command::Ingest(a) => run_ingest(&a),
        Command::Compare(a) => run_compare(&a, stdout),
        Command::Table1(a) => run_table1(&a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Writes to `path`, or to `stdout` when no path is given.
fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> crate::Result<()>,
) -> CmdResult {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| DataError::io(p, e))?;
            let mut w = std::io::BufWriter::new(file);
            body(&mut w).map_err(|e| relabel(e, p))?;
            w.flush().map_err(|e| DataError::io(p, e))?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn relabel(e: DataError, path: &Path) -> DataError {
    match e {
        DataError::Io { source, .. } => DataError::io(path, source),
        other => other,
    }
}

fn json<T: Serialize>(value: &T) -> impl FnOnce(&mut dyn Write) -> crate::Result<()> + '_ {
    move |w| {
        let mut text = serde_json::to_string_pretty(value).expect("report serialises");
        text.push('\n');
        w.write_all(text.as_bytes()).map_err(|e| DataError::io("<output>", e))
    }
}

/// Weak stationarity for order (1,1,1), mean stationarity otherwise. The
/// all-zero coefficient model has a constant scale and passes.
fn stationarity_gate(p: &IntGarchParams) -> CmdResult {
    if p.all_coefficients_zero() {
        return Ok(());
    }
    let c1 = moments::c1(p);
    if p.is_one_one_one() {
        let c2 = moments::c2(p)?;
        if !moments::is_weakly_stationary(p)? {
            return Err(ModelError::NotWeaklyStationary { c1, c2 }.into());
        }
    } else if !moments::is_mean_stationary(p) {
        return Err(ModelError::NotMeanStationary { c1 }.into());
    }
    Ok(())
}

fn run_simulate(a: &SimulateArgs) -> CmdResult {
    let params = a.params.params()?;
    if a.require_stationary {
        stationarity_gate(&params)?;
    }
    let (h0_mode, r0_mode) = match a.start {
        Start::StationaryMean => (H0Mode::StationaryMean, R0Mode::StationaryMean),
        Start::Study => (H0Mode::Zero, R0Mode::StationaryMean),
        Start::Zero => (H0Mode::Zero, R0Mode::Fixed(Interval::ZERO)),
    };
    let cfg = SimConfig {
        params,
        length: a.length,
        burn_in: a.burn_in,
        seed: a.seed,
        h0_mode,
        r0_mode,
    };
    let out = simulate(&cfg)?;
    data::write_series_csv(&out.series, DateFormat::Index, &a.out)?;
    let h_out = a.h_out.clone().unwrap_or_else(|| a.out.with_extension("h.csv"));
    data::write_h_path_csv(out.series.timestamps(), DateFormat::Index, &[("h", &out.h_path)], &h_out)?;
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    c1: f64,
    c2: Option<f64>,
    mean_h: Option<f64>,
    second_moment_h: Option<f64>,
    var_r: Option<f64>,
    volatility_factor: f64,
    mean_stationary: bool,
    weakly_stationary: Option<bool>,
    note: Option<&'static str>,
}

fn run_check(a: &ParamArgs, stdout: &mut dyn Write) -> CmdResult {
    let p = a.params()?;
    let m = Moments::new(&p).allow_degenerate(true);
    let degenerate = p.all_coefficients_zero();
    let report = CheckReport {
        c1: moments::c1(&p),
        c2: moments::c2(&p).ok(),
        mean_h: m.mean_h().ok(),
        second_moment_h: m.second_moment_h().ok(),
        var_r: m.var_r().ok(),
        volatility_factor: moments::conditional_volatility_factor(&p),
        mean_stationary: moments::is_mean_stationary(&p),
        weakly_stationary: moments::is_weakly_stationary(&p).ok(),
        note: if degenerate {
            Some("all coefficients are zero: h_t = mu is constant and the strict weak-stationarity test fails")
        } else if !p.is_one_one_one() {
            Some("second moments are available for order (1,1,1) only")
        } else {
            None
        },
    };
    emit(None, stdout, json(&report))
}

fn run_acf(a: &AcfArgs, stdout: &mut dyn Write) -> CmdResult {
    let values: Vec<f64> = match (&a.input, a.params.is_empty()) {
        (Some(_), false) => return Err(Failure::usage("--input cannot be combined with parameter flags")),
        (None, true) => return Err(Failure::usage("give either --input or parameter flags")),
        (Some(path), true) => {
            let (s, _) = data::read_series_csv(path)?;
            (0..=a.max_lag as i64).map(|lag| sample_corr(&s, lag)).collect::<Result<_, _>>()?
        }
        (None, false) => {
            let p = a.params.params()?;
            let m = Moments::new(&p).allow_degenerate(true);
            (0..=a.max_lag as i64).map(|lag| m.acf(lag)).collect::<Result<_, _>>()?
        }
    };
    let lags: Vec<i64> = (0..=a.max_lag as i64).collect();
    emit(a.out.as_deref(), stdout, |w| {
        let mut text = String::from("lag,acf\n");
        for (lag, v) in lags.iter().zip(&values) {
            text.push_str(&format!("{lag},{v:.16e}\n"));
        }
        w.write_all(text.as_bytes()).map_err(|e| DataError::io("<output>", e))
    })
}

#[derive(Serialize)]
struct ParamsJson {
    k: f64,
    mu: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl ParamsJson {
    fn of(p: &IntGarchParams) -> Self {
        Self {
            k: p.k(),
            mu: p.mu(),
            alpha: p.alpha()[0],
            beta: p.beta()[0],
            gamma: p.gamma()[0],
        }
    }
}

#[derive(Serialize)]
struct FitReport {
    n_obs: usize,
    estimates: ParamsJson,
    initial: ParamsJson,
    k_fixed: bool,
    loss: f64,
    iterations: usize,
    converged: bool,
    gradient_mode: &'static str,
    gradient: [f64; 4],
    projected_gradient_norm: f64,
    volatility_factor: f64,
}

fn run_fit(a: &FitArgs, stdout: &mut dyn Write) -> CmdResult {
    let (s, format) = data::read_series_csv(&a.input)?;
    let fr = fit(&s, &a.options.config())?;
    if let Some(path) = &a.emit_h {
        let vol = volatility_path(&fr);
        data::write_h_path_csv(s.timestamps(), format, &[("h", &fr.h_path), ("H", &vol)], path)?;
    }
    let report = FitReport {
        n_obs: s.len(),
        estimates: ParamsJson::of(&fr.params),
        initial: ParamsJson::of(&fr.initial),
        k_fixed: fr.k_fixed,
        loss: fr.loss,
        iterations: fr.iterations,
        converged: fr.converged,
        gradient_mode: match fr.gradient_mode {
            GradientMode::Frozen => "frozen",
            GradientMode::ExactRecursive => "exact_recursive",
        },
        gradient: fr.gradient,
        projected_gradient_norm: fr.projected_gradient_norm,
        volatility_factor: moments::conditional_volatility_factor(&fr.params),
    };
    emit(a.out.as_deref(), stdout, json(&report))
}

fn run_ingest(a: &IngestArgs) -> CmdResult {
    let days = data::read_ohlc_csv(&a.ohlc)?;
    let s = data::return_ranges(&days)?;
    let flags = data::flag_days(&s);
    data::write_series_csv(&s, DateFormat::Iso, &a.out)?;
    let flags_out = a.flags_out.clone().unwrap_or_else(|| a.out.with_extension("flags.csv"));
    data::write_flags_csv(&s, &flags, DateFormat::Iso, &flags_out)?;
    Ok(())
}

fn run_compare(a: &CompareArgs, stdout: &mut dyn Write) -> CmdResult {
    let days = data::read_ohlc_csv(&a.ohlc)?;
    let s = data::return_ranges(&days)?;
    let fr = fit(&s, &FitConfig::default())?;
    let h = volatility_path(&fr);
    let garch = data::fit_garch11(&data::close_to_close_returns(&days))?;
    let rv: std::collections::HashMap<_, _> = match &a.intraday {
        Some(path) => data::read_intraday_csv(path)?
            .iter()
            .filter_map(|d| data::realized_volatility(d, a.grid_minutes).ok().map(|v| (d.date(), v)))
            .collect(),
        None => Default::default(),
    };
    let rows: Vec<ComparisonRow> = days[1..]
        .iter()
        .enumerate()
        .map(|(i, d)| ComparisonRow {
            date: d.date,
            intgarch_h: Some(h[i]),
            garch_sigma: Some(garch.sigma[i]),
            rv: rv.get(&d.date).copied(),
        })
        .collect();
    emit(a.out.as_deref(), stdout, |w| data::write_comparison(&rows, w))
}

fn run_table1(a: &Table1Args, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let params = a.model.params();
    let log = std::sync::Mutex::new(Vec::new());
    let report = run_study(&params, a.reps, a.length, a.seed, &a.options.config(), |i, fr| {
        if a.verbose {
            let p = &fr.params;
            let line = format!(
                "replication {i}: k={} mu={} alpha1={} beta1={} gamma1={} converged={}\n",
                p.k(),
                p.mu(),
                p.alpha()[0],
                p.beta()[0],
                p.gamma()[0],
                fr.converged
            );
            log.lock().expect("log lock").push((i, line));
        }
    })?;
    let mut lines = log.into_inner().expect("log lock");
    lines.sort();
    for (_, line) in lines {
        let _ = stderr.write_all(line.as_bytes());
    }
    emit(a.out.as_deref(), stdout, |w| {
        let mut text = String::from("parameter,truth,mean_estimate,mean_abs_bias,abs_mean_bias,empirical_sd\n");
        for r in &report.rows {
            text.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.parameter, r.truth, r.mean_estimate, r.mean_abs_bias, r.abs_mean_bias, r.empirical_sd
            ));
        }
        w.write_all(text.as_bytes()).map_err(|e| DataError::io("<output>", e))
    })
}
