//! Command-line front end. Subcommands mirror the pipeline stages, so each
//! table or verdict of interest is one invocation: `moments`, `verblunsky`,
//! `evolve`, `distribution`, `return-prob`, `genfunc-origin`, `sets`, and
//! the `check` suite.
//!
//! Output is CSV (plain rows, header first) or JSON (an envelope holding
//! the resolved config, the record rows, and any check verdicts). Exact
//! rationals serialize as "p/q" strings; doubles as 17-significant-digit
//! scientific notation in CSV and as native numbers in JSON. Identical
//! configurations produce byte-identical output.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numerical
//! breakdown.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use crate::analysis::{
    self, check_conjecture_distribution, check_selfsimilarity, limit_histogram,
    return_prob_closed_form, return_prob_simple,
};
use crate::genfunc::psi_hat_origin_with_depth;
use crate::measure::{moment, MeasureSpec};
use crate::scalar::{Rat, Scalar};
use crate::schur::verblunsky_for_measure;
use crate::walk::{evolve_with, Precision, WalkState};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "rieszwalk",
    version,
    about = "Quantum walks on the half-line from Riesz-type singular measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for records and checks.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PrecisionArg {
    Exact,
    Double,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Precision {
        match p {
            PrecisionArg::Exact => Precision::Exact,
            PrecisionArg::Double => Precision::Double,
        }
    }
}

#[derive(clap::Args, Debug)]
struct InitialState {
    /// Real part of the left component of the initial state.
    #[arg(long, default_value_t = 1.0)]
    alpha_re: f64,
    /// Imaginary part of the left component.
    #[arg(long, default_value_t = 0.0)]
    alpha_im: f64,
    /// Real part of the right component.
    #[arg(long, default_value_t = 0.0)]
    beta_re: f64,
    /// Imaginary part of the right component.
    #[arg(long, default_value_t = 0.0)]
    beta_im: f64,
}

impl InitialState {
    fn pair(&self) -> Result<(C64, C64), Error> {
        let alpha = C64::new(self.alpha_re, self.alpha_im);
        let beta = C64::new(self.beta_re, self.beta_im);
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "initial state norm^2 = {norm}, expected 1"
            )));
        }
        Ok((alpha, beta))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments mu_j of the m-fold measure.
    Moments {
        /// Fold parameter of the measure (4 is the Riesz measure).
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Largest moment index to emit.
        #[arg(long)]
        max: u64,
    },
    /// Verblunsky parameters alpha_k of the m-fold measure.
    Verblunsky {
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Number of parameters to extract.
        #[arg(long)]
        count: usize,
        /// Arithmetic of the extraction; defaults to exact up to 256
        /// parameters and double beyond.
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Amplitudes of the evolved state at time T.
    Evolve {
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Time horizon.
        #[arg(long = "T")]
        t_max: u64,
        #[command(flatten)]
        initial: InitialState,
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Probability rows at selected times (--at) or all times up to a
    /// horizon (--upto).
    Distribution {
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Comma-separated list of times to report.
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<u64>>,
        /// Report every time from 0 through this horizon.
        #[arg(long)]
        upto: Option<u64>,
        #[command(flatten)]
        initial: InitialState,
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Simulated return probability against the closed form.
    ReturnProb {
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long = "T")]
        t_max: u64,
        #[command(flatten)]
        initial: InitialState,
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Coefficients of the origin generating function against the moments.
    GenfuncOrigin {
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// Series order in z.
        #[arg(long)]
        order: usize,
        /// Continued-fraction depth override.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The fractal support sets K_n, K~_n, R_n, M_n.
    Sets {
        #[arg(long)]
        n: u32,
        /// Which set to emit; all four when omitted.
        #[arg(long, value_enum)]
        which: Option<SetKind>,
    },
    /// Verification suites with pass/fail verdicts.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SetKind {
    K,
    Ktilde,
    R,
    M,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Full-horizon agreement between simulation and the return law.
    Theorem {
        #[arg(long = "T", default_value_t = 1365)]
        t_max: u64,
        #[arg(long, value_enum)]
        precision: Option<PrecisionArg>,
    },
    /// Distribution law at time 4^n: origin mass, support, epsilon bound.
    ConjectureDist {
        #[arg(long)]
        n: u32,
    },
    /// Coarse-grained agreement between times 2t and 8t.
    ConjectureSelfsim {
        #[arg(long = "t", value_delimiter = ',', default_value = "1,2,4,8,16,32,64,128")]
        times: Vec<u64>,
    },
    /// Rescaled limit histogram at time 4^n and its support containment.
    ConjectureLimit {
        #[arg(long)]
        n: u32,
    },
}

/// One cell of an output record.
#[derive(Clone, Debug)]
enum Field {
    Int(i64),
    Float(f64),
    Exact(Rat),
    Text(String),
    Flag(bool),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => format!("{v:.16e}"),
            Field::Exact(v) => v.to_string(),
            Field::Text(v) => v.clone(),
            Field::Flag(v) => v.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Field::Int(v) => serde_json::json!(v),
            Field::Float(v) => serde_json::json!(v),
            Field::Exact(v) => serde_json::json!(v.to_string()),
            Field::Text(v) => serde_json::json!(v),
            Field::Flag(v) => serde_json::json!(v),
        }
    }
}

/// A named pass/fail verdict with its measured value and threshold.
#[derive(Clone, Debug)]
struct CheckRow {
    name: &'static str,
    measured: f64,
    threshold: f64,
    pass: bool,
}

/// Everything one subcommand produces.
struct Document {
    config: Vec<(&'static str, Field)>,
    columns: &'static [&'static str],
    records: Vec<Vec<Field>>,
    checks: Vec<CheckRow>,
}

impl Document {
    fn render_csv(&self) -> String {
        let mut out = String::new();
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for record in &self.records {
                let row: Vec<String> = record.iter().map(Field::csv).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push_str("check,measured,threshold,pass\n");
            for c in &self.checks {
                out.push_str(&format!(
                    "{},{:.16e},{:.16e},{}\n",
                    c.name, c.measured, c.threshold, c.pass
                ));
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let config: serde_json::Map<String, serde_json::Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect();
        let records: Vec<serde_json::Value> = self
            .records
            .iter()
            .map(|record| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(record)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "measured": c.measured,
                    "threshold": c.threshold,
                    "pass": c.pass,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "config": config,
            "records": records,
            "checks": checks,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("value serializes");
        text.push('\n');
        text
    }
}

/// Entry point used by `main`; parses the real process arguments.
pub fn run() -> i32 {
    execute(std::env::args_os())
}

/// Parses and executes `argv`, returning the process exit code.
pub fn execute<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign { 0 } else { 1 };
        }
    };
    match dispatch(&cli.command) {
        Ok(doc) => {
            let text = match cli.output {
                OutputFormat::Csv => doc.render_csv(),
                OutputFormat::Json => doc.render_json(),
            };
            match write_out(&cli.out, &text) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NumericalBreakdown { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
        }
    }
}

fn resolve_precision(requested: Option<PrecisionArg>, alpha_count: usize) -> Precision {
    match requested {
        Some(p) => p.into(),
        // Evolution defaults to the double path; exact stays opt-in except
        // for small parameter budgets where it is equally cheap.
        None => {
            if alpha_count <= 256 {
                Precision::Exact
            } else {
                Precision::Double
            }
        }
    }
}

fn precision_name(p: Precision) -> &'static str {
    match p {
        Precision::Exact => "exact",
        Precision::Double => "double",
    }
}

fn dispatch(cmd: &Command) -> Result<Document, Error> {
    match cmd {
        Command::Moments { m, max } => moments_doc(*m, *max),
        Command::Verblunsky {
            m,
            count,
            precision,
        } => verblunsky_doc(*m, *count, *precision),
        Command::Evolve {
            m,
            t_max,
            initial,
            precision,
        } => evolve_doc(*m, *t_max, initial, *precision),
        Command::Distribution {
            m,
            at,
            upto,
            initial,
            precision,
        } => distribution_doc(*m, at.clone(), *upto, initial, *precision),
        Command::ReturnProb {
            m,
            t_max,
            initial,
            precision,
        } => return_prob_doc(*m, *t_max, initial, *precision),
        Command::GenfuncOrigin { m, order, depth } => genfunc_doc(*m, *order, *depth),
        Command::Sets { n, which } => sets_doc(*n, *which),
        Command::Check { what } => match what {
            CheckCmd::Theorem { t_max, precision } => check_theorem_doc(*t_max, *precision),
            CheckCmd::ConjectureDist { n } => check_dist_doc(*n),
            CheckCmd::ConjectureSelfsim { times } => check_selfsim_doc(times),
            CheckCmd::ConjectureLimit { n } => check_limit_doc(*n),
        },
    }
}

fn moments_doc(m: u32, max: u64) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let records = (0..=max as i64)
        .map(|j| vec![Field::Int(j), Field::Exact(moment(j, &spec))])
        .collect();
    Ok(Document {
        config: vec![("m", Field::Int(m as i64)), ("max", Field::Int(max as i64))],
        columns: &["j", "mu"],
        records,
        checks: Vec::new(),
    })
}

fn verblunsky_doc(
    m: u32,
    count: usize,
    precision: Option<PrecisionArg>,
) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let precision = resolve_precision(precision, count);
    let records = match precision {
        Precision::Exact => {
            let seq = verblunsky_for_measure::<Rat>(&spec, count)?;
            (0..seq.len())
                .map(|k| vec![Field::Int(k as i64), Field::Exact(seq.alpha(k))])
                .collect()
        }
        Precision::Double => {
            let seq = verblunsky_for_measure::<f64>(&spec, count)?;
            (0..seq.len())
                .map(|k| vec![Field::Int(k as i64), Field::Float(seq.alpha(k))])
                .collect()
        }
    };
    Ok(Document {
        config: vec![
            ("m", Field::Int(m as i64)),
            ("count", Field::Int(count as i64)),
            ("precision", Field::Text(precision_name(precision).into())),
        ],
        columns: &["k", "alpha_k"],
        records,
        checks: Vec::new(),
    })
}

fn state_config(m: u32, initial: &InitialState, precision: Precision) -> Vec<(&'static str, Field)> {
    vec![
        ("m", Field::Int(m as i64)),
        ("alpha_re", Field::Float(initial.alpha_re)),
        ("alpha_im", Field::Float(initial.alpha_im)),
        ("beta_re", Field::Float(initial.beta_re)),
        ("beta_im", Field::Float(initial.beta_im)),
        ("precision", Field::Text(precision_name(precision).into())),
    ]
}

fn evolve_doc(
    m: u32,
    t_max: u64,
    initial: &InitialState,
    precision: Option<PrecisionArg>,
) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let pair = initial.pair()?;
    let precision = resolve_precision(precision, 2 * t_max as usize + 6);
    let mut final_state: Option<WalkState> = None;
    evolve_with(pair, &spec, t_max as usize, precision, |s| {
        if s.t() == t_max as usize {
            final_state = Some(s.clone());
        }
    })?;
    let state = final_state.expect("horizon visited");
    let records = (0..=state.support_end())
        .map(|x| {
            let [l, r] = state.amp(x);
            vec![
                Field::Int(t_max as i64),
                Field::Int(x as i64),
                Field::Float(l.re),
                Field::Float(l.im),
                Field::Float(r.re),
                Field::Float(r.im),
            ]
        })
        .collect();
    let mut config = state_config(m, initial, precision);
    config.push(("T", Field::Int(t_max as i64)));
    Ok(Document {
        config,
        columns: &["t", "x", "re_L", "im_L", "re_R", "im_R"],
        records,
        checks: Vec::new(),
    })
}

fn distribution_doc(
    m: u32,
    at: Option<Vec<u64>>,
    upto: Option<u64>,
    initial: &InitialState,
    precision: Option<PrecisionArg>,
) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let pair = initial.pair()?;
    let times: Vec<u64> = match (&at, upto) {
        (Some(list), None) => {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted
        }
        (None, Some(t)) => (0..=t).collect(),
        (None, None) => {
            return Err(Error::InvalidArgument(
                "distribution needs either --at or --upto".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument(
                "--at and --upto are mutually exclusive".into(),
            ))
        }
    };
    let horizon = *times.last().unwrap_or(&0);
    let precision = resolve_precision(precision, 2 * horizon as usize + 6);
    let mut records = Vec::new();
    evolve_with(pair, &spec, horizon as usize, precision, |s| {
        if times.binary_search(&(s.t() as u64)).is_ok() {
            for x in 0..=s.support_end() {
                let [l, r] = s.amp(x);
                records.push(vec![
                    Field::Int(s.t() as i64),
                    Field::Int(x as i64),
                    Field::Float(l.norm_sqr()),
                    Field::Float(r.norm_sqr()),
                    Field::Float(s.probability(x)),
                ]);
            }
        }
    })?;
    let mut config = state_config(m, initial, precision);
    config.push(("times", Field::Text(
        times
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    )));
    Ok(Document {
        config,
        columns: &["t", "x", "prob_L", "prob_R", "prob"],
        records,
        checks: Vec::new(),
    })
}

fn return_prob_doc(
    m: u32,
    t_max: u64,
    initial: &InitialState,
    precision: Option<PrecisionArg>,
) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let pair = initial.pair()?;
    let precision = resolve_precision(precision, 2 * t_max as usize + 6);
    let mut records = Vec::new();
    evolve_with(pair, &spec, t_max as usize, precision, |s| {
        let t = s.t() as u64;
        let simulated = s.probability(0);
        let closed = if m == 4 {
            return_prob_closed_form(t, pair.0, pair.1)
                .expect("state validated")
                .value
        } else {
            let psi = analysis::origin_amplitude_moments(t, pair.0, pair.1, &spec);
            psi[0].norm_sqr() + psi[1].norm_sqr()
        };
        records.push(vec![
            Field::Int(t as i64),
            Field::Float(simulated),
            Field::Float(closed),
            Field::Float((simulated - closed).abs()),
        ]);
    })?;
    let mut config = state_config(m, initial, precision);
    config.push(("T", Field::Int(t_max as i64)));
    Ok(Document {
        config,
        columns: &["t", "prob", "closed_form", "abs_diff"],
        records,
        checks: Vec::new(),
    })
}

fn genfunc_doc(m: u32, order: usize, depth: Option<usize>) -> Result<Document, Error> {
    let spec = MeasureSpec::new(m)?;
    let depth = depth.unwrap_or(order / 2 + 2);
    let series = psi_hat_origin_with_depth(&spec, order, depth)?;
    let records = (0..=series.valid_order())
        .map(|n| {
            let coeff = series.coeff(n).clone();
            let mu = moment(n as i64, &spec);
            let agree = coeff == mu;
            vec![
                Field::Int(n as i64),
                Field::Exact(coeff),
                Field::Exact(mu),
                Field::Flag(agree),
            ]
        })
        .collect();
    Ok(Document {
        config: vec![
            ("m", Field::Int(m as i64)),
            ("order", Field::Int(order as i64)),
            ("depth", Field::Int(depth as i64)),
        ],
        columns: &["n", "coeff", "mu", "agree"],
        records,
        checks: Vec::new(),
    })
}

fn sets_doc(n: u32, which: Option<SetKind>) -> Result<Document, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument("sets need n >= 1".into()));
    }
    let kinds: Vec<SetKind> = match which {
        Some(kind) => vec![kind],
        None => vec![SetKind::K, SetKind::Ktilde, SetKind::R, SetKind::M],
    };
    let mut records = Vec::new();
    for kind in kinds {
        let (name, values): (&str, Vec<Rat>) = match kind {
            SetKind::K => (
                "K",
                analysis::support_set_k(n)
                    .into_iter()
                    .map(|v| Rat::from_ratio(v as i64, 1))
                    .collect(),
            ),
            SetKind::Ktilde => ("Ktilde", analysis::support_set_ktilde(n).into_iter().collect()),
            SetKind::R => ("R", analysis::cantor_r(n).into_iter().collect()),
            SetKind::M => ("M", analysis::quarter_m(n).into_iter().collect()),
        };
        for (index, value) in values.into_iter().enumerate() {
            records.push(vec![
                Field::Text(name.into()),
                Field::Int(n as i64),
                Field::Int(index as i64),
                Field::Exact(value),
            ]);
        }
    }
    Ok(Document {
        config: vec![("n", Field::Int(n as i64))],
        columns: &["set", "n", "index", "value"],
        records,
        checks: Vec::new(),
    })
}

fn check_theorem_doc(t_max: u64, precision: Option<PrecisionArg>) -> Result<Document, Error> {
    let spec = MeasureSpec::riesz();
    let precision = resolve_precision(precision, 2 * t_max as usize + 6);
    let mut max_dev: f64 = 0.0;
    let mut max_zero: f64 = 0.0;
    let mut max_quarter_dev: f64 = 0.0;
    evolve_with(
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        &spec,
        t_max as usize,
        precision,
        |s| {
            let t = s.t() as u64;
            let simulated = s.probability(0);
            let closed = return_prob_simple(t).to_f64();
            if closed == 0.0 {
                max_zero = max_zero.max(simulated);
            } else {
                max_dev = max_dev.max((simulated - closed).abs());
            }
            if t >= 4 && t.is_power_of_two() && t.trailing_zeros() % 2 == 0 {
                // Powers of 4 among powers of 2: even exponent >= 2.
                max_quarter_dev = max_quarter_dev.max((simulated - 0.25).abs());
            }
        },
    )?;
    let checks = vec![
        CheckRow {
            name: "theorem-nonzero-agreement",
            measured: max_dev,
            threshold: 1e-9,
            pass: max_dev <= 1e-9,
        },
        CheckRow {
            name: "theorem-zero-pattern",
            measured: max_zero,
            threshold: 1e-18,
            pass: max_zero < 1e-18,
        },
        CheckRow {
            name: "power-of-four-quarter",
            measured: max_quarter_dev,
            threshold: 1e-9,
            pass: max_quarter_dev <= 1e-9,
        },
    ];
    Ok(Document {
        config: vec![
            ("m", Field::Int(4)),
            ("T", Field::Int(t_max as i64)),
            ("precision", Field::Text(precision_name(precision).into())),
        ],
        columns: &[],
        records: Vec::new(),
        checks,
    })
}

fn distribution_at(time: u64) -> Result<Vec<f64>, Error> {
    let spec = MeasureSpec::riesz();
    let precision = resolve_precision(None, 2 * time as usize + 6);
    let mut row = Vec::new();
    evolve_with(
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        &spec,
        time as usize,
        precision,
        |s| {
            if s.t() as u64 == time {
                row = s.distribution();
            }
        },
    )?;
    Ok(row)
}

fn check_dist_doc(n: u32) -> Result<Document, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument("conjecture-dist needs n >= 1".into()));
    }
    let time = 4u64.pow(n);
    let dist = distribution_at(time)?;
    let report = check_conjecture_distribution(n, &dist);
    let records = report
        .epsilons
        .iter()
        .map(|&(x, eps)| {
            vec![
                Field::Int(x as i64),
                Field::Float(analysis::nu(&dist, x as usize)),
                Field::Float(eps),
            ]
        })
        .collect();
    let origin_dev = (report.origin_mass - 0.25).abs();
    let checks = vec![
        CheckRow {
            name: "origin-mass-quarter",
            measured: origin_dev,
            threshold: 1e-9,
            pass: origin_dev <= 1e-9,
        },
        CheckRow {
            name: "support-leakage",
            measured: report.off_support_leak,
            threshold: 1e-9,
            pass: report.off_support_leak <= 1e-9,
        },
        CheckRow {
            name: "epsilon-bound",
            measured: report.max_abs_eps,
            threshold: 0.03,
            pass: report.max_abs_eps < 0.03,
        },
    ];
    Ok(Document {
        config: vec![("n", Field::Int(n as i64)), ("t", Field::Int(time as i64))],
        columns: &["x", "nu", "epsilon"],
        records,
        checks,
    })
}

fn check_selfsim_doc(times: &[u64]) -> Result<Document, Error> {
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for &t in times {
        if t < 1 {
            return Err(Error::InvalidArgument("self-similarity needs t >= 1".into()));
        }
        let coarse = distribution_at(2 * t)?;
        let fine = distribution_at(8 * t)?;
        let deviation = check_selfsimilarity(t, &coarse, &fine)?;
        worst = worst.max(deviation);
        records.push(vec![Field::Int(t as i64), Field::Float(deviation)]);
    }
    let checks = vec![CheckRow {
        name: "cell-deviation",
        measured: worst,
        threshold: 1e-9,
        pass: worst <= 1e-9,
    }];
    Ok(Document {
        config: vec![(
            "times",
            Field::Text(
                times
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        )],
        columns: &["t", "max_cell_deviation"],
        records,
        checks,
    })
}

fn check_limit_doc(n: u32) -> Result<Document, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument("conjecture-limit needs n >= 1".into()));
    }
    let time = 4u64.pow(n);
    let dist = distribution_at(time)?;
    let hist = limit_histogram(n, &dist);
    let records = hist
        .points
        .iter()
        .map(|&(position, mass)| vec![Field::Float(position), Field::Float(mass)])
        .collect();
    let origin_dev = (hist.origin_mass - 0.25).abs();
    let support_floor = 2.0 / 3.0 - 4f64.powi(1 - n as i32);
    let checks = vec![
        CheckRow {
            name: "origin-mass-quarter",
            measured: origin_dev,
            threshold: 1e-9,
            pass: origin_dev <= 1e-9,
        },
        CheckRow {
            name: "support-above-two-thirds",
            measured: hist.min_rescaled_support,
            threshold: support_floor,
            pass: hist.min_rescaled_support >= support_floor,
        },
        CheckRow {
            name: "ktilde-distance",
            measured: hist.max_ktilde_distance,
            threshold: 4f64.powi(1 - n as i32),
            pass: hist.max_ktilde_distance <= 4f64.powi(1 - n as i32),
        },
    ];
    Ok(Document {
        config: vec![("n", Field::Int(n as i64)), ("t", Field::Int(time as i64))],
        columns: &["position", "mass"],
        records,
        checks,
    })
}
