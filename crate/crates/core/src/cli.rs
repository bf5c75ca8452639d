//! Command-line front end behind the `expozeros` binary.
//!
//! Exit codes: `0` on completion (verdicts are data), `2` on input errors,
//! `1` when an assertion of a reproduction or check target fails.

use std::collections::BTreeMap;
use std::f64::consts::E;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    alpha_sequence, footnote_sequence, int_decomposition, integer_lattice, scaled_lattice, shifted_lattice,
    AlphaProfile, AlphaSpec,
};
use crate::criteria::{
    classify, d_profile, dyadic_grid, phi_profile, ClassifyOptions, CriterionReport, DEFAULT_POINTS_PER_WINDOW,
};
use crate::error::{argument, Error, Result};
use crate::product::{evaluate_product_with, jensen_identity_check, log_modulus_via_counting};
use crate::zero_model::{load_path, ZeroSequence};

#[derive(Debug, Parser)]
#[command(name = "expozeros", version, about = "Zero sets of entire functions of exponential type")]
pub struct Cli {
    /// Worker threads for grid evaluations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lindelöf sums, growth, angular densities and the C/B/D criteria.
    Classify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridArgs,
        /// Sector half-angle for the angular densities (repeatable).
        #[arg(long = "alpha")]
        alphas: Vec<f64>,
    },
    /// Canonical product at given points.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Evaluation point `re,im` (repeatable).
        #[arg(long = "z", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        /// Truncation radius of the product (default: the sequence's radius).
        #[arg(long)]
        radius: Option<f64>,
        /// Fold the first-order tail estimate into the value.
        #[arg(long)]
        tail_correct: bool,
    },
    /// Product vs counting-side log-modulus and the Jensen combination.
    IdentityCheck {
        #[command(flatten)]
        source: Source,
        /// Number of random points.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Jensen quadrature nodes (power of two).
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
        /// Exit 1 if a log-modulus residual exceeds this (relative to 1 + |value|).
        #[arg(long)]
        max_residual: Option<f64>,
    },
    /// φ(x; b) and the D integrand on a dyadic grid.
    PhiProfile {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Reproduce the two explicit constructions, asserting their bounds.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        /// Truncation radius for the footnote sequence.
        #[arg(long = "R", default_value_t = 1e6)]
        radius: f64,
        /// Coefficient c of α(t) = t + c log(1 + t).
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Third-integral cutoff as a multiple of x.
        #[arg(long, default_value_t = 1e3)]
        t_max_factor: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Footnote,
    AlphaExample,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceChoice {
    /// Generator `name[,k=v...]`: lattice, scaled, shifted, footnote, alpha, empty.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Zero file (text or JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Source {
    #[command(flatten)]
    pub choice: SourceChoice,
    /// Radius parameter of the generator.
    #[arg(long = "R", id = "generator_radius")]
    pub radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Base point of φ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Half-width of the x range (default: R/4).
    #[arg(long = "x-max")]
    pub x_max: Option<f64>,
    /// Points per dyadic window.
    #[arg(long, default_value_t = DEFAULT_POINTS_PER_WINDOW)]
    pub grid: usize,
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("EXPOZEROS_LOG")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let (text, outcome) = match run(&cli) {
        Ok(output) => (output.text, output.failure),
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(Error::from),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    match outcome {
        Some(message) => {
            eprintln!("assertion failed: {message}");
            1
        }
        None => 0,
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Assertion(_) => 1,
        _ => 2,
    }
}

/// Rendered output plus an optional assertion failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub failure: Option<String>,
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Classify { source, grid, alphas } => run_classify(&load(source)?, grid, alphas, cli.format),
        Command::Eval {
            source,
            points,
            radius,
            tail_correct,
        } => {
            let seq = load(source)?;
            let table = eval_table(&seq, points, *radius, *tail_correct)?;
            Ok(table.render(cli.format, None))
        }
        Command::IdentityCheck {
            source,
            count,
            seed,
            nodes,
            max_residual,
        } => {
            let seq = load(source)?;
            let (table, failure) = identity_table(&seq, *count, *seed, *nodes, *max_residual)?;
            Ok(table.render(cli.format, failure))
        }
        Command::PhiProfile { source, grid } => {
            let seq = load(source)?;
            Ok(profile_table(&seq, grid)?.render(cli.format, None))
        }
        Command::Reproduce {
            target,
            radius,
            c,
            t_max_factor,
        } => {
            let (table, failure) = match target {
                Target::Footnote => footnote_table(*radius)?,
                Target::AlphaExample => alpha_table(*c, *t_max_factor)?,
            };
            Ok(table.render(cli.format, failure))
        }
    }
}

/// Formats a double with 17 significant digits; non-finite values as
/// `inf`, `-inf`, `nan`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) if v.is_finite() => serde_json::json!(v),
            Cell::Num(v) => serde_json::Value::String(fmt_f64(*v)),
            Cell::Int(i) => serde_json::json!(i),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
        }
    }
}

/// A column table rendered identically to CSV or JSON.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn render(&self, format: Format, failure: Option<String>) -> Output {
        let text = match format {
            Format::Csv => {
                let mut s = self.columns.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                for (k, v) in &self.summary {
                    let _ = writeln!(s, "# {k},{}", v.csv());
                }
                s
            }
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let map: serde_json::Map<String, serde_json::Value> =
                            self.columns.iter().zip(row).map(|(k, v)| (k.to_string(), v.json())).collect();
                        serde_json::Value::Object(map)
                    })
                    .collect();
                let summary: serde_json::Map<String, serde_json::Value> =
                    self.summary.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                let doc = serde_json::json!({ "rows": rows, "summary": summary });
                let mut s = serde_json::to_string_pretty(&doc).expect("table serialises");
                s.push('\n');
                s
            }
        };
        Output { text, failure }
    }
}

fn parse_generator(spec: &str) -> Result<(String, BTreeMap<String, f64>)> {
    let mut parts = spec.split(',');
    let name = parts.next().unwrap_or_default().trim().to_string();
    let mut params = BTreeMap::new();
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| argument(format!("generator parameter `{part}` is not k=v")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| argument(format!("generator parameter `{part}` is not numeric")))?;
        params.insert(k.trim().to_string(), value);
    }
    Ok((name, params))
}

/// Builds a sequence from a generator spec such as `alpha,c=1,N=1000`.
pub fn generate(spec: &str, radius: Option<f64>) -> Result<ZeroSequence> {
    let (name, params) = parse_generator(spec)?;
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    let r = |default: f64| radius.unwrap_or_else(|| get("R", default));
    let known: &[&str] = match name.as_str() {
        "lattice" | "footnote" => &["R"],
        "scaled" => &["h", "R"],
        "shifted" => &["s", "R"],
        "alpha" => &["c", "N"],
        "empty" => &[],
        other => return Err(argument(format!("unknown generator `{other}`"))),
    };
    if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(argument(format!("generator `{name}` has no parameter `{k}`")));
    }
    match name.as_str() {
        "lattice" => integer_lattice(r(1e4)),
        "scaled" => scaled_lattice(get("h", 1.0), r(1e4)),
        "shifted" => shifted_lattice(get("s", 0.5), r(1e4)),
        "footnote" => footnote_sequence(r(1e6)),
        "alpha" => {
            let n = get("N", 1e4);
            if !(n >= 1.0) || n.fract() != 0.0 {
                return Err(argument(format!("N must be a positive integer, got {n}")));
            }
            alpha_sequence(&AlphaSpec::new(get("c", 1.0))?, n as usize)
        }
        _ => Ok(ZeroSequence::empty().with_provenance("empty")),
    }
}

fn load(source: &Source) -> Result<ZeroSequence> {
    match (&source.choice.generator, &source.choice.file) {
        (Some(spec), None) => generate(spec, source.radius),
        (None, Some(path)) => {
            let seq = load_path(path)?;
            log::info!("loaded {} zeros from {}", seq.len(), path.display());
            Ok(seq)
        }
        _ => Err(argument("give exactly one of --gen or --file")),
    }
}

fn run_classify(seq: &ZeroSequence, grid: &GridArgs, alphas: &[f64], format: Format) -> Result<Output> {
    let mut options = ClassifyOptions {
        b: grid.b,
        x_max: grid.x_max,
        points_per_window: grid.grid,
        ..ClassifyOptions::default()
    };
    if !alphas.is_empty() {
        options.alphas = alphas.to_vec();
    }
    let report = classify(seq, &options)?;
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut table = Table::new(&[
                "criterion",
                "raw_verdict",
                "verdict",
                "witness",
                "extremum_value",
                "trend_slope",
                "mass_slope",
            ]);
            let raw = [report.raw_verdicts.c, report.raw_verdicts.b, report.raw_verdicts.d];
            for (r, raw) in [&report.c, &report.b, &report.d].into_iter().zip(raw) {
                table.rows.push(report_row(r, raw.as_str()));
            }
            table.summary.push(("x_max", Cell::Num(report.x_max)));
            table.summary.push(("artifacts", Cell::Int(report.artifacts.len() as i64)));
            table.render(Format::Csv, None).text
        }
    };
    Ok(Output { text, failure: None })
}

fn opt(v: Option<f64>) -> Cell {
    v.map_or(Cell::Text(String::new()), Cell::Num)
}

fn report_row(r: &CriterionReport, raw: &str) -> Vec<Cell> {
    vec![
        Cell::Text(r.criterion.as_str().into()),
        Cell::Text(raw.into()),
        Cell::Text(r.verdict.as_str().into()),
        opt(r.witness),
        Cell::Num(r.extremum_value),
        opt(r.trend_slope),
        opt(r.mass_slope),
    ]
}

fn parse_point(text: &str) -> Result<Complex64> {
    let (re, im) = text.split_once(',').unwrap_or((text, "0"));
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| argument(format!("point `{text}` is not `re,im`")))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn default_radius(seq: &ZeroSequence) -> f64 {
    if seq.is_complete() {
        2.0 * seq.max_modulus() + 1.0
    } else {
        seq.truncation_radius()
    }
}

fn eval_table(seq: &ZeroSequence, points: &[String], radius: Option<f64>, tail_correct: bool) -> Result<Table> {
    let radius = radius.unwrap_or_else(|| default_radius(seq));
    let mut table = Table::new(&[
        "z_re",
        "z_im",
        "log_modulus",
        "argument",
        "factor_count",
        "tail_re",
        "tail_im",
        "tail_applied",
    ]);
    for p in points {
        let z = parse_point(p)?;
        let e = evaluate_product_with(seq, z, radius, tail_correct)?;
        let tail = e.tail_estimate.unwrap_or_default();
        table.rows.push(vec![
            Cell::Num(z.re),
            Cell::Num(z.im),
            Cell::Num(e.value.log_magnitude),
            Cell::Num(e.value.argument),
            Cell::Int(e.factor_count as i64),
            Cell::Num(tail.re),
            Cell::Num(tail.im),
            Cell::Int(i64::from(e.tail_applied)),
        ]);
    }
    table.summary.push(("radius", Cell::Num(radius)));
    Ok(table)
}

const IDENTITY_CLEARANCE: f64 = 0.01;
const JENSEN_ROWS: usize = 10;

fn random_points(seq: &ZeroSequence, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reach = if seq.is_complete() { 10.0 } else { (seq.truncation_radius() / 4.0).min(10.0) };
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let z = Complex64::new(rng.gen_range(-reach..reach), rng.gen_range(-reach..reach));
        if z.norm() > reach || z.norm() < IDENTITY_CLEARANCE {
            continue;
        }
        if seq.zeros().iter().any(|a| (a.position - z).norm() < IDENTITY_CLEARANCE) {
            continue;
        }
        points.push(z);
    }
    points
}

fn identity_table(
    seq: &ZeroSequence,
    count: usize,
    seed: u64,
    nodes: usize,
    max_residual: Option<f64>,
) -> Result<(Table, Option<String>)> {
    let radius = default_radius(seq);
    let mut table = Table::new(&["kind", "z_re", "z_im", "product_logmod", "counting_logmod", "residual"]);
    let points = random_points(seq, count, seed);
    let mut worst = 0.0f64;
    let mut failure = None;
    for z in &points {
        let product = evaluate_product_with(seq, *z, radius, false)?.value.log_magnitude;
        let counting = log_modulus_via_counting(seq, *z)?;
        let residual = if product == counting { 0.0 } else { (product - counting).abs() };
        let scaled = residual / (1.0 + counting.abs());
        worst = worst.max(scaled);
        if let (Some(tol), None) = (max_residual, &failure) {
            if !(scaled <= tol) {
                failure = Some(format!("z = {z}: product {product}, counting {counting}, residual {residual}"));
            }
        }
        table.rows.push(vec![
            Cell::Text("log_modulus".into()),
            Cell::Num(z.re),
            Cell::Num(z.im),
            Cell::Num(product),
            Cell::Num(counting),
            Cell::Num(residual),
        ]);
    }
    let mut jensen_worst = 0.0f64;
    if seq.is_complete() {
        for z in points.iter().take(JENSEN_ROWS) {
            let j = jensen_identity_check(seq, *z, nodes)?;
            jensen_worst = jensen_worst.max(j.residual);
            table.rows.push(vec![
                Cell::Text("jensen".into()),
                Cell::Num(z.re),
                Cell::Num(z.im),
                Cell::Num(j.left),
                Cell::Num(j.right),
                Cell::Num(j.residual),
            ]);
        }
    }
    table.summary.push(("max_residual", Cell::Num(worst)));
    table.summary.push(("max_jensen_residual", Cell::Num(jensen_worst)));
    table.summary.push(("points", Cell::Int(points.len() as i64)));
    Ok((table, failure))
}

fn profile_table(seq: &ZeroSequence, grid: &GridArgs) -> Result<Table> {
    let x_max = grid.x_max.unwrap_or_else(|| {
        if seq.is_complete() {
            (2.0 * seq.max_modulus()).max(8.0)
        } else {
            seq.truncation_radius() / 4.0
        }
    });
    let xs = dyadic_grid(x_max, grid.grid)?;
    let phi = phi_profile(seq, grid.b, &xs)?;
    let d = d_profile(seq, &xs)?;
    let mut table = Table::new(&["x", "phi", "d_integrand"]);
    for ((x, p), (_, dv)) in phi.samples.iter().zip(&d) {
        table.rows.push(vec![Cell::Num(*x), Cell::Num(*p), Cell::Num(*dv)]);
    }
    table.summary.push(("b", Cell::Num(grid.b)));
    table.summary.push(("horizon", opt(phi.horizon)));
    Ok(table)
}

/// `1 + x / (2 log x)`, the lower bound for `log|f(x)|` on the footnote sequence.
pub fn footnote_bound(x: f64) -> f64 {
    1.0 + x / (2.0 * x.ln())
}

fn footnote_table(radius: f64) -> Result<(Table, Option<String>)> {
    let seq = footnote_sequence(radius)?;
    let mut table = Table::new(&["x", "log_modulus", "bound", "holds"]);
    let mut failure = None;
    for x in [E.powi(3), 1e2, 1e3] {
        let value = evaluate_product_with(&seq, Complex64::new(x, 0.0), radius, false)?.value.log_magnitude;
        let bound = footnote_bound(x);
        let holds = value >= bound;
        if !holds && failure.is_none() {
            failure = Some(format!("x = {x}: log|f| = {value} < {bound}"));
        }
        table.rows.push(vec![Cell::Num(x), Cell::Num(value), Cell::Num(bound), Cell::Int(i64::from(holds))]);
    }
    table.summary.push(("zeros", Cell::Int(seq.len() as i64)));
    table.summary.push(("R", Cell::Num(radius)));
    Ok((table, failure))
}

fn alpha_table(c: f64, t_max_factor: f64) -> Result<(Table, Option<String>)> {
    let spec = AlphaSpec::new(c)?;
    let mut table = Table::new(&["x", "first", "second", "third", "second_floor", "quadrature_error"]);
    let mut failure = None;
    let mut previous: Option<f64> = None;
    for x in [1e2, 1e3, 1e4] {
        let d = int_decomposition(&spec, x, t_max_factor * x)?;
        let floor = d.second_floor.unwrap_or(f64::NEG_INFINITY);
        let checks = [
            (d.third >= 0.0, "third < 0"),
            (d.second >= floor, "second below the uniform floor"),
            (previous.is_none_or(|p| d.first > p), "first not increasing"),
        ];
        if let Some((_, what)) = checks.iter().find(|c| !c.0) {
            failure.get_or_insert(format!("x = {x}: {what} (first {}, second {}, third {})", d.first, d.second, d.third));
        }
        previous = Some(d.first);
        table.rows.push(vec![
            Cell::Num(x),
            Cell::Num(d.first),
            Cell::Num(d.second),
            Cell::Num(d.third),
            Cell::Num(floor),
            Cell::Num(d.quadrature_error),
        ]);
    }
    table.summary.push(("alpha", Cell::Text(spec.describe())));
    Ok((table, failure))
}
