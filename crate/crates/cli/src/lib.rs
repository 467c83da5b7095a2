//! Command-line front end: matrix files in, solutions and JSON reports out.

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use tstein_core::analysis::{default_cmn, UNIT_ROUNDOFF};
use tstein_core::solvers::{SylvesterOutcome, DEFAULT_TOL, SMITH_MAX_ITERATIONS};
use tstein_core::spectral::check_solvability_with_tol;
use tstein_core::{
    error_report, generate_problem, read_matrix, solve_bartels_stewart, solve_cg, solve_deflating, solve_direct,
    solve_smith, solve_t_sylvester, write_matrix, DenseMatrix, ErrorReport, PencilVariant, Profile, Shift,
    SolveOutcome, SpectrumReport, TsteinError, C64,
};

pub const SCHEMA: &str = "tstein-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_BREAKDOWN: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tstein", version, about = "Solve and analyze the matrix equation X = A Xᵀ B + C")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve X = A Xᵀ B + C with one method.
    Solve(SolveArgs),
    /// Decide unique solvability from the spectrum of AᵀB.
    Check(CheckArgs),
    /// Residual, condition and perturbation diagnostics for an approximate X.
    Analyze(AnalyzeArgs),
    /// Run every method on a generated problem and compare.
    Bench(BenchArgs),
    /// Solve AX + XᵀB = C through its Stein form.
    Sylvester(SylvesterArgs),
    /// Write a generated problem as Matrix Market files.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
pub struct Inputs {
    #[arg(long = "A", value_name = "PATH")]
    pub a: PathBuf,
    #[arg(long = "B", value_name = "PATH")]
    pub b: PathBuf,
    #[arg(long = "C", value_name = "PATH")]
    pub c: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    #[value(alias = "bartels-stewart")]
    Bs,
    Smith,
    Cg,
    Deflating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ml,
    M1l1,
}

impl From<VariantArg> for PencilVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Ml => PencilVariant::Ml,
            VariantArg::M1l1 => PencilVariant::M1l1,
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Pencil for the deflating method.
    #[arg(long, value_enum, default_value = "ml")]
    pub variant: VariantArg,
    /// Relative residual tolerance of the iterative methods.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Iteration cap (Smith default 60, CG default n² + 10).
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Tolerance of the reciprocal-pair test.
    #[arg(long, default_value_t = 1e-10)]
    pub spec_tol: f64,
    /// Constant of the stopping criterion (default 10n²).
    #[arg(long)]
    pub cmn: Option<f64>,
    /// Matrix Market file for X.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    /// JSON report (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long = "A", value_name = "PATH")]
    pub a: PathBuf,
    #[arg(long = "B", value_name = "PATH")]
    pub b: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub spec_tol: f64,
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long = "X", value_name = "PATH")]
    pub x: PathBuf,
    #[arg(long)]
    pub cmn: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub spec_tol: f64,
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "contractive")]
    pub profile: Profile,
    /// Iterative tolerance (default: the stopping-criterion level cmn·u).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub cmn: Option<f64>,
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SylvesterArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Fixed shift `a,b` instead of the automatic search.
    #[arg(long, value_parser = parse_shift, allow_hyphen_values = true)]
    pub shift: Option<(f64, f64)>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "contractive")]
    pub profile: Profile,
    /// Directory receiving A.mtx, B.mtx, C.mtx and bundle.json.
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
}

fn parse_shift(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("bad shift coefficient {a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("bad shift coefficient {b:?}: {e}"))?;
    if a == 0.0 && b == 0.0 {
        return Err("shift (0, 0) is not allowed".into());
    }
    Ok((a, b))
}

/// Failure carrying its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<TsteinError> for CliError {
    fn from(e: TsteinError) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

pub fn exit_code(e: &TsteinError) -> i32 {
    match e {
        TsteinError::Unsolvable(_) => EXIT_UNSOLVABLE,
        TsteinError::MethodInapplicable(_) => EXIT_INAPPLICABLE,
        TsteinError::NoConvergence { .. }
        | TsteinError::SingularPencil { .. }
        | TsteinError::SingularTriangular { .. }
        | TsteinError::RankDeficient { .. }
        | TsteinError::NumericalBreakdown(_)
        | TsteinError::IllSeparatedSpectra { .. }
        | TsteinError::SingularStep { .. }
        | TsteinError::IrregularPencil
        | TsteinError::ReductionNotEquivalent { .. } => EXIT_BREAKDOWN,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Check(a) => cmd_check(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sylvester(a) => cmd_sylvester(a),
        Command::Generate(a) => cmd_generate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tstein: {}", e.message);
            e.code
        }
    }
}

struct Timings(Map<String, Value>, Instant);

impl Timings {
    fn new() -> Self {
        Self(Map::new(), Instant::now())
    }

    fn lap(&mut self, phase: &str) {
        self.0.insert(phase.into(), json!(self.1.elapsed().as_secs_f64()));
        self.1 = Instant::now();
    }

    fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

struct LoadedInput {
    matrix: DenseMatrix,
    record: Value,
}

fn load(label: &str, path: &Path) -> Result<LoadedInput, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let matrix = read_matrix(path).map_err(|e| CliError {
        code: exit_code(&e),
        message: format!("{label} ({}): {e}", path.display()),
    })?;
    let record = json!({
        "path": path.display().to_string(),
        "sha256": hex::encode(Sha256::digest(&bytes)),
        "rows": matrix.rows(),
        "cols": matrix.cols(),
    });
    Ok(LoadedInput { matrix, record })
}

fn load_all(pairs: &[(&str, &Path)]) -> Result<(Vec<DenseMatrix>, Value), CliError> {
    let mut files = Map::new();
    let mut out = Vec::new();
    for (label, path) in pairs {
        let l = load(label, path)?;
        files.insert((*label).to_string(), l.record);
        out.push(l.matrix);
    }
    let n = out[0].rows();
    if out.iter().any(|m| m.shape() != (n, n)) {
        let shapes: Vec<String> = out.iter().map(|m| format!("{}x{}", m.rows(), m.cols())).collect();
        return Err(CliError::usage(format!(
            "inputs must be square and of equal size, got {}",
            shapes.join(", ")
        )));
    }
    Ok((out, Value::Object(files)))
}

fn complex_list(values: &[C64]) -> Value {
    Value::Array(values.iter().map(|z| json!([z.re, z.im])).collect())
}

/// Non-finite floats become null.
fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

pub fn spectrum_json(r: &SpectrumReport) -> Value {
    json!({
        "uniquely_solvable": r.uniquely_solvable,
        "margin": num(r.margin),
        "tolerance": r.tolerance,
        "minus_one_multiplicity": r.minus_one_multiplicity,
        "reciprocal_violations": r.reciprocal_violations,
        "base_eigenvalues": complex_list(&r.base_eigenvalues),
        "induced_eigenvalues": complex_list(&r.induced_eigenvalues),
    })
}

pub fn error_report_json(r: &ErrorReport) -> Value {
    let (alpha, beta, gamma) = r.alpha_beta_gamma;
    json!({
        "residual_fro": num(r.residual_fro),
        "stopping_bound": num(r.stopping_bound),
        "meets_stopping_bound": r.residual_fro <= r.stopping_bound,
        "kappa_s": opt(r.kappa_s),
        "psi": opt(r.psi),
        "first_order_coefficient": opt(r.first_order_coefficient),
        "posterior_bound": opt(r.posterior_bound),
        "alpha": alpha,
        "beta": beta,
        "gamma": gamma,
    })
}

fn outcome_json(o: &SolveOutcome) -> Value {
    json!({
        "method": o.method.name(),
        "iterations": o.iterations,
        "converged": o.converged,
        "residual_fro": num(o.residual_fro),
        "trace": o.trace.iter().map(|&t| num(t)).collect::<Vec<_>>(),
    })
}

#[derive(Serialize)]
struct Envelope {
    schema: &'static str,
    command: &'static str,
    inputs: Value,
    solvability: Value,
    outcome: Value,
    error_report: Value,
    timings: Value,
}

fn emit(report: &Envelope, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).map_err(|e| CliError::usage(e.to_string()))? + "\n";
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn all_real(ms: &[&DenseMatrix]) -> bool {
    ms.iter().all(|m| m.is_real(0.0))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<i32, CliError> {
    let mut t = Timings::new();
    let i = &args.inputs;
    let (m, files) = load_all(&[("A", &i.a), ("B", &i.b), ("C", &i.c)])?;
    let (a, b, c) = (&m[0], &m[1], &m[2]);
    t.lap("read");
    let spectrum = check_solvability_with_tol(a, b, args.spec_tol)?;
    t.lap("solvability");
    let inputs = json!({
        "files": files,
        "parameters": {
            "method": format!("{:?}", args.method).to_lowercase(),
            "variant": format!("{:?}", args.variant).to_lowercase(),
            "tol": args.tol,
            "max_iter": args.max_iter,
            "spec_tol": args.spec_tol,
            "cmn": args.cmn,
        },
    });
    let mut envelope = Envelope {
        schema: SCHEMA,
        command: "solve",
        inputs,
        solvability: spectrum_json(&spectrum),
        outcome: Value::Null,
        error_report: Value::Null,
        timings: Value::Null,
    };
    let solved = if spectrum.uniquely_solvable {
        match args.method {
            MethodArg::Direct => solve_direct(a, b, c),
            MethodArg::Bs => solve_bartels_stewart(a, b, c),
            MethodArg::Smith => solve_smith(a, b, c, args.max_iter.unwrap_or(SMITH_MAX_ITERATIONS), args.tol),
            MethodArg::Cg => solve_cg(a, b, c, args.max_iter, args.tol),
            MethodArg::Deflating => solve_deflating(a, b, c, args.variant.into()),
        }
    } else {
        Err(TsteinError::Unsolvable(Box::new(spectrum)))
    };
    t.lap("solve");
    let outcome = match solved {
        Ok(o) => o,
        Err(e) => {
            envelope.outcome = json!({ "error": e.to_string(), "exit_code": exit_code(&e) });
            envelope.timings = t.into_value();
            emit(&envelope, args.report.as_deref())?;
            return Err(e.into());
        }
    };
    let x = if all_real(&[a, b, c]) { outcome.x.clean_imaginary(1e-8) } else { outcome.x.clone() };
    let diagnostics = error_report(a, b, c, &x, args.cmn)?;
    t.lap("analysis");
    write_matrix(&args.out, &x).map_err(|e| CliError::usage(format!("{}: {e}", args.out.display())))?;
    t.lap("write");
    let mut out = outcome_json(&outcome);
    out["output"] = json!(args.out.display().to_string());
    out["residual_fro"] = num(diagnostics.residual_fro);
    envelope.outcome = out;
    envelope.error_report = error_report_json(&diagnostics);
    envelope.timings = t.into_value();
    emit(&envelope, args.report.as_deref())?;
    if !outcome.converged {
        eprintln!(
            "tstein: {} stopped after {} iterations without reaching tolerance {:e}",
            outcome.method, outcome.iterations, args.tol
        );
    }
    Ok(EXIT_OK)
}

pub fn cmd_check(args: &CheckArgs) -> Result<i32, CliError> {
    let mut t = Timings::new();
    let (m, files) = load_all(&[("A", &args.a), ("B", &args.b)])?;
    t.lap("read");
    let spectrum = check_solvability_with_tol(&m[0], &m[1], args.spec_tol)?;
    t.lap("solvability");
    let envelope = Envelope {
        schema: SCHEMA,
        command: "check",
        inputs: json!({ "files": files, "parameters": { "spec_tol": args.spec_tol } }),
        solvability: spectrum_json(&spectrum),
        outcome: Value::Null,
        error_report: Value::Null,
        timings: t.into_value(),
    };
    emit(&envelope, args.report.as_deref())?;
    Ok(if spectrum.uniquely_solvable { EXIT_OK } else { EXIT_UNSOLVABLE })
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32, CliError> {
    let mut t = Timings::new();
    let i = &args.inputs;
    let (m, files) = load_all(&[("A", &i.a), ("B", &i.b), ("C", &i.c), ("X", &args.x)])?;
    let (a, b, c, x) = (&m[0], &m[1], &m[2], &m[3]);
    t.lap("read");
    let spectrum = check_solvability_with_tol(a, b, args.spec_tol)?;
    t.lap("solvability");
    if !spectrum.uniquely_solvable {
        return Err(TsteinError::Unsolvable(Box::new(spectrum)).into());
    }
    let diagnostics = error_report(a, b, c, x, args.cmn)?;
    t.lap("analysis");
    let envelope = Envelope {
        schema: SCHEMA,
        command: "analyze",
        inputs: json!({ "files": files, "parameters": { "cmn": args.cmn, "spec_tol": args.spec_tol } }),
        solvability: spectrum_json(&spectrum),
        outcome: Value::Null,
        error_report: error_report_json(&diagnostics),
        timings: t.into_value(),
    };
    emit(&envelope, args.report.as_deref())?;
    Ok(EXIT_OK)
}

/// One row of the bench comparison.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub method: String,
    pub status: String,
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    pub residual_fro: Option<f64>,
    pub stopping_bound: Option<f64>,
    pub meets_stopping_bound: Option<bool>,
    pub relative_difference: Option<f64>,
    pub seconds: f64,
}

type Runner = fn(&DenseMatrix, &DenseMatrix, &DenseMatrix, f64) -> tstein_core::Result<SolveOutcome>;

const BENCH_METHODS: [(&str, Runner); 6] = [
    ("direct", |a, b, c, _| solve_direct(a, b, c)),
    ("bartels-stewart", |a, b, c, _| solve_bartels_stewart(a, b, c)),
    ("smith", |a, b, c, tol| solve_smith(a, b, c, SMITH_MAX_ITERATIONS, tol)),
    ("cg", |a, b, c, tol| solve_cg(a, b, c, None, tol)),
    ("deflating-ml", |a, b, c, _| solve_deflating(a, b, c, PencilVariant::Ml)),
    ("deflating-m1l1", |a, b, c, _| solve_deflating(a, b, c, PencilVariant::M1l1)),
];

/// Runs every method concurrently on private copies of the data.
pub fn bench_rows(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix, tol: f64, cmn: f64) -> Vec<BenchRow> {
    let results: Vec<(f64, tstein_core::Result<SolveOutcome>)> = thread::scope(|s| {
        let handles: Vec<_> = BENCH_METHODS
            .iter()
            .map(|&(_, run)| {
                let (a, b, c) = (a.clone(), b.clone(), c.clone());
                s.spawn(move || {
                    let start = Instant::now();
                    let r = run(&a, &b, &c, tol);
                    (start.elapsed().as_secs_f64(), r)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let reference = results.iter().find_map(|(_, r)| r.as_ref().ok().map(|o| o.x.clone()));
    BENCH_METHODS
        .iter()
        .zip(results)
        .map(|(&(name, _), (seconds, r))| match r {
            Ok(o) => {
                let bound = tstein_core::stopping_bound(a, b, &o.x, cmn, UNIT_ROUNDOFF);
                let diff = reference
                    .as_ref()
                    .map(|x| o.x.distance(x) / x.fro_norm().max(f64::MIN_POSITIVE));
                BenchRow {
                    method: name.into(),
                    status: if o.converged { "ok" } else { "unconverged" }.into(),
                    iterations: Some(o.iterations),
                    converged: Some(o.converged),
                    residual_fro: Some(o.residual_fro),
                    stopping_bound: Some(bound),
                    meets_stopping_bound: Some(o.residual_fro <= bound),
                    relative_difference: diff,
                    seconds,
                }
            }
            Err(e) => BenchRow {
                method: name.into(),
                status: match e {
                    TsteinError::MethodInapplicable(_) => "inapplicable".into(),
                    other => format!("error: {other}"),
                },
                iterations: None,
                converged: None,
                residual_fro: None,
                stopping_bound: None,
                meets_stopping_bound: None,
                relative_difference: None,
                seconds,
            },
        })
        .collect()
}

fn cell<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn sci(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut s = format!(
        "{:<16} {:<13} {:>6} {:>11} {:>11} {:>5} {:>11} {:>10}\n",
        "method", "status", "iters", "residual", "bound", "ok", "rel.diff", "seconds"
    );
    for r in rows {
        s += &format!(
            "{:<16} {:<13} {:>6} {:>11} {:>11} {:>5} {:>11} {:>10.2e}\n",
            r.method,
            r.status.chars().take(13).collect::<String>(),
            cell(r.iterations),
            sci(r.residual_fro),
            sci(r.stopping_bound),
            cell(r.meets_stopping_bound),
            sci(r.relative_difference),
            r.seconds
        );
    }
    s
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let mut t = Timings::new();
    let p = generate_problem(args.n, args.seed, args.profile)?;
    t.lap("generate");
    let spectrum = check_solvability_with_tol(&p.a, &p.b, 1e-10)?;
    t.lap("solvability");
    if !spectrum.uniquely_solvable {
        return Err(TsteinError::Unsolvable(Box::new(spectrum)).into());
    }
    let cmn = args.cmn.unwrap_or_else(|| default_cmn(args.n));
    let tol = args.tol.unwrap_or(cmn * UNIT_ROUNDOFF);
    let rows = bench_rows(&p.a, &p.b, &p.c, tol, cmn);
    t.lap("solve");
    print!("{}", format_table(&rows));
    if let Some(path) = &args.report {
        let envelope = Envelope {
            schema: SCHEMA,
            command: "bench",
            inputs: json!({
                "bundle": { "name": p.name, "seed": p.seed, "profile": p.profile.name(), "n": args.n, "parameters": p.parameters },
                "parameters": { "tol": tol, "cmn": cmn },
            }),
            solvability: spectrum_json(&spectrum),
            outcome: json!({ "methods": rows }),
            error_report: Value::Null,
            timings: t.into_value(),
        };
        emit(&envelope, Some(path))?;
    }
    Ok(EXIT_OK)
}

fn sylvester_json(o: &SylvesterOutcome) -> Value {
    json!({
        "shift": [o.shift.0, o.shift.1],
        "residual_fro": num(o.residual_fro),
        "reduced": outcome_json(&o.reduced),
        "rejected_shifts": o.rejected.iter().map(|((a, b), why)| json!({ "shift": [a, b], "reason": why })).collect::<Vec<_>>(),
    })
}

pub fn cmd_sylvester(args: &SylvesterArgs) -> Result<i32, CliError> {
    let mut t = Timings::new();
    let i = &args.inputs;
    let (m, files) = load_all(&[("A", &i.a), ("B", &i.b), ("C", &i.c)])?;
    let (a, b, c) = (&m[0], &m[1], &m[2]);
    t.lap("read");
    let shift = args.shift.map_or(Shift::Auto, |(p, q)| Shift::Fixed(p, q));
    let o = solve_t_sylvester(a, b, c, shift)?;
    t.lap("solve");
    let x = if all_real(&[a, b, c]) { o.x.clean_imaginary(1e-8) } else { o.x.clone() };
    if let Some(out) = &args.out {
        write_matrix(out, &x).map_err(|e| CliError::usage(format!("{}: {e}", out.display())))?;
        t.lap("write");
    }
    let envelope = Envelope {
        schema: SCHEMA,
        command: "sylvester",
        inputs: json!({ "files": files, "parameters": { "shift": args.shift.map(|(p, q)| [p, q]) } }),
        solvability: Value::Null,
        outcome: sylvester_json(&o),
        error_report: Value::Null,
        timings: t.into_value(),
    };
    emit(&envelope, args.report.as_deref())?;
    Ok(EXIT_OK)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<i32, CliError> {
    let p = generate_problem(args.n, args.seed, args.profile)?;
    fs::create_dir_all(&args.out_dir)?;
    for (name, m) in [("A.mtx", &p.a), ("B.mtx", &p.b), ("C.mtx", &p.c)] {
        write_matrix(args.out_dir.join(name), m)?;
    }
    let meta = json!({
        "name": p.name,
        "seed": p.seed,
        "profile": p.profile.name(),
        "n": p.n(),
        "parameters": p.parameters,
    });
    fs::write(
        args.out_dir.join("bundle.json"),
        serde_json::to_string_pretty(&meta).map_err(|e| CliError::usage(e.to_string()))? + "\n",
    )?;
    Ok(EXIT_OK)
}
