//! `kzw`: evaluate, check, sweep and the inverse-Mellin lemma from the
//! command line.

mod parse;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use kzw_core::humbert::{laguerre, phi3, Phi3Args};
use kzw_core::hypergeometric::{hyp1f1, hyp2f2};
use kzw_core::identities::{
    check_eta_transformation, check_generalized_eta, check_generalized_ramanujan_guinand, check_ramanujan_guinand,
    IdentityReport, ModularPair,
};
use kzw_core::kzw::{inverse_mellin_lemma, khalf_series, kzw_asymptotic, kzw_contour, ContourSpec, KzwPoint};
use kzw_core::special::{erf, erfi, zeta};
use kzw_core::voigt::{faddeeva, voigt_cdf_detailed, voigt_profile, VoigtParams};
use kzw_core::{Error, EvalResult, ToleranceConfig};

const EVAL_REL_TOL: f64 = 1e-10;
const CHECK_REL_TOL: f64 = 1e-8;
/// How far `ab/π²` may stray from 1 before `--a/--b` is refused.
const PAIR_SLACK: f64 = 1e-6;
const MAX_TERMS_VAR: &str = "KZW_MAX_TERMS";
const CSV_HEADER: &str = "param,value_re,value_im,abs_err,terms";

#[derive(Parser)]
#[command(name = "kzw", version, about = "Generalized modified Bessel function K_{z,w}(x) and its identities")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate one function at one point.
    Eval {
        target: EvalTarget,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        opts: Opts,
    },
    /// Compare both sides of an identity.
    Check {
        target: CheckTarget,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        opts: Opts,
    },
    /// Tabulate a function over a `start:stop:step` grid as CSV.
    Sweep {
        target: EvalTarget,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        opts: Opts,
    },
    /// The inverse-Mellin lemma with an adjustable contour.
    Lemma {
        #[arg(long)]
        n: String,
        #[arg(long)]
        x: String,
        /// Abscissa of the vertical contour, inside (1/2, 1).
        #[arg(long)]
        abscissa: Option<f64>,
        /// Largest contour height.
        #[arg(long)]
        t_max: Option<f64>,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum EvalTarget {
    KzwContour,
    KhalfSeries,
    KzwAsymptotic,
    Phi3,
    Hyp1f1,
    Hyp2f2,
    VoigtProfile,
    VoigtCdf,
    Faddeeva,
    Zeta,
    Erf,
    Erfi,
    Laguerre,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CheckTarget {
    RamanujanGuinand,
    GeneralizedRamanujanGuinand,
    Eta,
    GeneralizedEta,
    Lemma21,
    Theorem12,
}

/// Named inputs. Complex values are written `0.5` or `0.5+0.25i`; in a
/// sweep exactly one of them is a grid `start:stop:step`.
#[derive(Args)]
struct Params {
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
}

impl Params {
    fn into_map(self) -> BTreeMap<&'static str, String> {
        let fields = [
            ("z", self.z),
            ("w", self.w),
            ("x", self.x),
            ("y", self.y),
            ("s", self.s),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("a1", self.a1),
            ("a2", self.a2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("n", self.n),
            ("alpha", self.alpha),
            ("sigma", self.sigma),
            ("beta", self.beta),
            ("x0", self.x0),
        ];
        fields.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect()
    }
}

#[derive(Args)]
struct Opts {
    /// Relative tolerance (default 1e-10 for eval and sweep, 1e-8 for check and lemma).
    #[arg(long)]
    tol: Option<f64>,
    /// Largest contour height for quadratures.
    #[arg(long)]
    max_height: Option<f64>,
    /// json (default) or plain for eval and check; sweep writes csv.
    #[arg(long, value_enum)]
    output: Option<Output>,
}

impl Opts {
    fn output(&self) -> Output {
        self.output.unwrap_or(Output::Json)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Plain,
}

/// Failures mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad arguments: exit 1.
    Usage(String),
    /// The evaluator returned an error: exit 2.
    Eval(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Eval(e)
    }
}

type Outcome<T> = Result<T, Failure>;

const USAGE_EXIT: u8 = 1;
const EVAL_EXIT: u8 = 2;
const RESIDUAL_EXIT: u8 = 3;

/// Parameter lookup with usage errors for missing or malformed values.
struct Inputs<'a> {
    map: &'a BTreeMap<&'static str, String>,
}

impl Inputs<'_> {
    fn raw(&self, name: &str) -> Outcome<&str> {
        self.map
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Failure::Usage(format!("missing --{name}")))
    }

    fn complex(&self, name: &str) -> Outcome<Complex64> {
        parse::complex(self.raw(name)?).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
    }

    fn real(&self, name: &str) -> Outcome<f64> {
        parse::real(self.raw(name)?).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
    }

    fn count(&self, name: &str) -> Outcome<u32> {
        let raw = self.raw(name)?;
        raw.trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("--{name}: {raw:?} is not a nonnegative integer")))
    }

    /// `--a` with optional `--b`; a `b` that misses `π²/a` by a relative
    /// 1e-6 or less is replaced by `π²/a` with a warning.
    fn pair(&self) -> Outcome<ModularPair> {
        let a = self.real("a")?;
        if !self.map.contains_key("b") {
            return Ok(ModularPair::from_a(a)?);
        }
        let b = self.real("b")?;
        if let Ok(p) = ModularPair::new(a, b) {
            return Ok(p);
        }
        let off = (a * b / (PI * PI) - 1.0).abs();
        if off <= PAIR_SLACK {
            let p = ModularPair::from_a(a)?;
            eprintln!("warning: ab/π² is off by {off:.1e}; using b = π²/a = {}", p.b());
            Ok(p)
        } else {
            Err(Failure::Usage(format!("--a and --b must satisfy ab = π², off by {off:.1e}")))
        }
    }
}

fn name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_owned()).unwrap_or_default()
}

fn needed(target: EvalTarget) -> &'static [&'static str] {
    use EvalTarget::*;
    match target {
        KzwContour | KzwAsymptotic => &["z", "w", "x"],
        KhalfSeries => &["w", "x"],
        Phi3 => &["a", "c", "x", "y"],
        Hyp1f1 => &["a", "c", "x"],
        Hyp2f2 => &["a1", "a2", "c1", "c2", "x"],
        VoigtProfile => &["sigma", "beta", "x"],
        VoigtCdf => &["sigma", "beta", "x0"],
        Faddeeva => &["y"],
        Zeta => &["s"],
        Erf | Erfi => &["x"],
        Laguerre => &["n", "alpha", "x"],
    }
}

fn needed_check(target: CheckTarget) -> (&'static [&'static str], &'static [&'static str]) {
    use CheckTarget::*;
    match target {
        RamanujanGuinand => (&["z", "a"], &["b"]),
        GeneralizedRamanujanGuinand => (&["z", "w", "a"], &["b"]),
        Eta => (&["a"], &["b"]),
        GeneralizedEta => (&["w", "a"], &["b"]),
        Lemma21 => (&["n", "x"], &[]),
        Theorem12 => (&["w", "x"], &[]),
    }
}

/// Rejects missing and unexpected parameters before any computation.
fn check_names(
    map: &BTreeMap<&'static str, String>,
    required: &[&str],
    optional: &[&str],
    what: &str,
) -> Outcome<()> {
    if let Some(extra) = map.keys().find(|k| !required.contains(k) && !optional.contains(k)) {
        return Err(Failure::Usage(format!("{what} does not take --{extra}")));
    }
    if let Some(missing) = required.iter().find(|k| !map.contains_key(*k)) {
        return Err(Failure::Usage(format!("{what} needs --{missing}")));
    }
    Ok(())
}

fn tolerance(opts: &Opts, default_rel: f64) -> Outcome<ToleranceConfig> {
    let base = ToleranceConfig::default();
    let max_terms = match std::env::var(MAX_TERMS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_TERMS_VAR}={v:?} is not a positive integer")))?,
        Err(_) => base.max_terms,
    };
    ToleranceConfig::new(
        opts.tol.unwrap_or(default_rel),
        max_terms,
        opts.max_height.unwrap_or(base.max_contour_height),
    )
    .map_err(|e| Failure::Usage(e.to_string()))
}

fn contour_spec(z: Complex64, tol: &ToleranceConfig) -> ContourSpec {
    ContourSpec::for_order(z)
        .with_t_max(tol.max_contour_height)
        .with_quad_rel_tol(tol.rel_tol)
}

fn evaluate(target: EvalTarget, inp: &Inputs, tol: &ToleranceConfig) -> Outcome<EvalResult> {
    use EvalTarget::*;
    let real = |v: f64| Complex64::new(v, 0.0);
    let r = match target {
        KzwContour => {
            let p = KzwPoint::new(inp.complex("z")?, inp.complex("w")?, inp.complex("x")?)?;
            kzw_contour(&p, &contour_spec(p.z, tol), tol)?
        }
        KhalfSeries => khalf_series(inp.complex("w")?, inp.complex("x")?, tol)?,
        KzwAsymptotic => {
            let p = KzwPoint::new(inp.complex("z")?, inp.complex("w")?, inp.complex("x")?)?;
            EvalResult::exact(kzw_asymptotic(&p)?)
        }
        Phi3 => {
            let args = Phi3Args::new(inp.complex("a")?, inp.complex("c")?, inp.complex("x")?, inp.complex("y")?)?;
            phi3(&args, tol)?
        }
        Hyp1f1 => hyp1f1(inp.complex("a")?, inp.complex("c")?, inp.complex("x")?, tol)?,
        Hyp2f2 => hyp2f2(
            inp.complex("a1")?,
            inp.complex("a2")?,
            inp.complex("c1")?,
            inp.complex("c2")?,
            inp.complex("x")?,
            tol,
        )?,
        VoigtProfile => {
            let p = VoigtParams::new(inp.real("sigma")?, inp.real("beta")?)?;
            EvalResult::exact(real(voigt_profile(inp.real("x")?, &p)))
        }
        VoigtCdf => {
            let p = VoigtParams::new(inp.real("sigma")?, inp.real("beta")?)?;
            let cdf = voigt_cdf_detailed(inp.real("x0")?, &p, tol)?;
            EvalResult {
                value: real(cdf.value),
                abs_err: cdf.abs_err,
                terms_used: cdf.terms_used,
                converged: true,
                magnitude: cdf.value,
            }
        }
        Faddeeva => EvalResult::exact(faddeeva(inp.complex("y")?)),
        Zeta => EvalResult::exact(zeta(inp.complex("s")?)?),
        Erf => EvalResult::exact(erf(inp.complex("x")?)),
        Erfi => EvalResult::exact(erfi(inp.complex("x")?)),
        Laguerre => EvalResult::exact(laguerre(inp.count("n")?, inp.complex("alpha")?, inp.complex("x")?)?),
    };
    Ok(r)
}

fn run_check_target(target: CheckTarget, inp: &Inputs, tol: &ToleranceConfig) -> Outcome<IdentityReport> {
    use CheckTarget::*;
    let report = match target {
        RamanujanGuinand => check_ramanujan_guinand(inp.complex("z")?, &inp.pair()?, tol)?,
        GeneralizedRamanujanGuinand => {
            check_generalized_ramanujan_guinand(inp.complex("z")?, inp.complex("w")?, &inp.pair()?, tol)?
        }
        Eta => check_eta_transformation(&inp.pair()?, tol)?,
        GeneralizedEta => check_generalized_eta(inp.real("w")?, &inp.pair()?, tol)?,
        Lemma21 => inverse_mellin_lemma(inp.count("n")?, inp.complex("x")?, &ContourSpec::lemma(), tol)?,
        Theorem12 => {
            let (w, x) = (inp.complex("w")?, inp.complex("x")?);
            let half = Complex64::new(0.5, 0.0);
            let contour = kzw_contour(&KzwPoint::new(half, w, x)?, &contour_spec(half, tol), tol)?;
            let series = khalf_series(w, x, tol)?;
            IdentityReport::new(contour.value, series.value, contour.terms_used, tol.rel_tol)
        }
    };
    Ok(report)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn print_eval(r: &EvalResult, output: Output) {
    match output {
        Output::Json => println!("{}", json(r)),
        Output::Csv => {
            println!("{CSV_HEADER}");
            println!(",{:e},{:e},{:e},{}", r.value.re, r.value.im, r.abs_err, r.terms_used);
        }
        Output::Plain => {
            println!("value_re   = {:e}", r.value.re);
            println!("value_im   = {:e}", r.value.im);
            println!("abs_err    = {:e}", r.abs_err);
            println!("terms_used = {}", r.terms_used);
            println!("converged  = {}", r.converged);
        }
    }
}

fn print_report(r: &IdentityReport, output: Output) {
    match output {
        Output::Json => println!("{}", json(r)),
        Output::Csv => {
            println!("lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,n_terms_lhs,pass");
            println!(
                "{:e},{:e},{:e},{:e},{:e},{:e},{},{}",
                r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.abs_residual, r.rel_residual, r.n_terms_lhs, r.pass
            );
        }
        Output::Plain => {
            println!("lhs          = {}", r.lhs);
            println!("rhs          = {}", r.rhs);
            println!("abs_residual = {:e}", r.abs_residual);
            println!("rel_residual = {:e}", r.rel_residual);
            println!("n_terms_lhs  = {}", r.n_terms_lhs);
            println!("pass         = {}", r.pass);
        }
    }
}

fn run_eval(target: EvalTarget, params: Params, opts: &Opts) -> Outcome<u8> {
    let map = params.into_map();
    check_names(&map, needed(target), &[], &format!("eval {}", name(target)))?;
    let tol = tolerance(opts, EVAL_REL_TOL)?;
    match evaluate(target, &Inputs { map: &map }, &tol) {
        Ok(r) => {
            print_eval(&r, opts.output());
            Ok(if r.converged { 0 } else { EVAL_EXIT })
        }
        Err(Failure::Eval(Error::Convergence { what, partial })) => {
            eprintln!("error: {what} did not converge; partial result follows");
            print_eval(&partial, opts.output());
            Ok(EVAL_EXIT)
        }
        Err(e) => Err(e),
    }
}

fn print_check_outcome(report: &IdentityReport, output: Output) -> u8 {
    print_report(report, output);
    if report.pass {
        0
    } else {
        RESIDUAL_EXIT
    }
}

fn run_check(target: CheckTarget, params: Params, opts: &Opts) -> Outcome<u8> {
    let map = params.into_map();
    let (required, optional) = needed_check(target);
    check_names(&map, required, optional, &format!("check {}", name(target)))?;
    let tol = tolerance(opts, CHECK_REL_TOL)?;
    let report = run_check_target(target, &Inputs { map: &map }, &tol)?;
    Ok(print_check_outcome(&report, opts.output()))
}

fn run_sweep(target: EvalTarget, params: Params, opts: &Opts) -> Outcome<u8> {
    let map = params.into_map();
    check_names(&map, needed(target), &[], &format!("sweep {}", name(target)))?;
    if opts.output.is_some_and(|o| o != Output::Csv) {
        return Err(Failure::Usage("sweep writes CSV only".into()));
    }
    let grids: Vec<&str> = map.iter().filter(|(_, v)| v.contains(':')).map(|(k, _)| *k).collect();
    let [var] = grids.as_slice() else {
        return Err(Failure::Usage(format!(
            "sweep needs exactly one grid parameter start:stop:step, got {}",
            grids.len()
        )));
    };
    let points = parse::grid(&map[var]).map_err(|e| Failure::Usage(format!("--{var}: {e}")))?;
    let tol = tolerance(opts, EVAL_REL_TOL)?;
    // every fixed parameter is parsed before the first row is computed
    let probe: BTreeMap<_, _> = map
        .iter()
        .map(|(k, v)| (*k, if k == var { points[0].to_string() } else { v.clone() }))
        .collect();
    for name in needed(target) {
        let inp = Inputs { map: &probe };
        inp.complex(name)?;
    }

    // a closed pipe (e.g. `| head`) ends the table quietly
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{CSV_HEADER}").is_err() {
        return Ok(0);
    }
    let mut status = 0;
    for p in points {
        let mut row = map.clone();
        row.insert(var, p.to_string());
        match evaluate(target, &Inputs { map: &row }, &tol) {
            Ok(r) => {
                if writeln!(out, "{p},{:e},{:e},{:e},{}", r.value.re, r.value.im, r.abs_err, r.terms_used).is_err() {
                    return Ok(status);
                }
                if !r.converged {
                    status = EVAL_EXIT;
                }
            }
            Err(e) => {
                let msg = match e {
                    Failure::Usage(m) => m,
                    Failure::Eval(e) => e.to_string(),
                };
                eprintln!("error at {var} = {p}: {msg}");
                if writeln!(out, "{p},NaN,NaN,NaN,NaN").is_err() {
                    return Ok(EVAL_EXIT);
                }
                status = EVAL_EXIT;
            }
        }
    }
    Ok(status)
}

fn run_lemma(n: String, x: String, abscissa: Option<f64>, t_max: Option<f64>, opts: &Opts) -> Outcome<u8> {
    let map: BTreeMap<&'static str, String> = [("n", n), ("x", x)].into_iter().collect();
    let inp = Inputs { map: &map };
    let (n, x) = (inp.count("n")?, inp.complex("x")?);
    let tol = tolerance(opts, CHECK_REL_TOL)?;
    let mut spec = ContourSpec::lemma().with_t_max(t_max.unwrap_or(tol.max_contour_height));
    if let Some(c) = abscissa {
        spec = spec.with_abscissa(c);
    }
    let report = inverse_mellin_lemma(n, x, &spec, &tol)?;
    Ok(print_check_outcome(&report, opts.output()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let result = match cli.verb {
        Verb::Eval { target, params, opts } => run_eval(target, params, &opts),
        Verb::Check { target, params, opts } => run_check(target, params, &opts),
        Verb::Sweep { target, params, opts } => run_sweep(target, params, &opts),
        Verb::Lemma {
            n,
            x,
            abscissa,
            t_max,
            opts,
        } => run_lemma(n, x, abscissa, t_max, &opts),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `kzw --help` for usage.");
            ExitCode::from(USAGE_EXIT)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EVAL_EXIT)
        }
    }
}
