mod config;
mod out;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use heterobaker::dyck::{Estimate, Side, DEFAULT_MAX_LEN};
use heterobaker::maps::{phi_c, phi_u};
use heterobaker::measures::{
    birkhoff_exponents, birkhoff_from_points, chi_c_leb_analytic, chi_c_mme_analytic, chi_square_uniform,
    chi_u_leb_analytic, domain_masses, sample_mme, ChiSquare, MmeSample,
};
use heterobaker::orbit::{stream_rng, Init, Orbit};
use heterobaker::periodic::enumerate_periodic_bounded;
use heterobaker::stats::{
    correlation_run, fit_decay, li_yorke_estimate, parallel_map, CorrelationSpec, DecayFit, ModelKind, Observable,
    DEFAULT_BURN_IN,
};
use heterobaker::verify::{parse_real, run_all};
use heterobaker::{Dims, Error, Params, Point3};

use out::{Field, Out};

#[derive(Parser)]
#[command(
    name = "heterobaker",
    version,
    about = "Heterochaos baker maps: orbits, periodic points, measures of maximal entropy, correlation decay",
    after_help = "Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 size bound exceeded."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit of f_a (2D) or f_{a,b} (3D), one row per step
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Periodic orbits of primitive period n
    #[command(args_override_self = true)]
    Periodic(PeriodicArgs),
    /// Cor_{n,N} of an observable along Lebesgue-random orbits
    #[command(args_override_self = true)]
    Autocorr(AutocorrArgs),
    /// Samples of the measure of maximal entropy mu_alpha or mu_beta
    #[command(args_override_self = true)]
    Mme(MmeArgs),
    /// Birkhoff averages of the unstable and central potentials
    #[command(args_override_self = true)]
    Exponents(ExponentArgs),
    /// Fraction of random pairs that come close and drift apart
    #[command(name = "li-yorke", args_override_self = true)]
    LiYorke(LiYorkeArgs),
    /// Runs every invariant check at desk scale and reports pass/fail
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Serialize)]
struct Common {
    /// File of key=value lines used as flags; command-line flags win
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Worker threads
    #[arg(long, env = "HETEROBAKER_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: u64,
    /// Output file (default: stdout)
    #[arg(long, short, value_name = "PATH")]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Output format (default: json for verify, csv otherwise)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Serialize)]
struct MapArgs {
    /// Number of bracket types
    #[arg(long = "M", default_value_t = 2)]
    #[serde(rename = "M")]
    m: u32,
    /// a in (0, 1/M); fractions such as 1/3 are accepted
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    a: f64,
    /// b in (0, 1/M); without it the 2D map f_a is used
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    b: Option<f64>,
}

impl MapArgs {
    fn params(&self) -> Result<Params, Error> {
        match self.b {
            Some(b) => Params::new(self.m, self.a, b),
            None => Params::new_2d(self.m, self.a),
        }
    }

    /// `dims` if given, else 3 when `b` is set and 2 otherwise.
    fn dims(&self, dims: Option<u8>) -> Result<Dims, Error> {
        let d = match dims {
            Some(d) => Dims::from_count(d as usize)?,
            None if self.b.is_some() => Dims::Three,
            None => Dims::Two,
        };
        if d == Dims::Three && self.b.is_none() {
            return Err(Error::InvalidParams("the 3D map needs --b".into()));
        }
        Ok(d)
    }
}

fn real(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn parsed<T: FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    /// Number of rows
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u64,
    #[arg(long)]
    seed: u64,
    /// Start point "u,c" or "u,c,s"; default is a Lebesgue-random start
    #[arg(long)]
    x0: Option<String>,
    /// Steps discarded before the first row
    #[arg(long, default_value_t = 0)]
    burn_in: usize,
    /// 2 or 3
    #[arg(long)]
    dims: Option<u8>,
    /// Extra column: xu, xc, xs, phic or phiu
    #[arg(long, value_parser = parsed::<Observable>)]
    observable: Option<Observable>,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct PeriodicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    /// Primitive period
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dims: u8,
    /// Largest period accepted
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    bound: usize,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Delays(Vec<usize>);

impl FromStr for Delays {
    type Err = String;

    /// Comma-separated items, each a delay or an inclusive range `lo..hi`.
    fn from_str(s: &str) -> Result<Delays, String> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad delay {t:?}"));
            match item.split_once("..") {
                Some((lo, hi)) => {
                    let hi = hi.trim_start_matches('=');
                    out.extend(num(lo)?..=num(hi)?)
                }
                None => out.push(num(item)?),
            }
        }
        if out.is_empty() || out.contains(&0) {
            return Err("delays must be positive integers".into());
        }
        out.sort_unstable();
        out.dedup();
        Ok(Delays(out))
    }
}

#[derive(Args, Serialize)]
struct AutocorrArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    /// Orbit length N
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: u64,
    /// Delays, e.g. 1..60 or 1,2,4,8
    #[arg(long, default_value = "1..60")]
    delays: Delays,
    #[arg(long, default_value = "xc", value_parser = parsed::<Observable>)]
    observable: Observable,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    dims: Option<u8>,
    /// Fit a decay law: exponential or powerlaw
    #[arg(long, value_parser = parsed::<ModelKind>)]
    fit: Option<ModelKind>,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct MmeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    /// alpha or beta
    #[arg(long, default_value = "alpha", value_parser = parsed::<Side>)]
    side: Side,
    #[arg(long, default_value_t = 100_000)]
    points: usize,
    /// Symbols on each side of the decoded window
    #[arg(long, default_value_t = 160)]
    half_window: usize,
    /// Steps per sampled point in the Birkhoff estimate of chi^c
    #[arg(long, default_value_t = 16)]
    steps: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct ExponentArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    #[arg(long = "N", default_value_t = 10_000_000)]
    #[serde(rename = "N")]
    n: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    dims: Option<u8>,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct LiYorkeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    #[arg(long = "N", default_value_t = 100_000)]
    #[serde(rename = "N")]
    n: u64,
    #[arg(long, default_value_t = 0.05, value_parser = real)]
    delta: f64,
    #[arg(long)]
    dims: Option<u8>,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    map: MapArgs,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
}

enum Fail {
    /// Reader closed the pipe; nothing left to report.
    Closed,
    Input(String),
    Verify(String),
    Bound(String),
    Other(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Closed => 0,
            Fail::Verify(_) | Fail::Other(_) => 1,
            Fail::Input(_) => 2,
            Fail::Bound(_) => 3,
        }
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::Closed => Ok(()),
            Fail::Input(s) | Fail::Verify(s) | Fail::Bound(s) | Fail::Other(s) => f.write_str(s),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::BoundExceeded { .. } => Fail::Bound(e.to_string()),
            Error::InvalidParams(_) | Error::InvalidInput(_) | Error::Parse(_) => Fail::Input(e.to_string()),
            _ => Fail::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Fail {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Fail::Closed;
        }
        Fail::Input(format!("output: {e}"))
    }
}

type Run = Result<(), Fail>;

fn open(c: &Common) -> Result<(Out, Format), Fail> {
    Ok((Out::open(c.out.as_deref())?, c.format.unwrap_or(Format::Csv)))
}

fn parse_point(s: &str, dims: Dims) -> Result<Point3, Fail> {
    let v = s.split(',').map(parse_real).collect::<Result<Vec<f64>, Error>>()?;
    if v.len() != dims.count() {
        return Err(Fail::Input(format!("--x0 needs {} coordinates, got {:?}", dims.count(), s)));
    }
    if v.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Fail::Input(format!("--x0 must lie in the unit cube, got {s:?}")));
    }
    Ok(Point3::new(v[0], v[1], v.get(2).copied().unwrap_or(0.0)))
}

fn simulate(a: &SimulateArgs) -> Run {
    let p = a.map.params()?;
    let dims = a.map.dims(a.dims)?;
    if a.observable == Some(Observable::Xs) && dims == Dims::Two {
        return Err(Fail::Input("observable xs needs the 3D map".into()));
    }
    let init = match &a.x0 {
        Some(s) => Init::Point(parse_point(s, dims)?),
        None => Init::Lebesgue,
    };
    let mut orbit = Orbit::new(&p, dims, init, stream_rng(a.seed, 0));
    orbit.skip(a.burn_in);
    let three = dims == Dims::Three;
    let (mut out, format) = open(&a.common)?;

    #[derive(Serialize)]
    struct Row {
        i: u64,
        x_u: f64,
        x_c: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        x_s: Option<f64>,
        domain: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        value: Option<f64>,
    }
    let mut next = |i: u64| {
        let x = orbit.point();
        let sym = orbit.symbol();
        let value = a.observable.map(|o| match o {
            Observable::Xu => x.u,
            Observable::Xc => x.c,
            Observable::Xs => x.s,
            Observable::PhiC => phi_c(&p, sym),
            Observable::PhiU => phi_u(&p, sym),
        });
        orbit.advance();
        Row { i, x_u: x.u, x_c: x.c, x_s: three.then_some(x.s), domain: sym.to_string(), value }
    };
    match format {
        Format::Json => {
            let rows: Vec<Row> = (0..a.n).map(&mut next).collect();
            out.json("simulate", a, &rows)?;
        }
        Format::Csv => {
            let mut cols = vec!["i", "x_u", "x_c"];
            if three {
                cols.push("x_s");
            }
            cols.push("domain");
            if a.observable.is_some() {
                cols.push("value");
            }
            out.csv_header("simulate", a, &[], &cols)?;
            for i in 0..a.n {
                let r = next(i);
                let mut f = vec![Field::Int(r.i), Field::Real(r.x_u), Field::Real(r.x_c)];
                f.extend(r.x_s.map(Field::Real));
                f.push(Field::Text(r.domain));
                f.extend(r.value.map(Field::Real));
                out.row(&f)?;
            }
        }
    }
    Ok(out.finish()?)
}

fn periodic(a: &PeriodicArgs) -> Run {
    let p = a.map.params()?;
    let dims = a.map.dims(Some(a.dims))?;
    let set = enumerate_periodic_bounded(&p, a.n, dims, a.bound)?;
    let summary = format!(
        "period {}: {} orbits of unstable dimension 1, {} of unstable dimension 2, {} balanced words (Fix_0), {} rejected on boundaries",
        a.n,
        set.count_dim(1),
        set.count_dim(2),
        set.fix0,
        set.rejected_boundary
    );
    eprintln!("{summary}");
    let (mut out, format) = open(&a.common)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                dim1: usize,
                dim2: usize,
                #[serde(flatten)]
                set: &'a heterobaker::periodic::PeriodicSet,
            }
            out.json("periodic", a, &Report { dim1: set.count_dim(1), dim2: set.count_dim(2), set: &set })?;
        }
        Format::Csv => {
            let mut cols = vec!["orbit", "period", "word", "unstable_dim", "chi_c", "x_u", "x_c"];
            if dims == Dims::Three {
                cols.push("x_s");
            }
            out.csv_header("periodic", a, &[summary], &cols)?;
            for (k, o) in set.orbits.iter().enumerate() {
                for x in o.orbit_points(&p) {
                    let mut f = vec![
                        Field::Int(k as u64),
                        Field::Int(o.period as u64),
                        Field::Text(o.word.to_string()),
                        Field::Int(o.unstable_dim as u64),
                        Field::Real(o.chi_c),
                        Field::Real(x.u),
                        Field::Real(x.c),
                    ];
                    if dims == Dims::Three {
                        f.push(Field::Real(x.s));
                    }
                    out.row(&f)?;
                }
            }
        }
    }
    Ok(out.finish()?)
}

fn autocorr(a: &AutocorrArgs) -> Run {
    let p = a.map.params()?;
    let dims = a.map.dims(a.dims)?;
    let spec = CorrelationSpec {
        dims,
        n: a.n,
        delays: a.delays.0.clone(),
        observable: a.observable,
        burn_in: a.burn_in,
        seed: a.seed,
        threads: a.common.threads as usize,
    };
    let r = correlation_run(&p, &spec)?;
    let (fit, fit_error): (Option<DecayFit>, Option<String>) = match a.fit {
        None => (None, None),
        Some(model) => match fit_decay(&r.cor, &r.delays, model, r.floor) {
            Ok(f) => (Some(f), None),
            Err(e) => {
                eprintln!("warning: no fit: {e}");
                (None, Some(e.to_string()))
            }
        },
    };
    let (mut out, format) = open(&a.common)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Report<'a> {
                #[serde(flatten)]
                cor: &'a heterobaker::stats::CorrelationResult,
                fit: Option<DecayFit>,
                fit_error: Option<String>,
            }
            out.json("autocorr", a, &Report { cor: &r, fit, fit_error })?;
        }
        Format::Csv => {
            let mut notes = vec![format!("N = {}, noise floor 5/sqrt(N) = {}", r.n, out::real(r.floor))];
            if let Some(f) = fit {
                notes.push(format!("fit {}", serde_json::to_string(&f).unwrap_or_default()));
            }
            out.csv_header("autocorr", a, &notes, &["delay", "cor"])?;
            for (d, c) in r.delays.iter().zip(&r.cor) {
                out.row(&[Field::Int(*d as u64), Field::Real(*c)])?;
            }
        }
    }
    Ok(out.finish()?)
}

/// Points per independently seeded batch; fixed so that output does not
/// depend on the thread count.
const MME_BATCH: usize = 8192;

fn mme(a: &MmeArgs) -> Run {
    if a.map.b.is_none() {
        return Err(Fail::Input("mme needs --b".into()));
    }
    let p = a.map.params()?;
    let batches = a.points.div_ceil(MME_BATCH);
    let parts = parallel_map(batches, a.common.threads as usize, |j| {
        let n = MME_BATCH.min(a.points - j * MME_BATCH);
        sample_mme(&p, a.side, n, a.half_window, &mut stream_rng(a.seed, j as u64))
    })?;
    let samples: Vec<MmeSample> = parts.into_iter().flatten().collect();
    let pts: Vec<Point3> = samples.iter().map(|s| s.point).collect();
    if pts.is_empty() {
        return Err(Fail::Input("--points must be at least 1".into()));
    }

    #[derive(Serialize)]
    struct Mass {
        domain: String,
        #[serde(flatten)]
        estimate: Estimate,
    }
    #[derive(Serialize)]
    struct Report {
        points: usize,
        masses: Vec<Mass>,
        chi_c: Estimate,
        chi_c_target: f64,
        chi_square: ChiSquare,
        fraction_diameter_below_1e_6: f64,
        max_diameter: f64,
    }
    let m = p.m();
    let names = (1..=m).map(|k| format!("a{k}")).chain((1..=m).map(|k| format!("b{k}")));
    let masses: Vec<Mass> =
        names.zip(domain_masses(&p, &pts)).map(|(domain, estimate)| Mass { domain, estimate }).collect();
    let (chi_c, _) = birkhoff_from_points(&p, &pts, a.steps);
    let report = Report {
        points: pts.len(),
        masses,
        chi_c,
        chi_c_target: chi_c_mme_analytic(m, a.side),
        chi_square: chi_square_uniform(&pts, 4),
        fraction_diameter_below_1e_6: samples.iter().filter(|s| s.diameter < 1e-6).count() as f64 / pts.len() as f64,
        max_diameter: samples.iter().map(|s| s.diameter).fold(0.0, f64::max),
    };
    let mut notes: Vec<String> = report
        .masses
        .iter()
        .map(|x| format!("mass {} = {:.6} +- {:.6}", x.domain, x.estimate.value, x.estimate.stderr))
        .collect();
    notes.push(format!(
        "chi_c = {:.6} +- {:.6} (closed form {:.6})",
        report.chi_c.value, report.chi_c.stderr, report.chi_c_target
    ));
    for n in &notes {
        eprintln!("{n}");
    }
    let (mut out, format) = open(&a.common)?;
    match format {
        Format::Json => out.json("mme", a, &report)?,
        Format::Csv => {
            out.csv_header("mme", a, &notes, &["x_u", "x_c", "x_s", "diameter"])?;
            for s in &samples {
                out.row(&[Field::Real(s.point.u), Field::Real(s.point.c), Field::Real(s.point.s), Field::Real(s.diameter)])?;
            }
        }
    }
    Ok(out.finish()?)
}

fn exponents(a: &ExponentArgs) -> Run {
    let p = a.map.params()?;
    let dims = a.map.dims(a.dims)?;
    let r = birkhoff_exponents(&p, dims, Init::Lebesgue, a.n, a.seed)?;
    // The closed forms hold where Lebesgue measure is invariant.
    let leb = dims == Dims::Two || p.is_leb_invariant();
    #[derive(Serialize)]
    struct Line {
        quantity: &'static str,
        analytic: Option<f64>,
        empirical: f64,
        stderr: Option<f64>,
    }
    let lines = [
        Line { quantity: "chi_u", analytic: leb.then(|| chi_u_leb_analytic(&p)), empirical: r.chi_u, stderr: None },
        Line {
            quantity: "chi_c",
            analytic: leb.then(|| chi_c_leb_analytic(&p)),
            empirical: r.chi_c,
            stderr: r.chi_c_stderr,
        },
    ];
    let (mut out, format) = open(&a.common)?;
    match format {
        Format::Json => out.json("exponents", a, &lines)?,
        Format::Csv => {
            out.csv_header("exponents", a, &[], &["quantity", "analytic", "empirical", "stderr"])?;
            let opt = |x: Option<f64>| Field::Text(x.map(out::real).unwrap_or_default());
            for l in &lines {
                out.row(&[Field::Text(l.quantity.into()), opt(l.analytic), Field::Real(l.empirical), opt(l.stderr)])?;
            }
        }
    }
    Ok(out.finish()?)
}

fn li_yorke(a: &LiYorkeArgs) -> Run {
    let p = a.map.params()?;
    let dims = a.map.dims(a.dims)?;
    let r = li_yorke_estimate(&p, dims, a.pairs, a.n, a.delta, a.seed, a.common.threads as usize)?;
    let (mut out, format) = open(&a.common)?;
    match format {
        Format::Json => out.json("li-yorke", a, &r)?,
        Format::Csv => {
            out.csv_header("li-yorke", a, &[], &["pairs", "N", "delta", "diameter", "close", "far", "both", "fraction"])?;
            out.row(&[
                Field::Int(r.pairs as u64),
                Field::Int(r.n),
                Field::Real(r.delta),
                Field::Real(r.diameter),
                Field::Int(r.close as u64),
                Field::Int(r.far as u64),
                Field::Int(r.both as u64),
                Field::Real(r.fraction),
            ])?;
        }
    }
    Ok(out.finish()?)
}

fn verify(a: &VerifyArgs) -> Run {
    let p = a.map.params()?;
    let report = run_all(&p, a.seed, a.common.threads as usize)?;
    let mut out = Out::open(a.common.out.as_deref())?;
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => out.json("verify", a, &report)?,
        Format::Csv => {
            out.csv_header("verify", a, &[], &["parameter", "quantity", "analytic", "empirical", "stderr", "pass"])?;
            for r in &report.records {
                out.row(&[
                    Field::Text(r.parameter.clone()),
                    Field::Text(r.quantity.clone()),
                    Field::Real(r.analytic),
                    Field::Real(r.empirical),
                    Field::Text(r.stderr.map(out::real).unwrap_or_default()),
                    Field::Text(r.pass.to_string()),
                ])?;
            }
        }
    }
    out.finish()?;
    let failed: Vec<String> = report.failures().map(|r| format!("{} ({})", r.quantity, r.parameter)).collect();
    eprintln!("{} checks, {} failed", report.records.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Verify(format!("failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let result = match &cli.cmd {
        Cmd::Simulate(a) => simulate(a),
        Cmd::Periodic(a) => periodic(a),
        Cmd::Autocorr(a) => autocorr(a),
        Cmd::Mme(a) => mme(a),
        Cmd::Exponents(a) => exponents(a),
        Cmd::LiYorke(a) => li_yorke(a),
        Cmd::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Closed) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Fail::from(Error::BoundExceeded { requested: 9, bound: 8 }).code(), 3);
        assert_eq!(Fail::from(Error::InvalidParams("a".into())).code(), 2);
        assert_eq!(Fail::Verify("x".into()).code(), 1);
    }

    #[test]
    fn delay_lists() {
        assert_eq!("1..4".parse::<Delays>().unwrap().0, [1, 2, 3, 4]);
        assert_eq!("8, 1..=2,2".parse::<Delays>().unwrap().0, [1, 2, 8]);
        assert!("0..3".parse::<Delays>().is_err());
        assert!("x".parse::<Delays>().is_err());
    }
}
