//! `hankel-cert`: series utilities, coefficient maps, certified proofs and
//! certificate replay from the command line.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hankel_cert::arith::{parse_rational, GaussianRational, Rational};
use hankel_cert::cert::{Status, DEFAULT_DEPTH_BUDGET};
use hankel_cert::maps::{caratheodory_to_ozaki, h31_inverse_closed_form, h31_via_pipeline, lz_expand, LZParams};
use hankel_cert::proof::{
    empirical_scan, prove_case, prove_lemma, prove_theorem, verify_sharpness, Perturbation, ProofConfig, ScanReport,
    SharpnessReport, StepCertificate, TheoremCertificate,
};
use hankel_cert::series::{hankel_det, HankelSpec, PowerSeries};
use hankel_cert::Error;

const EXIT_REFUTED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "hankel-cert", version, about = "Exact certificates for the third Hankel determinant of inverse functions")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Bisection depth allowed to each box certificate.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_BUDGET)]
    depth_budget: u32,
    /// Truncation order of series arguments.
    #[arg(long, global = true, default_value_t = 5)]
    order: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of samples for `scan`.
    #[arg(long, global = true, default_value_t = 10_000)]
    count: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated power series `z + a2 z^2 + ...`, given as `a1,a2,...`.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Carathéodory coefficients and the maps built on them.
    #[command(subcommand)]
    Map(MapCmd),
    #[command(subcommand)]
    Prove(ProveCmd),
    /// H31 of the inverse of z / sqrt(1 - z^2).
    Sharpness,
    /// Seeded scan of |H31|^2 over sampled Carathéodory sequences.
    Scan,
    /// Inspect or replay a stored certificate.
    #[command(subcommand)]
    Cert(CertCmd),
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// Coefficients of the compositional inverse.
    Revert {
        #[arg(allow_hyphen_values = true)]
        series: String,
    },
    /// `outer(inner(z))`.
    Compose {
        #[arg(allow_hyphen_values = true)]
        outer: String,
        #[arg(allow_hyphen_values = true)]
        inner: String,
    },
    /// Hankel determinant H_{r,n} of the coefficients.
    Hankel {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        start: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MapCmd {
    /// Ozaki function with the given `c1,c2,...` (entries `p/q` or `re+imi`).
    C2f {
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// `c1..c4` from `c1` in [0,2] and `mu`, `rho`, `psi` in the closed disc.
    Lz {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        rho: String,
        #[arg(allow_hyphen_values = true)]
        psi: String,
    },
    /// H31 of the inverse from `c1,c2,c3,c4`, in closed form and through the series pipeline.
    H31 {
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
}

#[derive(Subcommand, Debug)]
enum ProveCmd {
    /// One of 1.2a .. 1.2e, 1.3 .. 1.8.
    Lemma {
        id: String,
        /// Add DELTA (default 1) to the TERM-th coefficient of the lemma polynomial.
        #[arg(long, value_name = "TERM[:DELTA]")]
        perturb: Option<String>,
        /// Certify the negated claim instead.
        #[arg(long)]
        invert: bool,
    },
    /// One of A, B.i .. B.viii, C.i .. C.vi, D1, D2.
    Case { id: String },
    Theorem {
        /// Perturb one lemma polynomial before running the plan.
        #[arg(long, value_name = "LEMMA:TERM[:DELTA]")]
        perturb: Option<String>,
        /// Negate one lemma's claim.
        #[arg(long, value_name = "LEMMA")]
        invert: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CertCmd {
    Show { file: PathBuf },
    /// Replay a certificate from its evidence and confirm the recorded status.
    Verify { file: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Replay(_)) => EXIT_REFUTED,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("certificates serialize")
}

/// `p/q` or a Gaussian rational written `re+imi`, `re-imi` or `imi`.
fn parse_entry(s: &str) -> Result<GaussianRational, Error> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussianRational::real(parse_rational(s)?));
    };
    let split = body.char_indices().filter(|&(k, ch)| k > 0 && (ch == '+' || ch == '-')).map(|(k, _)| k).last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?))
}

fn parse_list(s: &str) -> Result<Vec<GaussianRational>, Error> {
    s.split(',').map(parse_entry).collect()
}

fn texts(zs: &[GaussianRational]) -> Vec<String> {
    zs.iter().map(|z| z.to_string()).collect()
}

/// Parse `a1,...,aN` and cut or zero-pad it to the truncation order.
fn parse_series(s: &str, order: usize) -> Result<PowerSeries<Rational>, Error> {
    let mut a = PowerSeries::parse(s)?.a().to_vec();
    a.resize(order.max(1), Rational::from_integer(0.into()));
    Ok(PowerSeries::from_a(a))
}

fn series(cmd: &SeriesCmd, run: &RunConfig) -> Outcome {
    let out = match cmd {
        SeriesCmd::Revert { series } => {
            let f = parse_series(series, run.order)?;
            json!({"operation": "revert", "order": run.order, "input": f.to_string(), "result": f.revert()?.to_string()})
        }
        SeriesCmd::Compose { outer, inner } => {
            let (f, g) = (parse_series(outer, run.order)?, parse_series(inner, run.order)?);
            let h = PowerSeries::compose(&f, &g)?;
            json!({"operation": "compose", "order": run.order, "outer": f.to_string(), "inner": g.to_string(), "result": h.to_string()})
        }
        SeriesCmd::Hankel { series, size, start } => {
            let f = PowerSeries::parse(series)?;
            let h = hankel_det(f.a(), HankelSpec::new(*size, *start)?)?;
            json!({"operation": "hankel", "size": size, "start": start, "input": f.to_string(), "result": h.to_string()})
        }
    };
    Ok(out)
}

fn map(cmd: &MapCmd, run: &RunConfig) -> Outcome {
    let out = match cmd {
        MapCmd::C2f { c } => {
            let c = parse_list(c)?;
            let f = caratheodory_to_ozaki(&c, run.order)?;
            json!({"operation": "c2f", "order": run.order, "c": texts(&c), "result": f.to_string()})
        }
        MapCmd::Lz { c1, mu, rho, psi } => {
            let p = LZParams::new(parse_rational(c1)?, parse_entry(mu)?, parse_entry(rho)?, parse_entry(psi)?)?;
            let seq = lz_expand(&p)?;
            json!({
                "operation": "lz",
                "params": {"c1": p.c1.to_string(), "mu": p.mu.to_string(), "rho": p.rho.to_string(), "psi": p.psi.to_string()},
                "within_disc": seq.within_disc(),
                "result": texts(seq.coeffs()).join(","),
            })
        }
        MapCmd::H31 { c } => {
            let c = parse_list(c)?;
            let closed = h31_inverse_closed_form(&c)?;
            let pipeline = h31_via_pipeline(&c)?;
            json!({
                "operation": "h31",
                "c": texts(&c),
                "closed_form": closed.to_string(),
                "pipeline": pipeline.to_string(),
                "agree": closed == pipeline,
                "mod_sq": closed.mod_sq().to_string(),
                "result": closed.to_string(),
            })
        }
    };
    Ok(out)
}

fn parse_index(s: &str) -> Result<usize, Error> {
    s.parse().map_err(|_| Error::Usage(format!("term index {s:?} is not a non-negative integer")))
}

/// `TERM[:DELTA]` for the given lemma step.
fn perturbation(step: &str, spec: &str) -> Result<Perturbation, Error> {
    let (term, delta) = match spec.split_once(':') {
        Some((t, d)) => (parse_index(t)?, parse_rational(d)?),
        None => (parse_index(spec)?, Rational::from_integer(1.into())),
    };
    Ok(Perturbation { step: step.to_string(), term, delta })
}

fn prove(cmd: &ProveCmd, run: &RunConfig) -> Outcome {
    let mut cfg = ProofConfig { depth_budget: run.depth_budget, seed: run.seed, ..ProofConfig::default() };
    let out = match cmd {
        ProveCmd::Lemma { id, perturb, invert } => {
            cfg.perturbation = perturb.as_deref().map(|p| perturbation(id, p)).transpose()?;
            cfg.invert = invert.then(|| id.clone());
            to_json(&prove_lemma(id, &cfg)?)
        }
        ProveCmd::Case { id } => to_json(&prove_case(id, &cfg)?),
        ProveCmd::Theorem { perturb, invert } => {
            cfg.perturbation = match perturb {
                Some(p) => {
                    let (step, rest) = p
                        .split_once(':')
                        .ok_or_else(|| Error::Usage(format!("--perturb expects LEMMA:TERM[:DELTA], got {p:?}")))?;
                    Some(perturbation(step, rest)?)
                }
                None => None,
            };
            cfg.invert = invert.clone();
            to_json(&prove_theorem(&cfg)?)
        }
    };
    Ok(out)
}

fn read_json(file: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Io(format!("cannot read {}: {e}", file.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(format!("{}: {e}", file.display()))))
}

/// Replay whichever certificate the document holds; returns the replayed status.
fn replay(doc: &Value) -> Result<Status, Failure> {
    let parse = |e: serde_json::Error| Failure::Core(Error::Parse(e.to_string()));
    match render::kind(doc) {
        render::Kind::Theorem => Ok(serde_json::from_value::<TheoremCertificate>(doc.clone()).map_err(parse)?.replay()?),
        render::Kind::Step => Ok(serde_json::from_value::<StepCertificate>(doc.clone()).map_err(parse)?.replay()?),
        render::Kind::Sharpness => Ok(serde_json::from_value::<SharpnessReport>(doc.clone()).map_err(parse)?.replay()?),
        render::Kind::Scan => {
            let stored: ScanReport = serde_json::from_value(doc.clone()).map_err(parse)?;
            let fresh = empirical_scan(stored.count, stored.seed)?;
            if fresh != stored {
                return Err(Error::Replay("scan report does not reproduce from its seed".into()).into());
            }
            Ok(fresh.status)
        }
        render::Kind::Other => Err(Error::Parse("not a certificate document".into()).into()),
    }
}

fn cert(cmd: &CertCmd) -> Outcome {
    match cmd {
        CertCmd::Show { file } => read_json(file),
        CertCmd::Verify { file } => {
            let doc = read_json(file)?;
            let replayed = replay(&doc)?;
            let recorded = doc.get("status").and_then(Value::as_str).unwrap_or("");
            if recorded != replayed.to_string() {
                return Err(Error::Replay(format!("recorded status {recorded:?} but replay gives {replayed}")).into());
            }
            Ok(json!({"operation": "verify", "file": file.display().to_string(), "certificate": render::kind(&doc).name(), "status": replayed}))
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Series(c) => series(c, &cli.run),
        Command::Map(c) => map(c, &cli.run),
        Command::Prove(c) => prove(c, &cli.run),
        Command::Sharpness => Ok(to_json(&verify_sharpness()?)),
        Command::Scan => Ok(to_json(&empirical_scan(cli.run.count, cli.run.seed)?)),
        Command::Cert(c) => cert(c),
    }
}

fn status_code(v: &Value) -> u8 {
    match v.get("status").and_then(Value::as_str) {
        Some("refuted") => EXIT_REFUTED,
        Some("inconclusive") => EXIT_INCONCLUSIVE,
        _ => 0,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let value = match execute(&cli) {
        Ok(v) => v,
        Err(f) => {
            eprintln!("hankel-cert: {f}");
            return ExitCode::from(f.exit_code());
        }
    };
    let text = match cli.run.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
        Format::Text => render::text(&value),
    };
    match &cli.run.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("hankel-cert: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status_code(&value))
}
