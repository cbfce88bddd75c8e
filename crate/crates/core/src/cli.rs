//! Command-line front end. Every subcommand produces one JSON document; the
//! text output is rendered from it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify_irreducible, compare_with_scan, predict_constituents, recommended_cutoff,
    scan_lattice, Classification, ScanResult,
};
use crate::compactrep::{build_class1, build_so3, CompactRep};
use crate::degenrep::{build_degenerate, build_degenerate_primed, RepSpec};
use crate::dump::{dump_compact, dump_degenerate, parse_dump, to_json};
use crate::error::Error;
use crate::gtbasis::{Block, HalfInt};
use crate::qarith::{parse_rational, rational_to_f64, snap_to_rational, QParam, SpectralParam};
use crate::verify::{check_relations, check_star, solve_metric, MetricStatus, Representation};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const SNAP_DENOMINATOR: i64 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "soq",
    version,
    about = "Representations of so'_q(n) and so'_q(r,s)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a representation and write its matrix dump.
    Build(BuildArgs),
    /// Same as `build`, spelled `rep dump`.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Check defining relations, adjointness and metrics.
    Verify(VerifyArgs),
    /// Decide irreducibility, *-series and decomposition of T_{ελ}.
    Classify(ClassifyArgs),
    /// Cross-check the closed-form classification against the lattice scanner over a λ grid.
    Scan(ScanArgs),
}

#[derive(Debug, Subcommand)]
pub enum RepAction {
    Dump(BuildArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long, default_value_t = 8)]
    pub cutoff: i64,
    /// Interior depth for relation residuals.
    #[arg(long, default_value_t = 3)]
    pub depth: i64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Print the JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectralArgs {
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub epsilon: u8,
    /// Re λ as an exact rational `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_re: Option<String>,
    /// Im λ in units of π/h, as an exact rational.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda_im")]
    pub lambda_im_t: Option<String>,
    /// Im λ as a plain number; makes λ inexact.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im: Option<f64>,
    /// Accept decimal λ by snapping it to a nearby rational.
    #[arg(long)]
    pub snap: bool,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("family").required(true).args(["so3", "class1", "degenerate"])))]
pub struct BuildArgs {
    #[arg(long)]
    pub so3: bool,
    #[arg(long)]
    pub class1: bool,
    #[arg(long)]
    pub degenerate: bool,
    /// so'_q(3) label, integer or half-integer (`3/2`).
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<i64>,
    /// Use the primed basis of the degenerate series.
    #[arg(long)]
    pub primed: bool,
    #[command(flatten)]
    pub spectral: SpectralArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["compact", "degenerate", "dump"])))]
pub struct VerifyArgs {
    /// Class-1 relation suite; all n ≤ 5, m ≤ 4 unless --n/--m are given.
    #[arg(long)]
    pub compact: bool,
    #[arg(long)]
    pub degenerate: bool,
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<i64>,
    /// Check adjointness in the primed basis.
    #[arg(long)]
    pub star: bool,
    /// Solve for a block-scalar invariant metric.
    #[arg(long)]
    pub metric: bool,
    #[command(flatten)]
    pub spectral: SpectralArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub spectral: SpectralArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub epsilon: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    #[arg(long, default_value = "1")]
    pub step: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im_t: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Reproducibility header embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub epsilon: Option<u8>,
    pub lambda: Option<SpectralParam>,
    pub n: Option<usize>,
    pub top: Option<HalfInt>,
    pub q: f64,
    pub cutoff: i64,
    pub depth: i64,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub snapped: bool,
}

impl RunConfig {
    fn new(command: &str, common: &CommonArgs) -> Self {
        RunConfig {
            command: command.into(),
            r: None,
            s: None,
            epsilon: None,
            lambda: None,
            n: None,
            top: None,
            q: common.q,
            cutoff: common.cutoff,
            depth: common.depth,
            tol: common.tol,
            out: common.out.clone(),
            format: if common.json {
                Format::Json
            } else {
                Format::Text
            },
            snapped: false,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Param(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Param(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Exact rational from `p/q`, or from a decimal when `snap` is set.
fn parse_exact(
    text: &str,
    snap: bool,
    what: &str,
) -> std::result::Result<(Rational64, bool), Failure> {
    if let Ok(v) = parse_rational(text) {
        return Ok((v, false));
    }
    match text.trim().parse::<f64>() {
        Ok(x) if snap => Ok((snap_to_rational(x, SNAP_DENOMINATOR)?, true)),
        Ok(_) => Err(usage(format!(
            "{what} = {text} is not exact; write it as p/q or pass --snap"
        ))),
        Err(_) => Err(usage(format!("cannot parse {what} = {text}"))),
    }
}

impl SpectralArgs {
    fn ranks(&self) -> std::result::Result<(usize, usize), Failure> {
        match (self.r, self.s) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => Err(usage("--r and --s are required")),
        }
    }

    /// λ and whether it was snapped.
    fn lambda(&self) -> std::result::Result<(SpectralParam, bool), Failure> {
        let re_text = self
            .lambda_re
            .as_deref()
            .ok_or_else(|| usage("--lambda-re is required"))?;
        if let Some(im) = self.lambda_im {
            let re: f64 = match parse_rational(re_text) {
                Ok(v) => rational_to_f64(v),
                Err(_) => re_text
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("cannot parse --lambda-re = {re_text}")))?,
            };
            return Ok((SpectralParam::inexact(Complex64::new(re, im)), false));
        }
        let (re, snapped_re) = parse_exact(re_text, self.snap, "--lambda-re")?;
        let (im_t, snapped_im) = match &self.lambda_im_t {
            Some(t) => parse_exact(t, self.snap, "--lambda-im-t")?,
            None => (Rational64::from_integer(0), false),
        };
        Ok((SpectralParam::exact(re, im_t), snapped_re || snapped_im))
    }

    fn spec(
        &self,
        common: &CommonArgs,
        config: &mut RunConfig,
    ) -> std::result::Result<RepSpec, Failure> {
        let (r, s) = self.ranks()?;
        let (lambda, snapped) = self.lambda()?;
        config.r = Some(r);
        config.s = Some(s);
        config.epsilon = Some(self.epsilon);
        config.lambda = Some(lambda);
        config.snapped = snapped;
        Ok(RepSpec::new(
            r,
            s,
            self.epsilon,
            lambda,
            QParam::new(common.q)?,
            common.cutoff,
        )?)
    }
}

fn emit(common: &CommonArgs, json: &serde_json::Value, text: &str) -> Outcome {
    if let Some(path) = &common.out {
        let mut body = serde_json::to_string_pretty(json).expect("report serializes");
        body.push('\n');
        std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(json).expect("report serializes")
        );
    } else {
        print!("{text}");
    }
    Ok(())
}

fn cmd_build(args: &BuildArgs) -> Outcome {
    let common = &args.common;
    let mut config = RunConfig::new("build", common);
    let p = QParam::new(common.q)?;
    let text = if args.degenerate {
        let spec = args.spectral.spec(common, &mut config)?;
        let rep = if args.primed {
            build_degenerate_primed(&spec)?
        } else {
            build_degenerate(&spec)?
        };
        to_json(&dump_degenerate(&rep, Some(to_value(&config))))
    } else {
        let rep = compact_from_args(args, &p, &mut config)?;
        to_json(&dump_compact(&rep, Some(to_value(&config))))
    };
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compact_from_args(
    args: &BuildArgs,
    p: &QParam,
    config: &mut RunConfig,
) -> std::result::Result<CompactRep, Failure> {
    if args.so3 {
        let l = args.l.as_deref().ok_or_else(|| usage("--so3 needs --l"))?;
        let l = parse_rational(l)?;
        let twice = l * 2;
        if !twice.is_integer() || twice < Rational64::from_integer(0) {
            return Err(usage(format!(
                "--l = {l} must be a nonnegative integer or half-integer"
            )));
        }
        let top = HalfInt::from_twice(twice.to_integer());
        config.n = Some(3);
        config.top = Some(top);
        Ok(build_so3(top, p)?)
    } else {
        let n = args.n.ok_or_else(|| usage("--class1 needs --n"))?;
        let m = args.m.ok_or_else(|| usage("--class1 needs --m"))?;
        config.n = Some(n);
        config.top = Some(HalfInt::int(m));
        Ok(build_class1(n, m, p)?)
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

#[derive(Debug, Serialize)]
struct CheckRow {
    name: String,
    pass: bool,
    max_residual: f64,
    tol: f64,
    detail: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    config: RunConfig,
    checks: Vec<CheckRow>,
    pass: bool,
}

fn relations_row(
    name: String,
    rep: &dyn Representation,
    depth: i64,
    tol: f64,
) -> std::result::Result<CheckRow, Failure> {
    let report = check_relations(rep, depth, tol)?;
    Ok(CheckRow {
        name,
        pass: report.pass,
        max_residual: report.max_residual,
        tol,
        detail: to_value(&report),
    })
}

fn star_row(
    name: String,
    rep: &dyn Representation,
    tol: f64,
) -> std::result::Result<CheckRow, Failure> {
    let report = check_star(rep, tol)?;
    Ok(CheckRow {
        name,
        pass: report.pass,
        max_residual: report.max_residual,
        tol,
        detail: to_value(&report),
    })
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let common = &args.common;
    let mut config = RunConfig::new("verify", common);
    let (depth, tol) = (common.depth, common.tol);
    let mut checks = Vec::new();
    if let Some(path) = &args.dump {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Param(Error::Dump(format!("{}: {e}", path.display()))))?;
        let rep = parse_dump(&text)?;
        config.r = rep.header.r;
        config.s = rep.header.s;
        config.epsilon = rep.header.epsilon;
        config.lambda = rep.header.lambda;
        config.n = rep.header.n;
        config.q = rep.header.q;
        checks.push(relations_row(
            format!("relations {}", path.display()),
            &rep,
            depth,
            tol,
        )?);
        if args.star {
            checks.push(star_row("star".into(), &rep, tol)?);
        }
    } else if args.compact {
        let p = QParam::new(common.q)?;
        let ns: Vec<usize> = match args.n {
            Some(n) => vec![n],
            None => (3..=5).collect(),
        };
        let ms: Vec<i64> = match args.m {
            Some(m) => vec![m],
            None => (0..=4).collect(),
        };
        config.n = args.n;
        for &n in &ns {
            for &m in &ms {
                let rep = build_class1(n, m, &p)?;
                checks.push(relations_row(
                    format!("relations n={n} m={m}"),
                    &rep,
                    0,
                    tol,
                )?);
            }
        }
    } else {
        let spec = args.spectral.spec(common, &mut config)?;
        let rep = build_degenerate(&spec)?;
        checks.push(relations_row("relations".into(), &rep, depth, tol)?);
        if args.star {
            let primed = build_degenerate_primed(&spec)?;
            checks.push(relations_row(
                "relations (primed)".into(),
                &primed,
                depth,
                tol,
            )?);
            checks.push(star_row("star (primed)".into(), &primed, tol)?);
        }
        if args.metric {
            let metric = solve_metric(&rep)?;
            checks.push(CheckRow {
                name: "metric".into(),
                pass: metric.status == MetricStatus::Found,
                max_residual: metric.residual,
                tol: crate::verify::RECURRENCE_TOL,
                detail: to_value(&metric),
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        config,
        checks,
        pass,
    };
    let mut text = String::new();
    for c in &report.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{verdict}  {:<28} max={:.3e}  tol={:.1e}",
            c.name, c.max_residual, c.tol
        );
        if !c.pass {
            if let Some(worst) = c
                .detail
                .get("entries")
                .and_then(|e| e.as_array())
                .and_then(|e| {
                    e.iter().filter(|x| x["pass"] == false).max_by(|a, b| {
                        a["max"]
                            .as_f64()
                            .unwrap_or(0.0)
                            .total_cmp(&b["max"].as_f64().unwrap_or(0.0))
                    })
                })
            {
                let _ = writeln!(text, "      worst: {}", worst);
            }
            if let Some(status) = c.detail.get("status").and_then(|s| s.as_str()) {
                let _ = writeln!(text, "      status: {status}");
            }
            if let Some(note) = c.detail.get("note").and_then(|n| n.as_str()) {
                let _ = writeln!(text, "      {note}");
            }
        }
    }
    let _ = writeln!(text, "{}", if pass { "PASS" } else { "FAIL" });
    emit(common, &to_value(&report), &text)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Per-component overview of a scan.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub blocks: usize,
    pub sum_range: (i64, i64),
    pub diff_range: (i64, i64),
    pub closed: bool,
    /// Whether the component touches the cutoff, i.e. continues beyond it.
    pub reaches_cutoff: bool,
}

pub fn summarize_scan(scan: &ScanResult) -> Vec<ComponentSummary> {
    scan.components
        .iter()
        .map(|c| {
            let sums = c.iter().map(Block::sum);
            let diffs = c.iter().map(Block::diff);
            let sum_range = (sums.clone().min().unwrap_or(0), sums.max().unwrap_or(0));
            let diff_range = (diffs.clone().min().unwrap_or(0), diffs.max().unwrap_or(0));
            ComponentSummary {
                blocks: c.len(),
                sum_range,
                diff_range,
                closed: scan.is_closed(c),
                reaches_cutoff: sum_range.1 >= scan.cutoff - 1,
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    config: RunConfig,
    classification: Option<Classification>,
    unclassified: Option<String>,
    scanner: Option<ScanOverview>,
}

#[derive(Debug, Serialize)]
struct ScanOverview {
    cutoff: i64,
    irreducible: bool,
    components: Vec<ComponentSummary>,
    invariant_regions: usize,
}

fn overview(scan: &ScanResult) -> ScanOverview {
    ScanOverview {
        cutoff: scan.cutoff,
        irreducible: scan.is_irreducible(),
        components: summarize_scan(scan),
        invariant_regions: scan.invariant_regions.len(),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Outcome {
    let common = &args.common;
    let mut config = RunConfig::new("classify", common);
    let spec = args.spectral.spec(common, &mut config)?;
    let (r, s, eps, lam) = (spec.r, spec.s, spec.epsilon, spec.lambda);
    let header = format!("so'_q({r},{s}) ε={eps} λ={lam}");
    let mut text = String::new();
    let report = match predict_constituents(r, s, eps, &lam) {
        Ok(c) => {
            let _ = writeln!(
                text,
                "{header}: {}",
                if c.irreducible {
                    "irreducible"
                } else {
                    "reducible"
                }
            );
            let _ = writeln!(text, "case: {}", c.case);
            let _ = writeln!(
                text,
                "star series: {}",
                to_value(&c.star_series).as_str().unwrap_or("?")
            );
            if c.ladder {
                let _ = writeln!(text, "ladder representation present");
            }
            for k in &c.constituents {
                let _ = writeln!(
                    text,
                    "  {:<5} {:<15} {}{}{}",
                    k.name.to_string(),
                    to_value(&k.realized_on).as_str().unwrap_or("?"),
                    k.predicate,
                    if k.finite_dim { "  finite" } else { "" },
                    if k.star { "  *" } else { "" }
                );
            }
            ClassifyReport {
                config,
                classification: Some(c),
                unclassified: None,
                scanner: None,
            }
        }
        Err(e @ Error::UnclassifiedReducibleCase { .. }) => {
            let cutoff = common.cutoff.max(recommended_cutoff(r, s, &lam));
            let scan = scan_lattice(&spec_with_cutoff(&spec, cutoff)?)?;
            let ov = overview(&scan);
            let _ = writeln!(
                text,
                "{header}: reducible, decomposition not covered by the closed-form cases"
            );
            let _ = writeln!(
                text,
                "scanner (cutoff {cutoff}): {} component(s), {}",
                ov.components.len(),
                if ov.irreducible {
                    "irreducible on the truncated lattice"
                } else {
                    "reducible"
                }
            );
            for c in &ov.components {
                let _ = writeln!(
                    text,
                    "  {} blocks, m+m' in [{}, {}], m-m' in [{}, {}]{}",
                    c.blocks,
                    c.sum_range.0,
                    c.sum_range.1,
                    c.diff_range.0,
                    c.diff_range.1,
                    if c.closed { ", invariant" } else { "" }
                );
            }
            ClassifyReport {
                config,
                classification: None,
                unclassified: Some(e.to_string()),
                scanner: Some(ov),
            }
        }
        Err(e) => return Err(e.into()),
    };
    emit(common, &to_value(&report), &text)
}

fn spec_with_cutoff(spec: &RepSpec, cutoff: i64) -> crate::Result<RepSpec> {
    RepSpec::new(spec.r, spec.s, spec.epsilon, spec.lambda, spec.p, cutoff)
}

#[derive(Debug, Serialize)]
struct ScanRow {
    lambda: SpectralParam,
    cutoff: i64,
    theorem_irreducible: bool,
    scanner_components: usize,
    case: Option<String>,
    status: &'static str,
    disagreements: Vec<String>,
}

#[derive(Debug, Serialize)]
struct ScanReport {
    config: RunConfig,
    rows: Vec<ScanRow>,
    disagreements: usize,
    unclassified: usize,
}

fn scan_point(
    r: usize,
    s: usize,
    eps: u8,
    lam: SpectralParam,
    p: QParam,
    min_cutoff: i64,
) -> crate::Result<ScanRow> {
    let cutoff = min_cutoff.max(recommended_cutoff(r, s, &lam));
    let scan = scan_lattice(&RepSpec::new(r, s, eps, lam, p, cutoff)?)?;
    let theorem = classify_irreducible(r, s, eps, &lam)?;
    let (case, status, disagreements) = match predict_constituents(r, s, eps, &lam) {
        Ok(c) => {
            let d = compare_with_scan(&c, &scan);
            let status = if d.is_empty() { "agree" } else { "DISAGREE" };
            (Some(c.case), status, d)
        }
        Err(Error::UnclassifiedReducibleCase { .. }) => (None, "unclassified", Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(ScanRow {
        lambda: lam,
        cutoff,
        theorem_irreducible: theorem,
        scanner_components: scan.components.len(),
        case,
        status,
        disagreements,
    })
}

fn cmd_scan(args: &ScanArgs) -> Outcome {
    let common = &args.common;
    let mut config = RunConfig::new("scan", common);
    config.r = Some(args.r);
    config.s = Some(args.s);
    config.epsilon = Some(args.epsilon);
    let (from, _) = parse_exact(&args.from, false, "--from")?;
    let (to, _) = parse_exact(&args.to, false, "--to")?;
    let (step, _) = parse_exact(&args.step, false, "--step")?;
    let (im_t, _) = match &args.lambda_im_t {
        Some(t) => parse_exact(t, false, "--lambda-im-t")?,
        None => (Rational64::from_integer(0), false),
    };
    if step <= Rational64::from_integer(0) || to < from {
        return Err(usage("the grid needs --step > 0 and --from <= --to"));
    }
    let count = ((to - from) / step).floor().to_integer() + 1;
    if count > 100_000 {
        return Err(usage(format!("grid of {count} points is too large")));
    }
    let p = QParam::new(common.q)?;
    let rows: Vec<ScanRow> = (0..count)
        .into_par_iter()
        .map(|i| {
            let lam = SpectralParam::exact(from + step * i, im_t);
            scan_point(args.r, args.s, args.epsilon, lam, p, common.cutoff)
        })
        .collect::<crate::Result<_>>()?;
    let disagreements = rows.iter().filter(|r| r.status == "DISAGREE").count();
    let unclassified = rows.iter().filter(|r| r.status == "unclassified").count();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<14} {:>6} {:>9} {:>10}  {:<13} case",
        "lambda", "cutoff", "theorem", "components", "status"
    );
    for row in &rows {
        let _ = writeln!(
            text,
            "{:<14} {:>6} {:>9} {:>10}  {:<13} {}",
            row.lambda.to_string(),
            row.cutoff,
            if row.theorem_irreducible {
                "irred"
            } else {
                "red"
            },
            row.scanner_components,
            row.status,
            row.case.as_deref().unwrap_or("-")
        );
        for d in &row.disagreements {
            let _ = writeln!(text, "    {d}");
        }
    }
    let _ = writeln!(
        text,
        "{} point(s), {disagreements} disagreement(s), {unclassified} unclassified",
        rows.len()
    );
    let report = ScanReport {
        config,
        rows,
        disagreements,
        unclassified,
    };
    emit(common, &to_value(&report), &text)?;
    if disagreements == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let outcome = match &cli.command {
        Command::Build(a)
        | Command::Rep {
            action: RepAction::Dump(a),
        } => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Scan(a) => cmd_scan(a),
    };
    match outcome {
        Ok(()) => EXIT_PASS,
        Err(Failure::Check) => EXIT_FAIL,
        Err(Failure::Param(e @ Error::Dump(_))) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
        Err(Failure::Param(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
