//! The `tstab` command line: argument parsing, session configuration and
//! text/JSON emitters over the `tstab` library.
//!
//! [`run`] does all the work and returns the exit code with the text to
//! print, so it can be driven from tests without a subprocess.

pub mod config;

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tstab::elliptic::{EllipticObject, EllipticStability};
use tstab::families::{coarsen, finest_check, is_finer, Partition, StabilityFamily};
use tstab::parse::{parse_elliptic, parse_object, parse_p1, ParsedObject};
use tstab::sample::{random_elliptic_object, random_objects, rng, SampleBounds};
use tstab::stability::{check_hom_properties, hn, validate_stability, verify_hn, FamilyDescriptor, Filtration, Quotient};
use tstab::tstructure::{
    catalog, classify_bounded_cut, heart_contains, heart_slopes, render_diagram, truncate, validate_cut, CatalogName, CatalogParams,
    SlopeCut,
};
use tstab::{hom_profile, Indecomposable, Object, POrder, Point, SlopeId, Stability, Window};

pub use config::{Format, SessionConfig};

/// Errors surfaced to the user. Usage errors exit with 2, everything else with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] tstab::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
        }
    }
}

/// Exit code and the text to write to stdout (or stderr for nonzero codes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Debug, Parser)]
#[command(name = "tstab", version, about = "Slopes, HN filtrations and t-structures on P1 and elliptic curves")]
struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Session file with `key = value` lines (points, k, p, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Point labels in increasing order, comma separated.
    #[arg(long, global = true)]
    points: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StabilityKind {
    Std,
    Exc,
    Coarse,
    Ell,
}

#[derive(Debug, Args)]
struct ExcParams {
    /// Twist of the exceptional pair `(O(k), O(k+1))`.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Order parameter of the exceptional family: a natural number or `inf`.
    #[arg(long)]
    p: Option<String>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "std")]
    stability: StabilityKind,
    #[command(flatten)]
    exc: ExcParams,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an object.
    Normalize { expr: String },
    /// Hom profile `q -> dim Hom(A, B[q])`, or a single degree.
    Hom {
        source: String,
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// HN filtration of an object.
    Hn {
        expr: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Truncation triangle `X_le0 -> X -> X_ge1` of a cut.
    Truncate {
        expr: String,
        #[arg(long)]
        cut: String,
        #[command(flatten)]
        exc: ExcParams,
    },
    /// Heart of a cut, or heart membership of an object.
    Heart {
        #[arg(long)]
        cut: String,
        #[arg(long)]
        contains: Option<String>,
        #[command(flatten)]
        exc: ExcParams,
    },
    /// Catalog entries A-I, with their hearts.
    Catalog {
        name: Option<String>,
        /// `p=P` and/or `points=x;y`, comma separated.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        diagram: bool,
    },
    /// Identify a bounded cut with a catalog entry up to twist and shift.
    Classify {
        #[arg(long)]
        cut: String,
        #[command(flatten)]
        exc: ExcParams,
    },
    /// Window checks.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Whether one family refines another on a window.
    Compare {
        /// `std`, `coarse`, `exc[:k=K,p=P]`, `exc-pairs[:...]` or `exc-columns[:...]`.
        #[arg(long)]
        fine: String,
        #[arg(long)]
        weak: String,
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Stability axioms on the generators of a window, plus random HN samples.
    Stability {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Validity of a cut.
    Cut {
        #[arg(long)]
        cut: String,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[command(flatten)]
        exc: ExcParams,
    },
    /// Verify a filtration document read from `--input` or stdin.
    Hn {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        window: i64,
    },
    /// Whether every slope is a minimal nonzero subcategory.
    Finest {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
}

/// The JSON form of a filtration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiltrationDoc {
    pub object: String,
    pub family: FamilyDescriptor,
    pub quotients: Vec<QuotientDoc>,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub slope: SlopeId,
    pub object: String,
}

impl FiltrationDoc {
    fn new<S: Stability + ?Sized>(x: &Object<S::Indec>, family: &S, f: &Filtration<S::Indec>) -> Self {
        FiltrationDoc {
            object: x.to_string(),
            family: family.descriptor(),
            quotients: f.quotients.iter().map(|q| QuotientDoc { slope: q.slope.clone(), object: q.object.to_string() }).collect(),
            terms: f.terms.iter().map(ToString::to_string).collect(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!("HN filtration of {}\n", self.object);
        for (i, q) in self.quotients.iter().enumerate() {
            let _ = writeln!(out, "  Q{i} {}: {}", q.slope, q.object);
        }
        for (i, t) in self.terms.iter().enumerate() {
            let _ = writeln!(out, "  F{i} = {t}");
        }
        out
    }
}

/// Text and JSON renderings of a command result; `passed = false` exits with 1.
struct Report {
    text: String,
    json: Value,
    passed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, passed: true }
    }
}

struct Session {
    cfg: SessionConfig,
    seed: u64,
}

impl Session {
    fn p(&self, flag: &Option<String>) -> Result<POrder, CliError> {
        match flag {
            Some(p) => p.parse().map_err(|e: tstab::Error| CliError::Usage(e.to_string())),
            None => Ok(self.cfg.p),
        }
    }

    fn exceptional(&self, exc: &ExcParams) -> Result<StabilityFamily, CliError> {
        Ok(StabilityFamily::exceptional(exc.k.unwrap_or(self.cfg.k), self.p(&exc.p)?))
    }

    fn standard(&self) -> StabilityFamily {
        StabilityFamily::standard(self.cfg.point_order())
    }

    /// A P1 family; `ell` is handled separately by the callers that accept it.
    fn family(&self, args: &FamilyArgs) -> Result<StabilityFamily, CliError> {
        match args.stability {
            StabilityKind::Std => Ok(self.standard()),
            StabilityKind::Exc => self.exceptional(&args.exc),
            StabilityKind::Coarse => Ok(StabilityFamily::coarse()),
            StabilityKind::Ell => Err(CliError::Usage("the elliptic family is not supported by this command".into())),
        }
    }

    fn elliptic(&self) -> EllipticStability {
        EllipticStability::new(self.cfg.point_order())
    }

    /// The family a cut refers to.
    fn cut_family(&self, cut: &SlopeCut, exc: &ExcParams) -> Result<StabilityFamily, CliError> {
        match cut {
            SlopeCut::Standard { .. } => Ok(self.standard()),
            SlopeCut::Exceptional { .. } => self.exceptional(exc),
            SlopeCut::Coarse { .. } => Ok(StabilityFamily::coarse()),
        }
    }

    fn window(&self, radius: i64) -> Result<Window, CliError> {
        if !(0..=20).contains(&radius) {
            return Err(CliError::Usage(format!("window radius must be in 0..=20, got {radius}")));
        }
        Ok(Window::new(radius).with_points(self.cfg.points.clone()))
    }

    fn bounds(&self) -> SampleBounds {
        let mut b = SampleBounds::default();
        if !self.cfg.points.is_empty() {
            b.points = self.cfg.points.clone();
        }
        b
    }

    /// A FAMSPEC: `std`, `coarse`, `exc[:k=K,p=P]`, `exc-pairs[:..]`, `exc-columns[:..]`.
    fn famspec(&self, spec: &str) -> Result<StabilityFamily, CliError> {
        let (kind, rest) = spec.trim().split_once(':').unwrap_or((spec.trim(), ""));
        let mut params = ExcParams { k: None, p: None };
        for kv in rest.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            match kv.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
                Some(("k", v)) => params.k = Some(v.parse().map_err(|_| CliError::Usage(format!("bad k in `{spec}`")))?),
                Some(("p", v)) => params.p = Some(v.to_string()),
                _ => return Err(CliError::Usage(format!("unknown family parameter `{kv}` in `{spec}`"))),
            }
        }
        if !rest.is_empty() && matches!(kind, "std" | "coarse") {
            return Err(CliError::Usage(format!("`{kind}` takes no parameters")));
        }
        match kind {
            "std" => Ok(self.standard()),
            "coarse" => Ok(StabilityFamily::coarse()),
            "exc" => self.exceptional(&params),
            "exc-pairs" => Ok(coarsen(&self.exceptional(&params)?, Partition::ExceptionalPairs)?),
            "exc-columns" => Ok(coarsen(&self.exceptional(&params)?, Partition::ExceptionalColumns)?),
            other => Err(CliError::Usage(format!("unknown family `{other}`"))),
        }
    }
}

fn parse_cut(text: &str) -> Result<SlopeCut, CliError> {
    Ok(text.parse::<SlopeCut>()?)
}

fn parse_params(text: &str) -> Result<CatalogParams, CliError> {
    let mut params = CatalogParams::none();
    for kv in text.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
        match kv.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
            Some(("p", v)) => {
                params.p = Some(v.parse().map_err(|_| CliError::Usage(format!("p must be a natural number, got `{v}`")))?)
            }
            Some(("points", v)) => params.points = Some(v.split(';').map(str::trim).filter(|l| !l.is_empty()).map(Point::new).collect()),
            _ => return Err(CliError::Usage(format!("unknown catalog parameter `{kv}`"))),
        }
    }
    Ok(params)
}

fn k0_json(k0: &tstab::K0Class) -> Value {
    json!({ "rank": k0.rank(), "degree": k0.degree() })
}

fn normalize(expr: &str) -> Result<Report, CliError> {
    let x = parse_object(expr)?;
    let (category, k0) = match &x {
        ParsedObject::P1(o) => ("p1", o.k0()),
        ParsedObject::Elliptic(o) => ("elliptic", o.k0()),
    };
    Ok(Report::ok(format!("{x}\n"), json!({ "object": x.to_string(), "category": category, "k0": k0_json(&k0) })))
}

fn hom_report<I: Indecomposable>(a: &Object<I>, b: &Object<I>, degree: Option<i64>) -> Report {
    let profile = hom_profile(a, b);
    match degree {
        Some(q) => {
            let dim = profile.get(&q).copied().unwrap_or(0);
            Report::ok(format!("{dim}\n"), json!({ "source": a.to_string(), "target": b.to_string(), "degree": q, "dim": dim }))
        }
        None => {
            let mut text = String::new();
            for (q, d) in &profile {
                let _ = writeln!(text, "Hom^{q} = {d}");
            }
            if profile.is_empty() {
                text.push_str("all Hom^q vanish\n");
            }
            Report::ok(text, json!({ "source": a.to_string(), "target": b.to_string(), "profile": profile }))
        }
    }
}

fn hom(source: &str, target: &str, degree: Option<i64>) -> Result<Report, CliError> {
    match (parse_object(source)?, parse_object(target)?) {
        (ParsedObject::Elliptic(a), b) => Ok(hom_report(&a, &b.into_elliptic()?, degree)),
        (a, ParsedObject::Elliptic(b)) => Ok(hom_report(&a.into_elliptic()?, &b, degree)),
        (ParsedObject::P1(a), ParsedObject::P1(b)) => Ok(hom_report(&a, &b, degree)),
    }
}

fn filtration_report<S: Stability + ?Sized>(x: &Object<S::Indec>, family: &S) -> Result<Report, CliError> {
    let f = hn(x, family)?;
    let doc = FiltrationDoc::new(x, family, &f);
    Ok(Report::ok(doc.text(), serde_json::to_value(&doc).expect("filtration documents serialize")))
}

fn hn_command(s: &Session, expr: &str, args: &FamilyArgs) -> Result<Report, CliError> {
    match args.stability {
        StabilityKind::Ell => filtration_report(&parse_elliptic(expr)?, &s.elliptic()),
        _ => filtration_report(&parse_p1(expr)?, &s.family(args)?),
    }
}

fn truncate_command(s: &Session, expr: &str, cut: &str, exc: &ExcParams) -> Result<Report, CliError> {
    let x = parse_p1(expr)?;
    let cut = parse_cut(cut)?;
    let family = s.cut_family(&cut, exc)?;
    let (le0, ge1) = truncate(&x, &cut, &family)?;
    Ok(Report::ok(
        format!("{le0} -> {x} -> {ge1}\n"),
        json!({
            "object": x.to_string(),
            "cut": cut.to_string(),
            "family": family.descriptor(),
            "le0": le0.to_string(),
            "ge1": ge1.to_string(),
        }),
    ))
}

fn heart_command(s: &Session, cut: &str, contains: Option<&str>, exc: &ExcParams) -> Result<Report, CliError> {
    let cut = parse_cut(cut)?;
    let family = s.cut_family(&cut, exc)?;
    match contains {
        Some(expr) => {
            let x = parse_p1(expr)?;
            let inside = heart_contains(&x, &cut, &family)?;
            let text = format!("{x} {} in the heart of {cut}\n", if inside { "is" } else { "is not" });
            Ok(Report::ok(text, json!({ "object": x.to_string(), "cut": cut.to_string(), "contains": inside })))
        }
        None => {
            let heart = heart_slopes(&cut, &family)?;
            let mut text = format!("heart of {cut} ({})\n", if heart.bounded { "bounded" } else { "unbounded" });
            for g in &heart.generators {
                let _ = writeln!(text, "  {g}");
            }
            Ok(Report::ok(
                text,
                json!({ "cut": cut.to_string(), "family": family.descriptor(), "heart": heart.generators, "bounded": heart.bounded }),
            ))
        }
    }
}

fn params_text(params: &CatalogParams) -> String {
    let mut parts = Vec::new();
    if let Some(p) = params.p {
        parts.push(format!("p={p}"));
    }
    if let Some(points) = &params.points {
        let labels: Vec<&str> = points.iter().map(Point::label).collect();
        parts.push(format!("P={{{}}}", labels.join(",")));
    }
    if parts.is_empty() {
        String::new()
    } else {
        format!("({})", parts.join(", "))
    }
}

fn catalog_record(name: CatalogName, params: &CatalogParams, twist: i64, shift: i64, s: &Session, diagram: bool) -> Result<(String, Value), CliError> {
    let entry = catalog(name, params, &s.cfg.point_order())?;
    let mut text = format!(
        "{}{}: {} ({})\n",
        entry.name,
        params_text(&entry.params),
        entry.cut,
        if entry.heart.bounded { "bounded" } else { "unbounded" }
    );
    for g in &entry.heart.generators {
        let _ = writeln!(text, "  {g}");
    }
    if entry.quiver {
        text.push_str("  heart: representations of the Kronecker quiver\n");
    }
    let mut record = json!({
        "name": entry.name,
        "params": entry.params,
        "twist": twist,
        "shift": shift,
        "heart": entry.heart.generators,
        "bounded": entry.heart.bounded,
    });
    if diagram {
        let d = render_diagram(&entry.cut, &entry.family)?;
        text.push_str(&d);
        if !d.ends_with('\n') {
            text.push('\n');
        }
        record["diagram"] = Value::String(d);
    }
    Ok((text, record))
}

fn catalog_command(s: &Session, name: Option<&str>, params: Option<&str>, diagram: bool) -> Result<Report, CliError> {
    let params = params.map(parse_params).transpose()?;
    match name {
        Some(name) => {
            let name: CatalogName = name.parse()?;
            let params = params.unwrap_or_default();
            let (text, json) = catalog_record(name, &params, 0, 0, s, diagram)?;
            Ok(Report::ok(text, json))
        }
        None => {
            if params.is_some() {
                return Err(CliError::Usage("--params needs a catalog NAME".into()));
            }
            let top = s.cfg.points.last().map(|x| x.label().to_string()).unwrap_or_else(|| "x".into());
            let mut text = String::new();
            let mut records = Vec::new();
            for name in CatalogName::ALL {
                let params = match name {
                    CatalogName::D => CatalogParams::points(&[top.as_str()]),
                    CatalogName::E | CatalogName::F => CatalogParams::p(0),
                    _ => CatalogParams::none(),
                };
                let (t, j) = catalog_record(name, &params, 0, 0, s, diagram)?;
                text.push_str(&t);
                records.push(j);
            }
            Ok(Report::ok(text, Value::Array(records)))
        }
    }
}

fn classify_command(s: &Session, cut: &str, exc: &ExcParams) -> Result<Report, CliError> {
    let cut = parse_cut(cut)?;
    let family = s.cut_family(&cut, exc)?;
    let c = classify_bounded_cut(&cut, &family, &s.window(6)?)?;
    let (record_text, mut record) = catalog_record(c.name, &c.params, c.twist, c.shift, s, false)?;
    record["cut"] = Value::String(cut.to_string());
    let text = format!("{cut} is {}{} twisted by O({}) and shifted by {}\n{record_text}", c.name, params_text(&c.params), c.twist, c.shift);
    Ok(Report::ok(text, record))
}

fn check_stability<S: Stability + ?Sized>(family: &S, name: String, window: &Window, samples: &[Object<S::Indec>]) -> Report {
    let report = validate_stability(family, window, samples);
    let mut text = format!(
        "{name}: {} ({} generators, {} ordered pairs, {} samples)\n",
        if report.passed() { "pass" } else { "FAIL" },
        report.generators,
        report.pairs,
        report.samples
    );
    for v in report.violations.iter().take(10) {
        let _ = writeln!(text, "  {}", serde_json::to_string(v).expect("violations serialize"));
    }
    if report.violations.len() > 10 {
        let _ = writeln!(text, "  ... {} more", report.violations.len() - 10);
    }
    let passed = report.passed();
    let mut json = serde_json::to_value(&report).expect("reports serialize");
    json["check"] = json!("stability");
    json["family"] = serde_json::to_value(family.descriptor()).expect("descriptors serialize");
    json["passed"] = json!(passed);
    Report { text, json, passed }
}

fn check_hn_doc(doc: &FiltrationDoc, radius: i64, s: &Session) -> Result<Report, CliError> {
    fn run<S: Stability + ?Sized>(
        doc: &FiltrationDoc,
        family: &S,
        parse: impl Fn(&str) -> tstab::Result<Object<S::Indec>>,
        window: &Window,
    ) -> Result<Report, CliError> {
        let x = parse(&doc.object)?;
        let quotients = doc
            .quotients
            .iter()
            .map(|q| Ok(Quotient::new(q.slope.clone(), parse(&q.object)?)))
            .collect::<tstab::Result<Vec<_>>>()?;
        let terms = doc.terms.iter().map(|t| parse(t)).collect::<tstab::Result<Vec<_>>>()?;
        let f = Filtration { quotients, terms };
        let report = verify_hn(&x, &f, family);
        let problems = if report.passed() { check_hom_properties(&f, family, window)? } else { Vec::new() };
        let passed = report.passed() && problems.is_empty();
        let mut text = format!("{}\n{report}", if passed { "pass" } else { "FAIL" });
        for p in &problems {
            let _ = writeln!(text, "FAIL {p}");
        }
        let json = json!({ "check": "hn", "passed": passed, "checks": report.checks, "window_problems": problems });
        Ok(Report { text, json, passed })
    }
    let window = s.window(radius)?;
    match &doc.family {
        FamilyDescriptor::Elliptic { point_order } => {
            run(doc, &EllipticStability::new(tstab::PointOrder::new(point_order.clone())), parse_elliptic, &window.with_rank(2))
        }
        d => run(doc, &StabilityFamily::from_descriptor(d)?, parse_p1, &window),
    }
}

fn check_command(s: &Session, what: &CheckCommand, stdin: &mut dyn Read) -> Result<Report, CliError> {
    match what {
        CheckCommand::Stability { family, window, samples } => {
            let w = s.window(*window)?;
            let mut r = rng(s.seed);
            match family.stability {
                StabilityKind::Ell => {
                    let b = SampleBounds { shift: 2, ..s.bounds() };
                    let objs: Vec<EllipticObject> = (0..*samples).map(|_| random_elliptic_object(&mut r, &b)).collect();
                    Ok(check_stability(&s.elliptic(), "elliptic".into(), &w.with_rank(2), &objs))
                }
                _ => {
                    let f = s.family(family)?;
                    Ok(check_stability(&f, f.to_string(), &w, &random_objects(s.seed, *samples, &s.bounds())))
                }
            }
        }
        CheckCommand::Cut { cut, window, exc } => {
            let cut = parse_cut(cut)?;
            let family = s.cut_family(&cut, exc)?;
            let report = validate_cut(&cut, &family, &s.window(*window)?);
            let mut text = format!("{cut}: {} ({} ordered pairs checked)\n", if report.valid { "valid" } else { "INVALID" }, report.pairs);
            for p in &report.problems {
                let _ = writeln!(text, "  {p}");
            }
            let mut json = serde_json::to_value(&report).expect("reports serialize");
            json["check"] = json!("cut");
            json["cut"] = json!(cut.to_string());
            json["passed"] = json!(report.valid);
            Ok(Report { text, json, passed: report.valid })
        }
        CheckCommand::Hn { input, window } => {
            let mut raw = String::new();
            match input {
                Some(path) => {
                    raw = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?
                }
                None => {
                    stdin.read_to_string(&mut raw).map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
                }
            }
            let doc: FiltrationDoc = serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("bad filtration document: {e}")))?;
            check_hn_doc(&doc, *window, s)
        }
        CheckCommand::Finest { family, window } => {
            let f = s.family(family)?;
            let report = finest_check(&f, &s.window(*window)?)?;
            let mut text = format!("{f}: {}\n", if report.finest { "finest" } else { "NOT finest" });
            for w in report.witnesses.iter().take(5) {
                let _ = writeln!(text, "  slope {}: Hom^0({}, {}) = 0", w.slope, w.source, w.target);
            }
            let mut json = serde_json::to_value(&report).expect("reports serialize");
            json["check"] = json!("finest");
            json["passed"] = json!(report.finest);
            Ok(Report { text, json, passed: report.finest })
        }
    }
}

fn compare_command(s: &Session, fine: &str, weak: &str, window: i64) -> Result<Report, CliError> {
    let (f, w) = (s.famspec(fine)?, s.famspec(weak)?);
    let verdict = is_finer(&f, &w, &s.window(window)?)?;
    let mut text = format!("{f} {} {w}\n", if verdict.holds { "refines" } else { "does not refine" });
    for witness in verdict.witnesses.iter().take(10) {
        let _ = writeln!(text, "  {}", serde_json::to_string(witness).expect("witnesses serialize"));
    }
    let mut json = serde_json::to_value(&verdict).expect("verdicts serialize");
    json["fine"] = serde_json::to_value(f.descriptor()).expect("descriptors serialize");
    json["weak"] = serde_json::to_value(w.descriptor()).expect("descriptors serialize");
    json["unstable_generators"] = json!(verdict.unstable_generators());
    Ok(Report::ok(text, json))
}

fn dispatch(cli: &Cli, s: &Session, stdin: &mut dyn Read) -> Result<Report, CliError> {
    match &cli.command {
        Command::Normalize { expr } => normalize(expr),
        Command::Hom { source, target, degree } => hom(source, target, *degree),
        Command::Hn { expr, family } => hn_command(s, expr, family),
        Command::Truncate { expr, cut, exc } => truncate_command(s, expr, cut, exc),
        Command::Heart { cut, contains, exc } => heart_command(s, cut, contains.as_deref(), exc),
        Command::Catalog { name, params, diagram } => catalog_command(s, name.as_deref(), params.as_deref(), *diagram),
        Command::Classify { cut, exc } => classify_command(s, cut, exc),
        Command::Check { what } => check_command(s, what, stdin),
        Command::Compare { fine, weak, window } => compare_command(s, fine, weak, *window),
    }
}

fn session(cli: &Cli) -> Result<Session, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => SessionConfig::load(path)?,
        None => SessionConfig::default(),
    };
    if let Some(points) = &cli.points {
        cfg.points = config::parse_points(points).map_err(CliError::Usage)?;
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    Ok(Session { cfg, seed: cli.seed.unwrap_or(0) })
}

/// Whether `--format json` appears in `argv`; used to format errors raised
/// before the arguments are fully parsed.
fn wants_json(argv: &[String]) -> bool {
    argv.iter().zip(argv.iter().skip(1)).any(|(a, b)| a == "--format" && b == "json") || argv.iter().any(|a| a == "--format=json")
}

fn error_outcome(err: &CliError, json: bool) -> Outcome {
    let output = if json {
        format!("{}\n", json!({ "error": err.to_string(), "kind": err.kind() }))
    } else {
        format!("error: {err}\n")
    };
    Outcome { code: err.exit_code(), output }
}

/// Runs the command line `argv` (including the program name).
pub fn run(argv: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 2 && wants_json(argv) {
                return error_outcome(&CliError::Usage(e.render().to_string().trim().to_string()), true);
            }
            return Outcome { code, output: e.render().to_string() };
        }
    };
    let s = match session(&cli) {
        Ok(s) => s,
        Err(e) => return error_outcome(&e, wants_json(argv)),
    };
    let json_mode = s.cfg.format == Format::Json;
    match dispatch(&cli, &s, stdin) {
        Ok(report) => Outcome {
            code: if report.passed { 0 } else { 1 },
            output: if json_mode {
                format!("{}\n", serde_json::to_string_pretty(&report.json).expect("values serialize"))
            } else {
                report.text
            },
        },
        Err(e) => error_outcome(&e, json_mode),
    }
}
