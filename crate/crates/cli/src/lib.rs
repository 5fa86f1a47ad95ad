//! Job descriptions, dispatch and deterministic reports for `gradedhom`.
//!
//! A [`JobSpec`] names a command, its input files and parameters. [`run`]
//! turns it into a [`Report`]; [`render`] prints the report as JSON with
//! sorted keys or as flattened `path = value` lines.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use gradedhom::coeff::CoefficientRing;
use gradedhom::complex::{cyclic_resolution, homology, homology_report, tor};
use gradedhom::gmod::{free_rank_type, locally_free_witness, nakayama_is_zero, spread_out, PresentedModule};
use gradedhom::gring::{monomial_primes, GradingSpec, MonomialPrime, MonomialRing, RingElement, SliceKind};
use gradedhom::io::{ComplexSpec, ModuleSpec, RingSpec, SiteJob};
use gradedhom::site::{
    catalog_closure, classify_catalog, compare_theories, cover_pullback, Catalog, HomologyTheory,
};
use gradedhom::sympow::{
    antisymmetrizer, identity_factorization, operator_is_zero, quasi_idempotence, sym_type, symmetrizer, type_of,
    young_symmetrizer, SignedPermutationOperator, SuperSpace, SymBounds, SymReport, YoungShape,
};
use gradedhom::Error;

pub const DEFAULT_W: i64 = 10;

pub const COMMANDS: [&str; 9] =
    ["ring", "module", "sym", "young", "homology", "tor", "site classify", "site compare", "site cover"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// A command with its inputs. Input paths are resolved against the
/// directory passed to [`run`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub inputs: BTreeMap<String, String>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
    #[serde(default)]
    pub bounds: BTreeMap<String, u64>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("missing input `{0}`")]
    MissingInput(String),
    #[error("bad parameter `{name}`: {message}")]
    BadParam { name: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("corpus missing: {0}")]
    CorpusMissing(String),
    #[error("{0}")]
    Math(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(e) if is_finding(e) => 1,
            _ => 2,
        }
    }
}

/// Errors that are answers about the mathematics rather than bad input.
pub fn is_finding(e: &Error) -> bool {
    matches!(
        e,
        Error::HypothesisFailed(_)
            | Error::NotAnEpi(_)
            | Error::NotLocal(_)
            | Error::NotConnected
            | Error::NotLocallyFreeAtP(_)
            | Error::NotProjectiveSomewhere { .. }
            | Error::TwoNotInvertible
            | Error::ExactnessAuditFailed { .. }
    )
}

fn is_bound(e: &Error) -> bool {
    matches!(e, Error::BoundExceeded(_) | Error::TruncationTooSmall { .. })
}

/// The variant name of an error.
fn kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub kind: String,
    pub message: String,
    /// `hypothesis_failed` for mathematical findings, `bound` for resource
    /// limits.
    pub class: String,
}

impl Finding {
    fn of(e: &Error) -> Self {
        let class = if is_bound(e) { "bound" } else { "hypothesis_failed" };
        Finding { kind: kind(e), message: e.to_string(), class: class.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnknownNote {
    pub path: String,
    pub w: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Audit {
    pub truncation: i64,
    pub bounds: BTreeMap<String, u64>,
    pub bounds_hit: Vec<String>,
    pub exactness_audits: Vec<String>,
    pub unknowns: Vec<UnknownNote>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub job: JobSpec,
    pub result: Value,
    pub findings: Vec<Finding>,
    pub audit: Audit,
}

impl Report {
    /// 0 on success, 1 when a mathematical finding was reported, 2 when a
    /// bound stopped the computation.
    pub fn exit_code(&self) -> i32 {
        if self.findings.iter().any(|f| f.class == "bound") {
            2
        } else if self.findings.is_empty() {
            0
        } else {
            1
        }
    }
}

struct Ctx<'a> {
    job: &'a JobSpec,
    base: &'a Path,
    w: i64,
    audit: Audit,
    findings: Vec<Finding>,
}

impl Ctx<'_> {
    fn input(&self, name: &str) -> Result<PathBuf, CliError> {
        let rel = self.job.inputs.get(name).ok_or_else(|| CliError::MissingInput(name.into()))?;
        Ok(self.base.join(rel))
    }

    fn load<T: for<'de> Deserialize<'de>>(&self, name: &str) -> Result<T, CliError> {
        read_json(&self.input(name)?)
    }

    fn param(&self, name: &str) -> Option<&str> {
        self.job.params.get(name).map(String::as_str)
    }

    fn require(&self, name: &str) -> Result<&str, CliError> {
        self.param(name).ok_or_else(|| bad(name, "required"))
    }

    fn number<T: std::str::FromStr>(&self, name: &str) -> Result<Option<T>, CliError> {
        self.param(name).map(|s| s.trim().parse().map_err(|_| bad(name, &format!("`{s}` is not a number")))).transpose()
    }

    fn sym_bounds(&mut self) -> Result<SymBounds, CliError> {
        let mut b = SymBounds::default();
        for (k, v) in &self.job.bounds {
            match k.as_str() {
                "max_power" => b.max_power = *v as usize,
                "max_boxes" => b.max_boxes = *v as usize,
                "max_words" => b.max_words = *v,
                "depth" => {}
                other => return Err(bad(other, "unknown bound")),
            }
        }
        self.audit.bounds = [
            ("max_power".to_string(), b.max_power as u64),
            ("max_boxes".to_string(), b.max_boxes as u64),
            ("max_words".to_string(), b.max_words),
        ]
        .into();
        Ok(b)
    }

    /// Records a finding or bound; other errors propagate.
    fn absorb(&mut self, e: Error) -> Result<Value, CliError> {
        if is_bound(&e) {
            self.audit.bounds_hit.push(e.to_string());
        } else if !is_finding(&e) {
            return Err(e.into());
        }
        self.findings.push(Finding::of(&e));
        Ok(Value::Null)
    }
}

fn bad(name: &str, message: &str) -> CliError {
    CliError::BadParam { name: name.into(), message: message.into() }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_json(&text)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Runs a job; inputs are resolved against `base`.
pub fn run(job: &JobSpec, base: &Path) -> Result<Report, CliError> {
    let mut ctx =
        Ctx { job, base, w: job.w.unwrap_or(DEFAULT_W), audit: Audit::default(), findings: Vec::new() };
    ctx.audit.truncation = ctx.w;
    let result = match job.command.as_str() {
        "ring" => ring_cmd(&mut ctx),
        "module" => module_cmd(&mut ctx),
        "sym" => sym_cmd(&mut ctx),
        "young" => young_cmd(&mut ctx),
        "homology" => homology_cmd(&mut ctx),
        "tor" => tor_cmd(&mut ctx),
        "site classify" | "site compare" | "site cover" => site_cmd(&mut ctx, &job.command[5..]),
        other => Err(CliError::UnknownCommand(other.into())),
    };
    let result = match result {
        Ok(v) => v,
        Err(CliError::Math(e)) => ctx.absorb(e)?,
        Err(e) => return Err(e),
    };
    let w = ctx.w;
    collect_unknowns(&result, "result", w, &mut ctx.audit.unknowns);
    Ok(Report { command: job.command.clone(), job: job.clone(), result, findings: ctx.findings, audit: ctx.audit })
}

/// Every object whose `verdict` starts with `unknown` is listed with its
/// truncation.
fn collect_unknowns(v: &Value, path: &str, w: i64, out: &mut Vec<UnknownNote>) {
    match v {
        Value::Object(map) => {
            if let Some(Value::String(verdict)) = map.get("verdict") {
                if verdict.to_lowercase().starts_with("unknown") {
                    let w = map.get("w").and_then(Value::as_i64).unwrap_or(w);
                    out.push(UnknownNote { path: path.into(), w });
                }
            }
            for (k, x) in map {
                collect_unknowns(x, &format!("{path}.{k}"), w, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                collect_unknowns(x, &format!("{path}[{i}]"), w, out);
            }
        }
        _ => {}
    }
}

pub fn render(report: &Report, format: Format) -> String {
    let v = to_value(report);
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("value serializes") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten(&v, "", &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

fn flatten(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(xs) if !xs.is_empty() => {
            for (i, x) in xs.iter().enumerate() {
                flatten(x, &format!("{path}[{i}]"), out);
            }
        }
        other => out.push(format!("{path} = {other}")),
    }
}

fn slice_kind_json(r: &MonomialRing) -> Value {
    match r.slice_kind() {
        Ok(SliceKind::Zero) => json!({"kind": "zero"}),
        Ok(SliceKind::BoundedBelow) => json!({"kind": "bounded_below"}),
        Ok(SliceKind::Periodic { generator, period }) => {
            json!({"kind": "periodic", "unit": r.generators()[generator].name, "period": period})
        }
        Err(e) => json!({"kind": "unsupported", "reason": e.to_string()}),
    }
}

fn ring_component(r: &MonomialRing, w: i64) -> Result<Value, CliError> {
    let hilbert = match r.slice_kind() {
        Ok(_) => {
            let dims = (0..=w).map(|k| r.slice_monomials(k).map(|m| m.len())).collect::<Result<Vec<_>, _>>()?;
            json!({"start": 0, "dims": dims})
        }
        Err(_) => Value::Null,
    };
    let primes: Vec<Value> =
        monomial_primes(r).iter().map(|p| json!({"prime": p.prime, "minimal": p.minimal})).collect();
    Ok(json!({
        "ring": r.to_string(),
        "slices": slice_kind_json(r),
        "hilbert": hilbert,
        "primes": primes,
    }))
}

fn ring_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let spec: RingSpec = ctx.load("ring")?;
    let ring = spec.build()?;
    let components = ring.components().iter().map(|r| ring_component(r, ctx.w)).collect::<Result<Vec<_>, _>>()?;
    let normal_form = match ctx.param("element") {
        Some(s) => {
            let r = ring.single()?;
            Value::String(r.format(&r.parse(s)?))
        }
        None => Value::Null,
    };
    Ok(json!({
        "ring": ring.to_string(),
        "connected": ring.is_connected(),
        "two_is_unit": ring.two_is_unit(),
        "components": components,
        "normal_form": normal_form,
    }))
}

fn parse_prime(r: &MonomialRing, s: &str) -> Result<MonomialPrime, CliError> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let gens = body
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| r.gen_index(t).ok_or_else(|| bad("prime", &format!("unknown generator `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MonomialPrime::new(gens))
}

fn module_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let spec: ModuleSpec = ctx.load("module")?;
    let m: PresentedModule = spec.build()?;
    let w = ctx.w;
    let nakayama = nakayama_is_zero(&m)?;
    let cert = free_rank_type(&m, w)?;
    ctx.audit
        .exactness_audits
        .push(format!("free_rank_type: Hilbert functions compared at weights {:?}", cert.audited_weights));
    let witness = match locally_free_witness(&m, w) {
        Ok(x) => to_value(&x),
        Err(e) => ctx.absorb(e)?,
    };
    let spread = match ctx.param("prime") {
        Some(s) => {
            let p = parse_prime(m.ring(), s)?;
            match spread_out(&m, &p, w) {
                Ok(s) => json!({"prime": p.format(m.ring()), "f": s.f, "ring": s.ring.to_string(), "certificate": s.certificate.to_json()}),
                Err(e) => ctx.absorb(e)?,
            }
        }
        None => Value::Null,
    };
    Ok(json!({
        "nakayama": nakayama,
        "free_rank_type": cert.to_json(),
        "locally_free_witness": witness,
        "spread_out": spread,
    }))
}

fn list<T: std::str::FromStr>(name: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| bad(name, &format!("bad entry `{t}`"))))
        .collect()
}

/// Zero test by orbit reduction; nonzero operators also get their
/// quasi-idempotence scalar.
fn sym_report(op: &SignedPermutationOperator, space: &SuperSpace) -> SymReport {
    if operator_is_zero(op, space) {
        SymReport { zero: true, scalar_c: None, checked_words: space.word_count(op.length()) }
    } else {
        quasi_idempotence(op, space)
    }
}

fn sym_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let n: usize = ctx.number("power")?.ok_or_else(|| bad("power", "required"))?;
    if let Some(degrees) = ctx.param("degrees") {
        let grading = GradingSpec::default();
        let coeff = CoefficientRing::parse(ctx.param("coeff").unwrap_or("Q"))?;
        let ty = type_of(&grading, &list::<i64>("degrees", degrees)?);
        let out = sym_type(&grading, &coeff, &ty, n)?;
        return Ok(json!({"type": ty, "sym_type": out, "zero": out.is_empty()}));
    }
    let bounds = ctx.sym_bounds()?;
    let space = SuperSpace::parse(ctx.require("space")?)?;
    let alt = ctx.param("alt").is_some_and(|s| s == "true");
    let op = if alt { antisymmetrizer(&space, n, &bounds)? } else { symmetrizer(&space, n, &bounds)? };
    Ok(to_value(&sym_report(&op, &space)))
}

fn young_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let bounds = ctx.sym_bounds()?;
    let space = SuperSpace::parse(ctx.require("space")?)?;
    let shape = YoungShape::parse(ctx.require("shape")?)?;
    let op = young_symmetrizer(&space, shape, &bounds)?;
    let mut out = to_value(&sym_report(&op, &space));
    if let Some(word) = ctx.param("word") {
        let word = if word.trim() == "staircase" {
            shape.staircase_word()
        } else {
            word.split(',')
                .map(|l| space.index_of(l.trim()).ok_or_else(|| bad("word", &format!("unknown line `{}`", l.trim()))))
                .collect::<Result<Vec<_>, _>>()?
        };
        out["factorization"] = to_value(&identity_factorization(&space, &op, &word)?);
    }
    Ok(out)
}

fn homology_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let spec: ComplexSpec = ctx.load("complex")?;
    let x = spec.build(None)?;
    Ok(match ctx.number::<i64>("n")? {
        Some(n) => to_value(&homology(&x, n, ctx.w)?),
        None => to_value(&homology_report(&x, ctx.w)?),
    })
}

/// `(x, y^2)` as ring elements.
fn parse_ideal(r: &MonomialRing, name: &str, s: &str) -> Result<Vec<RingElement>, CliError> {
    let body = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s.trim());
    let gens: Vec<&str> = body.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    if gens.is_empty() {
        return Err(bad(name, "empty ideal"));
    }
    Ok(gens.iter().map(|g| r.parse(g)).collect::<Result<Vec<_>, _>>()?)
}

fn tor_cmd(ctx: &mut Ctx) -> Result<Value, CliError> {
    let spec: RingSpec = ctx.load("ring")?;
    let ring = spec.build_single()?;
    let n: i64 = ctx.number("n")?.ok_or_else(|| bad("n", "required"))?;
    let i = parse_ideal(&ring, "module", ctx.require("module")?)?;
    let j = parse_ideal(&ring, "module2", ctx.require("module2")?)?;
    let res = cyclic_resolution(Arc::clone(&ring), &i, n + 1, ctx.w)?;
    ctx.audit.exactness_audits.push(format!(
        "resolution of length {} ({}), exactness audited through weight {}",
        res.length,
        if res.finite { "finite" } else { "truncated" },
        res.audited_up_to
    ));
    Ok(to_value(&tor(ring, &i, &j, n, ctx.w)?))
}

fn site_cmd(ctx: &mut Ctx, op: &str) -> Result<Value, CliError> {
    let mut job: SiteJob = ctx.load("job")?;
    if let Some(w) = ctx.job.w {
        job.w = w;
    } else {
        ctx.w = job.w;
        ctx.audit.truncation = job.w;
    }
    if let Some(d) = ctx.job.bounds.get("depth") {
        job.depth = *d as usize;
    }
    ctx.audit.bounds = [("depth".to_string(), job.depth as u64)].into();
    let base = job.base_ring()?;
    let theories = job.theories(&base)?;
    let seeds = job.catalog(&base)?;
    let cat = catalog_closure(&seeds, job.depth)?;
    let refs: Vec<&HomologyTheory> = theories.iter().collect();
    match op {
        "classify" => {
            let covers = job.ops.iter().any(|o| o == "covers");
            let report = classify_catalog(&refs, &cat, covers)?;
            audit_covers(ctx, &report.covers);
            Ok(to_value(&report))
        }
        "compare" => {
            let [h1, h2, ..] = refs.as_slice() else {
                return Err(bad("theories", "site compare needs two theories"));
            };
            Ok(to_value(&compare_theories(h1, h2, &cat)?))
        }
        _ => {
            let report = classify_catalog(&refs, &cat, true)?;
            audit_covers(ctx, &report.covers);
            let mut pullbacks = Vec::new();
            for pb in &job.pullbacks {
                let h = refs
                    .iter()
                    .find(|h| h.name == pb.theory)
                    .ok_or_else(|| bad("pullbacks", &format!("unknown theory `{}`", pb.theory)))?;
                let (p, f) = (lookup_map(&cat, &pb.p)?, lookup_map(&cat, &pb.f)?);
                match cover_pullback(h, p, f, (&pb.p, &pb.f)) {
                    Ok(c) => pullbacks.push(json!({"theory": pb.theory, "report": c.report})),
                    Err(e) => {
                        ctx.absorb(e)?;
                        pullbacks.push(json!({"theory": pb.theory, "report": null}));
                    }
                }
            }
            Ok(json!({"theories": report.theories, "covers": report.covers, "pullbacks": pullbacks}))
        }
    }
}

fn lookup_map<'a>(cat: &'a Catalog, id: &str) -> Result<&'a gradedhom::complex::ChainMap, CliError> {
    cat.map(id).ok_or_else(|| bad("pullbacks", &format!("unknown map `{id}`")))
}

fn audit_covers(ctx: &mut Ctx, covers: &[gradedhom::site::CoverExactness]) {
    for c in covers {
        ctx.audit.exactness_audits.push(format!(
            "cover {} under {}: {} slices, {}",
            c.id,
            c.theory,
            c.slices_checked,
            if c.exact { "exact" } else { "not exact" }
        ));
    }
}

/// Job files of a corpus: `dir/jobs/*.json` if that exists, else
/// `dir/*.json`, sorted by name.
pub fn corpus_jobs(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let jobs = if dir.join("jobs").is_dir() { dir.join("jobs") } else { dir.to_path_buf() };
    let entries = fs::read_dir(&jobs).map_err(|e| CliError::CorpusMissing(format!("{}: {e}", jobs.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::CorpusMissing(format!("no job files in {}", jobs.display())));
    }
    Ok(files)
}

/// Runs every corpus job and returns `(name, rendered JSON, exit code)`.
pub fn emit_golden(dir: &Path) -> Result<Vec<(String, String, i32)>, CliError> {
    corpus_jobs(dir)?
        .into_iter()
        .map(|path| {
            let job: JobSpec = read_json(&path)?;
            let base = path.parent().unwrap_or(Path::new("."));
            let report = run(&job, base)?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok((name, render(&report, Format::Json), report.exit_code()))
        })
        .collect()
}
