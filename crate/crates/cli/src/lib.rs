//! Command implementations behind the `cyclotome` binary.
//!
//! Each command produces an [`Outcome`]: the text to emit and the process exit
//! code (0 verified, 1 verification failed, 2 conditions failed, 3 usage or
//! size errors).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cyclotome::arith::mult_order;
use cyclotome::constructions::{
    check_conditions_a, check_conditions_b, index_set_a, index_set_b, predicted_spectrum_a, predicted_values_b,
    scan_a, scan_b, scheme_index_sets, sweep_cases_a, sweep_cases_b, Condition, ConnectionSet, Coset,
    IndexTwoParams,
};
use cyclotome::cyclotomy::{build_period_table, compare_gauss, CycError, CycSetup, PeriodTable};
use cyclotome::gf::{build_field, find_modulus, FieldSpec, FieldTable};
use cyclotome::graph6;
use cyclotome::verify::{
    certificate_from_spectrum, restricted_spectrum, verify_paley_pds, verify_scheme, verify_skew_hds,
    verify_srg_direct, DifferenceSetVerdict, SpectrumEntry, SrgCertificate, VerifyError, DIRECT_LIMIT,
};
use cyclotome::ExactValue;

pub const SCHEMA: &str = "cyclotome/1";
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest accepted scan bound.
pub const SCAN_LIMIT: u64 = 10_000_000;

pub mod exit {
    pub const VERIFIED: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const CONDITIONS: u8 = 2;
    pub const USAGE: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "cyclotome", version, about = "Cyclotomic strongly regular graphs and difference sets by exact computation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for the field sweeps (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached field tables
    #[arg(long, global = true, env = "CYCLOTOME_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Omit per-phase timings so reports are byte-identical across runs
    #[arg(long, global = true)]
    pub no_timings: bool,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strongly regular Cayley graph from N = p1^m p2^n
    VerifyA {
        #[command(flatten)]
        instance: InstanceA,
        #[command(flatten)]
        check: CheckFlags,
        /// Skip the brute-force cross-check on small fields
        #[arg(long)]
        spectral_only: bool,
    },
    /// Skew Hadamard or Paley-type difference set from N = 2 p1^m
    VerifyB {
        #[command(flatten)]
        instance: InstanceB,
        #[command(flatten)]
        check: CheckFlags,
    },
    /// Enumerate parameters satisfying every hypothesis of a construction
    Scan {
        #[arg(value_enum, ignore_case = true)]
        kind: ScanKind,
        /// Upper bound on p1
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[arg(short = 'm', default_value_t = 1)]
        m: u32,
        #[arg(short = 'n', default_value_t = 1)]
        n: u32,
    },
    /// Compare every Gauss sum of order dividing N with its closed form
    Gauss {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long)]
        p1: u64,
        /// Second prime; omit for N = 2 p1^m
        #[arg(long, requires = "n")]
        p2: Option<u64>,
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'n', requires = "p2")]
        n: Option<u32>,
    },
    /// Write a constructed Cayley graph as graph6, an edge list or JSON
    Export(ExportArgs),
    /// Association scheme formed by the shifted N = p1^m p2^n connection sets
    Scheme {
        #[command(flatten)]
        instance: InstanceA,
        /// Custom relations as class-index lists, e.g. "0,5,10;1,6,11;..."
        #[arg(long)]
        relations: Option<String>,
        /// Proceed even when the conditions fail
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct InstanceA {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(long)]
    pub p1: u64,
    #[arg(long)]
    pub p2: u64,
    #[arg(short = 'm')]
    pub m: u32,
    #[arg(short = 'n')]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct InstanceB {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(long)]
    pub p1: u64,
    #[arg(short = 'm')]
    pub m: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CheckFlags {
    /// Check the arithmetic conditions without building the field
    #[arg(long)]
    pub conditions_only: bool,
    /// Build and verify even when the conditions fail
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ScanKind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Graph6,
    Edges,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CosetChoice {
    Auto,
    Base,
    Negated,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub construction: ScanKind,
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(long)]
    pub p1: u64,
    #[arg(long)]
    pub p2: Option<u64>,
    #[arg(short = 'm')]
    pub m: u32,
    #[arg(short = 'n')]
    pub n: Option<u32>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: ExportFormat,
    /// Prefix graph6 output with >>graph6<<
    #[arg(long)]
    pub header: bool,
    /// Class labeling for construction B; auto picks the one that verifies
    #[arg(long, value_enum, default_value = "auto")]
    pub coset: CosetChoice,
    /// Class indices replacing the construction's index set
    #[arg(long, value_delimiter = ',')]
    pub indices: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    A,
    B,
    #[serde(rename = "scheme")]
    Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    VerificationFailed,
    ConditionsHold,
    ConditionsFailed,
    Completed,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Verified | Verdict::ConditionsHold | Verdict::Completed => exit::VERIFIED,
            Verdict::VerificationFailed => exit::FAILED,
            Verdict::ConditionsFailed => exit::CONDITIONS,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldModulus {
    pub p: u32,
    pub f: u32,
    /// Coefficients low degree first.
    pub coefficients: Vec<u32>,
    pub polynomial: String,
}

impl From<&FieldSpec> for FieldModulus {
    fn from(spec: &FieldSpec) -> Self {
        FieldModulus { p: spec.p, f: spec.f, coefficients: spec.modulus.clone(), polynomial: spec.modulus_string() }
    }
}

/// Machine-readable result of one command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub artifact_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    pub parameters: Value,
    pub field_modulus: Option<FieldModulus>,
    pub conditions: Vec<Condition>,
    pub spectrum: Vec<SpectrumEntry>,
    pub certificate: Option<Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn new(command: &'static str, construction: Option<Construction>, parameters: Value) -> Self {
        RunReport {
            schema: SCHEMA,
            artifact_version: ARTIFACT_VERSION,
            command,
            construction,
            parameters,
            field_modulus: None,
            conditions: Vec::new(),
            spectrum: Vec::new(),
            certificate: None,
            verdict: Verdict::Completed,
            detail: None,
            extra: BTreeMap::new(),
            timings: None,
        }
    }

    fn insert(&mut self, key: &str, value: impl Serialize) -> Result<()> {
        self.extra.insert(key.to_string(), serde_json::to_value(value)?);
        Ok(())
    }

    fn fail(&mut self, verdict: Verdict, detail: impl Into<String>) {
        self.verdict = verdict;
        self.detail = Some(detail.into());
    }
}

/// Text to emit and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub output: String,
}

impl Outcome {
    pub fn usage(message: impl std::fmt::Display) -> Self {
        Outcome { code: exit::USAGE, output: format!("error: {message}\n") }
    }

    fn report(report: &RunReport) -> Result<Self> {
        let mut output = serde_json::to_string_pretty(report)?;
        output.push('\n');
        Ok(Outcome { code: report.verdict.exit_code(), output })
    }
}

struct Clock {
    enabled: bool,
    phases: BTreeMap<String, u64>,
}

impl Clock {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.phases.entry(phase.to_string()).or_default() += start.elapsed().as_millis() as u64;
        out
    }
}

struct Ctx<'a> {
    cache_dir: Option<&'a Path>,
    clock: Clock,
}

impl Ctx<'_> {
    fn finish(&self, mut report: RunReport) -> Result<Outcome> {
        if self.clock.enabled {
            report.timings = Some(self.clock.phases.clone());
        }
        Outcome::report(&report)
    }

    fn period_table(&mut self, report: &mut RunReport, p: u64, f: u64, n: u64) -> Result<PeriodTable> {
        let f = u32::try_from(f).map_err(|_| anyhow!("degree {f} is too large"))?;
        FieldSpec::order(p, f).map_err(|e| anyhow!("{e}; use --conditions-only for this instance"))?;
        let cache_dir = self.cache_dir;
        let field = self.clock.time("field", || load_field(p, f, cache_dir))?;
        report.field_modulus = Some(FieldModulus::from(field.spec()));
        let setup = CycSetup::new(Arc::new(field), n)?;
        Ok(self.clock.time("periods", || build_period_table(&setup)))
    }
}

/// File name of a cached field table, keyed by `p`, `f` and the modulus.
pub fn cache_file_name(spec: &FieldSpec) -> String {
    let modulus: Vec<String> = spec.modulus.iter().map(u32::to_string).collect();
    format!("gf-{}-{}-{}.bin", spec.p, spec.f, modulus.join("-"))
}

/// Builds `GF(p^f)`, reusing a cached table under `cache_dir` when present.
pub fn load_field(p: u64, f: u32, cache_dir: Option<&Path>) -> Result<FieldTable> {
    let spec = find_modulus(p, f)?;
    let Some(dir) = cache_dir else {
        return Ok(build_field(spec)?);
    };
    let path = dir.join(cache_file_name(&spec));
    if let Ok(table) = FieldTable::load(&path) {
        if *table.spec() == spec {
            return Ok(table);
        }
    }
    let table = build_field(spec)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    table.save(&tmp)?;
    fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
    Ok(table)
}

/// Parses and runs a command line, never panicking on bad input.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let outcome = run(&cli);
            match (&cli.out, outcome.code) {
                (Some(path), code) if code != exit::USAGE => match fs::write(path, &outcome.output) {
                    Ok(()) => Outcome { code, output: String::new() },
                    Err(e) => Outcome::usage(format!("writing {}: {e}", path.display())),
                },
                _ => outcome,
            }
        }
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::VERIFIED };
            Outcome { code, output: e.render().to_string() }
        }
    }
}

/// Runs a parsed command inside a pool sized by `--threads`.
pub fn run(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::usage(e),
    };
    let mut ctx = Ctx { cache_dir: cli.cache_dir.as_deref(), clock: Clock { enabled: !cli.no_timings, phases: BTreeMap::new() } };
    let result = pool.install(|| match &cli.command {
        Command::VerifyA { instance, check, spectral_only } => verify_a(&mut ctx, instance, check, !spectral_only),
        Command::VerifyB { instance, check } => verify_b(&mut ctx, instance, check),
        Command::Scan { kind, bound, m, n } => scan(&mut ctx, *kind, *bound, *m, *n),
        Command::Gauss { p, p1, p2, m, n } => gauss(&mut ctx, *p, *p1, *p2, *m, *n),
        Command::Export(args) => export(&mut ctx, args),
        Command::Scheme { instance, relations, force } => scheme(&mut ctx, instance, relations.as_deref(), *force),
    });
    result.unwrap_or_else(|e| Outcome::usage(format!("{e:#}")))
}

/// `(N, f)` for `N = p1^m p2^n` (or `2 p1^m`), from the validated parameters
/// or, when the hypotheses fail, from the order of `p` modulo `N`.
fn shape(params: &Result<IndexTwoParams, impl std::fmt::Display>, p: u64, classes: Option<u64>) -> Result<(u64, u64)> {
    match params {
        Ok(params) => Ok((params.classes, params.f)),
        Err(reason) => {
            let n = classes.ok_or_else(|| anyhow!("class count overflows: {reason}"))?;
            let f = mult_order(p, n).map_err(|e| anyhow!("{e} ({reason})"))?;
            Ok((n, f))
        }
    }
}

fn classes_a(a: &InstanceA) -> Option<u64> {
    a.p1.checked_pow(a.m)?.checked_mul(a.p2.checked_pow(a.n)?)
}

fn classes_b(b: &InstanceB) -> Option<u64> {
    b.p1.checked_pow(b.m)?.checked_mul(2)
}

/// Records the parameters and stops early for `--conditions-only` or failed
/// conditions without `--force`.
fn gate_conditions(
    report: &mut RunReport,
    conditions: &cyclotome::constructions::ConditionReport,
    params: &Result<IndexTwoParams, impl std::fmt::Display>,
    check: &CheckFlags,
) -> Result<bool> {
    report.conditions = conditions.conditions.clone();
    match params {
        Ok(params) => report.parameters = serde_json::to_value(params)?,
        Err(e) => report.insert("hypothesis_failure", e.to_string())?,
    }
    let holds = conditions.all_hold() && params.is_ok();
    if check.conditions_only {
        report.verdict = if holds { Verdict::ConditionsHold } else { Verdict::ConditionsFailed };
        if !holds {
            report.detail = Some(failure_detail(conditions, params));
        }
        return Ok(false);
    }
    if !holds && !check.force {
        report.fail(Verdict::ConditionsFailed, failure_detail(conditions, params));
        return Ok(false);
    }
    Ok(true)
}

fn failure_detail(
    conditions: &cyclotome::constructions::ConditionReport,
    params: &Result<IndexTwoParams, impl std::fmt::Display>,
) -> String {
    let mut failed = conditions.failures();
    if let Err(e) = params {
        failed.push(e.to_string());
    }
    format!("failed: {}", failed.join(", "))
}

fn verify_a(ctx: &mut Ctx, a: &InstanceA, check: &CheckFlags, direct: bool) -> Result<Outcome> {
    let report = build_a(ctx, a, check, direct)?.0;
    ctx.finish(report)
}

type Materialized = Option<(PeriodTable, ConnectionSet)>;

fn build_a(ctx: &mut Ctx, a: &InstanceA, check: &CheckFlags, direct: bool) -> Result<(RunReport, Materialized)> {
    let mut report = RunReport::new("verify-a", Some(Construction::A), serde_json::to_value(a)?);
    let conditions = ctx.clock.time("conditions", || check_conditions_a(a.p, a.p1, a.p2, a.m, a.n));
    let params = IndexTwoParams::two_primes(a.p, a.p1, a.p2, a.m, a.n);
    if !gate_conditions(&mut report, &conditions, &params, check)? {
        return Ok((report, None));
    }
    let (n, f) = shape(&params, a.p, classes_a(a))?;
    let table = ctx.period_table(&mut report, a.p, f, n)?;
    let set = ConnectionSet::from_indices(table.setup(), index_set_a(a.p1, a.p2, a.m, a.n));
    analyze_a(ctx, &mut report, &params, conditions.all_hold(), &table, &set, direct)?;
    Ok((report, Some((table, set))))
}

fn analyze_a(
    ctx: &mut Ctx,
    report: &mut RunReport,
    params: &Result<IndexTwoParams, cyclotome::constructions::ConstructionError>,
    conditions_hold: bool,
    table: &PeriodTable,
    set: &ConnectionSet,
    direct: bool,
) -> Result<()> {

    if let Ok(params) = &params {
        let sweep = ctx.clock.time("case_analysis", || sweep_cases_a(table, params))?;
        let matched = sweep.all_match();
        let distinct = sweep.distinct_values;
        report.insert("case_analysis", &sweep)?;
        if !matched {
            report.fail(Verdict::VerificationFailed, format!("{} class shifts disagree with the case analysis", sweep.mismatches));
            return Ok(());
        }
        if distinct > 5 {
            report.fail(Verdict::VerificationFailed, format!("{distinct} distinct restricted values, at most 5 expected"));
            return Ok(());
        }
    }

    let Some(cert) = srg_check(ctx, report, table, set)? else {
        return Ok(());
    };

    if direct && table.field().q() <= DIRECT_LIMIT {
        let checked = ctx.clock.time("direct", || verify_srg_direct(table.field(), set));
        match checked {
            Ok(brute) => {
                let agree = brute.agrees_with(&cert);
                report.insert("direct_certificate", &brute)?;
                if !agree {
                    report.fail(Verdict::VerificationFailed, "brute-force parameters disagree with the spectrum");
                    return Ok(());
                }
            }
            Err(e) => {
                report.fail(Verdict::VerificationFailed, format!("brute-force check: {e}"));
                return Ok(());
            }
        }
    }

    if let (Ok(params), true) = (params, conditions_hold) {
        let predicted = predicted_spectrum_a(params)?;
        report.insert("predicted", &predicted)?;
        let same = predicted.v == cert.v.into()
            && predicted.k == cert.k.into()
            && predicted.lambda == cert.lambda.into()
            && predicted.mu == cert.mu.into()
            && ExactValue::Integer(predicted.r.clone()) == cert.r
            && ExactValue::Integer(predicted.s.clone()) == cert.s;
        if !same {
            report.fail(Verdict::VerificationFailed, "computed parameters differ from the closed-form prediction");
            return Ok(());
        }
    }
    report.verdict = Verdict::Verified;
    Ok(())
}

/// Spectrum plus strongly regular certificate; records a failure and returns
/// `None` when the set is not a partial difference set.
fn srg_check(ctx: &mut Ctx, report: &mut RunReport, table: &PeriodTable, set: &ConnectionSet) -> Result<Option<SrgCertificate>> {
    let spectrum = ctx.clock.time("spectrum", || restricted_spectrum(table, set));
    report.spectrum = spectrum.clone();
    if set.contains(0) || !set.is_symmetric() {
        report.fail(Verdict::VerificationFailed, VerifyError::NotSymmetric.to_string());
        return Ok(None);
    }
    match certificate_from_spectrum(table.field().q(), set.size(), &spectrum) {
        Ok(cert) => {
            report.certificate = Some(serde_json::to_value(&cert)?);
            Ok(Some(cert))
        }
        Err(e) => {
            report.fail(Verdict::VerificationFailed, e.to_string());
            Ok(None)
        }
    }
}

fn verify_b(ctx: &mut Ctx, b: &InstanceB, check: &CheckFlags) -> Result<Outcome> {
    let report = build_b(ctx, b, check, CosetChoice::Auto)?.0;
    ctx.finish(report)
}

#[derive(Serialize)]
struct CosetAttempt {
    coset: Coset,
    verified: bool,
    detail: Option<String>,
}

fn difference_set_check(table: &PeriodTable, set: &ConnectionSet) -> Result<DifferenceSetVerdict, VerifyError> {
    if table.p() % 4 == 3 {
        verify_skew_hds(table, set)
    } else {
        verify_paley_pds(table, set)
    }
}

fn build_b(ctx: &mut Ctx, b: &InstanceB, check: &CheckFlags, choice: CosetChoice) -> Result<(RunReport, Materialized)> {
    let mut report = RunReport::new("verify-b", Some(Construction::B), serde_json::to_value(b)?);
    let conditions = ctx.clock.time("conditions", || check_conditions_b(b.p, b.p1, b.m));
    let params = IndexTwoParams::one_prime(b.p, b.p1, b.m);
    if !gate_conditions(&mut report, &conditions, &params, check)? {
        return Ok((report, None));
    }
    if b.m == 0 {
        bail!("m must be at least 1");
    }
    let (n, f) = shape(&params, b.p, classes_b(b))?;
    let table = ctx.period_table(&mut report, b.p, f, n)?;
    let cosets = match choice {
        CosetChoice::Auto => vec![Coset::Base, Coset::Negated],
        CosetChoice::Base => vec![Coset::Base],
        CosetChoice::Negated => vec![Coset::Negated],
    };
    let mut attempts = Vec::new();
    let mut selected = None;
    for coset in cosets {
        let set = ConnectionSet::from_indices(table.setup(), index_set_b(b.p, b.p1, b.m, coset));
        let outcome = ctx.clock.time("verification", || difference_set_check(&table, &set));
        attempts.push(CosetAttempt { coset, verified: outcome.is_ok(), detail: outcome.as_ref().err().map(|e| e.to_string()) });
        if let Ok(verdict) = outcome {
            if selected.is_none() {
                selected = Some((coset, set, verdict));
            }
        }
    }
    report.insert("cosets", &attempts)?;
    let Some((coset, set, verdict)) = selected else {
        let details: Vec<String> = attempts.iter().filter_map(|a| a.detail.clone()).collect();
        report.fail(Verdict::VerificationFailed, format!("no coset verifies: {}", details.join("; ")));
        let fallback = ConnectionSet::from_indices(table.setup(), index_set_b(b.p, b.p1, b.m, Coset::Base));
        report.spectrum = restricted_spectrum(&table, &fallback);
        return Ok((report, Some((table, fallback))));
    };
    report.insert("selected_coset", coset)?;
    report.spectrum = verdict.spectrum.clone();
    report.certificate = Some(serde_json::to_value(&verdict)?);

    if let (Ok(params), true) = (&params, conditions.all_hold()) {
        let predicted = predicted_values_b(params)?;
        report.insert("predicted", &predicted)?;
        if !predicted.iter().all(|v| verdict.predicted.contains(v)) {
            report.fail(Verdict::VerificationFailed, "restricted values differ from the closed-form prediction");
            return Ok((report, Some((table, set))));
        }
        let sweep = ctx.clock.time("case_analysis", || sweep_cases_b(&table, params, coset))?;
        let matched = sweep.all_match();
        report.insert("case_analysis", &sweep)?;
        if !matched {
            report.fail(Verdict::VerificationFailed, format!("{} class shifts disagree with the case analysis", sweep.mismatches));
            return Ok((report, Some((table, set))));
        }
    }
    report.verdict = Verdict::Verified;
    Ok((report, Some((table, set))))
}

fn scan(ctx: &mut Ctx, kind: ScanKind, bound: u64, m: u32, n: u32) -> Result<Outcome> {
    if bound > SCAN_LIMIT {
        bail!("bound {bound} exceeds the scan limit {SCAN_LIMIT}");
    }
    if m == 0 || n == 0 {
        bail!("exponents must be at least 1");
    }
    let parameters = match kind {
        ScanKind::A => json!({ "kind": kind, "bound": bound, "m": m, "n": n }),
        ScanKind::B => json!({ "kind": kind, "bound": bound, "m": m }),
    };
    let mut report = RunReport::new("scan", None, parameters);
    let rows = match kind {
        ScanKind::A => serde_json::to_value(ctx.clock.time("scan", || scan_a(bound, m, n)))?,
        ScanKind::B => serde_json::to_value(ctx.clock.time("scan", || scan_b(bound, m)))?,
    };
    report.extra.insert("rows".into(), rows);
    ctx.finish(report)
}

fn gauss(ctx: &mut Ctx, p: u64, p1: u64, p2: Option<u64>, m: u32, n: Option<u32>) -> Result<Outcome> {
    let params = match (p2, n) {
        (Some(p2), Some(n)) => IndexTwoParams::two_primes(p, p1, p2, m, n),
        _ => IndexTwoParams::one_prime(p, p1, m),
    };
    let raw = json!({ "p": p, "p1": p1, "p2": p2, "m": m, "n": n });
    let mut report = RunReport::new("gauss", None, raw);
    let params = match params {
        Ok(params) => params,
        Err(e) => {
            report.fail(Verdict::ConditionsFailed, e.to_string());
            return ctx.finish(report);
        }
    };
    report.parameters = serde_json::to_value(&params)?;
    let table = ctx.period_table(&mut report, p, params.f, params.classes)?;
    match ctx.clock.time("gauss", || compare_gauss(&table, &params)) {
        Ok(comparison) => {
            let modulus_ok = comparison.all_modulus_ok();
            report.certificate = Some(serde_json::to_value(&comparison)?);
            if modulus_ok {
                report.verdict = Verdict::Verified;
            } else {
                report.fail(Verdict::VerificationFailed, "some |G|^2 differs from q");
            }
        }
        Err(CycError::Mismatch { plus, minus, report: comparison }) => {
            report.certificate = Some(serde_json::to_value(&comparison)?);
            report.fail(
                Verdict::VerificationFailed,
                format!("no single sign of c matches every Gauss sum (max deviations {plus:.3e} / {minus:.3e})"),
            );
        }
        Err(e) => return Err(e.into()),
    }
    ctx.finish(report)
}

fn parse_relations(text: &str, n: u64) -> Result<Vec<Vec<u64>>> {
    text.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|s| {
                    let i: u64 = s.trim().parse().with_context(|| format!("bad class index {s:?}"))?;
                    if i >= n {
                        bail!("class index {i} is outside [0, {n})");
                    }
                    Ok(i)
                })
                .collect()
        })
        .collect()
}

fn scheme(ctx: &mut Ctx, a: &InstanceA, relations: Option<&str>, force: bool) -> Result<Outcome> {
    let mut report = RunReport::new("scheme", Some(Construction::Scheme), serde_json::to_value(a)?);
    let conditions = ctx.clock.time("conditions", || check_conditions_a(a.p, a.p1, a.p2, a.m, a.n));
    let params = IndexTwoParams::two_primes(a.p, a.p1, a.p2, a.m, a.n);
    let check = CheckFlags { conditions_only: false, force: force || relations.is_some() };
    if !gate_conditions(&mut report, &conditions, &params, &check)? {
        return ctx.finish(report);
    }
    let (n, f) = shape(&params, a.p, classes_a(a))?;
    let index_sets = match relations {
        Some(text) => parse_relations(text, n)?,
        None => scheme_index_sets(a.p1, a.p2, a.m, a.n),
    };
    let table = ctx.period_table(&mut report, a.p, f, n)?;
    let sets: Vec<ConnectionSet> = index_sets.iter().map(|s| ConnectionSet::from_indices(table.setup(), s.iter().copied())).collect();
    report.insert("relations", &index_sets)?;
    match ctx.clock.time("verification", || verify_scheme(&table, &sets)) {
        Ok(scheme) => {
            let all_srg = scheme.all_srg;
            report.certificate = Some(serde_json::to_value(&scheme)?);
            if all_srg {
                report.verdict = Verdict::Verified;
            } else {
                let failing: Vec<String> =
                    scheme.certificates.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(k, _)| k.to_string()).collect();
                report.fail(Verdict::VerificationFailed, format!("relations {} are not strongly regular", failing.join(", ")));
            }
        }
        Err(e) => report.fail(Verdict::VerificationFailed, e.to_string()),
    }
    ctx.finish(report)
}

fn export(ctx: &mut Ctx, args: &ExportArgs) -> Result<Outcome> {
    let check = CheckFlags { conditions_only: false, force: true };
    let (mut report, table, set) = match args.construction {
        ScanKind::A => {
            let (p2, n) = args.p2.zip(args.n).ok_or_else(|| anyhow!("construction A needs --p2 and -n"))?;
            let a = InstanceA { p: args.p, p1: args.p1, p2, m: args.m, n };
            if let Some(indices) = &args.indices {
                let mut report = RunReport::new("export", Some(Construction::A), serde_json::to_value(a)?);
                let params = IndexTwoParams::two_primes(a.p, a.p1, a.p2, a.m, a.n);
                let (n, f) = shape(&params, a.p, classes_a(&a))?;
                if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
                    bail!("class index {bad} is outside [0, {n})");
                }
                let table = ctx.period_table(&mut report, a.p, f, n)?;
                let set = ConnectionSet::from_indices(table.setup(), indices.iter().copied());
                if srg_check(ctx, &mut report, &table, &set)?.is_some() {
                    report.verdict = Verdict::Verified;
                }
                (report, table, set)
            } else {
                let (report, built) = build_a(ctx, &a, &check, false)?;
                let (table, set) = built.ok_or_else(|| anyhow!("construction A could not be materialized"))?;
                (report, table, set)
            }
        }
        ScanKind::B => {
            if args.indices.is_some() {
                bail!("--indices applies to construction A only");
            }
            let b = InstanceB { p: args.p, p1: args.p1, m: args.m };
            let (report, built) = build_b(ctx, &b, &check, args.coset)?;
            let (table, set) = built.ok_or_else(|| anyhow!("construction B could not be materialized"))?;
            (report, table, set)
        }
    };
    report.command = "export";
    let field = table.field();
    let q = field.q();
    let output = match args.format {
        ExportFormat::Json => {
            report.insert("index_set", set.indices())?;
            return ctx.finish(report);
        }
        ExportFormat::Graph6 => {
            if !set.is_symmetric() {
                bail!("graph6 needs a symmetric connection set; use --format edges for the directed graph");
            }
            let mut text = graph6::encode(q, args.header, |i, j| set.contains(field.sub(j as u32, i as u32)))?;
            text.push('\n');
            text
        }
        ExportFormat::Edges => {
            let symmetric = set.is_symmetric();
            let elements = set.elements();
            let mut text = String::new();
            for u in 0..q as u32 {
                for &d in &elements {
                    let v = field.add(u, d);
                    if !symmetric || u < v {
                        writeln!(text, "{u} {v}")?;
                    }
                }
            }
            text
        }
    };
    Ok(Outcome { code: exit::VERIFIED, output })
}
