//! JSON job format and execution.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::covers::{
    trace_image, verify_containment_tau_in_image, verify_multiplier_transform, verify_tau_transform, KummerCover,
};
use crate::error::{Error, Result};
use crate::frobenius::{cartier_apply, CartierMap};
use crate::groebner::{GbConfig, Ideal};
use crate::multoracle::{compare_tau_multiplier, howald_multiplier, NewtonData};
use crate::polyring::{parse_polynomial, Polynomial, RationalExponent, Ring, RingRef};
use crate::testideal::{fpt_search, nu_value, tau, AmbientRing, PrincipalPair, TauOptions};

/// Version of the report layout.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Tau,
    Fpt,
    Cartier,
    Nu,
    VerifyTransform,
    VerifyMultiplierTransform,
    TraceImage,
    Multiplier,
    Compare,
    Corpus,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tau => "tau",
            Command::Fpt => "fpt",
            Command::Cartier => "cartier",
            Command::Nu => "nu",
            Command::VerifyTransform => "verify-transform",
            Command::VerifyMultiplierTransform => "verify-multiplier-transform",
            Command::TraceImage => "trace-image",
            Command::Multiplier => "multiplier",
            Command::Compare => "compare",
            Command::Corpus => "corpus",
        }
    }

    /// Job fields the command reads, besides `command` itself.
    fn fields(&self) -> &'static [&'static str] {
        match self {
            Command::Tau => &["ring", "g", "t", "options"],
            Command::Fpt => &["ring", "g", "e", "denominator_bound", "options"],
            Command::Cartier => &["ring", "e", "h", "f"],
            Command::Nu => &["ring", "g", "e"],
            Command::VerifyTransform => &["ring", "cover", "g", "t", "options"],
            Command::VerifyMultiplierTransform => &["ring", "cover", "g", "t", "options"],
            Command::TraceImage => &["ring", "cover", "options"],
            Command::Multiplier => &["ring", "g", "t"],
            Command::Compare => &["ring", "g", "t", "options"],
            Command::Corpus => &["path"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub p: u64,
    #[serde(alias = "variables")]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub n: u32,
    pub f: String,
    /// Accept branch data whose irreducibility is not checked.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub asserted: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spair_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_power: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<RationalExponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl Job {
    pub fn new(command: Command) -> Self {
        Job {
            command,
            ring: None,
            g: None,
            t: None,
            e: None,
            h: None,
            f: None,
            cover: None,
            options: None,
            denominator_bound: None,
            path: None,
        }
    }

    pub fn from_json(text: &str) -> std::result::Result<Job, JobError> {
        serde_json::from_str(text).map_err(|e| JobError::Format(e.to_string()))
    }

    /// Rejects fields the command does not read and missing required ones.
    pub fn validate(&self) -> Result<()> {
        let allowed = self.command.fields();
        let present: [(&str, bool); 10] = [
            ("ring", self.ring.is_some()),
            ("g", self.g.is_some()),
            ("t", self.t.is_some()),
            ("e", self.e.is_some()),
            ("h", self.h.is_some()),
            ("f", self.f.is_some()),
            ("cover", self.cover.is_some()),
            ("options", self.options.is_some()),
            ("denominator_bound", self.denominator_bound.is_some()),
            ("path", self.path.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                return Err(Error::invalid(format!(
                    "field `{name}` is not used by command {}",
                    self.command.name()
                )));
            }
        }
        let required: &[&str] = match self.command {
            Command::Tau | Command::Multiplier | Command::Compare => &["ring", "g", "t"],
            Command::Fpt => &["ring", "g"],
            Command::Cartier => &["ring", "e", "f"],
            Command::Nu => &["ring", "g", "e"],
            Command::VerifyTransform | Command::VerifyMultiplierTransform => &["ring", "cover", "g", "t"],
            Command::TraceImage => &["ring", "cover"],
            Command::Corpus => &["path"],
        };
        for name in required {
            if !present.iter().any(|(n, set)| n == name && *set) {
                return Err(Error::invalid(format!(
                    "command {} needs field `{name}`",
                    self.command.name()
                )));
            }
        }
        Ok(())
    }
}

/// Failures before or outside the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobError {
    /// Malformed JSON or schema violation.
    Format(String),
    Algebra(Error),
    Io(String),
    /// Corpus run with mismatching or missing goldens.
    CorpusMismatch(usize),
}

impl JobError {
    pub fn kind(&self) -> &'static str {
        match self {
            JobError::Format(_) => "job_format",
            JobError::Algebra(e) => e.kind(),
            JobError::Io(_) => "io",
            JobError::CorpusMismatch(_) => "corpus_mismatch",
        }
    }

    pub fn message(&self) -> String {
        match self {
            JobError::Format(m) | JobError::Io(m) => m.clone(),
            JobError::Algebra(e) => e.to_string(),
            JobError::CorpusMismatch(n) => format!("{n} corpus job(s) differ from their goldens"),
        }
    }

    /// Process exit code: 2 for invalid input, 3 for exhausted computations,
    /// 1 for I/O trouble and corpus mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Format(_) => 2,
            JobError::Algebra(Error::NotStabilized { .. } | Error::ResourceCap { .. }) => 3,
            JobError::Algebra(_) => 2,
            JobError::Io(_) | JobError::CorpusMismatch(_) => 1,
        }
    }

    fn detail(&self) -> Option<Value> {
        match self {
            JobError::Algebra(Error::NotStabilized { e_max, last_chain }) => {
                Some(json!({ "e_max": e_max, "last_chain": last_chain }))
            }
            JobError::Algebra(Error::ResourceCap { cap }) => Some(json!({ "cap": cap })),
            JobError::Algebra(Error::Syntax { pos, .. }) => Some(json!({ "position": pos })),
            _ => None,
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError::Algebra(e)
    }
}

/// A finished job: the JSON report plus its exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    pub exit_code: i32,
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report without `wall_time_ms`, the region compared against goldens.
    pub fn deterministic(&self) -> Report {
        let mut value = self.value.clone();
        if let Value::Object(m) = &mut value {
            m.remove("wall_time_ms");
        }
        Report {
            value,
            exit_code: self.exit_code,
        }
    }
}

pub fn error_report(command: Option<&str>, job: Option<Value>, err: &JobError, wall_ms: u64) -> Report {
    let mut error = Map::new();
    error.insert("kind".into(), json!(err.kind()));
    error.insert("message".into(), json!(err.message()));
    if let Some(d) = err.detail() {
        error.insert("detail".into(), d);
    }
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Some(c) = command {
        m.insert("command".into(), json!(c));
    }
    if let Some(j) = job {
        m.insert("job".into(), j);
    }
    m.insert("error".into(), Value::Object(error));
    m.insert("wall_time_ms".into(), json!(wall_ms));
    Report {
        value: Value::Object(m),
        exit_code: err.exit_code(),
    }
}

/// Parses and runs a JSON job. Never fails: errors become error reports.
pub fn run_job_text(text: &str, base_dir: Option<&Path>) -> Report {
    let start = Instant::now();
    match Job::from_json(text) {
        Ok(job) => run_job(&job, base_dir),
        Err(e) => error_report(None, None, &e, start.elapsed().as_millis() as u64),
    }
}

/// Runs a parsed job. `base_dir` resolves relative corpus paths.
pub fn run_job(job: &Job, base_dir: Option<&Path>) -> Report {
    let start = Instant::now();
    let echo = serde_json::to_value(job).expect("job serializes");
    let outcome = job
        .validate()
        .map_err(JobError::from)
        .and_then(|_| execute(job, base_dir));
    let wall = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(result) => {
            let mut m = Map::new();
            m.insert("schema".into(), json!(SCHEMA_VERSION));
            m.insert("command".into(), json!(job.command.name()));
            m.insert("job".into(), echo);
            m.insert("result".into(), result);
            m.insert("wall_time_ms".into(), json!(wall));
            Report {
                value: Value::Object(m),
                exit_code: 0,
            }
        }
        Err(e) => error_report(Some(job.command.name()), Some(echo), &e, wall),
    }
}

struct Ctx {
    ring: RingRef,
    ambient: AmbientRing,
    opts: TauOptions,
}

impl Ctx {
    fn poly(&self, s: &str) -> Result<Polynomial> {
        parse_polynomial(s, &self.ring)
    }

    fn cfg(&self) -> &GbConfig {
        &self.opts.gb
    }

    fn ideal_value(&self, i: &Ideal) -> Result<Value> {
        let gens = i.generator_strings(self.cfg())?;
        Ok(json!({ "ideal": i.canonical_string(self.cfg())?, "generators": gens }))
    }

    fn pair(&self, job: &Job) -> Result<PrincipalPair> {
        let g = self.poly(job.g.as_deref().expect("validated"))?;
        PrincipalPair::new(self.ambient.clone(), g, job.t.expect("validated"))
    }

    fn cover(&self, job: &Job) -> Result<KummerCover> {
        let spec = job.cover.as_ref().expect("validated");
        let f = self.poly(&spec.f)?;
        if spec.asserted {
            KummerCover::new_asserted(self.ambient.clone(), spec.n, f)
        } else {
            KummerCover::new(self.ambient.clone(), spec.n, f)
        }
    }

    fn require_polynomial(&self, command: Command) -> Result<()> {
        if self.ambient.is_quotient() {
            return Err(Error::Unsupported(format!(
                "command {} works over a polynomial ring only",
                command.name()
            )));
        }
        Ok(())
    }
}

fn context(job: &Job) -> Result<Ctx> {
    let spec = job.ring.as_ref().expect("validated");
    let ring = Ring::with_names(spec.p, spec.vars.clone())?;
    let ambient = match &spec.relation {
        None => AmbientRing::polynomial(&ring),
        Some(w) => AmbientRing::quotient(parse_polynomial(w, &ring)?)?,
    };
    let mut opts = TauOptions {
        gb: GbConfig::from_env(),
        ..Default::default()
    };
    if let Some(o) = &job.options {
        if let Some(v) = o.e_max {
            opts.e_max = v;
        }
        if let Some(v) = o.window {
            opts.window = v;
        }
        if let Some(v) = o.spair_cap {
            opts.gb.spair_cap = v;
        }
        if let Some(s) = &o.scheme {
            opts.scheme = Some(s.parse()?);
        }
        if let Some(c) = &o.c {
            opts.c = Some(parse_polynomial(c, &ring)?);
        }
        opts.n_power = o.n_power;
    }
    Ok(Ctx { ring, ambient, opts })
}

fn execute(job: &Job, base_dir: Option<&Path>) -> std::result::Result<Value, JobError> {
    if job.command == Command::Corpus {
        let raw = job.path.as_deref().expect("validated");
        let path = match base_dir {
            Some(b) if Path::new(raw).is_relative() => b.join(raw),
            _ => Path::new(raw).to_path_buf(),
        };
        let summary = super::corpus::run_corpus(&path, 1, false).map_err(JobError::Io)?;
        return Ok(summary.to_value());
    }
    Ok(execute_algebra(job)?)
}

fn execute_algebra(job: &Job) -> Result<Value> {
    let cx = context(job)?;
    let cfg = cx.cfg();
    match job.command {
        Command::Tau => {
            let pair = cx.pair(job)?;
            let r = tau(&pair, &cx.opts)?;
            let mut v = cx.ideal_value(&r.ideal)?;
            let m = v.as_object_mut().expect("object");
            m.insert("stabilized_at_e".into(), json!(r.stabilized_at_e));
            m.insert("computed_through_e".into(), json!(r.computed_through_e));
            m.insert("certified".into(), json!(r.certified));
            m.insert("scheme".into(), json!(r.scheme.name()));
            let counts: Vec<usize> = r.terms.iter().map(|t| t.generators().len()).collect();
            m.insert("term_generator_counts".into(), json!(counts));
            Ok(v)
        }
        Command::Fpt => {
            cx.require_polynomial(job.command)?;
            let g = cx.poly(job.g.as_deref().expect("validated"))?;
            let e = job.e.unwrap_or(2);
            let bound = job.denominator_bound.unwrap_or(10);
            let i = fpt_search(&g, e, bound, &cx.opts)?;
            let tested: Vec<Value> = i
                .tested
                .iter()
                .map(|(t, unit)| json!({ "t": t.to_string(), "unit": unit }))
                .collect();
            Ok(json!({
                "lo": i.lo.to_string(),
                "hi": i.hi.to_string(),
                "nu": i.nu,
                "e_max": e,
                "denominator_bound": bound,
                "tested": tested,
            }))
        }
        Command::Cartier => {
            cx.require_polynomial(job.command)?;
            let h = match &job.h {
                Some(h) => cx.poly(h)?,
                None => Polynomial::one(&cx.ring),
            };
            let map = CartierMap::new(job.e.expect("validated"), h)?;
            let f = cx.poly(job.f.as_deref().expect("validated"))?;
            Ok(json!({ "value": cartier_apply(&map, &f)?.to_string() }))
        }
        Command::Nu => {
            cx.require_polynomial(job.command)?;
            let g = cx.poly(job.g.as_deref().expect("validated"))?;
            let e = job.e.expect("validated");
            Ok(json!({ "nu": nu_value(&g, e)?, "e": e }))
        }
        Command::VerifyTransform => {
            let cover = cx.cover(job)?;
            let pair = cx.pair(job)?;
            let r = verify_tau_transform(&cover, &pair, &cx.opts)?;
            Ok(json!({
                "equal": r.equal,
                "lhs": r.lhs.canonical_string(cfg)?,
                "rhs": r.rhs.canonical_string(cfg)?,
                "cover_vars": cover.cover_ring().vars(),
                "cover_relation": cover.cover_ambient()?.relation().map(|w| w.to_string()),
                "pulled_back": {
                    "g": r.pulled_back.g().to_string(),
                    "t": r.pulled_back.t().to_string(),
                },
                "cover_tau": r.cover_tau.ideal.canonical_string(cfg)?,
                "cover_stabilized_at_e": r.cover_tau.stabilized_at_e,
                "base_stabilized_at_e": r.base_tau.stabilized_at_e,
            }))
        }
        Command::VerifyMultiplierTransform => {
            let cover = cx.cover(job)?;
            let pair = cx.pair(job)?;
            let r = verify_multiplier_transform(&cover, &pair, cfg)?;
            let divisor: Vec<Value> = r
                .cover_divisor
                .iter()
                .map(|(v, c)| json!({ "var": v, "coefficient": c }))
                .collect();
            let exps: Vec<String> = r.cover_multiplier.iter().map(|e| e.to_string()).collect();
            Ok(json!({
                "equal": r.equal,
                "lhs": r.lhs.canonical_string(cfg)?,
                "rhs": r.rhs.canonical_string(cfg)?,
                "cover_vars": cover.cover_ring().vars(),
                "cover_divisor": divisor,
                "cover_multiplier_exponents": exps,
            }))
        }
        Command::TraceImage => {
            let cover = cx.cover(job)?;
            let img = trace_image(&cover, cfg)?;
            let cont = verify_containment_tau_in_image(&cover, &cx.opts)?;
            Ok(json!({
                "image": img.image.canonical_string(cfg)?,
                "phi_stable": img.phi_stable,
                "surjective": img.surjective,
                "tau_omega": cont.tau.ideal.canonical_string(cfg)?,
                "tau_contained": cont.contained,
            }))
        }
        Command::Multiplier => {
            cx.require_polynomial(job.command)?;
            let g = cx.poly(job.g.as_deref().expect("validated"))?;
            let data = NewtonData::from_monomial(&g, job.t.expect("validated"))?;
            cx.ideal_value(&howald_multiplier(&data)?)
        }
        Command::Compare => {
            cx.require_polynomial(job.command)?;
            let pair = cx.pair(job)?;
            let r = compare_tau_multiplier(&pair, &cx.opts)?;
            Ok(json!({
                "tau": r.tau.ideal.canonical_string(cfg)?,
                "multiplier": r.multiplier.canonical_string(cfg)?,
                "contained": r.contained,
                "equal": r.equal,
                "stabilized_at_e": r.tau.stabilized_at_e,
            }))
        }
        Command::Corpus => unreachable!("handled by execute"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Report {
        run_job_text(text, None)
    }

    #[test]
    fn tau_job() {
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x","y"]},"g":"x^2+y^3","t":"5/6"}"#);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.value["result"]["generators"], json!(["x", "y"]));
        assert!(r.value["result"]["stabilized_at_e"].as_u64().unwrap() <= 3);
        assert_eq!(r.value["schema"], json!(1));
    }

    #[test]
    fn cartier_job() {
        let r = run(r#"{"command":"cartier","ring":{"p":3,"vars":["x"]},"e":1,"h":"1","f":"x^5"}"#);
        assert_eq!(r.value["result"]["value"], json!("x"));
    }

    #[test]
    fn verify_transform_job() {
        let r = run(r#"{"command":"verify-transform","ring":{"p":5,"vars":["x"]},"cover":{"n":2,"f":"x"},"g":"x","t":"1"}"#);
        assert_eq!(r.exit_code, 0, "{}", r.to_pretty());
        let res = &r.value["result"];
        assert_eq!((res["equal"].clone(), res["lhs"].clone(), res["rhs"].clone()), (json!(true), json!("(x)"), json!("(x)")));
    }

    #[test]
    fn validation_errors_exit_2() {
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x"]},"g":"x","t":"1","bogus":1}"#);
        assert_eq!((r.exit_code, r.value["error"]["kind"].clone()), (2, json!("job_format")));
        let r = run(r#"{"command":"tau","ring":{"p":8,"vars":["x"]},"g":"x","t":"1"}"#);
        assert_eq!(r.exit_code, 2);
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x"]},"g":"y","t":"1"}"#);
        assert_eq!(r.value["error"]["kind"], json!("unknown_variable"));
        let r = run(r#"{"command":"nu","ring":{"p":7,"vars":["x"]},"g":"x","e":1,"h":"x"}"#);
        assert_eq!(r.value["error"]["kind"], json!("invalid_argument"));
        let r = run(r#"{"command":"nu","ring":{"p":7,"vars":["x"]},"g":"x"}"#);
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn not_stabilized_exits_3() {
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x","y"]},"g":"x^2+y^3","t":"5/6","options":{"e_max":1}}"#);
        assert_eq!(r.exit_code, 3);
        assert_eq!(r.value["error"]["kind"], json!("not_stabilized"));
        assert_eq!(r.value["error"]["detail"]["last_chain"].as_array().unwrap().len(), 2);
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x","y"]},"g":"x^2+y^3","t":"5/6","options":{"spair_cap":0}}"#);
        assert_eq!((r.exit_code, r.value["error"]["kind"].clone()), (3, json!("resource_cap")));
    }

    #[test]
    fn echo_is_canonical() {
        let r = run(r#"{"command":"tau","ring":{"p":7,"vars":["x"]},"g":"x","t":"10/4"}"#);
        assert_eq!(r.value["job"]["t"], json!("5/2"));
        assert!(r.value["job"].get("h").is_none());
    }
}
