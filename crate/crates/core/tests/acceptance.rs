//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Every check is exact; the only tolerances are the wall-clock budgets below.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cartierlab::cli::{corpus::discover, run_job_text};
use cartierlab::covers::{
    trace_image, verify_containment_tau_in_image, verify_multiplier_transform, verify_tau_transform, KummerCover,
};
use cartierlab::frobenius::{cartier_apply, compose, decompose, frobenius_q, span_check, CartierMap};
use cartierlab::groebner::{ideal_equal, GbConfig, Ideal};
use cartierlab::multoracle::{compare_tau_multiplier, howald_multiplier, NewtonData};
use cartierlab::polyring::{parse_polynomial, Polynomial, RationalExponent, Ring, RingRef};
use cartierlab::testideal::{fpt_search, nu_value, tau_polynomial, ExponentScheme, PrincipalPair, TauOptions};
use common::{random_poly, PRIMES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 0x5eed_ca27;
const CARTIER_INSTANCES: usize = 1000;
const MONOMIAL_TRIPLES_MIN: usize = 20;
const TRANSFORM_CASES_MIN: usize = 10;
const MULTIPLIER_CASES_MIN: usize = 6;

const BUDGET_CARTIER: Duration = Duration::from_secs(10);
const BUDGET_SPAN: Duration = Duration::from_secs(5);
const BUDGET_TAU_TABLE: Duration = Duration::from_secs(30);
const BUDGET_ORACLE: Duration = Duration::from_secs(10);
const BUDGET_TRANSFORM: Duration = Duration::from_secs(60);
const BUDGET_MULTIPLIER: Duration = Duration::from_secs(30);
const BUDGET_TRACE_IMAGE: Duration = Duration::from_secs(30);
const BUDGET_FPT: Duration = Duration::from_secs(30);

type Check = Result<String, String>;
/// (p, base vars, n, f, g, t)
type CoverCase = (u64, &'static [&'static str], u32, &'static str, &'static str, &'static str);
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn q(s: &str) -> RationalExponent {
    s.parse().unwrap()
}

fn poly(r: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

fn canon(i: &Ideal, cfg: &GbConfig) -> String {
    i.canonical_string(cfg).unwrap()
}

fn cartier_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..CARTIER_INSTANCES {
        let p = PRIMES[rng.gen_range(0..4)];
        let nvars = rng.gen_range(1..=2);
        let r = Ring::new(p, &["x", "y"][..nvars]).unwrap();
        let e = rng.gen_range(1..=2u32);
        let (f, g, a) = (
            random_poly(&mut rng, &r, 5, 12),
            random_poly(&mut rng, &r, 5, 12),
            random_poly(&mut rng, &r, 3, 3),
        );
        let qe = frobenius_q(r.p(), e).unwrap();
        let fail = |law: &str| Err(format!("instance {k}: {law} (p={p}, e={e}, f={f})"));
        if decompose(&f, e).unwrap().reconstruct(&r).unwrap() != f {
            return fail("reconstruction");
        }
        let m = CartierMap::trace(&r, e).unwrap();
        let phi = |x: &Polynomial| cartier_apply(&m, x).unwrap();
        if phi(&(&f + &g)) != &phi(&f) + &phi(&g) {
            return fail("additivity");
        }
        if phi(&(&a.frobenius(qe).unwrap() * &f)) != &a * &phi(&f) {
            return fail("p^-e linearity");
        }
        let h1 = &random_poly(&mut rng, &r, 3, 6) + &Polynomial::one(&r);
        let h2 = &random_poly(&mut rng, &r, 3, 6) + &Polynomial::one(&r);
        if h1.is_zero() || h2.is_zero() {
            continue;
        }
        let (e1, e2) = (rng.gen_range(1..=2u32), rng.gen_range(1..=2u32));
        if p.pow(e1 + e2) > 49 {
            continue;
        }
        let first = CartierMap::new(e1, h1).unwrap();
        let then = CartierMap::new(e2, h2).unwrap();
        let both = compose(&first, &then).unwrap();
        if both.apply(&f).unwrap() != then.apply(&first.apply(&f).unwrap()).unwrap() {
            return fail("composition");
        }
    }
    Ok(format!("{CARTIER_INSTANCES} random instances"))
}

fn spanning() -> Check {
    for (p, e, d) in [(2, 1, 1), (2, 1, 2), (3, 1, 1)] {
        if !span_check(p, e, d).map_err(|x| x.to_string())? {
            return Err(format!("span_check({p},{e},{d}) = false"));
        }
    }
    Ok("(2,1,1) (2,1,2) (3,1,1)".into())
}

fn tau_both(g: &Polynomial, t: &str) -> Result<(Ideal, u32), String> {
    let pair = PrincipalPair::polynomial(g.clone(), q(t)).unwrap();
    let classical = TauOptions::with_scheme(ExponentScheme::Classical);
    let pre = TauOptions::with_scheme(ExponentScheme::Premultiplied);
    let a = tau_polynomial(&pair, &classical).map_err(|e| e.to_string())?;
    let b = tau_polynomial(&pair, &pre).map_err(|e| e.to_string())?;
    if !ideal_equal(&a.ideal, &b.ideal, &classical.gb).unwrap() {
        return Err(format!(
            "schemes disagree on ({g})^{t}: {} vs {}",
            canon(&a.ideal, &classical.gb),
            canon(&b.ideal, &classical.gb)
        ));
    }
    Ok((a.ideal, a.stabilized_at_e.max(b.stabilized_at_e)))
}

fn tau_table() -> Check {
    let cfg = GbConfig::default();
    let mut rows = 0;
    for p in PRIMES {
        let r = Ring::new(p, &["x", "y"]).unwrap();
        let rows_p = [("x", "1/2", "(1)"), ("x", "1", "(x)"), ("x", "3/2", "(x)"), ("x", "2", "(x^2)"), ("x*y", "1", "(x*y)")];
        for (g, t, want) in rows_p {
            let (ideal, _) = tau_both(&poly(&r, g), t)?;
            let got = canon(&ideal, &cfg);
            if got != want {
                return Err(format!("p={p}: tau(({g})^{t}) = {got}, want {want}"));
            }
            rows += 1;
        }
    }
    let r = Ring::new(7, &["x", "y"]).unwrap();
    let (ideal, e) = tau_both(&poly(&r, "x^2+y^3"), "5/6")?;
    if canon(&ideal, &cfg) != "(x, y)" || e > 3 {
        return Err(format!("cusp: {} stabilized at {e}", canon(&ideal, &cfg)));
    }
    Ok(format!("{} rows, both schemes; cusp stabilized at e={e}", rows + 1))
}

fn monomial_suite() -> Vec<(u64, &'static str, &'static str)> {
    let mut suite = Vec::new();
    let gs = ["x", "x^2", "x*y", "x^2*y", "x^3*y^2", "x*y^3"];
    let ts = ["1/2", "2/3", "1", "3/2", "5/4"];
    for (i, g) in gs.iter().enumerate() {
        for (j, t) in ts.iter().enumerate() {
            suite.push((PRIMES[(i + j) % 4], *g, *t));
        }
    }
    suite
}

fn oracle_containment() -> Check {
    let opts = TauOptions::default();
    let suite = monomial_suite();
    let mut equal = 0;
    for (p, g, t) in &suite {
        let r = Ring::new(*p, &["x", "y"]).unwrap();
        let pair = PrincipalPair::polynomial(poly(&r, g), q(t)).unwrap();
        let rep = compare_tau_multiplier(&pair, &opts).map_err(|e| e.to_string())?;
        if !rep.contained {
            return Err(format!("p={p}: tau(({g})^{t}) not inside J"));
        }
        equal += rep.equal as usize;
    }
    for p in PRIMES {
        let r = Ring::new(p, &["x", "y"]).unwrap();
        for (g, t) in [("x", "1/2"), ("x", "1"), ("x", "3/2"), ("x", "2"), ("x*y", "1")] {
            let pair = PrincipalPair::polynomial(poly(&r, g), q(t)).unwrap();
            if !compare_tau_multiplier(&pair, &opts).map_err(|e| e.to_string())?.equal {
                return Err(format!("p={p}: tau != J for ({g})^{t}"));
            }
        }
    }
    if suite.len() < MONOMIAL_TRIPLES_MIN {
        return Err(format!("suite has {} triples", suite.len()));
    }
    Ok(format!("{} triples contained, {equal} equal; table rows equal", suite.len()))
}

fn transform_suite() -> Vec<CoverCase> {
    let mut suite = Vec::new();
    for p in [5, 7] {
        for n in [2, 3] {
            for t in ["0", "1/2", "1", "2"] {
                suite.push((p, &["x"][..], n, "x", "x", t));
            }
            suite.push((p, &["x", "y"][..], n, "x", "y", "2/3"));
            suite.push((p, &["x", "y"][..], n, "x", "x+y", "1/2"));
        }
    }
    for t in ["0", "1/2", "1"] {
        suite.push((5, &["x", "y"][..], 2, "x*y", "x*y", t));
    }
    suite
}

fn transform_rule() -> Check {
    let opts = TauOptions::default();
    let suite = transform_suite();
    for (p, vars, n, f, g, t) in &suite {
        let r = Ring::new(*p, vars).unwrap();
        let cover = KummerCover::over_polynomial_ring(*n, poly(&r, f)).unwrap();
        let pair = PrincipalPair::polynomial(poly(&r, g), q(t)).unwrap();
        let rep = verify_tau_transform(&cover, &pair, &opts).map_err(|e| format!("z^{n}={f}, ({g})^{t}: {e}"))?;
        if !rep.equal {
            return Err(format!(
                "p={p} z^{n}={f}, ({g})^{t}: lhs {} rhs {}",
                rep.lhs.canonical_string(&opts.gb).unwrap(),
                canon(&rep.rhs, &opts.gb)
            ));
        }
    }
    if suite.len() < TRANSFORM_CASES_MIN {
        return Err(format!("suite has {} cases", suite.len()));
    }
    Ok(format!("{} cases equal", suite.len()))
}

fn multiplier_transform() -> Check {
    let cfg = GbConfig::default();
    let cases: [CoverCase; 9] = [
        (5, &["x"], 2, "x", "x", "1"),
        (5, &["x"], 2, "x", "x", "1/2"),
        (5, &["x"], 2, "x", "x", "0"),
        (7, &["x"], 3, "x", "x^2", "5/6"),
        (7, &["x", "y"], 3, "x", "x*y", "1/2"),
        (5, &["x", "y"], 2, "y", "x^2*y^3", "3/4"),
        (7, &["x", "y"], 2, "x", "x^3*y", "4/3"),
        (5, &["x", "y", "w"], 3, "w", "x*y*w^2", "1"),
        (7, &["x"], 3, "x", "x", "7/3"),
    ];
    for (p, vars, n, f, g, t) in cases {
        let r = Ring::new(p, vars).unwrap();
        let cover = KummerCover::over_polynomial_ring(n, poly(&r, f)).unwrap();
        let pair = PrincipalPair::polynomial(poly(&r, g), q(t)).unwrap();
        let rep = verify_multiplier_transform(&cover, &pair, &cfg).map_err(|e| e.to_string())?;
        let expected = howald_multiplier(&NewtonData::from_monomial(&poly(&r, g), q(t)).unwrap()).unwrap();
        if !rep.equal || !ideal_equal(&rep.rhs, &expected, &cfg).unwrap() {
            return Err(format!("p={p} z^{n}={f}, ({g})^{t}: lhs {}", rep.lhs.canonical_string(&cfg).unwrap()));
        }
    }
    if cases.len() < MULTIPLIER_CASES_MIN {
        return Err("too few cases".into());
    }
    Ok(format!("{} cases equal", cases.len()))
}

fn trace_images() -> Check {
    let opts = TauOptions::default();
    let mut covers: Vec<(u64, &[&str], u32, &str)> = transform_suite()
        .into_iter()
        .map(|(p, vars, n, f, _, _)| (p, vars, n, f))
        .collect();
    covers.extend([(7, &["x"][..], 3, "x"), (5, &["x", "y", "w"][..], 3, "w")]);
    covers.sort();
    covers.dedup();
    for (p, vars, n, f) in &covers {
        let r = Ring::new(*p, vars).unwrap();
        let cover = KummerCover::over_polynomial_ring(*n, poly(&r, f)).unwrap();
        let img = trace_image(&cover, &opts.gb).map_err(|e| e.to_string())?;
        let cont = verify_containment_tau_in_image(&cover, &opts).map_err(|e| e.to_string())?;
        if !(img.surjective && img.phi_stable && cont.contained) {
            return Err(format!(
                "p={p} z^{n}={f}: surjective={} phi_stable={} contained={}",
                img.surjective, img.phi_stable, cont.contained
            ));
        }
    }
    Ok(format!("{} covers: J = omega_R, Phi-stable, tau(omega_R) inside", covers.len()))
}

fn fpt_consistency() -> Check {
    let r = Ring::new(7, &["x", "y"]).unwrap();
    let g = poly(&r, "x^2+y^3");
    let opts = TauOptions::default();
    let interval = fpt_search(&g, 2, 10, &opts).map_err(|e| e.to_string())?;
    if interval.hi != q("5/6") || interval.lo > interval.hi {
        return Err(format!("interval [{}, {}]", interval.lo, interval.hi));
    }
    let nus: Vec<u64> = (1..=4).map(|e| nu_value(&g, e).unwrap()).collect();
    if nus[0] != 5 {
        return Err(format!("nu(1) = {}", nus[0]));
    }
    if nus.windows(2).any(|w| w[1] < 7 * w[0]) {
        return Err(format!("nu not monotone: {nus:?}"));
    }
    let below = PrincipalPair::polynomial(g, q("247/300")).unwrap();
    let unit = tau_polynomial(&below, &opts).map_err(|e| e.to_string())?;
    if !unit.ideal.is_unit(&opts.gb).unwrap() {
        return Err("tau at 5/6 - 1/100 is not the unit ideal".into());
    }
    Ok(format!("[{}, {}], nu = {nus:?}", interval.lo, interval.hi))
}

fn reparse_ideals(report: &Value) -> Result<usize, String> {
    let job = &report["job"];
    let Some(ring) = job.get("ring") else { return Ok(0) };
    let vars: Vec<String> = serde_json::from_value(ring["vars"].clone()).unwrap();
    let p = ring["p"].as_u64().unwrap();
    let Ok(base) = Ring::with_names(p, vars) else { return Ok(0) };
    let cover_ring = report["result"]
        .get("cover_vars")
        .map(|v| Ring::with_names(p, serde_json::from_value(v.clone()).unwrap()).unwrap());
    let cfg = GbConfig::default();
    let mut strings = Vec::new();
    collect_ideal_strings(&report["result"], &mut strings);
    collect_ideal_strings(&report["error"], &mut strings);
    for s in &strings {
        let parsed = Ideal::parse(s, &base)
            .or_else(|e| cover_ring.as_ref().map_or(Err(e), |c| Ideal::parse(s, c)))
            .map_err(|e| format!("`{s}` does not re-parse: {e}"))?;
        let again = parsed.canonical_string(&cfg).unwrap();
        if &again != s {
            return Err(format!("`{s}` re-prints as `{again}`"));
        }
    }
    Ok(strings.len())
}

fn collect_ideal_strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) if s.starts_with('(') && !s.contains(" / ") => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| collect_ideal_strings(x, out)),
        Value::Object(m) => m.values().for_each(|x| collect_ideal_strings(x, out)),
        _ => {}
    }
}

fn determinism() -> Check {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let jobs = discover(&dir)?;
    let mut ideals = 0;
    for job in &jobs {
        let text = std::fs::read_to_string(job).map_err(|e| e.to_string())?;
        let a = run_job_text(&text, Some(&dir)).deterministic();
        let b = run_job_text(&text, Some(&dir)).deterministic();
        if a.to_pretty() != b.to_pretty() {
            return Err(format!("{} differs between runs", job.display()));
        }
        let golden = job.with_file_name(job.file_name().unwrap().to_str().unwrap().replace(".job.json", ".expected.json"));
        if std::fs::read_to_string(&golden).map_err(|e| e.to_string())? != a.to_pretty() {
            return Err(format!("{} differs from its golden", job.display()));
        }
        ideals += reparse_ideals(&a.value)?;
    }
    Ok(format!("{} jobs byte-identical, {ideals} printed ideals re-parse", jobs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 cartier algebra laws", cartier_laws, Some(BUDGET_CARTIER)),
        ("2 generator spanning", spanning, Some(BUDGET_SPAN)),
        ("3 test-ideal table", tau_table, Some(BUDGET_TAU_TABLE)),
        ("4 oracle containment", oracle_containment, Some(BUDGET_ORACLE)),
        ("5 transformation rule", transform_rule, Some(BUDGET_TRANSFORM)),
        ("6 multiplier transformation", multiplier_transform, Some(BUDGET_MULTIPLIER)),
        ("7 trace-image invariants", trace_images, Some(BUDGET_TRACE_IMAGE)),
        ("8 fpt consistency", fpt_consistency, Some(BUDGET_FPT)),
        ("9 determinism and round-trip", determinism, None),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let verdict = match (&outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("over budget {:.1}s", b.as_secs_f64())),
            (Ok(msg), _) => Ok(msg.clone()),
            (Err(e), _) => Err(e.clone()),
        };
        match verdict {
            Ok(msg) => println!("PASS  criterion {name}: {msg} ({:.2}s)", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} ({:.2}s)", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
