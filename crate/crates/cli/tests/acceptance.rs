//! Acceptance run over 25 seeded generic contexts (N ≤ 8) and the fixed
//! sample context. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use mqh_cli::config::Origin;
use mqh_cli::output::{parse_structured, render_structured};
use mqh_cli::run::ContextRun;
use mqh_cli::sampler::random_gauge;
use mqh_cli::{cmd_verify, exit_code, ConfigFile, Overrides, RunConfig, EXIT_FAILURE, EXIT_OK};
use mqh_core::bases::BasisSet;
use mqh_core::repr::build_representation;
use mqh_core::specfun::{
    verify_polynomials, verify_polynomials_basis_free, verify_rationals, verify_rationals_basis_free,
};
use mqh_core::{Check, CheckBuilder, ParamContext, QScalar, Report, Status};

const SEED: u64 = 1;
const COUNT: usize = 25;
const MAX_N: usize = 8;

const CONFIG: &str = r#"
suites = ["all"]
format = "structured"

[[context]]
q = "2"
t_alpha = "8"
t_beta = "4"
t_mu = "2"
n = 2

[sampling]
seed = 1
count = 25
max_n = 8
"#;

type Selector = fn(&Check) -> bool;

fn named(c: &Check, suite: &str, names: &[&str]) -> bool {
    c.suite == suite && names.contains(&c.name.as_str())
}

fn crit1(c: &Check) -> bool {
    c.suite == "algebra"
}
fn crit2(c: &Check) -> bool {
    c.suite == "embedding"
}
fn crit3(c: &Check) -> bool {
    c.suite == "bases"
}
fn crit4(c: &Check) -> bool {
    c.suite == "actions"
}
fn crit5(c: &Check) -> bool {
    named(
        c,
        "polynomials",
        &[
            "identification_S",
            "identification_S_tilde",
            "duality_qhahn_dual_qhahn",
            "orthogonality_raw_overlaps",
            "orthogonality_qhahn",
            "orthogonality_dual_qhahn",
        ],
    )
}
fn crit6(c: &Check) -> bool {
    named(c, "polynomials", &["qhahn_boundary_coefficients", "qhahn_recurrence", "qhahn_difference"])
}
fn crit7(c: &Check) -> bool {
    c.suite == "rationals"
}
fn crit8(c: &Check) -> bool {
    c.suite == "polynomials" && (c.name.starts_with("pochhammer_") || c.name.starts_with("transform_"))
}
fn gauge_sensitive(c: &Check) -> bool {
    crit5(c) || crit6(c) || crit7(c)
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    ok: bool,
    detail: String,
}

/// Generic contexts must pass every selected check outright; the sample
/// context only has to be free of failures.
fn judge(runs: &[ContextRun], sel: Selector) -> Outcome {
    let mut checks = 0;
    let mut excused_contexts = 0;
    let mut bad = Vec::new();
    for r in runs {
        let picked: Vec<&Check> = r.report.checks.iter().filter(|c| sel(c)).collect();
        if picked.is_empty() {
            // the sample context cannot build every basis; basis-dependent
            // checks are then absent and the construction check is skipped
            let excused = r.origin == Origin::Explicit
                && r.report.checks.iter().any(|c| c.name == "basis_construction" && c.status == Status::Skipped);
            if excused {
                excused_contexts += 1;
            } else {
                bad.push(format!("context #{}: no checks", r.index));
            }
        }
        for c in picked {
            checks += 1;
            let fine = match r.origin {
                Origin::Sampled => c.status == Status::Pass,
                Origin::Explicit => c.status != Status::Fail,
            };
            if !fine {
                bad.push(format!("context #{} {}/{} {}", r.index, c.suite, c.name, c.status.as_str()));
            }
        }
    }
    let detail = match bad.first() {
        None if excused_contexts > 0 => {
            format!("{checks} checks over {} contexts, {excused_contexts} without bases", runs.len())
        }
        None => format!("{checks} checks over {} contexts", runs.len()),
        Some(first) => format!("{} offending checks, first: {first}", bad.len()),
    };
    Outcome { ok: bad.is_empty(), detail }
}

fn regauged(ctx: &ParamContext, seed: u64) -> Report {
    let gauged = ParamContext::new(
        ctx.q.clone(),
        ctx.t_alpha.clone(),
        ctx.t_beta.clone(),
        ctx.t_mu.clone(),
        ctx.n,
        random_gauge(seed, ctx.n),
    )
    .expect("random gauge is nonzero");
    let rep = build_representation(&gauged).expect("representation");
    let mut r = Report::new();
    match BasisSet::closed_form(&gauged) {
        Ok(set) => {
            r.extend(verify_polynomials(&rep, &set));
            r.extend(verify_rationals(&rep, &set));
        }
        Err(e) => {
            for suite in ["polynomials", "rationals"] {
                let mut c = CheckBuilder::new(suite, "basis_construction");
                c.error("basis_construction", &e);
                r.push(c.finish());
            }
            r.extend(verify_polynomials_basis_free(&gauged));
            r.extend(verify_rationals_basis_free(&gauged));
        }
    }
    r
}

fn gauge_invariance(runs: &[ContextRun]) -> Outcome {
    let mut compared = 0;
    let mut bad = Vec::new();
    for r in runs {
        let base: BTreeMap<_, _> = r
            .report
            .checks
            .iter()
            .filter(|c| gauge_sensitive(c))
            .map(|c| ((c.suite.clone(), c.name.clone()), c.status))
            .collect();
        let other: BTreeMap<_, _> = regauged(&r.ctx, SEED.wrapping_add(1000 + r.index as u64))
            .checks
            .into_iter()
            .filter(gauge_sensitive)
            .map(|c| ((c.suite, c.name), c.status))
            .collect();
        for ((suite, name), status) in &base {
            compared += 1;
            let seen = other.get(&(suite.clone(), name.clone()));
            if seen != Some(status) {
                bad.push(format!("context #{} {suite}/{name}: {} vs {:?}", r.index, status.as_str(), seen));
            }
        }
    }
    let detail = match bad.first() {
        None => format!("{compared} statuses unchanged under a random gauge"),
        Some(first) => format!("{} changed, first: {first}", bad.len()),
    };
    Outcome { ok: bad.is_empty(), detail }
}

fn mqh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqh")).args(args).output().expect("mqh runs")
}

fn cli_contract() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let args = ["verify", "--seed", "7", "--contexts", "3", "--max-n", "4", "--format", "structured"];
    let (a, b) = (mqh(&args), mqh(&args));
    expect("two seeded runs are byte-identical", !a.stdout.is_empty() && a.stdout == b.stdout);
    expect("seeded run exits 0", a.status.code() == Some(EXIT_OK));
    let text = String::from_utf8_lossy(&a.stdout);
    expect("structured report parses", parse_structured(&text).is_ok());

    let ov = Overrides { seed: Some(7), contexts: Some(3), max_n: Some(4), ..Default::default() };
    let cfg = RunConfig::resolve(ConfigFile::default(), ov).expect("config");
    expect("binary and library reports agree", render_structured(&cmd_verify(&cfg).runs) == text);

    let dir = tempfile::tempdir().expect("tempdir");
    let out = dir.path().join("report.jsonl");
    let c = mqh(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    expect("--out writes the same report", std::fs::read(&out).ok() == Some(a.stdout.clone()) && c.stdout.is_empty());

    expect("sample context exits 0", mqh(&["verify"]).status.code() == Some(EXIT_OK));

    let collide = dir.path().join("collide.toml");
    std::fs::write(&collide, "[[context]]\nq = \"2\"\nt_alpha = \"3\"\nt_beta = \"1\"\nt_mu = \"5\"\nn = 3\n").unwrap();
    expect(
        "colliding spectrum exits 2",
        mqh(&["verify", "--config", collide.to_str().unwrap()]).status.code() == Some(2),
    );

    let unknown = dir.path().join("unknown.toml");
    std::fs::write(&unknown, "suites = [\"all\"]\ncolour = \"blue\"\n").unwrap();
    expect(
        "unknown config key exits 2",
        mqh(&["verify", "--config", unknown.to_str().unwrap()]).status.code() == Some(2),
    );
    expect("unknown suite exits 2", mqh(&["verify", "--suite", "nope"]).status.code() == Some(2));

    let mut fake = CheckBuilder::new("algebra", "synthetic");
    let one = QScalar::from_integer(1.into());
    fake.eq("x", Ok(one.clone()), Ok(one.clone() + one));
    let mut report = Report::new();
    report.push(fake.finish());
    let failing = ContextRun { index: 0, ctx: cfg.contexts[0].0.clone(), origin: Origin::Sampled, report };
    expect("a failed check maps to exit 1", exit_code(&[failing]) == EXIT_FAILURE);

    let detail = match bad.first() {
        None => "determinism and exit codes as documented".to_string(),
        Some(first) => format!("{} violations, first: {first}", bad.len()),
    };
    Outcome { ok: bad.is_empty(), detail }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let file = ConfigFile::parse(CONFIG).expect("acceptance config");
    let cfg = RunConfig::resolve(file, Overrides::default()).expect("acceptance contexts");
    assert_eq!(cfg.contexts.len(), COUNT + 1);
    assert!(cfg.contexts.iter().all(|(c, _)| c.n >= 1 && c.n <= MAX_N));
    let runs = cmd_verify(&cfg).runs;

    let titles: [(&str, Criterion); 10] = [
        ("defining relations and Casimir", Box::new(|| judge(&runs, crit1))),
        ("q-Hahn embedding pencils", Box::new(|| judge(&runs, crit2))),
        ("six bases", Box::new(|| judge(&runs, crit3))),
        ("matrix elements and Leonard pairs", Box::new(|| judge(&runs, crit4))),
        ("q-Hahn identification, duality, orthogonality", Box::new(|| judge(&runs, crit5))),
        ("q-Hahn recurrence and difference equation", Box::new(|| judge(&runs, crit6))),
        ("biorthogonal rational functions", Box::new(|| judge(&runs, crit7))),
        ("Pochhammer and transformation sweeps", Box::new(|| judge(&runs, crit8))),
        ("gauge invariance", Box::new(|| gauge_invariance(&runs))),
        ("CLI determinism and exit codes", Box::new(cli_contract)),
    ];
    let mut all = true;
    for (i, (title, f)) in titles.iter().enumerate() {
        let o = f();
        all &= o.ok;
        println!("criterion {:>2} {}: {title} ({})", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
