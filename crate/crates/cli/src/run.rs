//! Runs the selected suites over every context.

use mqh_core::actions::verify_actions_suite;
use mqh_core::bases::{
    validate_genericity, verify_construction, verify_orthogonality, verify_resolutions_of_identity, BasisSet,
};
use mqh_core::qcore::{pochhammer_identity_suite, sears_and_32_transform_suite, SweepRanges};
use mqh_core::repr::{
    build_representation, verify_casimir, verify_defining_relations, verify_qhahn_embedding_pencils, Representation,
};
use mqh_core::specfun::{
    verify_polynomials, verify_polynomials_basis_free, verify_rationals, verify_rationals_basis_free,
};
use mqh_core::{CheckBuilder, Error, ParamContext, Report};
use rayon::prelude::*;

use crate::config::{Origin, RunConfig, Suite};
use crate::sampler::pencil_scalars;

/// Sweep bound for the Pochhammer and transform identity suites.
pub const SWEEP_BOUND: usize = 6;
/// Random pencil scalars per context besides the `W` pencil.
pub const EXTRA_PENCILS: usize = 9;

#[derive(Debug, Clone)]
pub struct ContextRun {
    pub index: usize,
    pub ctx: ParamContext,
    pub origin: Origin,
    pub report: Report,
}

fn failed_setup(suite: &str, what: &str, e: &Error) -> Report {
    let mut c = CheckBuilder::new(suite, what);
    c.error(what, e);
    let mut r = Report::new();
    r.push(c.finish());
    r
}

fn with_bases(rep: &Representation, suite: &str, f: impl FnOnce(&BasisSet) -> Report) -> Report {
    with_bases_or(rep, suite, f, Report::new)
}

/// Like `with_bases`, but runs `fallback` alongside the skipped construction
/// check when the bases cannot be built.
fn with_bases_or(
    rep: &Representation,
    suite: &str,
    f: impl FnOnce(&BasisSet) -> Report,
    fallback: impl FnOnce() -> Report,
) -> Report {
    match BasisSet::closed_form(&rep.ctx) {
        Ok(set) => f(&set),
        Err(e) => {
            let mut r = failed_setup(suite, "basis_construction", &e);
            r.extend(fallback());
            r
        }
    }
}

fn genericity_check(ctx: &ParamContext) -> Report {
    let g = validate_genericity(ctx);
    let mut c = CheckBuilder::new("bases", "genericity");
    if g.is_generic() {
        c.holds("conditions", Ok(true), vec![]);
    } else {
        let v: Vec<_> = g.violations().cloned().collect();
        c.error("conditions", &Error::DegenerateContext(v.join("; ")));
    }
    let mut r = Report::new();
    r.push(c.finish());
    r
}

pub fn run_suite(rep: &Representation, suite: Suite, seed: u64) -> Report {
    let ctx = &rep.ctx;
    let name = suite.as_str();
    match suite {
        Suite::Algebra => {
            let mut r = verify_defining_relations(rep);
            r.extend(verify_casimir(rep));
            r
        }
        Suite::Embedding => verify_qhahn_embedding_pencils(rep, &pencil_scalars(seed, rep.mu_bracket(), EXTRA_PENCILS)),
        Suite::Bases => {
            let mut r = genericity_check(ctx);
            r.extend(verify_construction(rep));
            r.extend(with_bases(rep, name, |set| {
                let mut r = verify_orthogonality(rep, set);
                r.extend(verify_resolutions_of_identity(rep, set));
                r
            }));
            r
        }
        Suite::Actions => verify_actions_suite(rep),
        Suite::Polynomials => {
            let ranges = SweepRanges::from_context(ctx, SWEEP_BOUND);
            let mut r = pochhammer_identity_suite(ctx, &ranges);
            r.extend(sears_and_32_transform_suite(ctx, &ranges));
            r.extend(with_bases_or(
                rep,
                name,
                |set| verify_polynomials(rep, set),
                || verify_polynomials_basis_free(ctx),
            ));
            r
        }
        Suite::Rationals => {
            with_bases_or(rep, name, |set| verify_rationals(rep, set), || verify_rationals_basis_free(ctx))
        }
    }
}

/// All requested suites for one context, sorted by suite then check name.
pub fn run_context(ctx: &ParamContext, suites: &[Suite], seed: u64) -> Report {
    let mut report = match build_representation(ctx) {
        Ok(rep) => {
            let mut r = Report::new();
            for s in suites {
                r.extend(run_suite(&rep, *s, seed));
            }
            r
        }
        Err(e) => failed_setup("algebra", "representation", &e),
    };
    report.checks.sort_by(|a, b| (&a.suite, &a.name).cmp(&(&b.suite, &b.name)));
    report
}

fn context_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// Runs every context; results come back in context order. With
/// `fail_fast` the contexts run one at a time and stop at the first failure.
pub fn run_all(cfg: &RunConfig) -> Vec<ContextRun> {
    let one = |(index, (ctx, origin)): (usize, &(ParamContext, Origin))| ContextRun {
        index,
        ctx: ctx.clone(),
        origin: *origin,
        report: run_context(ctx, &cfg.suites, context_seed(cfg.seed, index)),
    };
    if cfg.fail_fast {
        let mut out = Vec::new();
        for item in cfg.contexts.iter().enumerate() {
            let run = one(item);
            let failed = run.report.any_failed();
            out.push(run);
            if failed {
                break;
            }
        }
        out
    } else {
        cfg.contexts.par_iter().enumerate().map(one).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::sample_spec;

    #[test]
    fn sample_context_never_fails() {
        let ctx = sample_spec().to_context().unwrap();
        let r = run_context(&ctx, &Suite::ALL, 0);
        assert!(!r.any_failed(), "{:#?}", r.failed().collect::<Vec<_>>());
        assert!(r.checks.windows(2).all(|w| (&w[0].suite, &w[0].name) <= (&w[1].suite, &w[1].name)));
    }
}
