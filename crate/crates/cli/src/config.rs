//! TOML run configuration. Rationals are strings such as `"3/2"` so they
//! survive I/O exactly.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use mqh_core::bases::validate_genericity;
use mqh_core::{ParamContext, QScalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    Embedding,
    Bases,
    Actions,
    Polynomials,
    Rationals,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Embedding, Suite::Bases, Suite::Actions, Suite::Polynomials, Suite::Rationals];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Embedding => "embedding",
            Suite::Bases => "bases",
            Suite::Actions => "actions",
            Suite::Polynomials => "polynomials",
            Suite::Rationals => "rationals",
        }
    }
}

/// Expands `all` and removes duplicates; an empty list means every suite.
pub fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(Suite::ALL);
            continue;
        }
        let s = Suite::ALL
            .into_iter()
            .find(|s| s.as_str() == n)
            .ok_or_else(|| CliError::Config(format!("unknown suite `{n}`")))?;
        out.push(s);
    }
    if out.is_empty() {
        out.extend(Suite::ALL);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gauge {
    #[default]
    Unit,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub q: String,
    pub t_alpha: String,
    pub t_beta: String,
    pub t_mu: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
}

pub fn parse_rational(s: &str) -> Result<QScalar, CliError> {
    let t = s.trim();
    if t.contains('/')
        && t.split('/').nth(1).is_some_and(|d| d.trim_start_matches(['-', '+']).chars().all(|c| c == '0'))
    {
        return Err(CliError::Config(format!("zero denominator in `{s}`")));
    }
    QScalar::from_str(t).map_err(|_| CliError::Config(format!("`{s}` is not a rational of the form p or p/q")))
}

impl ContextSpec {
    pub fn from_context(ctx: &ParamContext) -> Self {
        ContextSpec {
            q: ctx.q.to_string(),
            t_alpha: ctx.t_alpha.to_string(),
            t_beta: ctx.t_beta.to_string(),
            t_mu: ctx.t_mu.to_string(),
            n: ctx.n,
            a: Some(ctx.a_seq.iter().map(ToString::to_string).collect()),
        }
    }

    pub fn to_context(&self) -> Result<ParamContext, CliError> {
        let (q, ta, tb, tm) = (
            parse_rational(&self.q)?,
            parse_rational(&self.t_alpha)?,
            parse_rational(&self.t_beta)?,
            parse_rational(&self.t_mu)?,
        );
        let r = match &self.a {
            None => ParamContext::with_unit_gauge(q, ta, tb, tm, self.n),
            Some(a) => {
                let a = a.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
                ParamContext::new(q, ta, tb, tm, self.n, a)
            }
        };
        r.map_err(|e| CliError::Degenerate(e.to_string()))
    }
}

/// Random-sampling recipe.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    #[serde(default)]
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_max_n")]
    pub max_n: usize,
    #[serde(default)]
    pub gauge: Gauge,
}

fn default_max_n() -> usize {
    8
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub suites: Vec<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub fail_fast: bool,
    #[serde(default, rename = "context")]
    pub contexts: Vec<ContextSpec>,
    pub sampling: Option<SamplingSpec>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Where a context came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Explicit,
    Sampled,
}

impl Origin {
    pub fn as_str(&self) -> &'static str {
        match self {
            Origin::Explicit => "explicit",
            Origin::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub contexts: Vec<(ParamContext, Origin)>,
    pub suites: Vec<Suite>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub fail_fast: bool,
    /// Seeds the pencil scalars of the embedding suite.
    pub seed: u64,
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub suites: Vec<String>,
    pub seed: Option<u64>,
    pub contexts: Option<usize>,
    pub max_n: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub fail_fast: bool,
}

/// The fixed sample context used when nothing else is requested.
pub fn sample_spec() -> ContextSpec {
    ContextSpec { q: "2".into(), t_alpha: "8".into(), t_beta: "4".into(), t_mu: "2".into(), n: 2, a: None }
}

/// Explicit contexts must at least have distinct spectra; other degeneracies
/// only skip the affected points.
pub fn admit_explicit(ctx: &ParamContext) -> Result<(), CliError> {
    let g = validate_genericity(ctx);
    if !g.spectral.is_empty() {
        return Err(CliError::Degenerate(g.spectral.join("; ")));
    }
    Ok(())
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, ov: Overrides) -> Result<Self, CliError> {
        let suites = parse_suites(if ov.suites.is_empty() { &file.suites } else { &ov.suites })?;
        let mut contexts = Vec::new();
        for spec in &file.contexts {
            let ctx = spec.to_context()?;
            admit_explicit(&ctx)?;
            contexts.push((ctx, Origin::Explicit));
        }
        let mut sampling = file.sampling.clone();
        if ov.contexts.is_some() || ov.seed.is_some() || ov.max_n.is_some() {
            let base = sampling.clone().unwrap_or(SamplingSpec {
                seed: 0,
                count: 0,
                max_n: default_max_n(),
                gauge: Gauge::Unit,
            });
            sampling = Some(SamplingSpec {
                seed: ov.seed.unwrap_or(base.seed),
                count: ov.contexts.unwrap_or(if base.count == 0 && file.contexts.is_empty() { 1 } else { base.count }),
                max_n: ov.max_n.unwrap_or(base.max_n),
                gauge: base.gauge,
            });
        }
        let seed = sampling.as_ref().map_or(0, |s| s.seed);
        if let Some(s) = &sampling {
            let drawn = crate::sampler::sample_contexts(s.seed, s.count, s.max_n, s.gauge)?;
            contexts.extend(drawn.into_iter().map(|c| (c, Origin::Sampled)));
        }
        if contexts.is_empty() {
            let ctx = sample_spec().to_context()?;
            contexts.push((ctx, Origin::Explicit));
        }
        Ok(RunConfig {
            contexts,
            suites,
            format: ov.format.or(file.format).unwrap_or_default(),
            out: ov.out.or(file.out),
            fail_fast: ov.fail_fast || file.fail_fast,
            seed,
        })
    }
}
