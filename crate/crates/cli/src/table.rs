//! Function tables on the `(m, n)` grid.

use std::fmt::Write as _;

use mqh_core::bases::validate_genericity;
use mqh_core::specfun::{dual_qhahn_poly, qhahn_poly, rational_u, rational_v, HatParams, RationalParams};
use mqh_core::{ParamContext, QScalar};
use num::bigint::BigInt;
use num::traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{parse_rational, ContextSpec};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
pub enum Function {
    #[value(name = "qhahn")]
    #[serde(rename = "qhahn")]
    QHahn,
    #[value(name = "dual_qhahn")]
    #[serde(rename = "dual_qhahn")]
    DualQHahn,
    #[value(name = "U")]
    #[serde(rename = "U")]
    U,
    #[value(name = "V")]
    #[serde(rename = "V")]
    V,
}

impl Function {
    pub fn as_str(&self) -> &'static str {
        match self {
            Function::QHahn => "qhahn",
            Function::DualQHahn => "dual_qhahn",
            Function::U => "U",
            Function::V => "V",
        }
    }
}

/// `values[m][n]` of the chosen function at integer argument `n`.
pub fn compute_table(ctx: &ParamContext, f: Function) -> Result<Vec<Vec<QScalar>>, CliError> {
    let g = validate_genericity(ctx);
    if !g.spectral.is_empty() {
        return Err(CliError::Degenerate(g.spectral.join("; ")));
    }
    let n = ctx.n;
    let h = HatParams::from_context(ctx);
    let p = RationalParams::from_context(ctx)?;
    let mut rows = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let row = (0..=n)
            .map(|x| match f {
                Function::QHahn => qhahn_poly(&h, m, x, n),
                Function::DualQHahn => dual_qhahn_poly(&h, m, x, n),
                Function::U => rational_u(&p, m, x),
                Function::V => rational_v(&p, m, x),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub function: Function,
    pub context: ContextSpec,
    /// Exact fraction strings, `values[m][n]`.
    pub values: Vec<Vec<String>>,
}

impl TableDoc {
    pub fn new(ctx: &ParamContext, f: Function, values: &[Vec<QScalar>]) -> Self {
        TableDoc {
            function: f,
            context: ContextSpec::from_context(ctx),
            values: values.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn exact_values(&self) -> Result<Vec<Vec<QScalar>>, CliError> {
        self.values.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect()
    }
}

pub fn render_structured(doc: &TableDoc) -> String {
    let mut s = serde_json::to_string(doc).expect("table serializes");
    s.push('\n');
    s
}

pub fn parse_structured(text: &str) -> Result<TableDoc, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("table: {e}")))
}

/// Decimal expansion of `x` truncated to `digits` places.
pub fn to_decimal(x: &QScalar, digits: usize) -> String {
    let neg = x.is_negative();
    let (num, den) = (x.numer().abs(), x.denom().clone());
    let int = &num / &den;
    let mut rem = &num % &den;
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        s.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            s.push_str(&(&rem / &den).to_string());
            rem %= &den;
        }
    }
    if neg && int.is_zero() && s.trim_start_matches(['-', '0', '.']).is_empty() {
        s.remove(0);
    }
    s
}

pub fn render_human(doc: &TableDoc, values: &[Vec<QScalar>], decimals: Option<usize>) -> String {
    let c = &doc.context;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} on q={} t_alpha={} t_beta={} t_mu={} N={}",
        doc.function.as_str(),
        c.q,
        c.t_alpha,
        c.t_beta,
        c.t_mu,
        c.n
    );
    let cells: Vec<Vec<String>> = values
        .iter()
        .map(|r| r.iter().map(|v| decimals.map_or_else(|| v.to_string(), |d| to_decimal(v, d))).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = write!(s, "{:>4} |", "m\\n");
    for n in 0..values.first().map_or(0, Vec::len) {
        let _ = write!(s, " {n:>width$}");
    }
    s.push('\n');
    for (m, row) in cells.iter().enumerate() {
        let _ = write!(s, "{m:>4} |");
        for v in row {
            let _ = write!(s, " {v:>width$}");
        }
        s.push('\n');
    }
    s
}
