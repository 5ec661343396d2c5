//! Matrix elements of algebra elements in the six bases: closed forms against
//! a change-of-basis oracle, transposed duality and the Leonard pair shape.

use std::fmt;

use num::traits::{One, Zero};

use crate::bases::{closed_form_basis, lambda, nu, rho, BasisLabel, BasisSet};
use crate::error::Result;
use crate::linalg::{lincomb, QMatrix};
use crate::ops;
use crate::qcore::{checked_div, ParamContext, QExponent, QScalar};
use crate::report::{CheckBuilder, Report};
use crate::repr::Representation;

pub const SUITE: &str = "actions";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Z,
    X,
    V,
    W,
    Zt,
    Xt,
    Vt,
    Wt,
    /// `VZ`
    VZ,
    /// `VᵀZᵀ`
    VtZt,
}

impl Operator {
    pub fn as_str(&self) -> &'static str {
        match self {
            Operator::Z => "Z",
            Operator::X => "X",
            Operator::V => "V",
            Operator::W => "W",
            Operator::Zt => "Z^T",
            Operator::Xt => "X^T",
            Operator::Vt => "V^T",
            Operator::Wt => "W^T",
            Operator::VZ => "VZ",
            Operator::VtZt => "V^TZ^T",
        }
    }

    pub fn matrix(&self, rep: &Representation) -> QMatrix {
        match self {
            Operator::Z => rep.z.clone(),
            Operator::X => rep.x.clone(),
            Operator::V => rep.v.clone(),
            Operator::W => rep.w(),
            Operator::Zt => rep.z.transpose(),
            Operator::Xt => rep.x.transpose(),
            Operator::Vt => rep.v.transpose(),
            Operator::Wt => rep.w().transpose(),
            Operator::VZ => &rep.v * &rep.z,
            Operator::VtZt => &rep.v.transpose() * &rep.z.transpose(),
        }
    }

    pub fn transposed(&self) -> Operator {
        match self {
            Operator::Z => Operator::Zt,
            Operator::X => Operator::Xt,
            Operator::V => Operator::Vt,
            Operator::W => Operator::Wt,
            Operator::Zt => Operator::Z,
            Operator::Xt => Operator::X,
            Operator::Vt => Operator::V,
            Operator::Wt => Operator::W,
            Operator::VZ => Operator::VtZt,
            Operator::VtZt => Operator::VZ,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every (operator, basis) pair with a closed-form matrix.
pub const CLOSED_FORMS: [(Operator, BasisLabel); 16] = [
    (Operator::Z, BasisLabel::E),
    (Operator::X, BasisLabel::E),
    (Operator::V, BasisLabel::E),
    (Operator::W, BasisLabel::E),
    (Operator::V, BasisLabel::F),
    (Operator::W, BasisLabel::F),
    (Operator::Z, BasisLabel::D),
    (Operator::X, BasisLabel::D),
    (Operator::V, BasisLabel::D),
    (Operator::VZ, BasisLabel::D),
    (Operator::Zt, BasisLabel::DStar),
    (Operator::Xt, BasisLabel::DStar),
    (Operator::Vt, BasisLabel::DStar),
    (Operator::VtZt, BasisLabel::DStar),
    (Operator::Z, BasisLabel::F),
    (Operator::X, BasisLabel::F),
];

/// `M|b_n⟩ = Σ_j entries[(j, n)] |b_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatrix {
    pub operator_name: String,
    pub basis_label: BasisLabel,
    pub entries: QMatrix,
}

/// Change of basis `B⁻¹ M B` with the basis vectors as the columns of `B`.
pub fn matrix_in_basis(m: &QMatrix, basis: &crate::bases::BasisFamily, name: &str) -> Result<BasisMatrix> {
    let b = basis.matrix();
    let entries = b.solve(&(m * &b))?;
    Ok(BasisMatrix { operator_name: name.to_string(), basis_label: basis.label, entries })
}

fn z_e(ctx: &ParamContext, j: i64, n: i64) -> Result<QScalar> {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == n + 1 {
        return Ok(ctx.a(n));
    }
    if j == n {
        let num = pw(-2 * n, 1, 1, 0)
            * (&ctx.q * br(n, 0, 0, 0) * br(-n - nn, 0, 2, 0) + br(n - nn, 0, 0, 0) * br(2 - n, 0, 2, 0));
        let den = br(-2 * n, 0, 2, 0) * br(2 - 2 * n, 0, 2, 0);
        return Ok(-QScalar::one() - checked_div(num, den, "Z^(e) diagonal")?);
    }
    if j == n - 1 {
        let num =
            pw(-1, 2, -2, 0) * br(n, 0, 0, 0) * br(n - nn - 1, 0, 0, 0) * br(2 - n, 0, 2, 0) * br(1 - n - nn, 0, 2, 0);
        let t = br(2 * n - 2, 0, -2, 0);
        let den = ctx.a(n - 1) * &t * &t * br(1 - 2 * n, 0, 2, 0) * br(3 - 2 * n, 0, 2, 0);
        return checked_div(num, den, "Z^(e) superdiagonal");
    }
    Ok(QScalar::zero())
}

fn x_e(ctx: &ParamContext, j: i64, n: i64) -> Result<QScalar> {
    let nn = ctx.big_n();
    let one = QScalar::one();
    if j == n + 1 {
        return Ok(ctx.br(-n, 0, 1, 0) * ctx.a(n));
    }
    if j == n {
        let num = ctx.pw(-n, 1, 0, 0) * (&one + ctx.pw(-nn, 0, 1, 0)) * (&one + ctx.pw(1, 0, 1, 0));
        let den = (&one + ctx.pw(-n, 0, 1, 0)) * (&one + ctx.pw(1 - n, 0, 1, 0));
        return Ok((checked_div(num, den, "X^(e) diagonal")? - &one) / (&one - &ctx.q));
    }
    if j == n - 1 {
        return Ok(ctx.br(n - 1, 0, -1, 0) * z_e(ctx, j, n)?);
    }
    Ok(QScalar::zero())
}

fn w_e(ctx: &ParamContext, j: i64, m: i64) -> Result<QScalar> {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == m + 1 {
        return Ok(pw(0, 0, 0, 1) * br(-m, 0, 1, -1) * ctx.a(m));
    }
    if j == m {
        let t1 = checked_div(
            pw(-m, 1, 0, 0) * br(m, 0, 0, 0) * br(1 - m - nn, 0, 2, 0) * br(1 - m, 0, 1, 1),
            br(1 - 2 * m, 0, 2, 0) * br(2 - 2 * m, 0, 2, 0),
            "W^(e) diagonal",
        )?;
        let t2 = checked_div(
            pw(-m, 1, 0, 0) * br(m - nn, 0, 0, 0) * br(1 - m, 0, 2, 0) * br(m, 0, -1, 1),
            br(2 * m, 0, -2, 0) * br(1 - 2 * m, 0, 2, 0),
            "W^(e) diagonal",
        )?;
        return Ok(t1 - t2 + pw(0, 1, 0, 0) * br(0, -1, 0, 1));
    }
    if j == m - 1 {
        let num = pw(-1, 2, -2, 1)
            * br(m, 0, 0, 0)
            * br(m - nn - 1, 0, 0, 0)
            * br(2 - m, 0, 2, 0)
            * br(1 - m - nn, 0, 2, 0)
            * br(m - 1, 0, -1, -1);
        let t = br(2 * m - 2, 0, -2, 0);
        let den = ctx.a(m - 1) * &t * &t * br(1 - 2 * m, 0, 2, 0) * br(3 - 2 * m, 0, 2, 0);
        return checked_div(num, den, "W^(e) superdiagonal");
    }
    Ok(QScalar::zero())
}

fn v_f(ctx: &ParamContext, j: i64, n: i64) -> QScalar {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == n + 1 {
        ctx.a(n) * pw(n + 1, -1, 0, 0) * br(n, 0, -1, 1) * br(n - nn + 1, 0, 1, 1)
    } else if j == n {
        br(n, 0, 0, 0) * br(n - nn, 0, 0, 1)
            + &ctx.q * br(n - nn, 0, 1, 0) * br(n, 0, -1, 1)
            + pw(n, 0, 0, 0) * br(0, 0, -1, 0) * br(1, 0, 0, 1)
    } else if j == n - 1 {
        pw(1 - n, 1, 0, 0) * br(n, 0, 0, 0) * br(n - nn - 1, 0, 0, 0) / ctx.a(n - 1)
    } else {
        QScalar::zero()
    }
}

fn v_d(ctx: &ParamContext, j: i64, n: i64) -> QScalar {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == n - 1 {
        pw(1 - n, 1, 0, 0) * br(n, 0, 0, 0) * br(n - nn - 1, 0, 0, 0) / ctx.a(n - 1)
    } else if j == n {
        pw(n, -1, 0, 0) * (br(0, 1, -1, 0) * br(1 - nn, 1, 1, 0) - br(1 - n, 1, 0, 0) * br(-n, 1, 0, 0))
    } else if j > n {
        pw(j, -1, 0, 0) * br(0, 1, -1, 0) * br(1 - nn, 1, 1, 0) * ctx.a_prod(n as usize, j as usize)
    } else {
        QScalar::zero()
    }
}

fn vt_dstar(ctx: &ParamContext, j: i64, n: i64) -> QScalar {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == n + 1 {
        pw(-n, 1, 0, 0) * br(n + 1, 0, 0, 0) * br(n - nn, 0, 0, 0) / ctx.a(n)
    } else if j == n {
        pw(n + 1, -1, 0, 0) * (br(-1, 1, -1, 0) * br(-nn, 1, 1, 0) - br(-n, 1, 0, 0) * br(-n - 1, 1, 0, 0))
    } else if j < n {
        pw(j + 1, -1, 0, 0) * br(-1, 1, -1, 0) * br(-nn, 1, 1, 0) * ctx.a_prod(j as usize, n as usize)
    } else {
        QScalar::zero()
    }
}

fn vtzt_dstar(ctx: &ParamContext, j: i64, n: i64) -> QScalar {
    let nn = ctx.big_n();
    let (br, pw) = (|a, b, c, d| ctx.br(a, b, c, d), |a, b, c, d| ctx.pw(a, b, c, d));
    if j == n + 1 {
        pw(-nn, 1, 0, 0) * br(n + 1, 0, 0, 0) * br(nn - n, 0, 0, 0) / ctx.a(n)
    } else if j == n {
        pw(n, 0, -1, 0) * br(0, 0, 1, 0) * br(1 - nn, 0, 1, 0)
            - br(n, 0, 0, 0) * br(1 - n, 1, 0, 0)
            - &ctx.q * br(n - nn, 0, 0, 0) * br(-n - 1, 1, 0, 0)
    } else if j == n - 1 {
        ctx.a(n - 1) * &ctx.q * br(-n, 1, 0, 0) * br(n - 1, -1, 0, 0)
    } else {
        QScalar::zero()
    }
}

/// `Z^(f)_{j,n}` for `j > n`.
fn z_f_tail(ctx: &ParamContext, j: i64, n: i64) -> Result<QScalar> {
    let k = j - n - 1;
    let e = QExponent::with_fraction(k * (-n - j), 2, k, 0, -k);
    let sign = if (j + n + 1) % 2 == 0 { QScalar::one() } else { -QScalar::one() };
    Ok(sign * ctx.a_prod(n as usize, j as usize) / ctx.eval_q_power(&e)?)
}

/// Entry `(j, n)` of the closed-form matrix of `op` in basis `label`.
pub fn closed_form_entry(ctx: &ParamContext, op: Operator, label: BasisLabel, j: usize, n: usize) -> Result<QScalar> {
    use BasisLabel::*;
    use Operator::*;
    let (ji, ni) = (j as i64, n as i64);
    let diag_or = |diag: QScalar, sub: QScalar| {
        if ji == ni {
            diag
        } else if ji == ni + 1 {
            sub
        } else {
            QScalar::zero()
        }
    };
    let v = match (op, label) {
        (Z, E) => z_e(ctx, ji, ni)?,
        (X, E) => x_e(ctx, ji, ni)?,
        (W, E) => w_e(ctx, ji, ni)?,
        (V, E) if j == n => nu(ctx, ni),
        (V, F) => v_f(ctx, ji, ni),
        (W, F) if j == n => rho(ctx, ni),
        (V, E) | (W, F) => QScalar::zero(),
        (Z, D) => diag_or(-QScalar::one(), ctx.a(ni)),
        (X, D) => diag_or(-lambda(ctx, ni), lambda(ctx, ni) * ctx.a(ni)),
        (V, D) => v_d(ctx, ji, ni),
        (VZ, D) => vtzt_dstar(ctx, ni, ji),
        (Zt, DStar) => {
            if j == n {
                -QScalar::one()
            } else if ji == ni - 1 {
                ctx.a(ni - 1)
            } else {
                QScalar::zero()
            }
        }
        (Xt, DStar) => {
            if j == n {
                -lambda(ctx, ni)
            } else if ji == ni - 1 {
                lambda(ctx, ni) * ctx.a(ni - 1)
            } else {
                QScalar::zero()
            }
        }
        (Vt, DStar) => vt_dstar(ctx, ji, ni),
        (VtZt, DStar) => vtzt_dstar(ctx, ji, ni),
        (Z, F) | (X, F) => {
            if j == n {
                if op == Z {
                    -QScalar::one()
                } else {
                    -lambda(ctx, ni)
                }
            } else if j > n {
                let t = z_f_tail(ctx, ji, ni)?;
                if op == Z {
                    t
                } else {
                    ctx.br(0, 0, 0, 1) * t
                }
            } else {
                QScalar::zero()
            }
        }
        _ => {
            return Err(crate::Error::InvalidContext(format!("no closed form for {op} in basis {label}")));
        }
    };
    Ok(v)
}

pub fn closed_form_entries(ctx: &ParamContext, op: Operator, label: BasisLabel) -> Result<BasisMatrix> {
    let entries = QMatrix::try_from_fn(ctx.dim(), |j, n| closed_form_entry(ctx, op, label, j, n))?;
    Ok(BasisMatrix { operator_name: op.as_str().to_string(), basis_label: label, entries })
}

/// Expected band `(lower, upper)` of a closed-form matrix; `None` where the
/// matrix has a full triangular tail.
fn band(op: Operator, label: BasisLabel) -> (usize, usize) {
    use BasisLabel::*;
    use Operator::*;
    match (op, label) {
        (V, E) | (W, F) => (0, 0),
        (Z, D) | (X, D) => (1, 0),
        (Zt, DStar) | (Xt, DStar) => (0, 1),
        (V, D) => (usize::MAX, 1),
        (Vt, DStar) => (1, usize::MAX),
        (Z, F) | (X, F) => (usize::MAX, 0),
        _ => (1, 1),
    }
}

pub fn verify_actions_suite(rep: &Representation) -> Report {
    let mut report = Report::new();
    let ctx = &rep.ctx;
    let bases = match BasisSet::closed_form(ctx) {
        Ok(b) => b,
        Err(e) => {
            let mut c = CheckBuilder::new(SUITE, "closed_form_entries");
            c.error("basis construction", &e);
            report.push(c.finish());
            return report;
        }
    };
    let mut oracle = std::collections::HashMap::new();
    for (op, label) in CLOSED_FORMS {
        let name = format!("{op}^({label})");
        let mut c = CheckBuilder::new(SUITE, &format!("closed_form_{name}"));
        let o = matrix_in_basis(&op.matrix(rep), bases.get(label), &name).map(|m| m.entries);
        let cf = closed_form_entries(ctx, op, label).map(|m| m.entries);
        c.eq_matrix("entries", cf.clone(), o.clone());
        if let Ok(m) = &cf {
            let (lo, up) = band(op, label);
            let outside = m.entries_outside(lo, up);
            c.holds("band shape", Ok(outside.is_empty()), ops![("nonzero_entries", format!("{outside:?}"))]);
        }
        report.push(c.finish());
        oracle.insert((op, label), o);
    }

    let mut c = CheckBuilder::new(SUITE, "pencil_W_from_X_and_Z");
    let mu = rep.mu_bracket();
    let xz = match (
        closed_form_entries(ctx, Operator::X, BasisLabel::E),
        closed_form_entries(ctx, Operator::Z, BasisLabel::E),
    ) {
        (Ok(x), Ok(z)) => Ok(lincomb(&[(QScalar::one(), &x.entries), (-mu, &z.entries)])),
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    c.eq_matrix("W^(e)", closed_form_entries(ctx, Operator::W, BasisLabel::E).map(|m| m.entries), xz);
    report.push(c.finish());

    let mut c = CheckBuilder::new(SUITE, "transposed_duality");
    for op in [Operator::Z, Operator::X, Operator::V, Operator::W] {
        for (b, bs) in [(BasisLabel::E, BasisLabel::EStar), (BasisLabel::F, BasisLabel::FStar)] {
            let lhs = matrix_in_basis(&op.transposed().matrix(rep), bases.get(bs), "").map(|m| m.entries);
            let rhs = matrix_in_basis(&op.matrix(rep), bases.get(b), "").map(|m| m.entries.transpose());
            c.eq_matrix(&format!("{op} on {b}"), lhs, rhs);
        }
    }
    report.push(c.finish());

    let mut c = CheckBuilder::new(SUITE, "vz_diagonal_duality");
    for n in 0..rep.dim() {
        c.eq(
            &format!("n={n}"),
            closed_form_entry(ctx, Operator::VZ, BasisLabel::D, n, n),
            closed_form_entry(ctx, Operator::VtZt, BasisLabel::DStar, n, n),
        );
    }
    report.push(c.finish());
    report.extend(leonard_pair_check(rep, &bases));
    report
}

/// `V` diagonal and `W` irreducible tridiagonal on `e`; the roles swap on `f`.
pub fn leonard_pair_check(rep: &Representation, bases: &BasisSet) -> Report {
    let mut report = Report::new();
    let w = rep.w();
    for (name, diag_op, tri_op, label) in
        [("leonard_pair_e", &rep.v, &w, BasisLabel::E), ("leonard_pair_f", &w, &rep.v, BasisLabel::F)]
    {
        let mut c = CheckBuilder::new(SUITE, name);
        let fam = bases.get(label);
        match (matrix_in_basis(diag_op, fam, ""), matrix_in_basis(tri_op, fam, "")) {
            (Ok(dm), Ok(tm)) => {
                let off = dm.entries.entries_outside(0, 0);
                c.holds("diagonal", Ok(off.is_empty()), ops![("nonzero_entries", format!("{off:?}"))]);
                let out = tm.entries.entries_outside(1, 1);
                c.holds("tridiagonal", Ok(out.is_empty()), ops![("nonzero_entries", format!("{out:?}"))]);
                let d = rep.dim();
                let vanishing: Vec<_> =
                    (1..d).filter(|&i| tm.entries[(i, i - 1)].is_zero() || tm.entries[(i - 1, i)].is_zero()).collect();
                c.holds(
                    "irreducible",
                    Ok(vanishing.is_empty()),
                    ops![("vanishing_offdiagonal_at", format!("{vanishing:?}"))],
                );
            }
            (Err(e), _) | (_, Err(e)) => c.error("change of basis", &e),
        }
        report.push(c.finish());
    }
    report
}

/// Convenience: the closed-form matrix of `op` in basis `label` via the
/// closed-form basis family.
pub fn oracle_matrix(rep: &Representation, op: Operator, label: BasisLabel) -> Result<BasisMatrix> {
    let fam = closed_form_basis(&rep.ctx, label)?;
    matrix_in_basis(&op.matrix(rep), &fam, op.as_str())
}
