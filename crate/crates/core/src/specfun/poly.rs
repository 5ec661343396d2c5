use num::traits::{One, Zero};

use super::{overlap_matrix, HatParams, OverlapKind, SUITE_POLYNOMIALS as SUITE};
use crate::bases::BasisSet;
use crate::error::{Error, Result};
use crate::qcore::{checked_div, phi32_terminating, ParamContext, QScalar, Terminator};
use crate::report::{CheckBuilder, Report};
use crate::repr::Representation;

fn check_degree(m: usize, n: usize) -> Result<()> {
    if m > n {
        return Err(Error::InvalidContext(format!("degree {m} exceeds N = {n}")));
    }
    Ok(())
}

/// `Q_m(q^{-x}; â, b̂, N; q) = ₃φ₂(q^{-m}, â b̂ q^{m+1}, q^{-x}; â q, q^{-N}; q, q)`.
pub fn qhahn_poly(h: &HatParams, m: usize, x: usize, n: usize) -> Result<QScalar> {
    check_degree(m, n)?;
    let num = [h.qpow(-(m as i64)), &h.a_hat * &h.b_hat * h.qpow(m as i64 + 1), h.qpow(-(x as i64))];
    let den = [&h.a_hat * &h.q, h.qpow(-(n as i64))];
    phi32_terminating(&h.q, &num, &den, &h.q, Terminator { index: 0, n: m })
}

/// `R_m(μ(x); â, b̂, N; q)` with `μ(x) = q^{-x} + â b̂ q^{x+1}`.
pub fn dual_qhahn_poly(h: &HatParams, m: usize, x: usize, n: usize) -> Result<QScalar> {
    check_degree(m, n)?;
    let num = [h.qpow(-(m as i64)), h.qpow(-(x as i64)), &h.a_hat * &h.b_hat * h.qpow(x as i64 + 1)];
    let den = [&h.a_hat * &h.q, h.qpow(-(n as i64))];
    phi32_terminating(&h.q, &num, &den, &h.q, Terminator { index: 0, n: m })
}

fn sign(k: usize) -> QScalar {
    if k.is_multiple_of(2) {
        QScalar::one()
    } else {
        -QScalar::one()
    }
}

/// Gauge-dependent factor with `S_m(n) = s_prefactor · Q_m(q^{-n})`.
pub fn s_prefactor(ctx: &ParamContext, m: usize, n: usize) -> Result<QScalar> {
    let h = HatParams::from_context(ctx);
    let (mi, ni, nn) = (m as i64, n as i64, ctx.big_n());
    let q = &ctx.q;
    let num = ctx.a_prod(0, n)
        * ctx.pw(mi * (mi - nn - 1) + ni * (ni + 1) / 2, mi - ni, ni - mi, 0)
        * ctx.poch(q, ctx.n)
        * sign(n)
        * ctx.poch(&(&h.a_hat * q), n);
    let den = ctx.a_prod(0, m)
        * ctx.poch(q, n)
        * ctx.poch(q, ctx.n - m)
        * ctx.poch(&(&h.a_hat * &h.b_hat * ctx.qpow(mi + 1)), m);
    checked_div(num, den, "S prefactor")
}

/// Gauge-dependent factor with `S̃_m(n) = s_tilde_prefactor · Q_m(q^{-n})`.
pub fn s_tilde_prefactor(ctx: &ParamContext, m: usize, n: usize) -> Result<QScalar> {
    let h = HatParams::from_context(ctx);
    let (mi, ni, nn) = (m as i64, n as i64, ctx.big_n());
    let q = &ctx.q;
    let ah_pow = crate::qcore::int_pow(&h.a_hat, nn - mi - ni)?;
    let num = ctx.a_prod(n, ctx.n)
        * ah_pow
        * ctx.pw(mi * (nn - mi) - ni * (ni + 3) / 2 + nn, ni - mi, mi - ni, 0)
        * ctx.poch(q, ctx.n)
        * sign(n)
        * ctx.poch(&(&h.a_hat * q), m)
        * ctx.poch(&(&h.b_hat * q), ctx.n - n);
    let den = ctx.a_prod(m, ctx.n)
        * ctx.poch(q, m)
        * ctx.poch(q, ctx.n - n)
        * ctx.poch(&(&h.b_hat * q), m)
        * ctx.poch(&(&h.a_hat * &h.b_hat * ctx.qpow(2 * mi + 2)), ctx.n - m);
    checked_div(num, den, "S-tilde prefactor")
}

pub fn verify_poly_identification(rep: &Representation, bases: &BasisSet) -> Report {
    let ctx = &rep.ctx;
    let h = HatParams::from_context(ctx);
    let s = overlap_matrix(rep, bases, OverlapKind::S).entries;
    let st = overlap_matrix(rep, bases, OverlapKind::STilde).entries;
    let mut cs = CheckBuilder::new(SUITE, "identification_S");
    let mut cst = CheckBuilder::new(SUITE, "identification_S_tilde");
    let mut cd = CheckBuilder::new(SUITE, "duality_qhahn_dual_qhahn");
    for m in 0..rep.dim() {
        for n in 0..rep.dim() {
            let loc = format!("m={m} n={n}");
            let qmn = qhahn_poly(&h, m, n, ctx.n);
            let mul = |p: Result<QScalar>| -> Result<QScalar> { Ok(p? * qmn.clone()?) };
            cs.eq(&loc, Ok(s[(m, n)].clone()), mul(s_prefactor(ctx, m, n)));
            cst.eq(&loc, Ok(st[(m, n)].clone()), mul(s_tilde_prefactor(ctx, m, n)));
            cd.eq(&loc, dual_qhahn_poly(&h, m, n, ctx.n), qhahn_poly(&h, n, m, ctx.n));
        }
    }
    let mut r = Report::new();
    r.push(cs.finish());
    r.push(cst.finish());
    r.push(cd.finish());
    r
}

/// Weight of the standard q-Hahn orthogonality at the point `n`.
fn qhahn_weight(ctx: &ParamContext, h: &HatParams, n: usize) -> Result<QScalar> {
    let q = &ctx.q;
    let qn = ctx.qpow(-ctx.big_n());
    let num = ctx.poch(&(&h.a_hat * q), n) * ctx.poch(&qn, n);
    let den =
        ctx.poch(q, n) * ctx.poch(&(&qn / &h.b_hat), n) * crate::qcore::int_pow(&(&h.a_hat * &h.b_hat * q), n as i64)?;
    checked_div(num, den, "q-Hahn weight")
}

/// Common factor `(â b̂ q²;q)_N / ((b̂ q;q)_N (â q)^N)` of both norms.
fn norm_base(ctx: &ParamContext, h: &HatParams) -> Result<QScalar> {
    let q = &ctx.q;
    let num = ctx.poch(&(&h.a_hat * &h.b_hat * q * q), ctx.n);
    let den = ctx.poch(&(&h.b_hat * q), ctx.n) * crate::qcore::int_pow(&(&h.a_hat * q), ctx.big_n())?;
    checked_div(num, den, "orthogonality normalization")
}

/// `1/h_m` of the q-Hahn orthogonality without the common factor.
fn qhahn_inverse_norm(ctx: &ParamContext, h: &HatParams, m: usize) -> Result<QScalar> {
    let q = &ctx.q;
    let (mi, nn) = (m as i64, ctx.big_n());
    let ab = &h.a_hat * &h.b_hat;
    let num = ctx.poch(q, m)
        * ctx.poch(&(&ab * ctx.qpow(nn + 2)), m)
        * ctx.poch(&(&h.b_hat * q), m)
        * (QScalar::one() - &ab * q)
        * crate::qcore::int_pow(&(-(&h.a_hat * q)), mi)?;
    let den = ctx.poch(&(&h.a_hat * q), m)
        * ctx.poch(&(&ab * q), m)
        * ctx.poch(&ctx.qpow(-nn), m)
        * (QScalar::one() - &ab * ctx.qpow(2 * mi + 1));
    // q^{m(m−1)/2 − N m}
    let qexp = crate::qcore::QExponent::with_fraction(mi * (mi - 1) - 2 * nn * mi, 2, 0, 0, 0);
    Ok(checked_div(num, den, "q-Hahn norm")? * ctx.eval_q_power(&qexp)?)
}

/// Weight of the dual q-Hahn orthogonality at degree `m`.
fn dual_weight(ctx: &ParamContext, h: &HatParams, m: usize) -> Result<QScalar> {
    let q = &ctx.q;
    let (mi, nn) = (m as i64, ctx.big_n());
    let ab = &h.a_hat * &h.b_hat;
    let num = ctx.poch(&(&h.a_hat * q), m)
        * ctx.poch(&(&ab * q), m)
        * ctx.poch(&ctx.qpow(-nn), m)
        * (QScalar::one() - &ab * ctx.qpow(2 * mi + 1));
    let den = ctx.poch(q, m)
        * ctx.poch(&(&ab * ctx.qpow(nn + 2)), m)
        * ctx.poch(&(&h.b_hat * q), m)
        * (QScalar::one() - &ab * q)
        * crate::qcore::int_pow(&(-(&h.a_hat * q)), mi)?;
    let qexp = crate::qcore::QExponent::with_fraction(2 * nn * mi - mi * (mi - 1), 2, 0, 0, 0);
    Ok(checked_div(num, den, "dual q-Hahn weight")? * ctx.eval_q_power(&qexp)?)
}

fn dual_inverse_norm(ctx: &ParamContext, h: &HatParams, n: usize) -> Result<QScalar> {
    let q = &ctx.q;
    let qn = ctx.qpow(-ctx.big_n());
    let num =
        ctx.poch(q, n) * ctx.poch(&(&qn / &h.b_hat), n) * crate::qcore::int_pow(&(&h.a_hat * &h.b_hat * q), n as i64)?;
    let den = ctx.poch(&(&h.a_hat * q), n) * ctx.poch(&qn, n);
    checked_div(num, den, "dual q-Hahn norm")
}

fn kron(i: usize, j: usize) -> QScalar {
    if i == j {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

pub fn verify_orthogonality_qhahn(rep: &Representation, bases: &BasisSet) -> Report {
    let ctx = &rep.ctx;
    let h = HatParams::from_context(ctx);
    let d = rep.dim();
    let n = ctx.n;
    let mut report = Report::new();

    let s = overlap_matrix(rep, bases, OverlapKind::S).entries;
    let st = overlap_matrix(rep, bases, OverlapKind::STilde).entries;
    let mut c = CheckBuilder::new(SUITE, "orthogonality_raw_overlaps");
    for m in 0..d {
        for mp in 0..d {
            let sum = (0..d).fold(QScalar::zero(), |acc, k| acc + &st[(m, k)] * &s[(mp, k)]);
            c.eq(&format!("m={m} m'={mp}"), Ok(sum), Ok(kron(m, mp)));
        }
    }
    report.push(c.finish());

    let qv: Result<Vec<Vec<QScalar>>> = (0..d).map(|m| (0..d).map(|x| qhahn_poly(&h, m, x, n)).collect()).collect();
    let mut c = CheckBuilder::new(SUITE, "orthogonality_qhahn");
    let mut cd = CheckBuilder::new(SUITE, "orthogonality_dual_qhahn");
    match qv {
        Err(e) => {
            c.error("polynomial values", &e);
            cd.error("polynomial values", &e);
        }
        Ok(qv) => {
            let weights: Result<Vec<_>> = (0..d).map(|x| qhahn_weight(ctx, &h, x)).collect();
            let dual_weights: Result<Vec<_>> = (0..d).map(|m| dual_weight(ctx, &h, m)).collect();
            for m in 0..d {
                for mp in 0..d {
                    let lhs = weights
                        .clone()
                        .map(|w| (0..d).fold(QScalar::zero(), |acc, x| acc + &w[x] * &qv[m][x] * &qv[mp][x]));
                    let rhs = (|| Ok(norm_base(ctx, &h)? * qhahn_inverse_norm(ctx, &h, m)? * kron(m, mp)))();
                    c.eq(&format!("m={m} m'={mp}"), lhs, rhs);
                }
            }
            for x in 0..d {
                for xp in 0..d {
                    let lhs = dual_weights
                        .clone()
                        .map(|w| (0..d).fold(QScalar::zero(), |acc, m| acc + &w[m] * &qv[m][x] * &qv[m][xp]));
                    let rhs = (|| Ok(norm_base(ctx, &h)? * dual_inverse_norm(ctx, &h, x)? * kron(x, xp)))();
                    cd.eq(&format!("n={x} n'={xp}"), lhs, rhs);
                }
            }
        }
    }
    report.push(c.finish());
    report.push(cd.finish());
    report
}

/// Recurrence coefficients `A_m`, `C_m` and difference coefficients `B(n)`, `D(n)`.
pub(crate) struct QHahnCoefficients<'a> {
    ctx: &'a ParamContext,
    h: HatParams,
}

impl<'a> QHahnCoefficients<'a> {
    pub(crate) fn new(ctx: &'a ParamContext) -> Self {
        QHahnCoefficients { ctx, h: HatParams::from_context(ctx) }
    }

    fn one_minus(&self, x: QScalar) -> QScalar {
        QScalar::one() - x
    }

    pub(crate) fn a(&self, m: i64) -> Result<QScalar> {
        let (c, h) = (self.ctx, &self.h);
        let ab = &h.a_hat * &h.b_hat;
        let num = self.one_minus(&ab * c.qpow(m + 1))
            * self.one_minus(&h.a_hat * c.qpow(m + 1))
            * self.one_minus(c.qpow(m - c.big_n()));
        let den = self.one_minus(&ab * c.qpow(2 * m + 1)) * self.one_minus(&ab * c.qpow(2 * m + 2));
        checked_div(num, den, "A_m")
    }

    pub(crate) fn c(&self, m: i64) -> Result<QScalar> {
        let (c, h) = (self.ctx, &self.h);
        let ab = &h.a_hat * &h.b_hat;
        let num = -(&h.a_hat * c.qpow(m - c.big_n()))
            * self.one_minus(c.qpow(m))
            * self.one_minus(&ab * c.qpow(m + c.big_n() + 1))
            * self.one_minus(&h.b_hat * c.qpow(m));
        let den = self.one_minus(&ab * c.qpow(2 * m)) * self.one_minus(&ab * c.qpow(2 * m + 1));
        checked_div(num, den, "C_m")
    }

    pub(crate) fn b(&self, n: i64) -> QScalar {
        let c = self.ctx;
        self.one_minus(&self.h.a_hat * c.qpow(n + 1)) * self.one_minus(c.qpow(n - c.big_n()))
    }

    pub(crate) fn d(&self, n: i64) -> QScalar {
        let c = self.ctx;
        &self.h.a_hat * &c.q * self.one_minus(c.qpow(n)) * (&self.h.b_hat - c.qpow(n - c.big_n() - 1))
    }
}

pub fn verify_bispectrality_qhahn(ctx: &ParamContext) -> Report {
    let h = HatParams::from_context(ctx);
    let co = QHahnCoefficients::new(ctx);
    let nn = ctx.n;
    let mut report = Report::new();

    let mut cb = CheckBuilder::new(SUITE, "qhahn_boundary_coefficients");
    cb.eq("C_0", co.c(0), Ok(QScalar::zero()));
    cb.eq("A_N", co.a(ctx.big_n()), Ok(QScalar::zero()));
    cb.eq("D(0)", Ok(co.d(0)), Ok(QScalar::zero()));
    cb.eq("B(N)", Ok(co.b(ctx.big_n())), Ok(QScalar::zero()));
    report.push(cb.finish());

    // p_{-1} and p_{N+1} only appear with the coefficients asserted zero above
    let p = |m: i64, x: i64| -> Result<QScalar> {
        if m < 0 || x < 0 || m > nn as i64 || x > nn as i64 {
            Ok(QScalar::zero())
        } else {
            qhahn_poly(&h, m as usize, x as usize, nn)
        }
    };
    let mut cr = CheckBuilder::new(SUITE, "qhahn_recurrence");
    let mut cd = CheckBuilder::new(SUITE, "qhahn_difference");
    for m in 0..=nn as i64 {
        for x in 0..=nn as i64 {
            let loc = format!("m={m} n={x}");
            let lhs = p(m, x).map(|v| -(QScalar::one() - ctx.qpow(-x)) * v);
            let rhs = (|| {
                let (a, c) = (co.a(m)?, co.c(m)?);
                Ok(&a * p(m + 1, x)? - (&a + &c) * p(m, x)? + c * p(m - 1, x)?)
            })();
            cr.eq(&loc, lhs, rhs);
            let ab = &h.a_hat * &h.b_hat;
            let lhs = p(m, x)
                .map(|v| ctx.qpow(-m) * (QScalar::one() - ctx.qpow(m)) * (QScalar::one() - ab * ctx.qpow(m + 1)) * v);
            let rhs = (|| {
                let (b, d) = (co.b(x), co.d(x));
                Ok(&b * p(m, x + 1)? - (&b + &d) * p(m, x)? + d * p(m, x - 1)?)
            })();
            cd.eq(&loc, lhs, rhs);
        }
    }
    report.push(cr.finish());
    report.push(cd.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use crate::repr::build_representation;
    use crate::testutil::{generic, generic_small, sample};

    #[test]
    fn trivial_values() {
        let h = HatParams::new(rat(3, 2), rat(2, 7), rat(-5, 3));
        for x in 0..4 {
            assert_eq!(qhahn_poly(&h, 0, x, 3).unwrap(), rat(1, 1));
            assert_eq!(dual_qhahn_poly(&h, 0, x, 3).unwrap(), rat(1, 1));
        }
        for m in 0..4 {
            assert_eq!(qhahn_poly(&h, m, 0, 3).unwrap(), rat(1, 1));
            assert_eq!(dual_qhahn_poly(&h, m, 0, 3).unwrap(), rat(1, 1));
        }
        assert!(qhahn_poly(&h, 4, 0, 3).is_err());
    }

    #[test]
    fn two_term_hand_sum() {
        // 1 + (1 − 1/2)(1 − 1/16)(1 − 1/2)·2 / ((1 − 2)(1 − 1/8)(1 − 1/4)) = 1 − 5/7
        let h = HatParams::new(rat(2, 1), rat(1, 16), rat(1, 4));
        assert_eq!(qhahn_poly(&h, 1, 1, 2).unwrap(), rat(2, 7));
    }

    #[test]
    fn first_overlap_is_one() {
        let rep = build_representation(&generic()).unwrap();
        let set = BasisSet::closed_form(&rep.ctx).unwrap();
        assert_eq!(overlap_matrix(&rep, &set, OverlapKind::S).entries[(0, 0)], rat(1, 1));
        assert_eq!(s_prefactor(&rep.ctx, 0, 0).unwrap(), rat(1, 1));
    }

    #[test]
    fn s_matches_brute_force_double_sum() {
        use crate::bases::{closed_form_coefficient, BasisLabel};
        let rep = build_representation(&generic_small()).unwrap();
        let set = BasisSet::closed_form(&rep.ctx).unwrap();
        let s = overlap_matrix(&rep, &set, OverlapKind::S).entries;
        let d = rep.dim();
        for m in 0..d {
            for n in 0..d {
                let mut acc = QScalar::zero();
                for l in 0..d {
                    acc += closed_form_coefficient(&rep.ctx, BasisLabel::E, m, l).unwrap()
                        * closed_form_coefficient(&rep.ctx, BasisLabel::FStar, n, l).unwrap();
                }
                assert_eq!(s[(m, n)], acc);
            }
        }
    }

    #[test]
    fn boundary_coefficients_vanish() {
        let r = verify_bispectrality_qhahn(&generic_small());
        assert_eq!(r.get("qhahn_boundary_coefficients").unwrap().status, crate::Status::Pass);
        // â b̂ q^6 = 1 on the sample puts a pole in A_N
        let c = verify_bispectrality_qhahn(&sample()).get("qhahn_boundary_coefficients").cloned().unwrap();
        assert_eq!((c.status, c.skipped), (crate::Status::Skipped, 1));
    }

    #[test]
    fn all_polynomial_checks_pass_on_generic_contexts() {
        for ctx in [generic(), generic_small()] {
            let rep = build_representation(&ctx).unwrap();
            let set = BasisSet::closed_form(&ctx).unwrap();
            let r = super::super::verify_polynomials(&rep, &set);
            assert!(r.all_passed(), "{:#?}", r.failed().collect::<Vec<_>>());
        }
    }

    #[test]
    fn gauge_sweep_keeps_identification() {
        let ctx = generic().regauged(vec![rat(-7, 3), rat(1, 9), rat(4, 1), rat(5, 2)]).unwrap();
        let rep = build_representation(&ctx).unwrap();
        let set = BasisSet::closed_form(&ctx).unwrap();
        assert!(verify_poly_identification(&rep, &set).all_passed());
    }

    #[test]
    fn one_dimensional_orthogonality_by_hand() {
        let ctx = ParamContext::with_unit_gauge(rat(3, 2), rat(5, 7), rat(5, 11), rat(4, 5), 1).unwrap();
        let rep = build_representation(&ctx).unwrap();
        let set = BasisSet::closed_form(&ctx).unwrap();
        let r = verify_orthogonality_qhahn(&rep, &set);
        assert!(r.all_passed(), "{:#?}", r.failed().collect::<Vec<_>>());
        // m = m' = 0: Σ_x w(x) equals the common factor
        let h = HatParams::from_context(&ctx);
        let s = qhahn_weight(&ctx, &h, 0).unwrap() + qhahn_weight(&ctx, &h, 1).unwrap();
        assert_eq!(s, norm_base(&ctx, &h).unwrap());
    }
}
