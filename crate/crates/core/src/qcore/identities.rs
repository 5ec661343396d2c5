//! Sweeps of the q-Pochhammer identities and the terminating `₃φ₂`
//! transformations used to bring overlaps into q-Hahn form.

use num::traits::{One, Zero};

use super::{checked_div as div, int_pow, phi32_terminating, ParamContext, QLattice, QScalar, Terminator};
use crate::error::Result;
use crate::ops;
use crate::report::{CheckBuilder, Report};

pub const SUITE: &str = "polynomials";

#[derive(Debug, Clone)]
pub struct SweepRanges {
    pub max_k: usize,
    pub max_l: usize,
    pub max_n: usize,
    /// Parameter values substituted for `a`, `b`, `d`, `e`.
    pub samples: Vec<QScalar>,
}

impl SweepRanges {
    /// Sample values built from the context's own generators, so a random
    /// context gives a random sweep.
    pub fn from_context(ctx: &ParamContext, bound: usize) -> Self {
        let three_sevenths = QScalar::new(3.into(), 7.into());
        let samples = vec![
            ctx.t_alpha.clone(),
            ctx.t_beta.recip(),
            &ctx.t_mu * &ctx.q,
            &ctx.t_alpha * &ctx.t_beta,
            &ctx.t_mu * three_sevenths,
        ];
        SweepRanges { max_k: bound, max_l: bound, max_n: bound, samples }
    }
}

fn tri(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

pub fn pochhammer_identity_suite(ctx: &ParamContext, r: &SweepRanges) -> Report {
    let l = ctx.lattice();
    let q = &ctx.q;
    let mut rep = Report::new();

    let mut c = CheckBuilder::new(SUITE, "pochhammer_reflection");
    for a in &r.samples {
        for k in 0..=r.max_k {
            let lhs = l.poch(a, k);
            let rhs = int_pow(&-a, k as i64).map(|p| p * l.qpow(tri(k)) * l.poch(&(l.qpow(1 - k as i64) / a), k));
            c.eq(&format!("a={a} k={k}"), Ok(lhs), rhs);
        }
    }
    rep.push(c.finish());

    let mut c = CheckBuilder::new(SUITE, "pochhammer_of_negative_power");
    for ll in 0..=r.max_l {
        for k in 0..=r.max_k {
            let lhs = l.poch(&l.qpow(-(ll as i64)), k);
            let loc = format!("l={ll} k={k}");
            if k > ll {
                c.holds(&loc, Ok(lhs.is_zero()), ops![("lhs", lhs)]);
                continue;
            }
            let sign = if k % 2 == 0 { QScalar::one() } else { -QScalar::one() };
            let rhs = div(sign * l.qpow(tri(k) - (ll * k) as i64) * l.poch(q, ll), l.poch(q, ll - k), "(q;q)_{l-k}");
            c.eq(&loc, Ok(lhs), rhs);
        }
    }
    rep.push(c.finish());

    let inv = l.inverted();
    let mut c = CheckBuilder::new(SUITE, "pochhammer_base_inversion");
    for a in &r.samples {
        for k in 0..=r.max_k {
            let lhs = inv.poch(a, k);
            let rhs = int_pow(&-a, k as i64).map(|p| p * l.poch(&a.recip(), k) * l.qpow(-tri(k)));
            c.eq(&format!("a={a} k={k}"), Ok(lhs), rhs);
        }
    }
    rep.push(c.finish());

    let mut c = CheckBuilder::new(SUITE, "pochhammer_index_shift");
    for a in &r.samples {
        for k in 0..=r.max_k {
            for ll in 0..=r.max_l {
                let (ki, li) = (k as i64, ll as i64);
                let lhs = l.poch_signed(a, ki - li);
                let rhs = int_pow(&(-q / a), li).and_then(|p| {
                    div(
                        l.poch(a, k) * p * l.qpow(tri(ll) - ki * li),
                        l.poch(&(l.qpow(1 - ki) / a), ll),
                        "(q^{1-k}/a;q)_l",
                    )
                });
                c.eq(&format!("a={a} k={k} l={ll}"), lhs, rhs);
            }
        }
    }
    rep.push(c.finish());
    rep
}

fn q_powers_near(l: &QLattice, x: &QScalar, span: i64) -> bool {
    (-span..=span).any(|j| *x == l.qpow(j))
}

/// `₃φ₂(q^{-n},a,b;d,e;q,deq^n/(ab)) = (e/a;q)_n/(e;q)_n · ₃φ₂(q^{-n},a,d/b;d,aq^{1-n}/e;q,q)`
pub fn balanced_argument_transform(
    l: &QLattice,
    n: usize,
    a: &QScalar,
    b: &QScalar,
    d: &QScalar,
    e: &QScalar,
) -> Result<(QScalar, QScalar)> {
    let q = &l.q;
    let qn = l.qpow(-(n as i64));
    let t = Terminator { index: 0, n };
    let z = d * e * l.qpow(n as i64) / (a * b);
    let lhs = phi32_terminating(q, &[qn.clone(), a.clone(), b.clone()], &[d.clone(), e.clone()], &z, t)?;
    let inner = phi32_terminating(q, &[qn, a.clone(), d / b], &[d.clone(), a * l.qpow(1 - n as i64) / e], q, t)?;
    let rhs = div(l.poch(&(e / a), n) * inner, l.poch(e, n), "(e;q)_n")?;
    Ok((lhs, rhs))
}

/// `₃φ₂(q^{-n},b,c;d,e;q,q) = (de/bc;q)_n/(e;q)_n (bc/d)^n ₃φ₂(q^{-n},d/b,d/c;d,de/bc;q,q)`
pub fn sears_transform(
    l: &QLattice,
    n: usize,
    b: &QScalar,
    c: &QScalar,
    d: &QScalar,
    e: &QScalar,
) -> Result<(QScalar, QScalar)> {
    let q = &l.q;
    let qn = l.qpow(-(n as i64));
    let t = Terminator { index: 0, n };
    let lhs = phi32_terminating(q, &[qn.clone(), b.clone(), c.clone()], &[d.clone(), e.clone()], q, t)?;
    let debc = d * e / (b * c);
    let inner = phi32_terminating(q, &[qn, d / b, d / c], &[d.clone(), debc.clone()], q, t)?;
    let rhs = div(l.poch(&debc, n) * int_pow(&(b * c / d), n as i64)? * inner, l.poch(e, n), "(e;q)_n")?;
    Ok((lhs, rhs))
}

/// Ordered quadruples of pairwise distinct samples.
fn distinct_quadruples(s: &[QScalar]) -> impl Iterator<Item = (&QScalar, &QScalar, &QScalar, &QScalar)> {
    let n = s.len();
    (0..n.pow(4)).filter_map(move |i| {
        let ix = [i % n, i / n % n, i / n / n % n, i / n / n / n];
        let distinct = (0..4).all(|j| (j + 1..4).all(|k| ix[j] != ix[k]));
        distinct.then(|| (&s[ix[0]], &s[ix[1]], &s[ix[2]], &s[ix[3]]))
    })
}

pub fn sears_and_32_transform_suite(ctx: &ParamContext, r: &SweepRanges) -> Report {
    let l = ctx.lattice();
    let mut rep = Report::new();
    let s = &r.samples;
    let mut c1 = CheckBuilder::new(SUITE, "transform_balanced_argument");
    let mut c2 = CheckBuilder::new(SUITE, "transform_sears");
    for n in 0..=r.max_n {
        let span = 2 * n as i64 + 2;
        for (a, b, d, e) in distinct_quadruples(s) {
            let loc = format!("n={n} a={a} b={b} d={d} e={e}");
            let avoid = [a, b, d, e];
            let derived1 = [e / a, d / b, a * l.qpow(1 - n as i64) / e];
            if !avoid.iter().any(|x| q_powers_near(l, x, span)) && !derived1.iter().any(|x| q_powers_near(l, x, span)) {
                match balanced_argument_transform(l, n, a, b, d, e) {
                    Ok((x, y)) => {
                        c1.eq(&loc, Ok(x), Ok(y));
                    }
                    Err(err) => c1.error(&loc, &err),
                }
            }
            let derived2 = [d / a, d / b, d * e / (a * b)];
            if !avoid.iter().any(|x| q_powers_near(l, x, span)) && !derived2.iter().any(|x| q_powers_near(l, x, span)) {
                match sears_transform(l, n, a, b, d, e) {
                    Ok((x, y)) => {
                        c2.eq(&loc, Ok(x), Ok(y));
                    }
                    Err(err) => c2.error(&loc, &err),
                }
            }
        }
    }
    rep.push(c1.finish());
    rep.push(c2.finish());
    rep.extend(overlap_transform_instances(ctx));
    rep
}

/// The two transformation steps that carry the `⟨e*_m|f_n⟩` overlap into a
/// q-Hahn polynomial, checked on the context's own `(m, n)` grid.
pub fn overlap_transform_instances(ctx: &ParamContext) -> Report {
    let l = ctx.lattice();
    let q = &ctx.q;
    let nn = ctx.big_n();
    let ah = ctx.pw(-1, 0, -1, 1);
    let bh = ctx.pw(-1, 0, -1, -1);
    let mut rep = Report::new();
    let mut c1 = CheckBuilder::new(SUITE, "transform_overlap_step1");
    let mut c2 = CheckBuilder::new(SUITE, "transform_overlap_step2");
    for m in 0..=nn {
        for n in 0..=nn {
            let loc = format!("m={m} n={n}");
            let tm = Terminator { index: 0, n: (nn - m) as usize };
            let abq = &ah * &bh * l.qpow(m + 1);
            let step = || -> Result<(QScalar, QScalar, QScalar)> {
                let lhs = phi32_terminating(
                    q,
                    &[l.qpow(m - nn), l.qpow(n - nn), div(l.qpow(-nn - m - 1), &ah * &bh, "ab")?],
                    &[l.qpow(-nn), l.qpow(-nn) / &ah],
                    &(&bh * l.qpow(nn - n + 1)),
                    tm,
                )?;
                let mid = phi32_terminating(
                    q,
                    &[l.qpow(m - nn), l.qpow(n - nn), abq.clone()],
                    &[l.qpow(-nn), &ah * l.qpow(m + n - nn + 1)],
                    q,
                    tm,
                )?;
                let k = (nn - n) as usize;
                let ratio = div(l.poch(&(l.qpow(-m) / &ah), k), l.poch(&(l.qpow(-nn) / &ah), k), "(a^-1 q^-N;q)")?;
                Ok((lhs, ratio, mid))
            };
            let (lhs, ratio, mid) = match step() {
                Ok(v) => v,
                Err(e) => {
                    c1.error(&loc, &e);
                    c2.error(&loc, &e);
                    continue;
                }
            };
            c1.eq(&loc, Ok(lhs), Ok(&ratio * &mid));
            let rhs = || -> Result<QScalar> {
                let k = (nn - n) as usize;
                let bi = l.qpow(n - m - nn) / &bh;
                let qhahn = phi32_terminating(
                    q,
                    &[l.qpow(-m), l.qpow(-n), abq.clone()],
                    &[l.qpow(-nn), &ah * q],
                    q,
                    Terminator { index: 0, n: m as usize },
                )?;
                let num = int_pow(&abq, nn - m - n)? * l.poch(&bi, k) * l.poch(&(&ah * q), m as usize);
                let den = l.poch(&(&ah * l.qpow(m + n - nn + 1)), k) * l.poch(&bi, m as usize);
                Ok(div(num, den, "step2 denominator")? * qhahn)
            };
            c2.eq(&loc, Ok(mid), rhs());
        }
    }
    rep.push(c1.finish());
    rep.push(c2.finish());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use crate::report::Status;

    fn sample() -> ParamContext {
        ParamContext::with_unit_gauge(rat(2, 1), rat(8, 1), rat(4, 1), rat(2, 1), 2).unwrap()
    }

    fn generic() -> ParamContext {
        ParamContext::new(
            rat(3, 2),
            rat(5, 7),
            rat(5, 11),
            rat(4, 5),
            4,
            vec![rat(1, 1), rat(2, 1), rat(1, 3), rat(-1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn reflection_hand_value() {
        // (3;2)_2 = (1-3)(1-6) = 10 = 9 · 2 · (1/6;2)_2
        let l = sample();
        let l = l.lattice();
        assert_eq!(l.poch(&rat(3, 1), 2), rat(10, 1));
        assert_eq!(rat(9, 1) * rat(2, 1) * l.poch(&rat(1, 6), 2), rat(10, 1));
    }

    #[test]
    fn zero_index_is_trivial() {
        let c = sample();
        let r = SweepRanges { max_k: 0, max_l: 0, max_n: 0, samples: vec![rat(5, 3)] };
        let rep = pochhammer_identity_suite(&c, &r);
        assert!(rep.all_passed());
        let rep = sears_and_32_transform_suite(&c, &r);
        assert!(rep.get("transform_sears").unwrap().status == Status::Pass);
        let l = c.lattice();
        let one = rat(1, 1);
        assert_eq!(
            sears_transform(l, 0, &rat(2, 7), &rat(5, 3), &rat(7, 9), &rat(-1, 4)).unwrap(),
            (one.clone(), one.clone())
        );
        assert_eq!(
            balanced_argument_transform(l, 0, &rat(2, 7), &rat(5, 3), &rat(7, 9), &rat(-1, 4)).unwrap(),
            (one.clone(), one)
        );
    }

    #[test]
    fn suites_pass_on_generic_context() {
        let c = generic();
        let r = SweepRanges::from_context(&c, 6);
        let rep = pochhammer_identity_suite(&c, &r);
        assert!(rep.all_passed(), "{:?}", rep.failed().collect::<Vec<_>>());
        let r = SweepRanges::from_context(&c, 4);
        let rep = sears_and_32_transform_suite(&c, &r);
        assert!(rep.all_passed(), "{:?}", rep.failed().collect::<Vec<_>>());
        for ch in &rep.checks {
            assert!(ch.points > 0, "{} evaluated nothing", ch.name);
        }
    }

    #[test]
    fn sears_random_instance() {
        let l = QLattice::new(rat(3, 2), [rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
        let (x, y) = sears_transform(&l, 3, &rat(2, 7), &rat(-5, 3), &rat(7, 9), &rat(-1, 4)).unwrap();
        assert_eq!(x, y);
        let (x, y) = balanced_argument_transform(&l, 4, &rat(2, 7), &rat(-5, 3), &rat(7, 9), &rat(-1, 4)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn overlap_instances_at_sample_context() {
        let rep = overlap_transform_instances(&sample());
        assert!(!rep.any_failed());
    }
}
