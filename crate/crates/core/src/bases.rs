//! The six (generalized) eigenbases d, d*, e, e*, f, f*, built from their
//! closed forms and, independently, from the two-term recurrences satisfied by
//! their coefficients.

use std::fmt;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, lincomb, QMatrix, QVector};
use crate::ops;
use crate::qcore::{checked_div, ParamContext, QScalar};
use crate::report::{CheckBuilder, Report};
use crate::repr::Representation;

pub const SUITE: &str = "bases";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    D,
    DStar,
    E,
    EStar,
    F,
    FStar,
}

impl BasisLabel {
    pub const ALL: [BasisLabel; 6] =
        [BasisLabel::D, BasisLabel::DStar, BasisLabel::E, BasisLabel::EStar, BasisLabel::F, BasisLabel::FStar];

    pub fn as_str(&self) -> &'static str {
        match self {
            BasisLabel::D => "d",
            BasisLabel::DStar => "d*",
            BasisLabel::E => "e",
            BasisLabel::EStar => "e*",
            BasisLabel::F => "f",
            BasisLabel::FStar => "f*",
        }
    }

    /// Families with `⟨ℓ|b_n⟩ = 0` for `ℓ < n`; the others vanish for `ℓ > n`.
    pub fn is_lower(&self) -> bool {
        matches!(self, BasisLabel::D | BasisLabel::EStar | BasisLabel::F)
    }

    pub fn spectral_kind(&self) -> SpectralKind {
        match self {
            BasisLabel::D | BasisLabel::DStar => SpectralKind::Lambda,
            BasisLabel::E | BasisLabel::EStar => SpectralKind::Nu,
            BasisLabel::F | BasisLabel::FStar => SpectralKind::Rho,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralKind {
    Lambda,
    Nu,
    Rho,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralValue {
    pub kind: SpectralKind,
    pub index: usize,
    pub value: QScalar,
}

/// `λ_n = [α-n]_q`.
pub fn lambda(ctx: &ParamContext, n: i64) -> QScalar {
    ctx.br(-n, 1, 0, 0)
}

/// `ν_n = [n-β]_q [β-n+1]_q`.
pub fn nu(ctx: &ParamContext, n: i64) -> QScalar {
    ctx.br(n, 0, -1, 0) * ctx.br(1 - n, 0, 1, 0)
}

/// `ρ_n = -[α-n]_q + [μ]_q`.
pub fn rho(ctx: &ParamContext, n: i64) -> QScalar {
    ctx.br(0, 0, 0, 1) - lambda(ctx, n)
}

pub fn spectral_value(ctx: &ParamContext, kind: SpectralKind, n: usize) -> SpectralValue {
    let i = n as i64;
    let value = match kind {
        SpectralKind::Lambda => lambda(ctx, i),
        SpectralKind::Nu => nu(ctx, i),
        SpectralKind::Rho => rho(ctx, i),
    };
    SpectralValue { kind, index: n, value }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFamily {
    pub label: BasisLabel,
    pub vectors: Vec<QVector>,
    pub spectral: Vec<SpectralValue>,
}

impl BasisFamily {
    fn new(ctx: &ParamContext, label: BasisLabel, vectors: Vec<QVector>) -> Self {
        let spectral = (0..ctx.dim()).map(|n| spectral_value(ctx, label.spectral_kind(), n)).collect();
        BasisFamily { label, vectors, spectral }
    }

    /// Coefficient matrix with the basis vectors as columns.
    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_columns(&self.vectors)
    }
}

fn ratio(num: QScalar, den: QScalar, what: &str) -> Result<QScalar> {
    checked_div(num, den, what)
}

/// Coefficient `⟨ℓ|b_n⟩` from the closed-form expansions.
pub fn closed_form_coefficient(ctx: &ParamContext, label: BasisLabel, n: usize, l: usize) -> Result<QScalar> {
    let zero = QScalar::zero();
    if (label.is_lower() && l < n) || (!label.is_lower() && l > n) {
        return Ok(zero);
    }
    let big = ctx.n;
    let nn = ctx.big_n();
    let (ni, li) = (n as i64, l as i64);
    let q = &ctx.q;
    let p = |a: &QScalar, k: usize| ctx.poch(a, k);
    let v = match label {
        BasisLabel::D => {
            let x = ctx.qpow(ni - nn);
            let y = ctx.pw(ni - nn + 1, -1, 1, 0);
            let num = ctx.a_prod(n, big) * p(&x, big - l) * p(&y, big - n);
            let den = ctx.a_prod(l, big) * p(&x, big - n) * p(&y, big - l);
            ratio(num, den, "d coefficient")?
        }
        BasisLabel::DStar | BasisLabel::FStar => {
            let x = ctx.qpow(-ni);
            let y = if label == BasisLabel::DStar { ctx.pw(-ni, 1, -1, 0) } else { ctx.pw(0, 0, -1, 1) };
            let num = ctx.a_prod(0, n) * ctx.pw(0, -ni, ni, 0) * p(&x, l) * p(&y, n);
            let den = ctx.a_prod(0, l) * ctx.pw(0, -li, li, 0) * p(&x, n) * p(&y, l);
            ratio(num, den, "d*/f* coefficient")?
        }
        BasisLabel::E => {
            let x = ctx.qpow(-ni);
            let qn = ctx.qpow(-nn);
            let y = ctx.pw(ni - 1, 0, -2, 0);
            let num = ctx.a_prod(0, l) * ctx.pw(-ni, ni, -ni, 0) * p(&x, l) * p(q, n) * p(&qn, n) * p(&y, l);
            let den = ctx.a_prod(0, n) * ctx.pw(-li, li, -li, 0) * p(&x, n) * p(q, l) * p(&qn, l) * p(&y, n);
            ratio(num, den, "e coefficient")?
        }
        BasisLabel::EStar => {
            let x = ctx.qpow(ni - nn);
            let qn = ctx.qpow(-nn);
            let y = ctx.pw(1 - nn - ni, 0, 2, 0);
            let (mn, ml) = (big - n, big - l);
            let num = ctx.a_prod(l, big)
                * ctx.pw(-nn * mn as i64, mn as i64, mn as i64, 0)
                * p(&x, ml)
                * p(q, mn)
                * p(&qn, mn)
                * p(&y, ml);
            let den = ctx.a_prod(n, big)
                * ctx.pw(-nn * ml as i64, ml as i64, ml as i64, 0)
                * p(&x, mn)
                * p(q, ml)
                * p(&qn, ml)
                * p(&y, mn);
            ratio(num, den, "e* coefficient")?
        }
        BasisLabel::F => {
            let x = ctx.qpow(ni - nn);
            let y = ctx.pw(1 - nn, 0, 1, -1);
            let (mn, ml) = ((big - n) as i64, (big - l) as i64);
            let num = ctx.a_prod(n, big) * ctx.pw(-ni * ml, ml, 0, -ml) * p(&x, big - l) * p(&y, big - n);
            let den = ctx.a_prod(l, big) * ctx.pw(-ni * mn, mn, 0, -mn) * p(&x, big - n) * p(&y, big - l);
            ratio(num, den, "f coefficient")?
        }
    };
    Ok(v)
}

pub fn closed_form_basis(ctx: &ParamContext, label: BasisLabel) -> Result<BasisFamily> {
    let d = ctx.dim();
    let vectors = (0..d)
        .map(|n| (0..d).map(|l| closed_form_coefficient(ctx, label, n, l)).collect::<Result<QVector>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisFamily::new(ctx, label, vectors))
}

/// The matrix whose kernel defines `b_n`, and the spectral value used.
fn defining_matrix(rep: &Representation, label: BasisLabel, n: usize) -> QMatrix {
    let ctx = &rep.ctx;
    let one = QScalar::one();
    let id = QMatrix::identity(rep.dim());
    let s = spectral_value(ctx, label.spectral_kind(), n).value;
    match label {
        BasisLabel::D => lincomb(&[(one, &rep.x), (-s, &rep.z)]),
        BasisLabel::DStar => lincomb(&[(one, &rep.x), (-s, &rep.z)]).transpose(),
        BasisLabel::E => lincomb(&[(one, &rep.v), (-s, &id)]),
        BasisLabel::EStar => lincomb(&[(one, &rep.v), (-s, &id)]).transpose(),
        BasisLabel::F => lincomb(&[(one, &rep.w()), (-s, &id)]),
        BasisLabel::FStar => lincomb(&[(one, &rep.w()), (-s, &id)]).transpose(),
    }
}

/// Kernel vector of a singular bidiagonal matrix with `v_n = 1`, by forward
/// (lower) or backward (upper) substitution through the two-term recurrence.
fn bidiagonal_kernel(m: &QMatrix, n: usize, lower: bool) -> Result<QVector> {
    let d = m.dim();
    let mut v = vec![QScalar::zero(); d];
    v[n] = QScalar::one();
    let degenerate = |k: usize| Error::DegenerateEigenvalues(format!("spectral values {k} and {n} coincide"));
    if lower {
        for k in n + 1..d {
            if m[(k, k)].is_zero() {
                return Err(degenerate(k));
            }
            v[k] = -&m[(k, k - 1)] * &v[k - 1] / &m[(k, k)];
        }
    } else {
        for k in (0..n).rev() {
            if m[(k, k)].is_zero() {
                return Err(degenerate(k));
            }
            v[k] = -&m[(k, k + 1)] * &v[k + 1] / &m[(k, k)];
        }
    }
    Ok(v)
}

pub fn solve_by_recurrence(rep: &Representation, label: BasisLabel) -> Result<BasisFamily> {
    let vectors = (0..rep.dim())
        .map(|n| bidiagonal_kernel(&defining_matrix(rep, label, n), n, label.is_lower()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisFamily::new(&rep.ctx, label, vectors))
}

/// `Z|d_n⟩` expanded directly in the standard basis.
pub fn z_on_d_closed_form(ctx: &ParamContext) -> Result<Vec<QVector>> {
    let big = ctx.n;
    let nn = ctx.big_n();
    let d = ctx.dim();
    (0..d)
        .map(|n| {
            let ni = n as i64;
            (0..d)
                .map(|l| {
                    if l < n {
                        return Ok(QScalar::zero());
                    }
                    let x = ctx.qpow(ni - nn);
                    let y = ctx.pw(ni - nn + 2, -1, 1, 0);
                    let num =
                        ctx.a_prod(n, big) * ctx.poch(&x, big - l) * ctx.poch(&y, big - n) * ctx.qpow(ni - l as i64);
                    let den = ctx.a_prod(l, big) * ctx.poch(&x, big - n) * ctx.poch(&y, big - l);
                    Ok(-ratio(num, den, "Z d_n coefficient")?)
                })
                .collect()
        })
        .collect()
}

/// All six families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    pub families: Vec<BasisFamily>,
}

impl BasisSet {
    pub fn closed_form(ctx: &ParamContext) -> Result<Self> {
        let families = BasisLabel::ALL.iter().map(|&l| closed_form_basis(ctx, l)).collect::<Result<_>>()?;
        Ok(BasisSet { families })
    }

    pub fn by_recurrence(rep: &Representation) -> Result<Self> {
        let families = BasisLabel::ALL.iter().map(|&l| solve_by_recurrence(rep, l)).collect::<Result<_>>()?;
        Ok(BasisSet { families })
    }

    pub fn get(&self, label: BasisLabel) -> &BasisFamily {
        self.families.iter().find(|f| f.label == label).expect("all six labels present")
    }

    pub fn vec(&self, label: BasisLabel, n: usize) -> &QVector {
        &self.get(label).vectors[n]
    }
}

/// Closed form vs recurrence, the (G)EVP equations, normalization,
/// triangularity and the `Z|d_n⟩` expansion.
pub fn verify_construction(rep: &Representation) -> Report {
    let mut report = Report::new();
    let ctx = &rep.ctx;
    let d = rep.dim();
    let w = rep.w();
    for label in BasisLabel::ALL {
        let closed = closed_form_basis(ctx, label);
        let oracle = solve_by_recurrence(rep, label);
        let mut c = CheckBuilder::new(SUITE, &format!("closed_form_vs_recurrence_{label}"));
        match (&closed, &oracle) {
            (Ok(a), Ok(b)) => {
                c.eq_matrix("coefficients", Ok(a.matrix()), Ok(b.matrix()));
            }
            (Err(e), _) | (_, Err(e)) => c.error("construction", e),
        }
        report.push(c.finish());

        let mut c = CheckBuilder::new(SUITE, &format!("eigen_equation_{label}"));
        let mut shape = CheckBuilder::new(SUITE, &format!("normalization_triangularity_{label}"));
        match &closed {
            Ok(fam) => {
                for (n, (v, s)) in fam.vectors.iter().zip(&fam.spectral).enumerate() {
                    let loc = format!("n={n}");
                    let lam = &s.value;
                    let (lhs, rhs) = match label {
                        BasisLabel::D => (rep.x.mul_vec(v), rep.z.mul_vec(v).iter().map(|x| x * lam).collect()),
                        BasisLabel::DStar => (
                            rep.x.transpose().mul_vec(v),
                            rep.z.transpose().mul_vec(v).iter().map(|x| x * lam).collect(),
                        ),
                        BasisLabel::E => (rep.v.mul_vec(v), v.iter().map(|x| x * lam).collect()),
                        BasisLabel::EStar => (rep.v.transpose().mul_vec(v), v.iter().map(|x| x * lam).collect()),
                        BasisLabel::F => (w.mul_vec(v), v.iter().map(|x| x * lam).collect()),
                        BasisLabel::FStar => (w.transpose().mul_vec(v), v.iter().map(|x| x * lam).collect::<QVector>()),
                    };
                    let k = (0..d).find(|&i| lhs[i] != rhs[i]);
                    c.holds(
                        &loc,
                        Ok(k.is_none()),
                        ops![("row", format!("{k:?}")), ("lhs", format!("{lhs:?}")), ("rhs", format!("{rhs:?}"))],
                    );
                    let off = (0..d).find(|&l| if label.is_lower() { l < n } else { l > n } && !v[l].is_zero());
                    shape.holds(
                        &loc,
                        Ok(v[n].is_one() && off.is_none()),
                        ops![("diag", v[n]), ("nonzero_off_triangle", format!("{off:?}"))],
                    );
                }
            }
            Err(e) => {
                c.error("construction", e);
                shape.error("construction", e);
            }
        }
        report.push(c.finish());
        report.push(shape.finish());
    }

    let mut c = CheckBuilder::new(SUITE, "z_on_d_closed_form");
    match (z_on_d_closed_form(ctx), closed_form_basis(ctx, BasisLabel::D)) {
        (Ok(zd), Ok(fam)) => {
            let lhs = QMatrix::from_columns(&zd);
            let rhs = QMatrix::from_columns(&fam.vectors.iter().map(|v| rep.z.mul_vec(v)).collect::<Vec<_>>());
            c.eq_matrix("Z d_n", Ok(lhs), Ok(rhs));
        }
        (Err(e), _) | (_, Err(e)) => c.error("construction", &e),
    }
    report.push(c.finish());
    report
}

fn kron(m: usize, n: usize) -> QScalar {
    if m == n {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

pub fn verify_orthogonality(rep: &Representation, families: &BasisSet) -> Report {
    use BasisLabel::*;
    let mut report = Report::new();
    let d = rep.dim();
    for (name, left, right) in [("orthogonality_e", EStar, E), ("orthogonality_f", FStar, F)] {
        let mut c = CheckBuilder::new(SUITE, name);
        for m in 0..d {
            for n in 0..d {
                let v = dot(families.vec(left, m), families.vec(right, n));
                c.eq(&format!("m={m} n={n}"), Ok(v), Ok(kron(m, n)));
            }
        }
        report.push(c.finish());
    }
    let mut c = CheckBuilder::new(SUITE, "orthogonality_d");
    for m in 0..d {
        for n in 0..d {
            let v = dot(families.vec(DStar, m), &rep.z.mul_vec(families.vec(D, n)));
            c.eq(&format!("m={m} n={n}"), Ok(v), Ok(-kron(m, n)));
        }
    }
    report.push(c.finish());
    report
}

fn outer_sum(pairs: impl Iterator<Item = (QVector, QVector)>, dim: usize) -> QMatrix {
    pairs.fold(QMatrix::zeros(dim), |acc, (u, v)| &acc + &QMatrix::outer(&u, &v))
}

pub fn verify_resolutions_of_identity(rep: &Representation, families: &BasisSet) -> Report {
    use BasisLabel::*;
    let d = rep.dim();
    let id = QMatrix::identity(d);
    let mut c = CheckBuilder::new(SUITE, "resolutions_of_identity");
    for (name, ket, bra) in [("|e><e*|", E, EStar), ("|e*><e|", EStar, E), ("|f><f*|", F, FStar), ("|f*><f|", FStar, F)]
    {
        let s = outer_sum((0..d).map(|n| (families.vec(ket, n).clone(), families.vec(bra, n).clone())), d);
        c.eq_matrix(name, Ok(s), Ok(id.clone()));
    }
    let s = outer_sum((0..d).map(|n| (rep.z.mul_vec(families.vec(D, n)), families.vec(DStar, n).clone())), d);
    c.eq_matrix("-Z|d><d*|", Ok(s.scale(&-QScalar::one())), Ok(id.clone()));
    // ⟨d_n| Zᵀ as a row vector is (Z d_n)ᵀ
    let s = outer_sum((0..d).map(|n| (families.vec(DStar, n).clone(), rep.z.mul_vec(families.vec(D, n)))), d);
    c.eq_matrix("-|d*><d|Z^T", Ok(s.scale(&-QScalar::one())), Ok(id));
    let mut report = Report::new();
    report.push(c.finish());
    report
}

/// Violated non-degeneracy conditions of a context.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenericityReport {
    /// Coinciding spectral values; a context with any of these cannot carry
    /// the six bases at all.
    pub spectral: Vec<String>,
    /// Vanishing denominators of closed forms.
    pub denominators: Vec<String>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.spectral.is_empty() && self.denominators.is_empty()
    }

    pub fn violations(&self) -> impl Iterator<Item = &String> {
        self.spectral.iter().chain(&self.denominators)
    }
}

pub fn validate_genericity(ctx: &ParamContext) -> GenericityReport {
    let mut g = GenericityReport::default();
    let d = ctx.dim();
    for kind in [SpectralKind::Lambda, SpectralKind::Nu, SpectralKind::Rho] {
        let vals: Vec<_> = (0..d).map(|n| spectral_value(ctx, kind, n).value).collect();
        for m in 0..d {
            for n in m + 1..d {
                if vals[m] == vals[n] {
                    g.spectral.push(format!("{kind:?}_{m} = {kind:?}_{n} = {}", vals[m]));
                }
            }
        }
    }
    let nn = ctx.big_n();
    let mut zero = |what: String, x: QScalar| {
        if x.is_zero() {
            g.denominators.push(what);
        }
    };
    for n in 0..=nn + 1 {
        for k in 0..4 {
            zero(format!("[2β-2·{n}+{k}]_q = 0"), ctx.br(k - 2 * n, 0, 2, 0));
        }
    }
    let ah = ctx.pw(-1, 0, -1, 1);
    let bh = ctx.pw(-1, 0, -1, -1);
    let one = QScalar::one();
    for k in 1..=2 * nn + 2 {
        zero(format!("1 - âb̂q^{k} = 0"), &one - &ah * &bh * ctx.qpow(k));
    }
    zero("(âq;q)_N = 0".into(), ctx.poch(&(&ah * &ctx.q), ctx.n));
    zero("(b̂q;q)_N = 0".into(), ctx.poch(&(&bh * &ctx.q), ctx.n));
    // b = N - 2β - 1 and a = α - β
    for m in 0..=nn {
        zero(format!("[N-2·{m}-b-1]_q = 0"), ctx.br(-2 * m, 0, 2, 0));
        zero(format!("[2·{m}+b-N-1]_q = 0"), ctx.br(2 * m - 2, 0, -2, 0));
    }
    for n in 0..=nn {
        zero(format!("[a-{n}]_q = 0"), ctx.br(-n, 1, -1, 0));
    }
    // remaining Pochhammer factors of the basis expansions, overlap
    // prefactors, weights and norms all have the form 1 - q^{k + linear}
    let span = 2 * nn + 4;
    for (name, ca, cb, cm) in
        [("β", 0, 1, 0), ("2β", 0, 2, 0), ("α-β", 1, -1, 0), ("α+β", 1, 1, 0), ("μ-β", 0, -1, 1), ("μ+β", 0, 1, 1)]
    {
        for k in -span..=span {
            zero(format!("q^({k}+{name}) = 1"), &one - ctx.pw(k, ca, cb, cm));
        }
    }
    g.denominators.sort();
    g.denominators.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::build_representation;
    use crate::testutil::{generic, generic_small, sample};

    #[test]
    fn trivial_vectors() {
        let ctx = generic();
        let d = closed_form_basis(&ctx, BasisLabel::D).unwrap();
        let mut unit = vec![QScalar::zero(); ctx.dim()];
        unit[ctx.n] = QScalar::one();
        assert_eq!(d.vectors[ctx.n], unit);
        let e = closed_form_basis(&ctx, BasisLabel::E).unwrap();
        let mut unit0 = vec![QScalar::zero(); ctx.dim()];
        unit0[0] = QScalar::one();
        assert_eq!(e.vectors[0], unit0);
        let zd = z_on_d_closed_form(&ctx).unwrap();
        assert_eq!(zd[ctx.n], unit.iter().map(|x| -x).collect::<QVector>());
        for (n, v) in zd.iter().enumerate() {
            assert_eq!(v[n], -QScalar::one());
        }
    }

    #[test]
    fn sample_e1_matches_recurrence() {
        let ctx = sample();
        let rep = build_representation(&ctx).unwrap();
        let a = closed_form_coefficient(&ctx, BasisLabel::E, 1, 0).unwrap();
        let b = solve_by_recurrence(&rep, BasisLabel::E).unwrap().vectors[1][0].clone();
        assert_eq!(a, b);
        // (ν_0 - ν_1)⟨0|e_1⟩ = -V_{0,1} with ν_0 = [-2][3] = -21/4, ν_1 = [-1][2] = -3/2
        assert_eq!(a, crate::qcore::rat(-8, 5));
    }

    #[test]
    fn all_checks_pass_on_generic_contexts() {
        for ctx in [generic(), generic_small()] {
            let rep = build_representation(&ctx).unwrap();
            let set = BasisSet::closed_form(&ctx).unwrap();
            let mut r = verify_construction(&rep);
            r.extend(verify_orthogonality(&rep, &set));
            r.extend(verify_resolutions_of_identity(&rep, &set));
            assert!(r.all_passed(), "{:#?}", r.failed().collect::<Vec<_>>());
            assert!(validate_genericity(&ctx).is_generic(), "{:?}", validate_genericity(&ctx));
        }
    }

    #[test]
    fn one_dimensional_space() {
        let ctx = ParamContext::with_unit_gauge(
            crate::qcore::rat(3, 2),
            crate::qcore::rat(5, 7),
            crate::qcore::rat(5, 11),
            crate::qcore::rat(4, 5),
            0,
        )
        .unwrap();
        let rep = build_representation(&ctx).unwrap();
        let set = BasisSet::closed_form(&ctx).unwrap();
        assert!(verify_orthogonality(&rep, &set).all_passed());
        assert!(verify_resolutions_of_identity(&rep, &set).all_passed());
        assert!(validate_genericity(&ctx).spectral.is_empty());
    }

    #[test]
    fn sample_context_is_flagged() {
        let g = validate_genericity(&sample());
        assert!(g.spectral.is_empty());
        assert!(g.denominators.iter().any(|s| s.contains("[2β-2·2+0]")));
        assert!(g.denominators.iter().any(|s| s.contains("âb̂q^6")));
    }

    #[test]
    fn colliding_nu_is_detected() {
        // q^{2β+1} = q^{0+1} makes ν_0 = ν_1
        let q = crate::qcore::rat(2, 1);
        let ctx = ParamContext::with_unit_gauge(
            q,
            crate::qcore::rat(5, 7),
            crate::qcore::rat(1, 1),
            crate::qcore::rat(4, 5),
            2,
        )
        .unwrap();
        let g = validate_genericity(&ctx);
        assert!(g.spectral.iter().any(|s| s.starts_with("Nu_0 = Nu_1")));
        let rep = build_representation(&ctx).unwrap();
        assert!(matches!(solve_by_recurrence(&rep, BasisLabel::E), Err(Error::DegenerateEigenvalues(_))));
    }
}
